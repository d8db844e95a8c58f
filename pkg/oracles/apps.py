from django.apps import AppConfig


class OraclesConfig(AppConfig):
    name = "oracles"
    verbose_name = "Brute-force oracles"
