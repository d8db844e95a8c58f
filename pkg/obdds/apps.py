from django.apps import AppConfig


class ObddsConfig(AppConfig):
    name = "obdds"
    verbose_name = "Ordered binary decision diagrams"
