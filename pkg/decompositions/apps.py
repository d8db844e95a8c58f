from django.apps import AppConfig


class DecompositionsConfig(AppConfig):
    name = "decompositions"
    verbose_name = "Tree decompositions"
