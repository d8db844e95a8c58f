from django.apps import AppConfig


class QbfsConfig(AppConfig):
    name = "qbfs"
    verbose_name = "Quantified Boolean formulas"
