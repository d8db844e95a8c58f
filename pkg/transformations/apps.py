from django.apps import AppConfig


class TransformationsConfig(AppConfig):
    name = "transformations"
    verbose_name = "Circuit transformations"
