from django.apps import AppConfig


class CompilationConfig(AppConfig):
    name = "compilation"
    verbose_name = "CNF compilation"
