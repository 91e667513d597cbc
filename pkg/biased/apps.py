# biased/apps.py
from django.apps import AppConfig

class BiasedConfig(AppConfig):
    name = "biased"
    verbose_name = "Biased graphs"

    def ready(self):
        # Import signal handlers
        import biased.signals  # noqa: F401
