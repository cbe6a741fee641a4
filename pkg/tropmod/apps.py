from django.apps import AppConfig


class TropmodConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'tropmod'
    verbose_name = 'Tropical moduli'
