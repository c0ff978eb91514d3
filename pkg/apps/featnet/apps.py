"""
FeatNet Application Configuration.
Extractor de características diferenciable usado para medir distorsión relevante a tareas.
"""

from django.apps import AppConfig


class FeatnetConfig(AppConfig):
    """Configuración de la aplicación del extractor de características."""

    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.featnet'
    verbose_name = 'Extractor de características'
