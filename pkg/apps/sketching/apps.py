"""
Sketching Application Configuration.
Matrices de proyección aleatoria para reducir la dimensión de las características.
"""

from django.apps import AppConfig


class SketchingConfig(AppConfig):
    """Configuración de la aplicación de sketches."""

    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.sketching'
    verbose_name = 'Sketches Johnson-Lindenstrauss'
