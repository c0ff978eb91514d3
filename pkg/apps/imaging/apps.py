"""
Imaging Application Configuration.
Ingesta de imágenes de luminancia, macrobloques y métricas de calidad.
"""

from django.apps import AppConfig


class ImagingConfig(AppConfig):
    """Configuración de la aplicación de imágenes."""

    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.imaging'
    verbose_name = 'Planos de imagen'
