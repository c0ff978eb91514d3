"""
Coding Application Configuration.
Códec intra simplificado: transformadas, cuantificación, entropía y contenedor.
"""

from django.apps import AppConfig


class CodingConfig(AppConfig):
    """Configuración de la aplicación del códec."""

    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.coding'
    verbose_name = 'Códec intra por bloques'
