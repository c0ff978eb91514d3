"""
RDO Application Configuration.
Decisión de modo por bloque minimizando D + λ·R con SSE, IDSE o distancia de características.
"""

from django.apps import AppConfig


class RdoConfig(AppConfig):
    """Configuración de la aplicación de optimización tasa-distorsión."""

    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.rdo'
    verbose_name = 'Optimización tasa-distorsión'
