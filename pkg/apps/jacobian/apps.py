"""
Jacobian Application Configuration.
Jacobiano proyectado del extractor, localizado por bloque y llevado al dominio transformado.
"""

from django.apps import AppConfig


class JacobianConfig(AppConfig):
    """Configuración de la aplicación del Jacobiano proyectado."""

    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.jacobian'
    verbose_name = 'Jacobiano proyectado'
