"""
Evaluation Application Configuration.
Barridos de QP, curvas RD, BD-rate, contabilidad de FLOPs y experimentos de localización.
"""

from django.apps import AppConfig


class EvaluationConfig(AppConfig):
    """Configuración de la aplicación de evaluación."""

    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.evaluation'
    verbose_name = 'Evaluación'
