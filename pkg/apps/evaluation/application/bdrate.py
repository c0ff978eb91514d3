"""
Bjøntegaard Delta Rate.
Ajuste cúbico de log-tasa frente a calidad e integración trapezoidal sobre el
intervalo de calidad común.
"""

import logging

import numpy as np
from scipy.integrate import trapezoid

from apps.evaluation.domain.entities import MIN_BD_POINTS, QualityAxis, RDCurve
from apps.evaluation.domain.exceptions import DegenerateCurve, InsufficientCurvePoints, NoQualityOverlap

logger = logging.getLogger(__name__)

FIT_DEGREE = 3
INTEGRATION_SAMPLES = 1000
# Caída admitida en log-tasa al recorrer la curva por calidad creciente
MONOTONE_TOLERANCE = 0.01


def _fit_points(curve: RDCurve, axis: QualityAxis):
    if len(curve) < MIN_BD_POINTS:
        raise InsufficientCurvePoints(curve.label, len(curve), MIN_BD_POINTS)
    quality = curve.qualities(axis)
    rates = curve.rates()
    if not np.all(np.isfinite(quality)):
        raise DegenerateCurve(curve.label, f"calidad no finita en el eje {axis.value}")
    if np.any(rates <= 0):
        raise DegenerateCurve(curve.label, "tasas no positivas")

    order = np.argsort(quality, kind='stable')
    quality = quality[order]
    log_rate = np.log(rates[order])
    if np.any(np.diff(quality) <= 0):
        raise DegenerateCurve(curve.label, "calidades repetidas")
    if np.any(np.diff(log_rate) < -MONOTONE_TOLERANCE):
        raise DegenerateCurve(curve.label, "la tasa no crece con la calidad")
    return quality, log_rate


def bd_rate(anchor: RDCurve, test: RDCurve, axis: QualityAxis = QualityAxis.PSNR) -> float:
    """Diferencia media de tasa de test frente a anchor a igual calidad, en porcentaje.

    Negativo significa que test necesita menos bits.
    """
    anchor_quality, anchor_log_rate = _fit_points(anchor, axis)
    test_quality, test_log_rate = _fit_points(test, axis)

    low = max(anchor_quality[0], test_quality[0])
    high = min(anchor_quality[-1], test_quality[-1])
    if not high > low:
        raise NoQualityOverlap(low, high)

    anchor_poly = np.polyfit(anchor_quality, anchor_log_rate, FIT_DEGREE)
    test_poly = np.polyfit(test_quality, test_log_rate, FIT_DEGREE)
    samples = np.linspace(low, high, INTEGRATION_SAMPLES)
    anchor_integral = trapezoid(np.polyval(anchor_poly, samples), samples)
    test_integral = trapezoid(np.polyval(test_poly, samples), samples)

    average = (test_integral - anchor_integral) / (high - low)
    result = float((np.exp(average) - 1.0) * 100.0)
    logger.info(f"BD-rate {test.label!r} frente a {anchor.label!r} ({axis.value}): {result:.4f}%")
    return result
