"""
Evaluation Domain Module.
"""

from .entities import (
    MIN_BD_POINTS,
    REFERENCE_CORRELATION,
    CorrelationReport,
    FlopEstimate,
    MonotonicityReport,
    QualityAxis,
    RDCurve,
    RDPoint,
)
from .exceptions import (
    DegenerateCorrelation,
    DegenerateCurve,
    EvaluationException,
    InsufficientCurvePoints,
    InsufficientRegions,
    InvalidSweep,
    MismatchedCurves,
    NoQualityOverlap,
)

__all__ = [
    'MIN_BD_POINTS',
    'REFERENCE_CORRELATION',
    'CorrelationReport',
    'FlopEstimate',
    'MonotonicityReport',
    'QualityAxis',
    'RDCurve',
    'RDPoint',
    'DegenerateCorrelation',
    'DegenerateCurve',
    'EvaluationException',
    'InsufficientCurvePoints',
    'InsufficientRegions',
    'InvalidSweep',
    'MismatchedCurves',
    'NoQualityOverlap',
]
