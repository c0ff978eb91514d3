"""
RDO Domain Module.
"""

from .distortion import distortion_idse, distortion_sse, residual_idse
from .entities import (
    BlockDecision,
    CandidateCost,
    FDNormalizers,
    LambdaNorm,
    Metric,
    RDOConfig,
    lambda_from_qp,
)
from .exceptions import DistortionShapeMismatch, InvalidRDOConfig, MissingJacobian, RDOException

__all__ = [
    'distortion_idse',
    'distortion_sse',
    'residual_idse',
    'BlockDecision',
    'CandidateCost',
    'FDNormalizers',
    'LambdaNorm',
    'Metric',
    'RDOConfig',
    'lambda_from_qp',
    'DistortionShapeMismatch',
    'InvalidRDOConfig',
    'MissingJacobian',
    'RDOException',
]
