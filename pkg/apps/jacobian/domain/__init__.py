"""
Jacobian Domain Module.
"""

from .entities import LocalizationReport, SketchedJacobian, TauPolicy
from .exceptions import GridMismatch, JacobianException, SidecarFormatError
from .interfaces import SidecarRepositoryInterface

__all__ = [
    'LocalizationReport',
    'SketchedJacobian',
    'TauPolicy',
    'GridMismatch',
    'JacobianException',
    'SidecarFormatError',
    'SidecarRepositoryInterface',
]
