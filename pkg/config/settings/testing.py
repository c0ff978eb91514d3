from .base import *

# Testing-specific settings
DEBUG = False

# Valores por defecto fijos: las pruebas no dependen del entorno
CODEC = {
    'QP': 30,
    'C': 0.85,
    'SKETCH': 'rademacher',
    'ELL': 8,
    'SEED': 0,
    'FD_BLEND': 1.0,
    'TAU_POLICY': 'energy',
    'LAMBDA_NORM': 'trace',
    'THREADS': 1,
    'LOG_LEVEL': 'WARNING',
}

# Logging for tests
LOGGING['loggers']['apps']['level'] = 'WARNING'
LOGGING['loggers']['shared']['level'] = 'CRITICAL'

# Security settings for tests
SECRET_KEY = 'test-secret-key'
