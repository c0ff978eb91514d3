"""
Django settings base configuration.
Ajustes comunes a todos los entornos: apps del códec, valores por defecto
operativos (CODEC) y logging.
"""

from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent

SECRET_KEY = config('SECRET_KEY', default='codec-local-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS: list = []

# Application definition
LOCAL_APPS = [
    'apps.imaging',
    'apps.featnet',
    'apps.sketching',
    'apps.jacobian',
    'apps.coding',
    'apps.rdo',
    'apps.evaluation',
]

INSTALLED_APPS = LOCAL_APPS

# Sin base de datos ni superficie HTTP: la CLI son comandos de gestión
DATABASES: dict = {}

USE_I18N = False
USE_TZ = True

# Valores por defecto de la CLI; las llamadas de librería reciben argumentos explícitos
CODEC = {
    'QP': config('CODEC_QP', default=30, cast=int),
    'C': config('CODEC_C', default=0.85, cast=float),
    'SKETCH': config('CODEC_SKETCH', default='rademacher'),
    'ELL': config('CODEC_ELL', default=8, cast=int),
    'SEED': config('CODEC_SEED', default=0, cast=int),
    'FD_BLEND': config('CODEC_FD_BLEND', default=1.0, cast=float),
    'TAU_POLICY': config('CODEC_TAU_POLICY', default='energy'),
    'LAMBDA_NORM': config('CODEC_LAMBDA_NORM', default='trace'),
    'THREADS': config('CODEC_THREADS', default=1, cast=int),
    'LOG_LEVEL': config('LOG_LEVEL', default='INFO'),
}

LOG_FILE = config('LOG_FILE', default='')

# Logging configuration: diagnósticos a stderr, stdout queda para la salida de máquina
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'apps': {
            'handlers': ['console'],
            'level': CODEC['LOG_LEVEL'],
            'propagate': False,
        },
        'shared': {
            'handlers': ['console'],
            'level': CODEC['LOG_LEVEL'],
            'propagate': False,
        },
    },
}

if LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'INFO',
        'class': 'logging.FileHandler',
        'filename': LOG_FILE,
        'formatter': 'verbose',
    }
    for logger_name in ('apps', 'shared'):
        LOGGING['loggers'][logger_name]['handlers'].append('file')
