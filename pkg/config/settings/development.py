from .base import *

# Development-specific settings
DEBUG = True

# Logging for development
LOGGING['handlers']['console']['formatter'] = 'verbose'
LOGGING['loggers']['apps']['level'] = config('LOG_LEVEL', default='DEBUG')
LOGGING['loggers']['shared']['level'] = config('LOG_LEVEL', default='DEBUG')
