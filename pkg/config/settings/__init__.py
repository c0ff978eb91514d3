"""
Django settings initialization.
Determines which settings module to use based on environment.
"""

from decouple import config

# Determine which settings to use
ENVIRONMENT = config('ENVIRONMENT', default='development')

if ENVIRONMENT == 'testing':
    from .testing import *
else:
    from .development import *
