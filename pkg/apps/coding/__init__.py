# Coding application
default_app_config = 'apps.coding.apps.CodingConfig'
