# Imaging application
default_app_config = 'apps.imaging.apps.ImagingConfig'
