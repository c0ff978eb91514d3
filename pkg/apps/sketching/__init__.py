# Sketching application
default_app_config = 'apps.sketching.apps.SketchingConfig'
