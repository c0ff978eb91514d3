# Jacobian application
default_app_config = 'apps.jacobian.apps.JacobianConfig'
