# FeatNet application
default_app_config = 'apps.featnet.apps.FeatnetConfig'
