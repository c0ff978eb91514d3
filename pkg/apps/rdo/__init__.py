# RDO application
default_app_config = 'apps.rdo.apps.RdoConfig'
