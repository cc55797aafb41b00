# action/__init__.py
default_app_config = 'action.apps.ActionConfig'
