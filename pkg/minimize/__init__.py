# minimize/__init__.py
default_app_config = 'minimize.apps.MinimizeConfig'
