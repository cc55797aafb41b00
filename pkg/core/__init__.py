# core/__init__.py
default_app_config = 'core.apps.CoreConfig'
