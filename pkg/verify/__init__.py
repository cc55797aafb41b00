# verify/__init__.py
default_app_config = 'verify.apps.VerifyConfig'
