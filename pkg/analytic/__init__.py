# analytic/__init__.py
default_app_config = 'analytic.apps.AnalyticConfig'
