# analytic/apps.py
from django.apps import AppConfig


class AnalyticConfig(AppConfig):
    name = 'analytic'
    verbose_name = 'Predicción analítica del radio'
