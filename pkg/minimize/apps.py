# minimize/apps.py
from django.apps import AppConfig


class MinimizeConfig(AppConfig):
    name = 'minimize'
    verbose_name = 'Minimización numérica de la acción'
