# trajectory/apps.py
from django.apps import AppConfig


class TrajectoryConfig(AppConfig):
    name = 'trajectory'
    verbose_name = 'Trayectorias de Fourier'
