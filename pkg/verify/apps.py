# verify/apps.py
from django.apps import AppConfig


class VerifyConfig(AppConfig):
    name = 'verify'
    verbose_name = 'Verificación de desigualdades y dinámica'
