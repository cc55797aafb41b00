import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'choreo2c.settings')
django.setup()
