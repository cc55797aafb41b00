"""
Run-wide knobs read from Django settings, with library defaults when the
settings module is not configured (plain `import` use outside manage.py).
"""
from django.conf import settings

DEFAULTS = {
    'CHOREO2C_ORDER': 16,
    'CHOREO2C_NODES': 512,
    'CHOREO2C_COLLISION_FLOOR': 1e-9,
    'CHOREO2C_ROOT_TOL': 1e-12,
    'CHOREO2C_MAX_ITERS': 2000,
    'CHOREO2C_THREADS': 1,
    'CHOREO2C_FORMAT_VERSION': 'choreo2c/1',
}


def setting(name):
    if settings.configured:
        return getattr(settings, name, DEFAULTS[name])
    return DEFAULTS[name]
