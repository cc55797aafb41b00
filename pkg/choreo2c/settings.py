import os
from pathlib import Path
import environ

env = environ.Env()

BASE_DIR = Path(__file__).resolve().parent.parent

# Lee .env si existe
environ.Env.read_env(os.path.join(BASE_DIR, '.env'))

SECRET_KEY = env('DJANGO_SECRET_KEY', default='choreo2c-cli-has-no-sessions')

INSTALLED_APPS = [
    # core PRIMERO porque el resto depende de ProblemParams y las excepciones
    'core',
    'trajectory',
    'action',
    'analytic',
    'minimize',
    'verify',
    'runs',
]

# CLI + library only: no database, no URLs
DATABASES = {}

# ================================
# Choreography solver defaults
# ================================
# Fourier truncation order K of the generating loop
CHOREO2C_ORDER = env.int('CHOREO2C_ORDER', default=16)

# Uniform quadrature nodes on [0, 2pi)
CHOREO2C_NODES = env.int('CHOREO2C_NODES', default=512)

# Smallest admissible separation; below it the action is treated as +inf
CHOREO2C_COLLISION_FLOOR = env.float('CHOREO2C_COLLISION_FLOOR', default=1e-9)

# Tolerance on |F(lambda)| for the analytic prediction
CHOREO2C_ROOT_TOL = env.float('CHOREO2C_ROOT_TOL', default=1e-12)

# Iteration budget of one minimize run
CHOREO2C_MAX_ITERS = env.int('CHOREO2C_MAX_ITERS', default=2000)

# Caps worker threads used by multistart
CHOREO2C_THREADS = env.int('CHOREO2C_THREADS', default=1)

# Version stamped into every JSON/CSV artifact
CHOREO2C_FORMAT_VERSION = 'choreo2c/1'

# -------------------------------
# Logging
# -------------------------------
# Todo va a stderr: stdout queda libre para el JSON/CSV de los comandos.
CHOREO2C_LOG_LEVEL = env('CHOREO2C_LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        app: {
            'handlers': ['stderr'],
            'level': CHOREO2C_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('core', 'trajectory', 'action', 'analytic', 'minimize', 'verify', 'runs')
    },
}
