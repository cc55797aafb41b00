from core.conf import setting
from runs.config import resolve_params
from runs.management.base import ChoreoCommand


class Command(ChoreoCommand):
    help = 'Predice lambda~ y el radio R* de la órbita circular (fórmulas cerradas)'
    command = 'predict'

    def add_command_arguments(self, parser):
        parser.add_argument('--tol', type=float, help='Tolerancia sobre |F(lambda)|')

    def build_config(self, options):
        tol = options.get('tol') or setting('CHOREO2C_ROOT_TOL')
        return self.make_config(options, resolve_params(options), tol=tol)
