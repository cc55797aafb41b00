from core.conf import setting
from runs.config import explicit_params, resolve_params
from runs.management.base import ChoreoCommand
from verify.suites import SUITES


class Command(ChoreoCommand):
    help = 'Corre campañas aleatorias con semilla sobre las desigualdades y la dinámica'
    command = 'verify'

    def add_command_arguments(self, parser):
        parser.add_argument('--suite', type=str, default='all', choices=SUITES)
        parser.add_argument('--paths', type=int, default=100, help='Casos aleatorios por suite')
        parser.add_argument('--seed', type=int, default=0)

    def build_config(self, options):
        params = resolve_params(options) if explicit_params(options) else None
        return self.make_config(
            options,
            params,
            suite=options['suite'],
            paths=options['paths'],
            seed=options['seed'],
            nodes=setting('CHOREO2C_NODES'),
            collision_floor=setting('CHOREO2C_COLLISION_FLOOR'),
            root_tol=setting('CHOREO2C_ROOT_TOL'),
        )
