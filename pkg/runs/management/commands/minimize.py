from core.conf import setting
from runs.config import resolve_params
from runs.management.base import ChoreoCommand


class Command(ChoreoCommand):
    help = 'Minimiza la acción reducida desde varios arranques aleatorios con semilla'
    command = 'minimize'

    def add_command_arguments(self, parser):
        parser.add_argument('--order', type=int, help='Orden de truncación de Fourier K')
        parser.add_argument('--nodes', type=int, help='Nodos de cuadratura N')
        parser.add_argument('--tol', type=float, default=1e-8, help='Tolerancia sobre la norma del gradiente')
        parser.add_argument('--max-iters', type=int, help='Iteraciones máximas por arranque')
        parser.add_argument('--starts', type=int, default=8, help='Número de arranques')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--antiperiodic', action='store_true', help='Solo armónicos impares')

    def build_config(self, options):
        return self.make_config(
            options,
            resolve_params(options),
            order=options.get('order') or setting('CHOREO2C_ORDER'),
            nodes=options.get('nodes') or setting('CHOREO2C_NODES'),
            tol=options['tol'],
            max_iters=options.get('max_iters') or setting('CHOREO2C_MAX_ITERS'),
            starts=options['starts'],
            seed=options['seed'],
            antiperiodic=bool(options['antiperiodic']),
            collision_floor=setting('CHOREO2C_COLLISION_FLOOR'),
        )
