from core.conf import setting
from runs.config import resolve_params
from runs.management.base import ChoreoCommand
from runs.pipeline import read_artifact


class Command(ChoreoCommand):
    help = 'Muestrea una trayectoria guardada por minimize y sus n-1 compañeras'
    command = 'export'
    formats = ('csv', 'json')

    def add_command_arguments(self, parser):
        parser.add_argument('input', type=str, help='JSON producido por minimize')
        parser.add_argument('--nodes', type=int, help='Muestras por cuerpo')

    def build_config(self, options):
        artifact = read_artifact(options['input'])
        base = (artifact.get('config') or {}).get('params') or {}
        return self.make_config(
            options,
            resolve_params(options, base=base),
            input=options['input'],
            nodes=options.get('nodes') or setting('CHOREO2C_NODES'),
        )
