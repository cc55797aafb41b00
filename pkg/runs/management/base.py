"""
Shared plumbing of the choreo2c commands: physical-parameter flags, output
flags, and the translation of typed errors into exit codes.
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import Choreo2cError

from runs.config import RunConfig
from runs.pipeline import exit_code_for, run

logger = logging.getLogger(__name__)


class ChoreoCommand(BaseCommand):
    command = None
    formats = ('json',)

    def add_arguments(self, parser):
        group = parser.add_argument_group('parámetros físicos')
        group.add_argument('--alpha', type=str, help='Exponente del potencial mutuo')
        group.add_argument('--beta', type=str, help='Exponente del potencial de los centros')
        group.add_argument('--m', type=str, help='Masa de cada cuerpo')
        group.add_argument('--M', type=str, help='Masa de cada centro')
        group.add_argument('--n', type=str, help='Número de cuerpos')
        group.add_argument('--params', type=str, help='Objeto JSON (o archivo) con alpha, beta, m, M, n, c1, c2')
        parser.add_argument('--out', type=str, help='Archivo de salida (por defecto stdout)')
        parser.add_argument('--format', type=str, default=self.formats[0], choices=self.formats)
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def build_config(self, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            config = self.build_config(options)
        except Choreo2cError as e:
            raise CommandError(str(e), returncode=exit_code_for(e))

        result = run(config)
        if config.out_path is None:
            self.stdout.write(result.text, ending='')
        if result.exit_code != 0:
            raise CommandError(result.message, returncode=result.exit_code)
        if config.out_path is not None:
            self.stderr.write(self.style.SUCCESS(f'✅ {config.command} -> {config.out_path}'))

    def make_config(self, options, params, **command_options):
        return RunConfig(
            command=self.command,
            params=params,
            options=command_options,
            out_path=options.get('out'),
            format=options.get('format') or self.formats[0],
        )
