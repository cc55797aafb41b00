from core.conf import setting
from core.exceptions import DomainError
from runs.config import resolve_params
from runs.management.base import ChoreoCommand


def parse_masses(value):
    """'0.5,1,2' -> [0.5, 1.0, 2.0]."""
    try:
        masses = [float(part) for part in value.split(',') if part.strip()]
    except ValueError as e:
        raise DomainError(f"--m must be a comma-separated list of numbers: {e}") from e
    if not masses:
        raise DomainError("--m needs at least one mass")
    return masses


class Command(ChoreoCommand):
    help = 'Barre la masa m y reporta lambda~ y R* para cada valor'
    command = 'sweep'
    formats = ('csv', 'json')

    def add_command_arguments(self, parser):
        parser.add_argument('--tol', type=float, help='Tolerancia sobre |F(lambda)|')

    def build_config(self, options):
        if options.get('m') is None:
            raise DomainError("sweep needs --m with a comma-separated list of masses")
        masses = parse_masses(options['m'])
        params = resolve_params({**options, 'm': masses[0]})
        tol = options.get('tol') or setting('CHOREO2C_ROOT_TOL')
        return self.make_config(options, params, m_values=masses, tol=tol)
