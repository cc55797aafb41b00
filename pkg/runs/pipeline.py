"""
One command, one pipeline: run(config) executes it and renders the artifact.

Artifacts are deterministic: JSON is dumped with sorted keys and CSV rows use
repr-exact floats, so the same config and seed give byte-identical files.
"""
import csv
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from analytic.solver import radius_sweep, solve_lambda
from core.conf import setting
from core.exceptions import (
    Choreo2cError,
    CollisionError,
    ConvergenceError,
    DegenerateError,
    DomainError,
    StalledError,
)
from minimize.optimizer import MinimizeOptions, multistart
from trajectory.choreography import ChoreographySystem
from trajectory.exporters import choreography_to_rows, path_from_json
from verify.dynamics import ode_residual
from verify.geometry import circle_fit
from verify.inequalities import check_lower_bound
from verify.suites import run_suite

from runs.serializers import (
    EXPORT_COLUMNS,
    SWEEP_COLUMNS,
    serialize_export,
    serialize_minimize,
    serialize_predict,
    serialize_suite,
    serialize_sweep,
    sweep_rows,
    to_builtin,
)

logger = logging.getLogger(__name__)

OK = 0
CONFIG_ERROR = 1
STALL = 2
COLLISION = 3
VERIFICATION_FAILURE = 4

EXIT_CODES = (
    (DomainError, CONFIG_ERROR),
    (StalledError, STALL),
    (ConvergenceError, STALL),
    (CollisionError, COLLISION),
    (DegenerateError, VERIFICATION_FAILURE),
)


FAILURE_MESSAGES = {
    STALL: "{command}: did not converge within the iteration budget",
    VERIFICATION_FAILURE: "{command}: verification failed",
}


def exit_code_for(error):
    for kind, code in EXIT_CODES:
        if isinstance(error, kind):
            return code
    return CONFIG_ERROR


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    text: str
    message: str = ''


def read_artifact(path):
    """Load a JSON artifact written by a previous run."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise DomainError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise DomainError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict) or 'result' not in data:
        raise DomainError(f"{path} is not a choreo2c artifact")
    return data


def _predict(config):
    report = solve_lambda(config.params, tol=config.options.get('tol'))
    return serialize_predict(report), None, OK


def _minimize(config):
    options = config.options
    opts = MinimizeOptions(
        max_iters=options['max_iters'],
        grad_tol=options['tol'],
        use_antiperiodic=options['antiperiodic'],
        seed=options['seed'],
        order=options['order'],
        nodes=options['nodes'],
    )
    best = multistart(config.params, opts, n_starts=options['starts'])

    try:
        fit = circle_fit(best.path, opts.nodes)
    except DegenerateError as e:
        logger.warning(f"⚠️ Sin ajuste circular: {e}")
        fit = None
    try:
        residual = ode_residual(best.path, config.params, opts.nodes)
    except CollisionError as e:
        logger.warning(f"⚠️ Sin residuo dinámico: {e}")
        residual = None
    try:
        analytic = solve_lambda(config.params)
    except Choreo2cError as e:
        logger.warning(f"⚠️ Sin predicción analítica: {e}")
        analytic = None

    result = serialize_minimize(best, fit, residual, analytic)
    if analytic is not None:
        bound = check_lower_bound(best.path, config.params, opts.quadrature, report=analytic)
        if not bound.holds:
            logger.warning(f"⚠️ Acción {bound.lhs:.12g} por debajo de la cota inferior {bound.rhs:.12g}: revisar")
        result['lower_bound'] = bound.as_dict()
    return result, None, OK if best.converged else STALL


def _verify(config):
    options = config.options
    summary = run_suite(options['suite'], options['paths'], options['seed'], config.params)
    return serialize_suite(summary), None, OK if summary.ok else VERIFICATION_FAILURE


def _sweep(config):
    points = radius_sweep(config.params, config.options['m_values'], tol=config.options.get('tol'))
    return serialize_sweep(points), (SWEEP_COLUMNS, sweep_rows(points)), OK


def _export(config):
    data = read_artifact(config.options['input'])
    try:
        path_data = data['result']['path']
    except (KeyError, TypeError) as e:
        raise DomainError(f"{config.options['input']} holds no path (export needs a minimize output)") from e
    system = ChoreographySystem(path_from_json(path_data), config.params.n)
    rows = choreography_to_rows(system, config.options['nodes'])
    return serialize_export(rows), (EXPORT_COLUMNS, rows), OK


PIPELINES = {
    'predict': _predict,
    'minimize': _minimize,
    'verify': _verify,
    'sweep': _sweep,
    'export': _export,
}


def render_json(config, result=None, error=None):
    document = {
        'format_version': setting('CHOREO2C_FORMAT_VERSION'),
        'config': config.as_dict(),
    }
    if result is not None:
        document['result'] = result
    if error is not None:
        document['error'] = error
    return json.dumps(document, sort_keys=True, indent=2, default=to_builtin) + '\n'


def render_csv(config, columns, rows):
    buffer = io.StringIO()
    buffer.write(f"# format_version: {setting('CHOREO2C_FORMAT_VERSION')}\n")
    buffer.write(f"# config: {json.dumps(config.as_dict(), sort_keys=True, default=to_builtin)}\n")
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def _write(config, text):
    if config.out_path is not None:
        Path(config.out_path).write_text(text)
        logger.info(f"✅ Artefacto escrito en {config.out_path}")


def run(config):
    """
    Execute config.command and write its artifact to config.out_path (when set).

    Typed failures become an exit code and an error artifact; a stalled
    minimization still ships its last iterate.
    """
    logger.info(f"🚀 Ejecutando '{config.command}'")
    try:
        result, table, code = PIPELINES[config.command](config)
    except Choreo2cError as e:
        code = exit_code_for(e)
        logger.error(f"❌ '{config.command}' terminó con código {code}: {e}")
        partial = None
        if isinstance(e, StalledError) and e.report is not None:
            partial = serialize_minimize(e.report)
        error = {'type': type(e).__name__, 'message': str(e), 'exit_code': code}
        text = render_json(config, partial, error)
        _write(config, text)
        return RunResult(code, text, str(e))

    if config.format == 'csv':
        text = render_csv(config, *table)
    else:
        text = render_json(config, result)
    _write(config, text)
    message = '' if code == OK else FAILURE_MESSAGES[code].format(command=config.command)
    return RunResult(code, text, message)
