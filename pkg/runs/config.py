"""
Resolved configuration of one CLI run.

Everything a command needs (parameters, defaulted options, seed) ends up in
RunConfig.as_dict(), which is echoed verbatim into the output header.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from core.exceptions import DomainError

from runs.forms import ProblemParamsForm

logger = logging.getLogger(__name__)

COMMANDS = ('predict', 'minimize', 'verify', 'sweep', 'export')
FORMATS = ('json', 'csv')
CSV_COMMANDS = ('sweep', 'export')

DEFAULT_PARAMS = {'alpha': 1.0, 'beta': 1.0, 'm': 1.0, 'M': 1.0, 'n': 3}
PARAM_FLAGS = ('alpha', 'beta', 'm', 'M', 'n')


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: object
    options: dict = field(default_factory=dict)
    out_path: str = None
    format: str = 'json'

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise DomainError(f"format must be one of {', '.join(FORMATS)}")
        if self.format == 'csv' and self.command not in CSV_COMMANDS:
            raise DomainError(f"{self.command} only writes json")
        if self.out_path is not None and not Path(self.out_path).resolve().parent.is_dir():
            raise DomainError(f"output directory of {self.out_path} does not exist")

    def as_dict(self):
        return {
            'command': self.command,
            'params': None if self.params is None else self.params.as_dict(),
            'options': dict(self.options),
            'format': self.format,
        }


def load_params_option(value):
    """--params takes an inline JSON object or the path of a JSON file."""
    if value is None:
        return {}
    text = value
    if not value.lstrip().startswith('{'):
        try:
            text = Path(value).read_text()
        except OSError as e:
            raise DomainError(f"cannot read --params file {value}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DomainError(f"--params is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise DomainError("--params must be a JSON object")
    return data


def explicit_params(options):
    """True when the user passed any physical parameter."""
    return options.get('params') is not None or any(options.get(name) is not None for name in PARAM_FLAGS)


def resolve_params(options, base=None):
    """
    Defaults < base (the params of an input artifact) < --params JSON < explicit
    flags, validated by ProblemParamsForm.

    Raises:
        DomainError with every form error on one line.
    """
    data = dict(DEFAULT_PARAMS)
    data.update(base or {})
    data.update(load_params_option(options.get('params')))
    data.update({name: options[name] for name in PARAM_FLAGS if options.get(name) is not None})

    form = ProblemParamsForm(data=data)
    if not form.is_valid():
        message = form.error_message()
        logger.error(f"❌ Parámetros inválidos: {message}")
        raise DomainError(message)
    return form.cleaned_data['params']
