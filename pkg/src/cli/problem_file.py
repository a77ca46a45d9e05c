"""
Problem files: versioned JSON descriptions of a bound computation.

Example::

    {
      "format": "rbf-v1",
      "form": "ordinary",
      "t": 3,
      "n": 2,
      "a": [1, 1],
      "b": [2, 2],
      "class": "M1"
    }

Decoupled problems add the Y-list profile arrays ``c`` and ``d``.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from jsonschema import Draft7Validator

from config.settings import PROBLEM_FORMAT
from distributions.symmetric_dist import ClassKind, MomentProfile
from moments.moment_engine import FormKind
from utils.error_handler import MomentBoundError, ProblemFileError

logger = logging.getLogger(__name__)

_PROFILE_ARRAY = {'type': 'array', 'items': {'type': 'number', 'minimum': 0}, 'minItems': 2}

PROBLEM_SCHEMA = {
    'type': 'object',
    'properties': {
        'format': {'const': PROBLEM_FORMAT},
        'form': {'enum': [k.value for k in FormKind]},
        't': {'type': 'number', 'exclusiveMinimum': 2},
        'n': {'type': 'integer', 'minimum': 2},
        'a': _PROFILE_ARRAY,
        'b': _PROFILE_ARRAY,
        'c': _PROFILE_ARRAY,
        'd': _PROFILE_ARRAY,
        'class': {'enum': [k.value for k in ClassKind]},
        'seed': {'type': 'integer', 'minimum': 0},
    },
    'required': ['format', 'form', 't', 'n', 'a', 'b'],
    'additionalProperties': False,
}

_VALIDATOR = Draft7Validator(PROBLEM_SCHEMA)

@dataclass(frozen=True)
class ProblemFile:
    """A parsed and validated problem."""
    form: FormKind
    t: float
    n: int
    x_profiles: Tuple[MomentProfile, ...]
    y_profiles: Tuple[MomentProfile, ...] = field(default_factory=tuple)
    class_kind: ClassKind = ClassKind.M1
    seed: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            'format': PROBLEM_FORMAT,
            'form': self.form.value,
            't': self.t,
            'n': self.n,
            'a': [p.a for p in self.x_profiles],
            'b': [p.b for p in self.x_profiles],
            'class': self.class_kind.value,
        }
        if self.y_profiles:
            payload['c'] = [p.a for p in self.y_profiles]
            payload['d'] = [p.b for p in self.y_profiles]
        if self.seed is not None:
            payload['seed'] = self.seed
        return payload

def key_line(text: str, key: Optional[str]) -> int:
    """1-based line of the first occurrence of ``"key":`` in the text (1 if absent)."""
    if key is None:
        return 1
    match = re.search(rf'"{re.escape(key)}"\s*:', text)
    if match is None:
        return 1
    return text.count("\n", 0, match.start()) + 1

def _profiles(values: List[float], moments: List[float], t: float,
              class_kind: ClassKind) -> Tuple[MomentProfile, ...]:
    return tuple(MomentProfile(v, m, t, class_kind) for v, m in zip(values, moments))

def parse_problem(text: str, path: str = "<string>") -> ProblemFile:
    """
    Parse and validate problem file text.

    Args:
        text: JSON document
        path: Source name used in error messages

    Returns:
        Parsed problem

    Raises:
        ProblemFileError: On malformed JSON, schema violations or infeasible profiles
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFileError(path, e.lineno, f"invalid JSON: {e.msg}") from e

    if not isinstance(raw, dict):
        raise ProblemFileError(path, 1, "top level must be an object")

    errors = sorted(_VALIDATOR.iter_errors(raw), key=lambda err: [str(p) for p in err.path])
    if errors:
        first = errors[0]
        key = str(first.path[0]) if first.path else None
        if key is None and first.validator == 'additionalProperties':
            extra = sorted(set(raw) - set(PROBLEM_SCHEMA['properties']))
            key = extra[0] if extra else None
        raise ProblemFileError(path, key_line(text, key), first.message)

    form = FormKind(raw['form'])
    n = int(raw['n'])
    t = float(raw['t'])
    class_kind = ClassKind(raw.get('class', ClassKind.M1.value))

    for name in ('a', 'b'):
        if len(raw[name]) != n:
            raise ProblemFileError(path, key_line(text, name), f"'{name}' has {len(raw[name])} entries, expected n={n}")
    if form is FormKind.DECOUPLED:
        for name in ('c', 'd'):
            if name not in raw:
                raise ProblemFileError(path, 1, f"decoupled problems need '{name}'")
            if len(raw[name]) != n:
                raise ProblemFileError(path, key_line(text, name), f"'{name}' has {len(raw[name])} entries, expected n={n}")
    else:
        for name in ('c', 'd'):
            if name in raw:
                raise ProblemFileError(path, key_line(text, name), f"'{name}' only applies to decoupled problems")

    try:
        x_profiles = _profiles(raw['a'], raw['b'], t, class_kind)
    except MomentBoundError as e:
        raise ProblemFileError(path, key_line(text, 'b'), str(e)) from e
    y_profiles: Tuple[MomentProfile, ...] = ()
    if form is FormKind.DECOUPLED:
        try:
            y_profiles = _profiles(raw['c'], raw['d'], t, class_kind)
        except MomentBoundError as e:
            raise ProblemFileError(path, key_line(text, 'd'), str(e)) from e

    logger.debug(f"Parsed {form.value} problem from {path}: t={t}, n={n}, class={class_kind.value}")
    return ProblemFile(form, t, n, x_profiles, y_profiles, class_kind, raw.get('seed'))

def load_problem(path: str) -> ProblemFile:
    """
    Load a problem file from disk.

    Args:
        path: Path to the JSON problem file

    Returns:
        Parsed problem
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ProblemFileError(path, 1, f"cannot read file: {e.strerror}") from e
    return parse_problem(text, path)
