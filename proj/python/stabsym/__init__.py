"""Stability of group symmetrizers on multiaffine polynomials.

Groups, polynomials and group-algebra elements are passed in the same text
formats the ``stabsym`` command reads. Reports come back as dicts.
"""

import json

from . import _core
from ._core import (
    ConvergenceError,
    ParseError,
    PreconditionError,
    SCHEMA_VERSION,
    canonical_group,
    evaluate,
    has_coincidence_property,
    preserves_stability,
    symmetrize,
)

__all__ = [
    "ConvergenceError",
    "ParseError",
    "PreconditionError",
    "SCHEMA_VERSION",
    "analyze_group",
    "canonical_group",
    "coincidence_counterexample",
    "counterexample",
    "evaluate",
    "grace_check",
    "gws_check",
    "has_coincidence_property",
    "poly",
    "preserves_stability",
    "stability_check",
    "survey",
    "symmetrize",
]


def poly(nvars, terms):
    """Polynomial text from ``{(1-based vars...): coefficient}``.

    Coefficients may be ints, ``fractions.Fraction``, strings ``"p/q"`` or
    pairs ``(re, im)`` of those.
    """

    def part(x):
        return x if isinstance(x, str) else str(x)

    out = []
    for vars_, c in terms.items():
        re, im = c if isinstance(c, tuple) else (c, 0)
        out.append({"vars": sorted(vars_), "re": part(re), "im": part(im)})
    return json.dumps({"nvars": nvars, "terms": out})


def _wrap(fn):
    def call(*args, **kwargs):
        return json.loads(fn(*args, **kwargs))

    call.__name__ = fn.__name__
    call.__doc__ = fn.__doc__
    return call


analyze_group = _wrap(_core.analyze_group)
stability_check = _wrap(_core.stability_check)
grace_check = _wrap(_core.grace_check)
counterexample = _wrap(_core.counterexample)
coincidence_counterexample = _wrap(_core.coincidence_counterexample)
gws_check = _wrap(_core.gws_check)
survey = _wrap(_core.survey)
