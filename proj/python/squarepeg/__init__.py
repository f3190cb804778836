"""Inscribed-square toolkit: curve constructions and square enumeration.

Thin wrappers around the native module; curve specs, solver configs and
reports cross the boundary as JSON, exposed here as plain dicts.
"""

import json as _json

from ._core import (  # noqa: F401
    Curve,
    critical_c as _critical_c,
    find_squares as _find_squares,
    graph_height,
    locus,
    max_convex_c,
    n_square as _n_square,
    nonsmooth_two_square as _nonsmooth_two_square,
    oracle_squares as _oracle_squares,
    render_svg as _render_svg,
    smooth_two_square as _smooth_two_square,
    unit_circle as _unit_circle,
)

__version__ = "0.1.0"


def _spec_str(spec):
    if isinstance(spec, str):
        return spec
    return _json.dumps(spec)


def unit_circle():
    return _json.loads(_unit_circle())


def nonsmooth_two_square():
    return _json.loads(_nonsmooth_two_square())


def smooth_two_square(c, a=0.02):
    return _json.loads(_smooth_two_square(c, a))


def n_square(n, c=None, a=0.02):
    return _json.loads(_n_square(n, c, a))


def curve(spec):
    return Curve(_spec_str(spec))


def find_squares(spec, config=None):
    config_str = "" if config is None else _json.dumps(config)
    return _json.loads(_find_squares(_spec_str(spec), config_str))


def oracle_squares(spec, resolution=512, config=None):
    config_str = "" if config is None else _json.dumps(config)
    return _json.loads(_oracle_squares(_spec_str(spec), resolution, config_str))


def critical_c(low=1.0, high=1.4, a=0.02):
    return _json.loads(_critical_c(low, high, a))


def render_svg(spec, report=None, locus=False):
    report_str = "" if report is None else _json.dumps(report)
    return _render_svg(_spec_str(spec), report_str, locus)
