"""Oscillation criteria and simulation for neutral delay dynamic equations on time scales."""

import json

from . import _tsosc
from ._tsosc import TimeScale, TsoscError, g_poly, h_poly, q_gamma

__all__ = [
    "TimeScale",
    "TsoscError",
    "g_poly",
    "h_poly",
    "q_gamma",
    "kiguradze_profile",
    "verify_philos",
    "threshold_closed_form",
    "reproduce_example",
    "render_config",
    "simulate",
]


def kiguradze_profile(points, values, n, strict_tol=1e-12):
    """Sign pattern (m, s) of sampled f with f > 0 and f^{Delta^n} <= 0."""
    return json.loads(_tsosc.kiguradze_profile(list(points), list(values), n, strict_tol))


def verify_philos(points, values, n):
    return json.loads(_tsosc.verify_philos(list(points), list(values), n))


def threshold_closed_form(example, **params):
    return json.loads(_tsosc.threshold_closed_form(example, {k: float(v) for k, v in params.items()}))


def reproduce_example(example, horizon=0, window=0, gamma=0.25, fine=False, **params):
    """Threshold, criteria, conclusion and simulation summary of a worked example."""
    text = _tsosc.reproduce_example(example, {k: float(v) for k, v in params.items()}, horizon, window, gamma, fine)
    return json.loads(text)


def render_config(config):
    """Validated config text, as a dict or JSON string, rendered back to JSON."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return _tsosc.render_config(config)


def simulate(config, horizon=0):
    """Trace columns index, t, x, z plus sign changes and trend."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return json.loads(_tsosc.simulate(config, horizon))
