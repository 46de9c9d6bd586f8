"""Index-theorem numerics on Taub-NUT space (Python bindings)."""

import json

from ._core import (
    TnIndexError,
    assemble_json,
    boundary_data,
    bulk_action,
    curvature,
    eta,
    eta_integral,
    field_strength,
    index_formula,
    integrality_check,
    metric_at,
    poisson_check,
    pontryagin_integral,
    run_config,
    vertical_spectrum,
)


def assemble(channels, grav="numeric", route="bernoulli", n_r=256):
    """IndexReport as a dict; channels are (lambda, m, chern) triples."""
    return json.loads(assemble_json(channels, grav=grav, route=route, n_r=n_r))


__all__ = [
    "TnIndexError",
    "assemble",
    "assemble_json",
    "boundary_data",
    "bulk_action",
    "curvature",
    "eta",
    "eta_integral",
    "field_strength",
    "index_formula",
    "integrality_check",
    "metric_at",
    "poisson_check",
    "pontryagin_integral",
    "run_config",
    "vertical_spectrum",
]
