"""Mixing diagnostics for copula-based Markov chains.

Thin wrapper around the compiled ``_copmix`` extension. Functions that return
structured reports decode them into dictionaries.
"""

import json as _json

from ._copmix import (  # noqa: F401
    SCHEMA_VERSION,
    CopmixError,
    arch_root,
    dmr_sandwich,
    eigenvalues,
    families,
    ks_two_sample,
    ks_uniform,
    rho1,
    simulate,
    simulate_mh_kernel,
)
from . import _copmix


def validate(family, params=(), n=256, scheme="midpoint"):
    return _json.loads(_copmix.validate_json(family, list(params), n, scheme))


def mixing_report(family, params=(), nmax=5, n=512):
    return _json.loads(_copmix.mixing_report_json(family, list(params), nmax, n))


def bound(name, family, params=(), n=512, scheme="midpoint"):
    return _json.loads(_copmix.bound_json(name, family, list(params), n, scheme))


def drift(a, b, n=512, scheme="midpoint"):
    return _json.loads(_copmix.drift_json(a, b, n, scheme))


def run_checks(n=512, seed=42):
    """Checks 1..9 of the acceptance suite as a list of dictionaries."""
    return _json.loads(_copmix.checks_json(n, seed))
