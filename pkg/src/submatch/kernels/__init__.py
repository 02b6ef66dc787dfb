"""Kernel backend selection.

The compiled extension `_fastkern` is preferred when it imported cleanly;
`pure` (NumPy) is the fallback. Selection happens once at import, can be
forced with the environment variable ``SUBMATCH_BACKEND=pure|compiled``,
and can be switched at runtime with :func:`use_backend` (the benchmark
uses this to compare the two).
"""

from __future__ import annotations

import os

from . import pure as _pure

try:
    from . import _fastkern as _compiled
except ImportError:
    _compiled = None

__all__ = [
    "available_backends",
    "backend_name",
    "bip_match_size",
    "exact_hall_layer",
    "neigh_count_u8",
    "neigh_max_f64",
    "neigh_max_u8",
    "neigh_min_f64",
    "neigh_min_u8",
    "neigh_sum_f64",
    "use_backend",
]

_BACKENDS = {"pure": _pure}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled


def _default_backend():
    forced = os.environ.get("SUBMATCH_BACKEND", "").strip().lower()
    if forced:
        if forced not in _BACKENDS:
            raise ImportError(
                f"SUBMATCH_BACKEND={forced!r} is not available; "
                f"choices: {sorted(_BACKENDS)}"
            )
        return _BACKENDS[forced]
    return _BACKENDS.get("compiled", _pure)


_active = _default_backend()


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def backend_name() -> str:
    return _active.BACKEND_NAME


def use_backend(name: str) -> str:
    """Switch the active backend; returns the previously active name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choices: {sorted(_BACKENDS)}")
    previous = _active.BACKEND_NAME
    _active = _BACKENDS[name]
    return previous


def neigh_sum_f64(indptr, indices, m):
    return _active.neigh_sum_f64(indptr, indices, m)


def neigh_max_f64(indptr, indices, m):
    return _active.neigh_max_f64(indptr, indices, m)


def neigh_min_f64(indptr, indices, m):
    return _active.neigh_min_f64(indptr, indices, m)


def neigh_max_u8(indptr, indices, m):
    return _active.neigh_max_u8(indptr, indices, m)


def neigh_min_u8(indptr, indices, m):
    return _active.neigh_min_u8(indptr, indices, m)


def neigh_count_u8(indptr, indices, m):
    return _active.neigh_count_u8(indptr, indices, m)


def exact_hall_layer(t_indptr, t_indices, q_indptr, q_indices, s, s0):
    return _active.exact_hall_layer(t_indptr, t_indices, q_indptr, q_indices, s, s0)


def bip_match_size(n_left, n_right, indptr, indices):
    return _active.bip_match_size(n_left, n_right, indptr, indices)
