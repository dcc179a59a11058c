from __future__ import annotations

from riesz_lab.pwl.function import (
    PwlFunc,
    disjoint_tents,
    pwl_abs,
    pwl_add,
    pwl_eval,
    pwl_join,
    pwl_l1_norm,
    pwl_leq,
    pwl_max_slope,
    pwl_meet,
    pwl_negate,
    pwl_scale,
    pwl_sup_norm,
    ramp_family,
    tent_family,
)

__all__ = [
    "PwlFunc",
    "disjoint_tents",
    "pwl_abs",
    "pwl_add",
    "pwl_eval",
    "pwl_join",
    "pwl_l1_norm",
    "pwl_leq",
    "pwl_max_slope",
    "pwl_meet",
    "pwl_negate",
    "pwl_scale",
    "pwl_sup_norm",
    "ramp_family",
    "tent_family",
]
