"""Composite carbon-finance index toolkit: Python bindings for the C++ core."""

from ._core import (
    CfiError,
    Coefficient,
    HausmanResult,
    RegressionResult,
    aggregate,
    average_ranks,
    cv_weights,
    diversity_factor,
    equal_weights,
    estimate_emissions,
    fixed_effects,
    hausman,
    normalize_ln,
    normalize_maut,
    normalize_vn,
    pooled_ols,
    random_effects,
    spearman,
    ssm_loss,
)

__all__ = [
    "CfiError",
    "Coefficient",
    "HausmanResult",
    "RegressionResult",
    "aggregate",
    "average_ranks",
    "cv_weights",
    "diversity_factor",
    "equal_weights",
    "estimate_emissions",
    "fixed_effects",
    "hausman",
    "normalize_ln",
    "normalize_maut",
    "normalize_vn",
    "pooled_ols",
    "random_effects",
    "spearman",
    "ssm_loss",
]
