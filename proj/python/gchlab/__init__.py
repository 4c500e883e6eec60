"""Python bindings for the generalized Camassa-Holm laboratory."""

try:
    from ._gchlab import *  # noqa: F401,F403
    from ._gchlab import __doc__ as _core_doc
except ImportError:  # built in-tree: extension lives next to the package
    from _gchlab import *  # noqa: F401,F403
    from _gchlab import __doc__ as _core_doc

__all__ = [
    "GridSpec",
    "BesovParams",
    "DyadicFilterBank",
    "TimeControls",
    "dyadic_block",
    "low_cutoff",
    "lp_norm",
    "besov_norm",
    "derivative",
    "helmholtz_inverse",
    "momentum",
    "make_initial_data",
    "simulate",
    "run_lagrange",
    "iterate",
    "run_experiment_text",
]
