"""Exact computer algebra for the quantum Euclidean space R_q^3.

Coefficients live in Q(s) with s = q^(1/2).  The modules build on each other:
``scalars`` (the field), ``rmatrix`` (the braid matrix and its projectors),
``algebra`` (PBW normal forms), ``calculus`` (forms, frame, d),
``connection`` (sigma, D, curvature, metric), and ``dsl``/``checks``/``cli``.
"""
from .algebra import AlgElem, alg_equal
from .calculus import FormElem
from .checks import CheckReport, run_suite
from .connection import TensorElem
from .dsl import evaluate, parse
from .scalars import QS, PoleError, Scalar, numeric_field

__all__ = [
    "AlgElem", "CheckReport", "FormElem", "PoleError", "QS", "Scalar", "TensorElem",
    "alg_equal", "evaluate", "numeric_field", "parse", "run_suite",
]
