"""Finite computations for derivators and 2-derivators.

Modules: ``core`` (finite categories), ``finset`` (set-valued diagrams),
``kan`` and ``derivator`` (Kan extensions and the Der axioms), ``twocat``
(finite 2-categories), ``collage``, ``simplicial``, ``hder``, ``serialize``
and ``cli``.
"""
from .core import FinCategory, Functor, NatTrans
from .errors import DerlabError, ValidationError
from .report import Report

__version__ = "0.1.0"

__all__ = ["DerlabError", "FinCategory", "Functor", "NatTrans", "Report", "ValidationError", "__version__"]
