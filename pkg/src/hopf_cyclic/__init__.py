"""Exact verification toolkit for Hopf-cyclic cohomology of module algebras."""

from __future__ import annotations

__version__ = "0.1.0"

from .hopf import FinAlgebra, FinHopf, TensorElem
from .report import Check, Report, VerificationError
from .scalars import LaurentFrac

__all__ = ["Check", "FinAlgebra", "FinHopf", "LaurentFrac", "Report", "TensorElem", "VerificationError", "__version__"]
