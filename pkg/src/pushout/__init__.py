"""Exact double centralizers, push-out derivations and dual-module checks
for finite-dimensional algebras over the rationals."""

from .algebra import Algebra, Envelope, identity_envelope, new_algebra, new_envelope, unitization
from .bimodule import Bimodule, balanced_tensor, dual_module, new_bimodule, regular, restrict
from .centralizer import CentralizerPair, attach_envelope_actions, double_centralizer, iota
from .derivation import Derivation, h1, new_derivation, pull_back_inner, pushout, pushout_unique
from .duality import dual_iso, factorization_check
from .errors import DocumentError, PushoutError, ValidationError

__all__ = [
    "Algebra", "Envelope", "identity_envelope", "new_algebra", "new_envelope", "unitization",
    "Bimodule", "balanced_tensor", "dual_module", "new_bimodule", "regular", "restrict",
    "CentralizerPair", "attach_envelope_actions", "double_centralizer", "iota",
    "Derivation", "h1", "new_derivation", "pull_back_inner", "pushout", "pushout_unique",
    "dual_iso", "factorization_check",
    "DocumentError", "PushoutError", "ValidationError",
]
__version__ = "0.1.0"
