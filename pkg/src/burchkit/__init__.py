"""Exact graded-module toolkit: Burch and weakly m-full submodules, Tor/Ext, semigroups."""

from .errors import InputError, InsufficientWindow, InvariantBreach
from .exactla import FieldSpec, Matrix, kernel_basis, membership, rref
from .ring import MonomialQuotientRing, RingElem, normalize_ideal

__version__ = "0.1.0"
