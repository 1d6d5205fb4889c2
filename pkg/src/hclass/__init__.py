"""Generalised Hurwitz class numbers, Kloosterman zeta functions and checks of the identities linking them."""

from .kernels import BACKEND
from .rational import GaussianRational, PiRational, Rational
from .cohen import QSeries, cohen_eisenstein_series, hurwitz_class_number
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GaussianRational",
    "PiRational",
    "QSeries",
    "Rational",
    "VerificationReport",
    "cohen_eisenstein_series",
    "hurwitz_class_number",
]
