"""Finite ordered semirings, idempotent functionals and convolution algebras."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
