"""Birman-Schwinger analysis of the relativistic Herbst operator."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, NumericalError, __doc__  # noqa: F401

__version__ = "0.1.0"
