"""Corpus-contrast toolkit: keyness, collocation statistics, word sketches,
pattern contrast, MARVS event profiles and KWIC concordancing."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
