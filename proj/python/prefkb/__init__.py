"""Preference knowledge base: situations, descriptions, preference orders, decisions and queries."""

from ._core import *  # noqa: F401,F403
from ._core import Error, KnowledgeBase  # noqa: F401

__version__ = "0.1.0"
