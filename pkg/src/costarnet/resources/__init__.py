"""Analysis resource implementations."""

from .index import Index
from .models import Models
from .networks import Networks
from .subgroups import Subgroups

__all__ = [
    "Index",
    "Models",
    "Networks",
    "Subgroups",
]
