from .constants import VERSION
from .exceptions import OimBaseException

__version__ = VERSION

__all__ = ["OimBaseException"]
