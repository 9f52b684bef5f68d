from .loader import load_scheme
from .schemes import SchemeModel

__all__ = ["load_scheme", "SchemeModel"]
