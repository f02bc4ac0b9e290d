"""klv-forge: exact twisted Kazhdan-Lusztig-Vogan data for the doubled
general linear group with its swap twist, and the Arthur-packet stable
characters of quasisplit unitary groups in the stable standard basis."""

__version__ = "0.1.0"

from .laurent import ConventionError, HalfLaurent
from .params import Block, BlockParam, get_block
from .rootdata import InfChar, canonical_lambda

__all__ = [
    "Block",
    "BlockParam",
    "ConventionError",
    "HalfLaurent",
    "InfChar",
    "canonical_lambda",
    "get_block",
    "__version__",
]
