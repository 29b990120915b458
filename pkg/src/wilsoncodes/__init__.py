"""Binary codes from subset-inclusion matrices.

Minimum-distance knowledge for the codes C_{t,n,k} = ker W_{t,n,k}, binary
t-designs, an ILP-backed search for small 3-designs, quasi-cyclic lifting of
the inclusion matrices and iterative decoding of the lifted LDPC codes.
"""

from .errors import DomainError, PurgeFailed
from .gf2 import BitMatrix, min_nonzero_weight, nullspace_basis, rank
from .wilson import SubsetOrder, WilsonParams, binom_parity, build_wilson, code_dimension, wilson_rank

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "DomainError",
    "PurgeFailed",
    "SubsetOrder",
    "WilsonParams",
    "binom_parity",
    "build_wilson",
    "code_dimension",
    "min_nonzero_weight",
    "nullspace_basis",
    "rank",
    "wilson_rank",
]
