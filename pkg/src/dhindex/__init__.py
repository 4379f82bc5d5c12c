"""Index of cyclotomic mappings and the Diffie-Hellman mapping on finite cyclic groups."""
from ._kernels import BACKEND
from .cycmap import (
    BiCyclotomicMap,
    BiExpMap,
    CyclotomicMap,
    ExpMap,
    GroupCtx,
    IndexWitness,
    compute_index,
    minimal_index_pairs,
    representable_at,
    to_expmap,
)
from .dh import dh_bi, dh_uni, thm1_witness
from .modarith import factorize, solve_quadratic

__version__ = "0.1.0"
