"""Exact-arithmetic relative homological algebra over finite-dimensional
quiver algebras.

Layers, bottom up: exact linear algebra over Q and F_p (matrix), path
algebras and quiver representations (quiver, rep), the relative theory for
F = F_{add G} (relative), bounded complexes and derived Homs (complexes),
F-tilting verification and endomorphism algebras (tilting), structure-
constant algebras (algebra), the headline dimension-bound checks (bounds),
and a JSON problem-file front end (schema, cli).
"""

from .fields import PrimeField, QQ, RationalField
from .matrix import Matrix, kernel_basis, rank, rref, solve
from .quiver import PathAlgebra, Quiver, build_algebra
from .rep import (
    ModuleMap,
    Representation,
    ShortExactSeq,
    dtr,
    hom_space,
    injective,
    is_isomorphic,
    projective,
    simple,
)
from .relative import (
    FResolution,
    SubbifunctorF,
    SummandDecl,
    ext_f,
    f_resolution,
    findim_f,
    gldim_f,
    id_f,
    is_f_exact,
    is_f_frobenius,
    pd_f,
    relative_injectives,
    right_approximation,
)
from .complexes import (
    ChainMap,
    Complex,
    cone,
    hom_df,
    hom_k,
    is_f_acyclic,
    is_f_quasi_iso,
    radical_normalize,
    shift_complex,
    stalk_complex,
    term_length,
    triangle_from_f_exact,
)
from .tilting import end_algebra, image_tilting_over_sigma, verify_f_tilting
from .algebra import AbstractAlgebra, AbstractModule, ext_dim, gldim, injdim, is_gorenstein, pd
from .bounds import corollary710_check, gorenstein_check, prop63_64_counts, theorem73_check
from .schema import load_problem, parse_problem

__version__ = "0.1.0"
