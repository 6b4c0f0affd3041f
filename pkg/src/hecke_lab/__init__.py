"""hecke-lab: exact and numeric checks for Hecke characters over real quadratic fields."""

from .cyclo import (
    CycNum,
    GaloisElement,
    embed_complex,
    fixing_subgroup,
    galois_apply,
    rel_trace,
    root_of_unity,
)
from .quadfield import QuadField, QuadIdeal, QuadInt, ideals_of_norm, prime_splitting
from .rayclass import (
    HeckeChar,
    RayClassGroup,
    characters,
    cyclotomic_char,
    hecke_gauss_sum,
    ray_class_group,
)
from .resid import DirichletChar, KloostermanQuery, gauss_sum, kloosterman

__all__ = [
    "CycNum",
    "GaloisElement",
    "embed_complex",
    "fixing_subgroup",
    "galois_apply",
    "rel_trace",
    "root_of_unity",
    "QuadField",
    "QuadIdeal",
    "QuadInt",
    "ideals_of_norm",
    "prime_splitting",
    "HeckeChar",
    "RayClassGroup",
    "characters",
    "cyclotomic_char",
    "hecke_gauss_sum",
    "ray_class_group",
    "DirichletChar",
    "KloostermanQuery",
    "gauss_sum",
    "kloosterman",
]

__version__ = "0.1.0"
