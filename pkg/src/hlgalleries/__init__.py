"""Satake coefficients and structure constants of spherical Hecke algebras via folded galleries.

Quick start::

    from hlgalleries import RootDatum, satake
    satake(RootDatum("A2"), (1, 1)).coefficients
"""

__version__ = "0.1.0"

from .root_datum import RootDatum, RootDatumError, WeylElem, WeylGroup, build_root_datum, parse_cartan_type
from .qpoly import LaurentQ, ParamSpec, ParamSpecError, qinv_zero_limit, specialize
from .affine_weyl import AffineWeyl, Alcove
from .galleries import (
    DegreeBoundViolation,
    Gallery,
    c_sigma,
    enumerate_nf,
    enumerate_pf,
    l_minus_sigma,
    l_minus_t_mu,
    l_sigma,
    l_t_mu,
)
from .hecke import HeckeAlgebra, HeckeElem
from .sym_oracle import (
    GroupAlgebraElem,
    expand_m,
    expand_P,
    freudenthal,
    hall_littlewood_direct,
    klimyk,
    monomial,
    schur,
    weyl_dimension,
)
from .coeffs import (
    CoeffTable,
    f_factor,
    kostka_ls,
    littlewood_richardson,
    satake,
    satake_oracle,
    structure,
    structure_hecke,
    structure_oracle,
)

__all__ = [
    "AffineWeyl", "Alcove", "CoeffTable", "DegreeBoundViolation", "Gallery", "GroupAlgebraElem",
    "HeckeAlgebra", "HeckeElem", "LaurentQ", "ParamSpec", "ParamSpecError", "RootDatum",
    "RootDatumError", "WeylElem", "WeylGroup", "build_root_datum", "c_sigma", "enumerate_nf",
    "enumerate_pf", "expand_P", "expand_m", "f_factor", "freudenthal", "hall_littlewood_direct",
    "klimyk", "kostka_ls", "l_minus_sigma", "l_minus_t_mu", "l_sigma", "l_t_mu",
    "littlewood_richardson", "monomial", "parse_cartan_type", "qinv_zero_limit", "satake",
    "satake_oracle", "schur", "specialize", "structure", "structure_hecke", "structure_oracle",
    "weyl_dimension",
]
