"""Jets of the fat point x^p: Groebner bases of jet ideals, lattice-point
counts of the matching polytopes, and regular triangulations of grids."""

from .groebner import (
    GBReport,
    MonomialIdeal,
    buchberger_complete,
    count_standard_monomials,
    initial_ideal,
    reduce,
    reduced_basis,
    s_polynomial,
    verify_groebner,
)
from .jets import (
    GeneratorSet,
    TruncatedDiffRing,
    check_iso_scaling,
    derive,
    jet_generators,
    jet_generators_differentiation,
    jet_generators_expansion,
)
from .lattice import (
    EhrhartPolynomial,
    Graph,
    HPolytope,
    build_P_from_triangulation,
    build_Pn,
    ehrhart_interpolate,
    enumerate_vertices,
    is_perfect_desk,
    lattice_count,
    max_cliques,
    qstab,
    stable_sets,
)
from .poly import MonomialOrdering, Polynomial, VarSpace
from .triangulation import (
    GridConfig,
    Triangulation,
    enumerate_regular_unimodular,
    flips,
    gb_triangulation_search,
    is_regular,
    is_t_ordering,
    is_unimodular,
    placing_triangulation,
    regular_from_heights,
    t_ordering_weights,
)

__version__ = "0.1.0"
