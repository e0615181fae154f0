"""Reference values that the reproduction targets are checked against.

Stored as data and never recomputed here.
"""

from fractions import Fraction

# dim R_6 / C_{p,6} for p = 0, 1, 2, ...  (p = 0 gives 0)
DIM_SEQUENCE_N6 = [
    0, 1, 34, 353, 2037, 8272, 26585, 72302, 173502, 377739, 760804, 1437799, 2576795,
]

# Lattice-point count of (p-1) P_6 written as a polynomial in p, constant term first.
EHRHART_P6_IN_P = [
    Fraction(0),
    Fraction(1, 140),
    Fraction(17, 360),
    Fraction(13, 90),
    Fraction(19, 72),
    Fraction(53, 180),
    Fraction(17, 90),
    Fraction(17, 315),
]

# Regular unimodular triangulations of the m x n rectangle, keyed (m, n).
TRIANGULATION_COUNTS = {(2, 2): 64, (3, 2): 852, (4, 2): 12170, (3, 3): 46452}

# Regular unimodular triangulations whose weighted revlex order makes the
# generators of C_{3,(m,n)} a Groebner basis, keyed (m, n).
GB_FILTER_COUNTS = {(2, 2): 4, (3, 2): 4, (1, 3): 4, (3, 3): 0}

# The winning triangulations as drawn: segment lists with (k, l) endpoints.
# Segments may pass through lattice points; see triangulation.from_segments.
_BOX22 = [((0, 0), (2, 0)), ((0, 0), (0, 2)), ((2, 0), (2, 2)), ((0, 2), (2, 2))]
GB_FIGURE_2X2 = [
    _BOX22 + [((1, 0), (0, 1)), ((0, 2), (0, 1)), ((0, 2), (2, 0)), ((1, 0), (1, 2)),
              ((1, 0), (0, 2)), ((2, 1), (1, 2)), ((1, 2), (2, 0))],
    _BOX22 + [((0, 1), (1, 2)), ((0, 1), (2, 2)), ((0, 0), (2, 2)), ((0, 0), (2, 1)),
              ((1, 0), (2, 1)), ((0, 1), (2, 1))],
    _BOX22 + [((0, 1), (1, 2)), ((0, 0), (1, 2)), ((1, 0), (1, 2)), ((1, 0), (2, 1)),
              ((1, 0), (2, 2)), ((0, 0), (2, 2))],
    _BOX22 + [((0, 1), (2, 1)), ((0, 1), (2, 0)), ((1, 0), (0, 1)), ((0, 2), (2, 0)),
              ((0, 2), (2, 1)), ((0, 2), (2, 2)), ((1, 2), (2, 1))],
]

_BOX32 = [((0, 0), (3, 0)), ((0, 0), (0, 2)), ((3, 0), (3, 2)), ((0, 2), (3, 2))]
GB_FIGURE_3X2 = [
    _BOX32 + [((1, 0), (0, 1)), ((0, 2), (0, 1)), ((0, 2), (2, 0)), ((0, 2), (1, 0)),
              ((1, 0), (1, 2)), ((2, 0), (2, 2)), ((1, 2), (3, 0)), ((1, 2), (2, 0)),
              ((2, 2), (3, 1)), ((2, 2), (3, 0))],
    _BOX32 + [((0, 1), (1, 2)), ((0, 0), (1, 2)), ((0, 0), (2, 2)), ((1, 0), (3, 2)),
              ((1, 0), (1, 2)), ((2, 0), (2, 2)), ((1, 0), (2, 2)), ((2, 0), (3, 2)),
              ((2, 0), (3, 1))],
    _BOX32 + [((0, 2), (2, 0)), ((1, 2), (3, 0)), ((0, 2), (3, 0)), ((1, 0), (0, 1)),
              ((0, 1), (1, 1)), ((0, 1), (2, 0)), ((1, 2), (3, 1)), ((2, 2), (3, 1)),
              ((2, 1), (3, 1)), ((1, 1), (3, 0)), ((0, 2), (2, 1))],
    _BOX32 + [((0, 0), (3, 2)), ((0, 0), (2, 2)), ((0, 0), (2, 1)), ((0, 1), (1, 1)),
              ((1, 1), (3, 2)), ((1, 0), (3, 2)), ((2, 1), (3, 1)), ((2, 0), (3, 1)),
              ((0, 1), (1, 2)), ((0, 1), (2, 2)), ((1, 0), (3, 1))],
]

_BOX13 = [((0, 0), (0, 3)), ((0, 0), (1, 0)), ((1, 0), (1, 3)), ((0, 3), (1, 3))]
GB_FIGURE_1X3 = [
    _BOX13 + [((0, 3), (1, 2)), ((0, 2), (1, 1)), ((0, 1), (1, 0)), ((0, 1), (1, 1)),
              ((0, 2), (1, 2))],
    _BOX13 + [((0, 0), (1, 1)), ((0, 1), (1, 2)), ((0, 2), (1, 3)), ((0, 1), (1, 1)),
              ((0, 2), (1, 2))],
    _BOX13 + [((0, 1), (1, 0)), ((0, 2), (1, 0)), ((0, 2), (1, 1)), ((0, 3), (1, 2)),
              ((0, 3), (1, 1))],
    _BOX13 + [((0, 0), (1, 1)), ((0, 0), (1, 2)), ((0, 1), (1, 2)), ((0, 1), (1, 3)),
              ((0, 2), (1, 3))],
]

GB_FIGURES = {(2, 2): GB_FIGURE_2X2, (3, 2): GB_FIGURE_3X2, (1, 3): GB_FIGURE_1X3}
