'''
Published values used by `verify` and the test suite.

Leaf vectors follow `MainTree.even_order` (v0, v2, ..., vd, then the y
vertices); main trees are referred to by their 1-based enumeration index.
A published vector may differ from our orbit representative by a main-tree
automorphism, so comparisons go through canonical forms.
'''

from fractions import Fraction
from typing import NamedTuple

import sympy as sp


class Published(NamedTuple):
    '''A published radius: exact sympy value or a 4-decimal string'''

    value: object
    squared: bool = True

    @property
    def exact(self):
        return not isinstance(self.value, str)

    def rho2(self):
        '''ρ² as a sympy expression (decimal strings become Rationals)'''
        v = sp.Rational(self.value) if isinstance(self.value, str) else sp.sympify(self.value)
        return v if self.squared else v**2

    def text(self):
        prefix = "rho^2 = " if self.squared else "rho = "
        return prefix + (self.value if isinstance(self.value, str) else sp.sstr(self.value))


def _s(n):
    return sp.sqrt(n)


MAIN_TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6}

# ρ² of the kernel for (k, r)
KERNEL_RHO2 = {
    (1, 0): Published(sp.Integer(0)),
    (2, 0): Published(sp.Integer(5)),
    (2, 1): Published((7 + _s(5)) / 2),
    (3, 0): Published(7 + _s(3)),
    (3, 1): Published(sp.Integer(8)),
    (3, 2): Published(6 + _s(2)),
    (4, 0): Published(sp.Integer(12)),
    (4, 1): Published((19 + _s(13)) / 2),
    (4, 2): Published((19 + _s(5)) / 2),
    (4, 3): Published((15 + _s(21)) / 2),
    (5, 0): Published(13 + _s(5)),
    (5, 1): Published("14.4812"),
    (5, 2): Published("13.6751"),
    (5, 3): Published(10 + _s(8)),
    (5, 4): Published(sp.Integer(12)),
    (6, 0): Published(17 + _s(2)),
    (6, 1): Published((33 + _s(5)) / 2),
    (6, 2): Published(15 + _s(3)),
    (6, 3): Published((25 + _s(45)) / 2),
    (6, 4): Published(sp.Integer(15)),
    (6, 5): Published((23 + _s(29)) / 2),
}

# Kernel trees for (k, r): (main tree index, leaf vector)
KERNELS = {
    (1, 0): [(1, (0,))],
    (2, 0): [(1, (3, 3))],
    (2, 1): [(1, (2, 3))],
    (3, 0): [(1, (7, 4, 7))],
    (3, 1): [(1, (6, 4, 6))],
    (3, 2): [(1, (5, 4, 5))],
    (4, 0): [(1, (10, 6, 10, 10)), (2, (10, 8, 8, 10))],
    (4, 1): [(1, (9, 6, 9, 9))],
    (4, 2): [(2, (8, 7, 7, 8)), (2, (9, 6, 7, 8)), (2, (9, 6, 6, 9))],
    (4, 3): [(1, (8, 3, 8, 8))],
    (5, 0): [(1, (13, 8, 13, 13, 13))],
    (5, 1): [(3, (12, 11, 10, 11, 12))],
    (5, 2): [(3, (12, 9, 10, 9, 12))],
    (5, 3): [(1, (11, 4, 11, 11, 11))],
    (5, 4): [(1, (10, 4, 10, 10, 10)), (2, (10, 6, 8, 10, 10)), (3, (10, 8, 8, 8, 10))],
    (6, 0): [
        (3, (16, 13, 13, 16, 16, 16)),
        (4, (16, 13, 14, 15, 16, 16)),
        (6, (16, 15, 14, 14, 15, 16)),
    ],
    (6, 1): [
        (5, (15, 14, 11, 13, 16, 16)),
        (5, (15, 14, 11, 14, 15, 16)),
        (5, (16, 13, 11, 13, 16, 16)),
        (5, (15, 14, 12, 13, 16, 15)),
        (5, (15, 14, 12, 14, 15, 15)),
        (5, (16, 13, 12, 13, 16, 15)),
        (6, (15, 14, 13, 14, 14, 15)),
        (6, (15, 14, 13, 14, 13, 16)),
        (6, (15, 14, 14, 13, 13, 16)),
        (6, (16, 13, 13, 14, 13, 16)),
    ],
    (6, 2): [
        (3, (15, 10, 10, 15, 15, 15)),
        (4, (15, 10, 13, 12, 15, 15)),
        (6, (15, 12, 13, 13, 12, 15)),
    ],
    (6, 3): [(1, (14, 5, 14, 14, 14, 14))],
    (6, 4): [
        (1, (13, 5, 13, 13, 13, 13)),
        (2, (13, 7, 11, 13, 13, 13)),
        (3, (13, 9, 9, 13, 13, 13)),
        (4, (13, 9, 11, 11, 13, 13)),
        (5, (13, 11, 9, 11, 13, 13)),
        (6, (13, 11, 11, 11, 11, 13)),
    ],
    (6, 5): [(1, (12, 5, 12, 12, 12, 12))],
}

# Candidate counts per main tree, in enumeration order
CANDIDATE_COUNTS = {
    (5, 0): (38, 200, 170),
    (5, 1): (27, 130, 110),
    (5, 2): (18, 80, 66),
    (5, 3): (12, 46, 38),
    (5, 4): (7, 24, 19),
    (6, 0): (60, 165, 243, 791, 495, 651),
    (6, 1): (42, 120, 154, 496, 330, 396),
    (6, 2): (29, 84, 95, 296, 210, 236),
    (6, 3): (19, 56, 54, 166, 126, 126),
    (6, 4): (12, 35, 30, 86, 70, 66),
    (6, 5): (83, 220, 364, 1211, 715, 1001),
}

# Best tree of each main tree that is not itself a kernel: index -> (vector, radius)
PER_TREE_BEST = {
    (5, 0): {
        2: ((13, 10, 11, 13, 13), Published("3.9068", squared=False)),
        3: ((13, 11, 12, 11, 13), Published((27 + _s(13)) / 2)),
    },
    (5, 1): {
        1: ((12, 8, 12, 12, 12), Published((25 + _s(17)) / 2)),
        2: ((12, 9, 11, 12, 12), Published("3.8090", squared=False)),
    },
    (5, 2): {
        1: ((12, 4, 12, 12, 12), Published((21 + _s(41)) / 2)),
        2: ((12, 7, 9, 12, 12), Published("3.7003", squared=False)),
    },
    (5, 3): {
        2: ((11, 6, 9, 11, 11), Published("3.5845", squared=False)),
        3: ((11, 9, 8, 9, 11), Published("3.5820", squared=False)),
    },
    (6, 0): {
        1: ((16, 10, 16, 16, 16, 16), Published(16 + _s(6))),
        2: ((16, 11, 15, 16, 16, 16), Published("18.4370")),
        5: ((16, 15, 12, 15, 16, 16), Published("18.4309")),
    },
    (6, 1): {
        1: ((16, 5, 16, 16, 16, 16), Published((27 + _s(69)) / 2)),
        2: ((16, 8, 13, 16, 16, 16), Published("17.6378")),
        3: ((16, 10, 11, 16, 16, 16), Published("17.6579")),
        4: ((16, 10, 14, 13, 16, 16), Published("17.6323")),
    },
    (6, 2): {
        1: ((15, 5, 15, 15, 15, 15), Published(13 + _s(14))),
        2: ((15, 8, 12, 15, 15, 15), Published("16.7443")),
        5: ((15, 12, 11, 12, 15, 15), Published("16.7491")),
    },
    (6, 3): {
        2: ((14, 7, 12, 14, 14, 14), Published("15.8664")),
        3: ((14, 9, 10, 14, 14, 14), Published("15.8830")),
        4: ((14, 10, 11, 12, 14, 14), Published("15.8878")),
        5: ((14, 12, 9, 12, 14, 14), Published("15.8750")),
        6: ((14, 12, 11, 12, 12, 14), Published("15.8969")),
    },
    (6, 5): {
        2: ((12, 7, 10, 12, 12, 12), Published("14.2080")),
        3: ((12, 8, 9, 12, 12, 12), Published("14.2361")),
        4: ((12, 9, 10, 10, 12, 12), Published("14.2470")),
        5: ((12, 10, 9, 10, 12, 12), Published("14.2283")),
        6: ((12, 10, 10, 11, 10, 12), Published("14.2831")),
    },
}

# Published radii of the k=5 kernels written as 4-decimal ρ
KERNEL_RHO_DECIMALS = {
    (5, 1): "3.8054",
    (5, 2): "3.6980",
}

# The leaf vectors of the first k=5 main tree for r=0 (v0, v2, v4, y1, y2)
F5_1_LEAF_SET = [
    (14, 4, 14, 14, 14),
    (13, 5, 14, 14, 14),
    (12, 6, 14, 14, 14), (13, 6, 13, 14, 14),
    (11, 7, 14, 14, 14), (12, 7, 13, 14, 14), (13, 7, 13, 13, 14),
    (10, 8, 14, 14, 14), (11, 8, 13, 14, 14), (12, 8, 12, 14, 14),
    (12, 8, 13, 13, 14), (13, 8, 13, 13, 13),
    (9, 9, 14, 14, 14), (10, 9, 13, 14, 14), (11, 9, 12, 14, 14),
    (11, 9, 13, 13, 14), (12, 9, 12, 13, 14), (12, 9, 13, 13, 13),
    (8, 10, 14, 14, 14), (9, 10, 13, 14, 14), (10, 10, 12, 14, 14),
    (11, 10, 11, 14, 14), (10, 10, 13, 13, 14), (11, 10, 12, 13, 14),
    (12, 10, 12, 12, 14), (11, 10, 13, 13, 13), (12, 10, 12, 13, 13),
    (7, 11, 14, 14, 14), (8, 11, 13, 14, 14), (9, 11, 12, 14, 14),
    (10, 11, 11, 14, 14), (9, 11, 13, 13, 14), (10, 11, 12, 13, 14),
    (11, 11, 11, 13, 14), (11, 11, 12, 12, 14), (10, 11, 13, 13, 13),
    (11, 11, 12, 13, 13), (12, 11, 12, 12, 13),
]


N = sp.Symbol("n")

# Published ρ² of the minimizers of order n >= n0 in class (k, r); a pair
# (expression, decimal string) stands for expression + decimal
FAMILY_RHO2 = {
    (1, 0): N - 1,
    (2, 0): (N + 1) / 2,
    (2, 1): (N - 1 + _s(5)) / 2,
    (3, 0): (N - 2 + 3 * _s(3)) / 3,
    (3, 1): (N + 3) / 3,
    (3, 2): (N - 1 + 3 * _s(2)) / 3,
    (4, 0): (N + 5) / 4,
    (4, 1): (N - 2 + 2 * _s(13)) / 4,
    (4, 2): (N + 1 + 2 * _s(5)) / 4,
    (4, 3): (N - 4 + 2 * _s(21)) / 4,
    (5, 0): (N - 4) / 5 + _s(5),
    (5, 1): ((N - 5) / 5, "2.4812"),
    (5, 2): ((N - 6) / 5, "2.6751"),
    (5, 3): (N - 7) / 5 + _s(8),
    (5, 4): (N + 7) / 5,
    (6, 0): (N + 1) / 6 + _s(2),
    (6, 1): N / 6 + (1 + _s(5)) / 2,
    (6, 2): (N - 1) / 6 + _s(3),
    (6, 3): (N - 11) / 6 + _s(45) / 2,
    (6, 4): (N + 9) / 6,
    (6, 5): (N - 7) / 6 + _s(29) / 2,
}


def n0_of(k, r):
    return 3 * k * k - k - 1 - (k - 1) * r


def family_rho2(k, r, n):
    '''Published ρ² of the minimizers of order n in class (k, r), or None'''
    family = FAMILY_RHO2.get((k, r))
    if family is None:
        return None
    if isinstance(family, tuple):
        expr, decimal = family
        value = Fraction(str(expr.subs(N, n))) + Fraction(decimal)
        return Published(_decimal_text(value))
    return Published(sp.expand(family.subs(N, n)))


def _decimal_text(value):
    whole = value.numerator // value.denominator
    frac = value - whole
    digits = round(frac * 10000)
    return f"{whole + digits // 10000}.{digits % 10000:04d}"
