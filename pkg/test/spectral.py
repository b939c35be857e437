'''Test characteristic polynomials, radius certificates and their comparison'''

from fractions import Fraction
import math
import random

import sympy as sp

from src.specmin.errors import CertificateError, ConvergenceError
from src.specmin.graphs import attach_leaves, double_star, from_edge_list, path_graph, random_tree, star_graph
from src.specmin.spectral import (
    Order,
    PerronEstimate,
    bipartite_lift_radius,
    certificate_from_json,
    certificate_to_json,
    char_poly_tree,
    closed_form_certificate,
    compare_radii,
    exact_graph_polynomial,
    power_iteration,
    refine,
    screen_survivors,
    spectral_radius,
)
from src.specmin.testutil import Approx


def test_char_poly_path():
    return char_poly_tree(path_graph(3)).coefficients

result_char_poly_path = (0, -2, 0, 1)


def test_char_poly_matches_matrix():
    rng = random.Random(11)
    for n in range(1, 10):
        t = random_tree(n, rng)
        if char_poly_tree(t) != exact_graph_polynomial(t):
            return False
    return True


def test_power_iteration_star():
    return power_iteration(star_graph(5)).value

result_power_iteration_star = Approx(2.0, 1e-9)


def test_power_iteration_bracket():
    estimate = power_iteration(path_graph(8))
    return estimate.lower <= 2 * math.cos(math.pi / 9) + 1e-9 and estimate.upper >= 2 * math.cos(math.pi / 9) - 1e-9


def test_power_iteration_cap():
    try:
        power_iteration(path_graph(30), tol=1e-15, max_iterations=3)
    except ConvergenceError:
        return True
    return False


def test_certificate_path():
    '''rho(P5) = sqrt(3), certified within the default width'''
    cert = spectral_radius(path_graph(5))
    return cert.exact and cert.lo < Fraction(math.sqrt(3)) + Fraction(1, 10**14) and \
        cert.hi > Fraction(math.sqrt(3)) - Fraction(1, 10**14) and cert.width <= Fraction(1, 10**12)


def test_equal_radii():
    '''P3 with three leaves at each end has rho^2 = 5'''
    cert = spectral_radius(double_star(3, 3))
    return compare_radii(cert, closed_form_certificate(5))

result_equal_radii = Order.EQUAL


def test_less():
    return compare_radii(spectral_radius(path_graph(6)), spectral_radius(star_graph(5)))

result_less = Order.LESS


def test_greater():
    return compare_radii(spectral_radius(star_graph(6)), spectral_radius(star_graph(5)))

result_greater = Order.GREATER


def test_close_radii():
    '''Balanced leaves at the two ends give the smaller radius'''
    first = spectral_radius(attach_leaves(path_graph(3), {0: 3, 2: 3}))
    second = spectral_radius(attach_leaves(path_graph(3), {0: 2, 2: 4}))
    return compare_radii(first, second)

result_close_radii = Order.LESS


def test_lift():
    base = spectral_radius(double_star(3, 3))
    lifted = bipartite_lift_radius(base, 2)
    direct = spectral_radius(attach_leaves(double_star(3, 3), {0: 2, 2: 2}))
    return (compare_radii(lifted, direct), compare_radii(lifted, closed_form_certificate(7)))

result_lift = (Order.EQUAL, Order.EQUAL)


def test_lift_negative():
    try:
        bipartite_lift_radius(spectral_radius(path_graph(3)), -1)
    except CertificateError:
        return True
    return False


def test_refine():
    cert = refine(spectral_radius(path_graph(7)), Fraction(1, 10**30))
    return cert.width <= Fraction(1, 10**30)


def test_non_tree_certificate():
    cycle = from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    cert = spectral_radius(cycle)
    return not cert.exact and cert.lo <= 2 <= cert.hi


def test_compare_non_exact():
    cycle = from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    try:
        compare_radii(spectral_radius(cycle), spectral_radius(path_graph(4)))
    except CertificateError:
        return True
    return False


def test_certificate_json():
    cert = spectral_radius(path_graph(6))
    return certificate_from_json(certificate_to_json(cert)) == cert


def test_certificate_json_invalid():
    try:
        certificate_from_json({"poly": [0, 1], "lo": "1/0", "hi": "1", "approx": 0.5})
    except CertificateError:
        return True
    return False


def test_closed_form_radical():
    cert = closed_form_certificate(13 + sp.sqrt(5))
    return cert.approx

result_closed_form_radical = Approx(math.sqrt(13 + math.sqrt(5)), 1e-12)


def bracket(value, lower, upper):
    return PerronEstimate(value, lower, upper, 0, None)


def test_screen_keeps_overlapping_brackets():
    '''A wide bracket with the lowest estimate does not push out a tighter, slightly higher one'''
    wide = bracket(1.0, 0.99999, 1.00002)
    tight = bracket(1.0000015, 1.0000010, 1.0000015)
    far = bracket(1.1, 1.09999, 1.10001)
    return screen_survivors([wide, tight, far])

result_screen_keeps_overlapping_brackets = [0, 1]


def test_screen_empty():
    return screen_survivors([])

result_screen_empty = []


def test_bracket_holds_radius():
    '''The Collatz-Wielandt bracket at screening tolerance encloses the certified radius'''
    rng = random.Random(31)
    for _ in range(40):
        t = random_tree(rng.randint(3, 40), rng)
        estimate = power_iteration(t, 1e-10)
        rho = spectral_radius(t).approx
        if not estimate.lower - 1e-12 <= rho <= estimate.upper + 1e-12:
            return False
    return True
