'''Test lift plans, the minimizer construction and the closed-form checks'''

from src.specmin.errors import PlanError
from src.specmin.graphs import canonical_form, double_star, independence_number, star_graph
from src.specmin.minimizer import (
    LiftPlan,
    closed_form_check,
    construct_minimizers,
    make_plan,
)
from src.specmin.spectral import Order, compare_radii
from src.specmin.testutil import Approx

SLOW = ["test_lift_k6"]


def test_plan():
    return make_plan(104, 5)

result_plan = LiftPlan(104, 5, 0, 69, 7)


def test_plan_at_n0():
    return make_plan(69, 5).ell

result_plan_at_n0 = 0


def test_plan_below_n0():
    try:
        make_plan(60, 5)
    except PlanError:
        return True
    return False


def test_plan_k_too_large():
    try:
        make_plan(5, 3)
    except PlanError:
        return True
    return False


def test_plan_json():
    return make_plan(21, 3).to_json()

result_plan_json = {"n": 21, "k": 3, "alpha": 18, "r": 1, "n0": 21, "ell": 0}


def test_stars():
    '''k = 1 gives the star'''
    result = construct_minimizers(make_plan(10, 1))
    (t,) = result.trees
    return canonical_form(t.tree) == canonical_form(star_graph(10)) and result.closed_form == "rho^2 = 9"


def test_double_star():
    result = construct_minimizers(make_plan(9, 2))
    (t,) = result.trees
    return (canonical_form(t.tree) == canonical_form(double_star(3, 3)), t.assignment, t.ell)

result_double_star = (True, (3, 3), 0)


def test_lift_k5():
    '''Seven extra leaves at every even vertex of the k = 5 kernel'''
    result = construct_minimizers(make_plan(104, 5))
    (t,) = result.trees
    report = closed_form_check(result)
    return (t.assignment, t.tree.vertex_count, independence_number(t.tree).alpha,
        compare_radii(t.certificate, t.lifted_certificate), report.passed, report.expected)

result_lift_k5 = ((20, 15, 20, 20, 20), 104, 99, Order.EQUAL, True, "rho^2 = sqrt(5) + 20")


def test_closed_form_k5_r4():
    result = construct_minimizers(make_plan(53, 5))
    report = closed_form_check(result)
    return (len(result.trees), report.passed, report.exact)

result_closed_form_k5_r4 = (3, True, True)


def test_closed_form_decimal():
    '''Four-decimal families are checked within a tolerance'''
    result = construct_minimizers(make_plan(70, 5))
    report = closed_form_check(result)
    return (report.known, report.exact, report.passed)

result_closed_form_decimal = (True, False, True)


def test_closed_form_k3_r1():
    report = closed_form_check(construct_minimizers(make_plan(21, 3)))
    return report.to_json()

result_closed_form_k3_r1 = {"known": True, "passed": True, "expected": "rho^2 = 8", "exact": True, "mismatches": []}


def test_monotone_in_n():
    '''Adding k vertices in the same class raises rho^2 by exactly one'''
    first = construct_minimizers(make_plan(21, 3)).trees[0].certificate
    second = construct_minimizers(make_plan(24, 3)).trees[0].certificate
    return (compare_radii(first, second), second.approx ** 2 - first.approx ** 2)

result_monotone_in_n = (Order.LESS, Approx(1.0, 1e-9))


def test_multiple_kernels():
    '''Every kernel of class (4, 2) lifts to its own minimizer'''
    result = construct_minimizers(make_plan(41, 4))
    forms = {t.canonical for t in result.trees}
    return (len(result.trees), len(forms))

result_multiple_kernels = (3, 3)


def test_json():
    (t,) = construct_minimizers(make_plan(9, 2)).trees
    obj = t.to_json("rho^2 = 5")
    return (obj["provenance"], obj["main_tree"], obj["kernel_assignment"], obj["rho2_closed_form"],
        abs(obj["rho2"] - 5) < 1e-9)

result_json = ("construction", "F2_1", [3, 3], "rho^2 = 5", True)


def test_lift_k6():
    result = construct_minimizers(make_plan(76 + 6, 6), jobs=4)
    return closed_form_check(result).passed
