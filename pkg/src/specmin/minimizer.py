'''
Minimizers of order n >= n0 by uniform leaf lifting of the kernels.

Every kernel of class (k, r) gets ell = (n - n0)/k extra leaves at each even
main vertex. The radius of the lifted tree is certified twice, from its own
characteristic polynomial and from the kernel certificate via the
bipartite lift, and the two must agree exactly.
'''

from dataclasses import dataclass
from functools import cached_property

from .config import CLOSED_FORM_TOL, DECIMAL_TOL, DEFAULT_TOL
from .errors import CertificateError, PlanError
from .graphs import attach_leaves, canonical_form, independence_number, parity_decomposition, to_graph6
from .kernels import kernel_search
from .msg import dbg
from .reference import family_rho2, n0_of
from .spectral import (
    Order,
    bipartite_lift_radius,
    certificate_to_json,
    closed_form_certificate,
    compare_radii,
    spectral_radius,
)
from .type import check_int_range


@dataclass(frozen=True)
class LiftPlan:
    n: int
    k: int
    r: int
    n0: int
    ell: int

    @property
    def alpha(self):
        return self.n - self.k

    def to_json(self):
        return {"n": self.n, "k": self.k, "alpha": self.alpha, "r": self.r, "n0": self.n0, "ell": self.ell}


def make_plan(n, k):
    '''
    Residue, base order and lift amount for order n and k = n - alpha

    :raises PlanError: when k > n/2 or n < n0
    '''
    n = check_int_range(n, "n", low=1)
    k = check_int_range(k, "k", low=1)
    if 2 * k > n:
        msg = f"k={k} exceeds n/2 for n={n}"
        raise PlanError(msg)
    r = (n + 1) % k
    n0 = n0_of(k, r)
    if n < n0:
        msg = f"n={n} is below n0={n0} for k={k}, r={r}"
        raise PlanError(msg)
    return LiftPlan(n, k, r, n0, (n - n0) // k)


@dataclass(frozen=True)
class MinimizerTree:
    tree: object
    kernel: object
    assignment: tuple[int, ...]
    ell: int
    certificate: object
    lifted_certificate: object

    @cached_property
    def canonical(self):
        return canonical_form(self.tree)

    def to_json(self, closed_form=None):
        return {
            "graph6": to_graph6(self.tree),
            "provenance": "construction",
            "main_tree": self.kernel.main_tree.name,
            "kernel_assignment": list(self.kernel.assignment),
            "assignment": list(self.assignment),
            "ell": self.ell,
            "rho": self.certificate.approx,
            "rho2": self.certificate.approx ** 2,
            "rho2_closed_form": closed_form,
            "certificate": certificate_to_json(self.certificate),
        }


@dataclass(frozen=True)
class MinimizerResult:
    plan: LiftPlan
    trees: tuple[MinimizerTree, ...]

    @property
    def published(self):
        return family_rho2(self.plan.k, self.plan.r, self.plan.n)

    @property
    def closed_form(self):
        published = self.published
        return None if published is None else published.text()

    def to_json(self):
        closed = self.closed_form
        return {
            "plan": self.plan.to_json(),
            "closed_form": closed,
            "trees": [t.to_json(closed) for t in self.trees],
        }


def _lift(plan, kernel, tol):
    mt = kernel.main_tree
    tree = attach_leaves(kernel.tree, {v: plan.ell for v in mt.even_order})
    alpha = independence_number(tree).alpha
    if tree.vertex_count != plan.n or alpha != plan.alpha:
        msg = f"Lifted tree has n={tree.vertex_count}, alpha={alpha}; expected n={plan.n}, alpha={plan.alpha}"
        raise CertificateError(msg)
    leafCount = len(parity_decomposition(tree).leaf_set)
    if leafCount != 2 * alpha - plan.n + 1:
        msg = f"Lifted tree has {leafCount} leaves, expected {2 * alpha - plan.n + 1}"
        raise CertificateError(msg)

    direct = spectral_radius(tree, tol)
    lifted = bipartite_lift_radius(kernel.certificate, plan.ell, tol)
    if compare_radii(direct, lifted) is not Order.EQUAL:
        msg = f"Lift identity failed for {mt.name}{kernel.assignment}: {direct.approx} != {lifted.approx}"
        raise CertificateError(msg)
    assignment = tuple(a + plan.ell for a in kernel.assignment)
    return MinimizerTree(tree, kernel, assignment, plan.ell, direct, lifted)


def construct_minimizers(plan, tol=DEFAULT_TOL, jobs=1):
    '''
    Minimizers of order plan.n with independence number plan.n - plan.k

    :rtype: MinimizerResult
    '''
    kernels = kernel_search(plan.k, plan.r, tol, jobs)
    trees = [_lift(plan, kernel, tol) for kernel in kernels.minimizers]
    trees.sort(key=lambda t: t.canonical)
    dbg(f"n={plan.n}, k={plan.k}: {len(trees)} minimizer(s) from {len(kernels.minimizers)} kernel(s)")
    return MinimizerResult(plan, tuple(trees))


@dataclass(frozen=True)
class ClosedFormReport:
    known: bool
    passed: bool
    expected: str | None
    exact: bool
    mismatches: tuple[str, ...]

    def to_json(self):
        return {
            "known": self.known,
            "passed": self.passed,
            "expected": self.expected,
            "exact": self.exact,
            "mismatches": list(self.mismatches),
        }


def closed_form_check(result, tol=CLOSED_FORM_TOL):
    '''
    Compare the certified radii with the published ρ² family

    Radical closed forms are checked numerically within `tol` and exactly as
    algebraic numbers; 4-decimal values are checked within DECIMAL_TOL.
    :rtype: ClosedFormReport
    '''
    published = result.published
    if published is None:
        return ClosedFormReport(False, True, None, False, ())
    mismatches = []
    if published.exact:
        target = closed_form_certificate(published.rho2())
        expected = float(published.rho2())
        for t in result.trees:
            actual = t.certificate.approx ** 2
            if abs(actual - expected) > tol * max(1.0, expected):
                mismatches.append(f"{to_graph6(t.tree)}: rho^2 {actual!r} != {expected!r}")
            elif compare_radii(t.certificate, target) is not Order.EQUAL:
                mismatches.append(f"{to_graph6(t.tree)}: rho^2 is not exactly {published.text()}")
    else:
        expected = float(published.value)
        for t in result.trees:
            rho = t.certificate.approx
            actual = rho * rho if published.squared else rho
            # ρ² decimals derive from a 4-decimal ρ
            slack = DECIMAL_TOL * max(1.0, 2 * rho) if published.squared else DECIMAL_TOL
            if abs(actual - expected) > slack:
                mismatches.append(f"{to_graph6(t.tree)}: {actual:.6f} != {published.value}")
    if not result.trees:
        mismatches.append("no minimizer trees")
    return ClosedFormReport(True, not mismatches, published.text(), published.exact, tuple(mismatches))
