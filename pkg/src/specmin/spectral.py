'''
Spectral radius machinery.

Trees get exact certificates: the integer characteristic polynomial together
with a rational interval (lo, hi] isolating its largest root, found with a
Sturm chain. Other graphs only get the numeric Collatz-Wielandt bracket from
power iteration. sympy does the polynomial algebra (square-free parts, gcds,
Sturm chains, composition); numpy does the iteration.
'''

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
import math
from typing import NamedTuple

import numpy as np
import sympy as sp

from .config import DEFAULT_TOL, POWER_ITERATION_CAP, SCREEN_MARGIN, SEPARATION_ROUNDS
from .errors import CertificateError, ConvergenceError
from .graphs import require_connected, require_tree, rooted_order
from .msg import dbg
from .type import check_positive

X = sp.Symbol("x")


@dataclass(frozen=True)
class IntPolynomial:
    '''Integer polynomial with ascending coefficients'''

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) == 0:
            raise ValueError("Polynomial needs at least one coefficient; use (0,) for zero")
        if len(self.coefficients) > 1 and self.coefficients[-1] == 0:
            msg = f"Leading coefficient is zero: {self.coefficients!r}"
            raise ValueError(msg)

    @property
    def degree(self):
        if self.coefficients == (0,):
            return -1
        return len(self.coefficients) - 1

    @cached_property
    def sympy(self):
        return sp.Poly.from_list(list(reversed(self.coefficients)), X, domain=sp.ZZ)

    @classmethod
    def from_sympy(cls, poly):
        coeffs = [int(c) for c in reversed(poly.all_coeffs())]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return cls(tuple(coeffs))

    def __call__(self, value):
        '''Exact value at an int or Fraction'''
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * value + c
        return acc

    def __str__(self):
        return str(self.sympy.as_expr())


def char_poly_tree(t):
    '''
    det(xI - A) of a tree, over the integers

    Rooted form of the leaf-peeling recurrence: for a vertex v with children
    c, φ(T_v) = x·Πφ(T_c) - Σ_c φ(T_c - c)·Π_{c' ≠ c} φ(T_c') and
    φ(T_v - v) = Πφ(T_c). Leaf children are folded in one step.
    '''
    require_tree(t)
    n = t.vertex_count
    if n == 1:
        return IntPolynomial((0, 1))
    order, parent = rooted_order(t, 0)
    children = [[] for _ in range(n)]
    for v in order[1:]:
        children[parent[v]].append(v)

    x = sp.Poly(X, X, domain=sp.ZZ)
    one = sp.Poly(1, X, domain=sp.ZZ)
    zero = sp.Poly(0, X, domain=sp.ZZ)
    full = [None] * n
    removed = [None] * n
    for v in reversed(order):
        prod = one
        total = zero
        leafKids = 0
        for c in children[v]:
            if not children[c]:
                leafKids += 1
                continue
            total = total * full[c] + prod * removed[c]
            prod = prod * full[c]
            full[c] = removed[c] = None
        if leafKids:
            total = total * x**leafKids + prod * leafKids * x**(leafKids - 1)
            prod = prod * x**leafKids
        full[v] = x * prod - total
        removed[v] = prod
    return IntPolynomial.from_sympy(full[0])


def exact_graph_polynomial(g):
    '''det(xI - A) of any small graph via a sympy matrix'''
    matrix = sp.Matrix(g.vertex_count, g.vertex_count,
        lambda i, j: 1 if g.has_edge(i, j) else 0)
    return IntPolynomial.from_sympy(sp.Poly(matrix.charpoly(X).as_expr(), X, domain=sp.ZZ))


class PerronEstimate(NamedTuple):
    value: float
    lower: float
    upper: float
    iterations: int
    vector: np.ndarray


def power_iteration(g, tol=DEFAULT_TOL, max_iterations=POWER_ITERATION_CAP):
    '''
    Perron root estimate of a connected graph

    Iterates A + I from the all-ones vector (the shift keeps bipartite graphs
    from oscillating) until the Rayleigh quotient moves by at most
    tol·max(1, θ). The bracket is [max(θ, min Ax/x), max Ax/x].
    :raises ConvergenceError: when `max_iterations` is reached
    '''
    require_connected(g)
    check_positive(tol, "tol")
    n = g.vertex_count
    if n == 1:
        return PerronEstimate(0.0, 0.0, 0.0, 0, np.ones(1))
    a = g.adjacency_matrix()
    x = np.full(n, 1.0 / math.sqrt(n))
    ax = a @ x
    theta = float(x @ ax)
    iterations = 0
    while True:
        iterations += 1
        if iterations > max_iterations:
            msg = f"Power iteration did not converge in {max_iterations} steps (n={n})"
            raise ConvergenceError(msg)
        y = ax + x
        x = y / np.linalg.norm(y)
        ax = a @ x
        value = float(x @ ax)
        done = abs(value - theta) <= tol * max(1.0, abs(value))
        theta = value
        if done:
            break
    ratios = ax / x
    lower = max(theta, float(ratios.min()))
    upper = max(theta, float(ratios.max()))
    return PerronEstimate(theta, lower, upper, iterations, x)


def screen_survivors(estimates, margin=SCREEN_MARGIN):
    '''
    Indices of the estimates whose bracket can still hold the minimum radius

    An estimate is dropped only when its certified lower bound exceeds the
    smallest certified upper bound by more than `margin`.
    '''
    if not estimates:
        return []
    bestUpper = min(e.upper for e in estimates)
    return [i for i, e in enumerate(estimates) if e.lower <= bestUpper + margin]


@dataclass(frozen=True)
class RadiusCertificate:
    '''
    Largest root of `poly` located in (lo, hi]

    Exact certificates have exactly one root of `poly` in (lo, hi] and none
    above hi. Non-exact ones carry no polynomial and a numeric bracket.
    '''

    poly: IntPolynomial | None
    lo: Fraction
    hi: Fraction
    approx: float
    exact: bool = True

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def interval(self):
        return (self.lo, self.hi)


class _RootTools(NamedTuple):
    core: sp.Poly
    chain: tuple
    coefficients: tuple


def _integer_coefficients(poly):
    '''Descending integer coefficients of a positive multiple of `poly`'''
    _, cleared = poly.clear_denoms()
    return tuple(int(c) for c in cleared.all_coeffs())


@lru_cache(maxsize=2048)
def _root_tools(coefficients):
    poly = sp.Poly.from_list(list(reversed(coefficients)), X, domain=sp.ZZ)
    core = poly.sqf_part()
    chain = tuple(_integer_coefficients(p) for p in core.sturm())
    return _RootTools(core, chain, _integer_coefficients(core))


def _sign_at(coefficients, value):
    '''Sign of the polynomial with descending integer coefficients at a Fraction'''
    p, q = value.numerator, value.denominator
    acc = coefficients[0]
    qPower = 1
    for c in coefficients[1:]:
        qPower *= q
        acc = acc * p + c * qPower
    return (acc > 0) - (acc < 0)


def _variations(chain, value):
    count = 0
    last = 0
    for coefficients in chain:
        s = _sign_at(coefficients, value) if value is not None else (coefficients[0] > 0) - (coefficients[0] < 0)
        if s == 0:
            continue
        if last != 0 and s != last:
            count += 1
        last = s
    return count


def _count_roots(chain, lo, hi):
    '''Distinct real roots in (lo, hi]; hi=None stands for +infinity'''
    return _variations(chain, lo) - _variations(chain, hi)


def _isolate_largest(tools, approx, tol, lo=None, hi=None):
    chain = tools.chain
    if len(tools.coefficients) < 2:
        msg = "Polynomial has no real root to isolate"
        raise CertificateError(msg)
    center = Fraction(approx)
    delta = max(tol, Fraction(1, 2**20))

    if hi is None or _count_roots(chain, hi, None) > 0:
        step = delta
        hi = center + step
        while _count_roots(chain, hi, None) > 0:
            step *= 8
            hi = center + step
    if lo is None or lo >= hi or _count_roots(chain, lo, hi) == 0:
        step = delta
        lo = min(center, hi) - step
        while _count_roots(chain, lo, hi) == 0:
            step *= 8
            lo = hi - step

    while _count_roots(chain, lo, hi) > 1:
        mid = (lo + hi) / 2
        if _count_roots(chain, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return _narrow(tools, lo, hi, tol)


def _narrow(tools, lo, hi, width):
    '''Sign bisection of the single simple root in (lo, hi]'''
    coefficients = tools.coefficients
    signHigh = _sign_at(coefficients, hi)
    if signHigh == 0:
        return max(lo, hi - width / 2), hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _sign_at(coefficients, mid)
        if s == 0:
            return max(lo, mid - width / 2), mid
        if s == signHigh:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _settle_approx(approx, lo, hi):
    '''Keep the numeric estimate only when it lies near the certified midpoint'''
    mid = (lo + hi) / 2
    if abs(Fraction(approx) - mid) <= (hi - lo) / 2:
        return float(approx)
    return float(mid)


def certify(poly, approx, tol=DEFAULT_TOL, lo=None, hi=None):
    '''
    Exact certificate for the largest real root of `poly`

    :param poly: IntPolynomial whose largest real root is wanted
    :param approx: float estimate of the root, used as the search center
    :param tol: maximal width of the returned interval
    :param lo: optional starting lower end, checked before use
    :param hi: optional starting upper end, checked before use
    :rtype: RadiusCertificate
    '''
    check_positive(tol, "tol")
    tools = _root_tools(poly.coefficients)
    lo, hi = _isolate_largest(tools, approx, Fraction(tol), lo, hi)
    return RadiusCertificate(poly, lo, hi, _settle_approx(approx, lo, hi))


def spectral_radius(g, tol=DEFAULT_TOL):
    '''
    Certified spectral radius of a connected graph

    Trees are certified exactly from their characteristic polynomial; any
    other graph gets a non-exact certificate holding the numeric bracket.
    :rtype: RadiusCertificate
    '''
    require_connected(g)
    check_positive(tol, "tol")
    estimate = power_iteration(g, tol)
    if not g.is_tree():
        slack = 1e-12 * max(1.0, estimate.upper)
        return RadiusCertificate(
            None,
            Fraction(estimate.lower - slack),
            Fraction(estimate.upper + slack),
            estimate.value,
            exact=False)
    return certify(char_poly_tree(g), estimate.value, tol)


def refine(cert, width):
    '''Narrow an exact certificate until its width is at most `width`'''
    if not cert.exact:
        raise CertificateError("Cannot refine a non-exact certificate")
    width = Fraction(width)
    if cert.width <= width:
        return cert
    tools = _root_tools(cert.poly.coefficients)
    lo, hi = _narrow(tools, cert.lo, cert.hi, width)
    return replace(cert, lo=lo, hi=hi, approx=_settle_approx(cert.approx, lo, hi))


class Order(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@lru_cache(maxsize=4096)
def _common_core(first, second):
    tools = (_root_tools(first).core, _root_tools(second).core)
    common = tools[0].gcd(tools[1])
    if common.degree() < 1:
        return None
    return tuple(int(c) for c in reversed(common.all_coeffs()))


def compare_radii(a, b):
    '''
    Exact order of two certified radii

    Equal radii are recognised through a common factor of the two
    polynomials with a root in both intervals; otherwise the intervals are
    halved until they separate.
    :rtype: Order
    '''
    for cert, name in ((a, "a"), (b, "b")):
        if not cert.exact:
            msg = f"compare_radii needs exact certificates ('{name}' is numeric only)"
            raise CertificateError(msg)

    if a.hi <= b.lo:
        return Order.LESS
    if b.hi <= a.lo:
        return Order.GREATER

    common = _common_core(a.poly.coefficients, b.poly.coefficients)
    if common is not None:
        low, high = max(a.lo, b.lo), min(a.hi, b.hi)
        if low < high and _count_roots(_root_tools(common).chain, low, high) >= 1:
            return Order.EQUAL

    for _ in range(SEPARATION_ROUNDS):
        a = refine(a, a.width / 4)
        b = refine(b, b.width / 4)
        if a.hi <= b.lo:
            return Order.LESS
        if b.hi <= a.lo:
            return Order.GREATER
    msg = f"Could not separate radii near {a.approx} after {SEPARATION_ROUNDS} rounds"
    raise CertificateError(msg)


def _sqrt_bounds(value, bits=64):
    '''Rationals lower <= sqrt(value) <= upper for a nonnegative Fraction'''
    scale = 1 << bits
    root = math.isqrt(value.numerator * value.denominator * scale * scale)
    return Fraction(root, value.denominator * scale), Fraction(root + 1, value.denominator * scale)


def bipartite_lift_radius(base, l, tol=DEFAULT_TOL):
    '''
    Certificate for sqrt(ρ² + l) from an exact certificate of ρ

    The radius polynomial of a bipartite graph is even or odd, so it has the
    form Q(x²) or x·Q'(x²); ρ² is a root of Q(y) (or y·Q'(y)), and the lifted
    radius is the largest root of that polynomial composed with x² - l.
    '''
    if not base.exact:
        raise CertificateError("Lift needs an exact base certificate")
    if isinstance(l, bool) or not isinstance(l, int) or l < 0:
        msg = f"Lift amount must be a nonnegative integer: {l!r}"
        raise CertificateError(msg)

    core = _root_tools(base.poly.coefficients).core
    ascending = [int(c) for c in reversed(core.all_coeffs())]
    if all(c == 0 for c in ascending[1::2]):
        squared = ascending[0::2]
    elif all(c == 0 for c in ascending[0::2]):
        squared = [0] + ascending[1::2]
    else:
        raise CertificateError("Base polynomial is neither even nor odd; graph is not bipartite")
    q = sp.Poly.from_list(list(reversed(squared)), X, domain=sp.ZZ)
    lifted = IntPolynomial.from_sympy(q.compose(sp.Poly(X**2 - l, X, domain=sp.ZZ)))

    low = max(base.lo, Fraction(0))
    startLow, _ = _sqrt_bounds(low * low + l)
    _, startHigh = _sqrt_bounds(base.hi * base.hi + l)
    approx = math.sqrt(base.approx * base.approx + l)
    dbg(f"Lifting radius {base.approx:.12g} by {l} leaves per vertex")
    return certify(lifted, approx, tol, startLow - Fraction(1, 1 << 64), startHigh)


def sqrt_closed_form_value(expr, digits=40):
    '''Float value of sqrt(expr) for a sympy radical expression'''
    return float(sp.sqrt(sp.sympify(expr)).evalf(digits))


def closed_form_certificate(rho2, tol=DEFAULT_TOL):
    '''
    Exact certificate for sqrt(rho2), rho2 a real sympy radical

    The certified polynomial is the minimal polynomial of sqrt(rho2). Its
    largest real root is sqrt(rho2) when rho2 is the largest of its real
    conjugates, which holds for the a + b*sqrt(c) forms with b >= 0 used here.
    '''
    rho2 = sp.nsimplify(rho2)
    if rho2.is_negative:
        msg = f"Closed form is negative: {rho2}"
        raise CertificateError(msg)
    minimal = sp.minimal_polynomial(sp.sqrt(rho2), X, polys=True)
    poly = IntPolynomial.from_sympy(minimal.clear_denoms()[1].set_domain(sp.ZZ))
    cert = certify(poly, sqrt_closed_form_value(rho2), tol)
    if abs(cert.approx - sqrt_closed_form_value(rho2)) > 1e-9 * max(1.0, cert.approx):
        msg = f"sqrt({rho2}) is not the largest root of its minimal polynomial"
        raise CertificateError(msg)
    return cert


def certificate_to_json(cert):
    return {
        "poly": None if cert.poly is None else list(cert.poly.coefficients),
        "lo": f"{cert.lo.numerator}/{cert.lo.denominator}",
        "hi": f"{cert.hi.numerator}/{cert.hi.denominator}",
        "approx": cert.approx,
        "exact": cert.exact,
    }


def certificate_from_json(obj):
    try:
        poly = obj["poly"]
        cert = RadiusCertificate(
            None if poly is None else IntPolynomial(tuple(int(c) for c in poly)),
            Fraction(obj["lo"]),
            Fraction(obj["hi"]),
            float(obj["approx"]),
            bool(obj.get("exact", poly is not None)))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as ex:
        msg = f"Invalid certificate JSON: {ex}"
        raise CertificateError(msg) from ex
    if cert.exact and cert.poly is None:
        raise CertificateError("Exact certificate without a polynomial")
    return cert
