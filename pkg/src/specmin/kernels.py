'''
Kernel search: the minimizer of order n0 for a given k and residue r.

Every candidate is a main tree with leaves attached to its even vertices.
Candidates are screened with power iteration. A candidate is dropped only
when the lower end of its Collatz-Wielandt bracket lies above the best
upper end (plus `SCREEN_MARGIN`); the rest are certified exactly and the
final minimum is taken with `compare_radii`.
'''

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

from .config import DEFAULT_TOL, KERNEL_EXHAUSTIVE_CAP, SCREEN_TOL
from .errors import GraphError, SolverCapError
from .graphs import ParityTree, attach_leaves, canonical_form, independence_number, to_graph6
from .main_trees import automorphisms, enumerate_main_trees, validate_structure
from .msg import dbg, s_if_plural
from .pool import parallel_map
from .reference import KERNEL_RHO2
from .spectral import (
    Order,
    certificate_to_json,
    closed_form_certificate,
    compare_radii,
    power_iteration,
    screen_survivors,
    spectral_radius,
)
from .type import check_int_range


@dataclass(frozen=True)
class KernelProblem:
    k: int
    r: int
    n0: int
    total_leaves: int
    lbar: int

    @classmethod
    def build(cls, k, r):
        k = check_int_range(k, "k", low=1)
        r = check_int_range(r, "r", low=0, high=k - 1)
        n0 = 3 * k * k - k - 1 - (k - 1) * r
        total = n0 - 2 * k + 1
        return cls(k, r, n0, total, total // k)

    @property
    def wide(self):
        '''Whether the r > 4 branch of the leaf bounds applies'''
        return self.r > 4

    def to_json(self):
        return {
            "k": self.k,
            "r": self.r,
            "n0": self.n0,
            "total_leaves": self.total_leaves,
            "lbar": self.lbar,
        }


class LeafBounds(NamedTuple):
    lo: int
    hi: int

    @property
    def empty(self):
        return self.hi < self.lo


def leaf_bounds(problem, mt, u):
    '''
    Admissible number of leaves at even main vertex u

    The lower end is clamped at 0. An upper end below the lower one means no
    admissible assignment exists.
    :rtype: LeafBounds
    '''
    if u not in mt.realized.even_set:
        msg = f"Vertex {u} is not an even vertex of {mt.name}"
        raise GraphError(msg)
    deg = mt.tree.degree(u)
    lbar, r, k = problem.lbar, problem.r, problem.k
    if problem.wide:
        lo, hi = lbar + r - 2 * k + 2 - deg, lbar + 4 - deg
    else:
        lo, hi = lbar + r - k + 1 - deg, lbar + 3 - deg
    return LeafBounds(max(lo, 0), hi)


def _bounded_compositions(total, bounds):
    '''Vectors within per-position bounds summing to total, in lex order'''
    count = len(bounds)
    minTail = [0] * (count + 1)
    maxTail = [0] * (count + 1)
    for i in range(count - 1, -1, -1):
        minTail[i] = minTail[i + 1] + bounds[i].lo
        maxTail[i] = maxTail[i + 1] + bounds[i].hi
    current = []

    def extend(i, remaining):
        if i == count:
            if remaining == 0:
                yield tuple(current)
            return
        lo = max(bounds[i].lo, remaining - maxTail[i + 1])
        hi = min(bounds[i].hi, remaining - minTail[i + 1])
        for value in range(lo, hi + 1):
            current.append(value)
            yield from extend(i + 1, remaining - value)
            current.pop()

    if any(b.empty for b in bounds):
        return
    yield from extend(0, total)


def enumerate_leaf_sequences(problem, mt):
    '''
    Leaf assignments of a main tree, one per automorphism orbit

    Assignments are tuples aligned with `mt.even_order`; each orbit is
    represented by its lexicographically least member.
    :rtype: list of tuple
    '''
    if mt.k != problem.k:
        msg = f"Main tree {mt.name} has k={mt.k}, problem has k={problem.k}"
        raise GraphError(msg)
    bounds = [leaf_bounds(problem, mt, u) for u in mt.even_order]
    identity = tuple(range(len(mt.even_order)))
    perms = [p for p in automorphisms(mt) if p != identity]
    found = []
    for seq in _bounded_compositions(problem.total_leaves, bounds):
        if all(seq <= tuple(seq[j] for j in p) for p in perms):
            found.append(seq)
    dbg(f"{mt.name}, r={problem.r}: {len(found)} leaf assignment{s_if_plural(len(found))}")
    return found


@dataclass(frozen=True)
class Candidate:
    '''A main tree with leaves attached, and its exact radius certificate'''

    main_tree: object
    assignment: tuple[int, ...]
    tree: object
    certificate: object

    @cached_property
    def canonical(self):
        return canonical_form(self.tree)

    def parity_tree(self):
        base = self.main_tree.realized
        added = tuple(range(base.tree.vertex_count, self.tree.vertex_count))
        return ParityTree(self.tree, added, base.odd_set, base.even_set)

    def to_json(self, closed_form=None):
        return {
            "main_tree": self.main_tree.name,
            "assignment": list(self.assignment),
            "graph6": to_graph6(self.tree),
            "rho": self.certificate.approx,
            "rho2": self.certificate.approx ** 2,
            "rho2_closed_form_if_known": closed_form,
            "certificate": certificate_to_json(self.certificate),
        }


def build_candidate(mt, assignment, tol=DEFAULT_TOL):
    tree = attach_leaves(mt.tree, dict(zip(mt.even_order, assignment)))
    return Candidate(mt, tuple(assignment), tree, spectral_radius(tree, tol))


def exact_minima(candidates):
    '''
    Candidates of exactly minimal radius, one per isomorphism class,
    sorted by canonical form
    '''
    best = []
    for cand in candidates:
        if not best:
            best = [cand]
            continue
        order = compare_radii(cand.certificate, best[0].certificate)
        if order is Order.LESS:
            best = [cand]
        elif order is Order.EQUAL:
            best.append(cand)
    unique = {}
    for cand in best:
        unique.setdefault(cand.canonical, cand)
    return [unique[key] for key in sorted(unique)]


@dataclass(frozen=True)
class MainTreeSummary:
    main_tree: object
    count: int
    best: tuple[Candidate, ...]

    def to_json(self, closed_form=None):
        return {
            "name": self.main_tree.name,
            "count": self.count,
            "best": self.best[0].to_json(closed_form) if self.best else None,
            "ties": len(self.best),
        }


@dataclass(frozen=True)
class KernelResult:
    problem: KernelProblem
    minimizers: tuple[Candidate, ...]
    per_main_tree: tuple[MainTreeSummary, ...]

    @property
    def closed_form(self):
        '''Published ρ² of the kernels as text, when known'''
        published = KERNEL_RHO2.get((self.problem.k, self.problem.r))
        return None if published is None else published.text()

    def is_kernel(self, cand):
        return bool(self.minimizers) and \
            compare_radii(cand.certificate, self.minimizers[0].certificate) is Order.EQUAL

    def counts(self):
        '''Candidate counts in F<k>_<i> order'''
        return tuple(s.count for s in sorted(self.per_main_tree, key=lambda s: s.main_tree.index))

    def summary(self, index):
        '''Summary of the main tree F<k>_<index>'''
        for s in self.per_main_tree:
            if s.main_tree.index == index:
                return s
        msg = f"No main tree F{self.problem.k}_{index}"
        raise GraphError(msg)

    def bound_checks(self):
        '''
        Upper-bound sanity of the kernel radius: ρ < sqrt(lbar + 5), and
        ρ <= sqrt(lbar + 4) when r <= 4; compared exactly
        :rtype: list of (name, passed)
        '''
        checks = []
        if not self.minimizers:
            return checks
        cert = self.minimizers[0].certificate
        lbar = self.problem.lbar
        checks.append(("below_sqrt_lbar_plus_5",
            compare_radii(cert, closed_form_certificate(lbar + 5)) is Order.LESS))
        if not self.problem.wide:
            checks.append(("at_most_sqrt_lbar_plus_4",
                compare_radii(cert, closed_form_certificate(lbar + 4)) is not Order.GREATER))
        return checks

    def structure_checks(self):
        '''Order, independence number and structure of every kernel'''
        problem = self.problem
        checks = []
        for cand in self.minimizers:
            # K1 (k = 1) has no leaves, so its class alpha n0 - k = 0 is nominal
            alpha = independence_number(cand.tree).alpha if problem.n0 > 1 else 0
            report = validate_structure(cand.parity_tree(), problem.k)
            checks.append((to_graph6(cand.tree),
                cand.tree.vertex_count == problem.n0 and alpha == problem.n0 - problem.k,
                report))
        return checks

    def to_json(self):
        closed = self.closed_form
        return {
            "problem": self.problem.to_json(),
            "main_trees": [
                s.to_json(closed if s.best and self.is_kernel(s.best[0]) else None)
                for s in self.per_main_tree
            ],
            "minimizers": [c.to_json(closed) for c in self.minimizers],
        }


def _search_main_tree(problem, mt, tol, jobs):
    seqs = enumerate_leaf_sequences(problem, mt)
    if not seqs:
        return MainTreeSummary(mt, 0, ())
    trees = [attach_leaves(mt.tree, dict(zip(mt.even_order, seq))) for seq in seqs]
    screen = parallel_map(lambda t: power_iteration(t, SCREEN_TOL), trees, jobs,
        label=f"screen {mt.name}")
    finalists = screen_survivors(screen)
    dbg(f"{mt.name}: {len(finalists)} of {len(seqs)} candidates survive the screen")
    certs = parallel_map(lambda i: spectral_radius(trees[i], tol), finalists, jobs)
    candidates = [Candidate(mt, seqs[i], trees[i], cert) for i, cert in zip(finalists, certs)]
    return MainTreeSummary(mt, len(seqs), tuple(exact_minima(candidates)))


@lru_cache(maxsize=64)
def kernel_search(k, r, tol=DEFAULT_TOL, jobs=1):
    '''
    Kernel trees for (k, r) with per-main-tree counts and best trees

    :param k: even-class size, 1 <= k <= KERNEL_EXHAUSTIVE_CAP
    :param r: residue, 0 <= r < k
    :param tol: certificate width
    :param jobs: worker threads for screening and certification
    :rtype: KernelResult
    '''
    problem = KernelProblem.build(k, r)
    if k > KERNEL_EXHAUSTIVE_CAP:
        msg = f"Exhaustive kernel search limited to k <= {KERNEL_EXHAUSTIVE_CAP} (got {k})"
        raise SolverCapError(msg)
    summaries = tuple(_search_main_tree(problem, mt, tol, jobs) for mt in enumerate_main_trees(k))
    pool = [cand for summary in summaries for cand in summary.best]
    minimizers = tuple(exact_minima(pool))
    dbg(f"k={k}, r={r}: {len(minimizers)} kernel{s_if_plural(len(minimizers))}")
    return KernelResult(problem, minimizers, summaries)
