'''
Brute-force ground truth for small orders.

Free trees come from networkx (WROM successor generation) or from leaf
augmentation with canonical-form dedup; the two are cross-checked by the
tests. Connected graphs come from vertex augmentation with a small exact
canonical labelling. Every minimum is decided exactly: trees through their
characteristic polynomial, other graphs through a sympy characteristic
polynomial of the adjacency matrix.
'''

from collections import Counter
from dataclasses import dataclass, field
import math

import networkx as nx

from .config import (
    CONNECTED_CAP,
    DEFAULT_TOL,
    FREE_TREE_CAP,
    NEAR_TIE_GAP,
    SCREEN_MARGIN,
    SCREEN_TOL,
)
from .errors import EmptyClassError, PlanError, SolverCapError
from .graphs import (
    Graph,
    attach_leaves,
    canonical_form,
    independence_number,
    parity_decomposition,
    to_graph6,
)
from .main_trees import validate_structure
from .minimizer import construct_minimizers, make_plan
from .msg import dbg, progress
from .spectral import (
    Order,
    certificate_to_json,
    certify,
    compare_radii,
    exact_graph_polynomial,
    power_iteration,
    spectral_radius,
)
from .type import check_int_range


def enumerate_free_trees(n, method="wrom"):
    '''
    Every tree on n vertices exactly once, up to isomorphism

    :param method: "wrom" (networkx successor generation) or "augment"
        (leaf augmentation with canonical dedup)
    '''
    n = check_int_range(n, "n", low=1)
    if n > FREE_TREE_CAP:
        msg = f"Free tree enumeration limited to n <= {FREE_TREE_CAP} (got {n})"
        raise SolverCapError(msg)
    if method == "wrom":
        if n == 1:
            yield Graph(1, ((),))
            return
        for g in nx.nonisomorphic_trees(n):
            yield Graph.from_networkx(g)
    elif method == "augment":
        level = {b"()": Graph(1, ((),))}
        for _ in range(2, n + 1):
            grown = {}
            for t in level.values():
                for v in range(t.vertex_count):
                    child = attach_leaves(t, {v: 1})
                    grown.setdefault(canonical_form(child), child)
            level = grown
        for key in sorted(level):
            yield level[key]
    else:
        msg = f"Unknown tree generator: {method!r}"
        raise ValueError(msg)


def _refine(masks, cells):
    '''Equitable refinement of an ordered partition given as vertex bitmasks'''
    while True:
        refined = []
        split = False
        for cell in cells:
            if cell & (cell - 1) == 0:
                refined.append(cell)
                continue
            groups = {}
            rest = cell
            while rest:
                bit = rest & -rest
                rest ^= bit
                v = bit.bit_length() - 1
                key = tuple((masks[v] & c).bit_count() for c in cells)
                groups[key] = groups.get(key, 0) | bit
            if len(groups) > 1:
                split = True
            refined.extend(groups[key] for key in sorted(groups))
        cells = refined
        if not split:
            return cells


def _twins(masks, u, v):
    return masks[u] & ~(1 << v) == masks[v] & ~(1 << u)


def canonical_code(masks):
    '''
    Canonical integer code of a small graph given as neighbour bitmasks

    Colour refinement with individualisation; the code is the largest upper
    triangle bit string over the discrete partitions reached. Twin vertices
    are individualised only once per cell.
    '''
    n = len(masks)
    best = [-1]

    def encode(order):
        code = 0
        for i in range(n):
            row = masks[order[i]]
            for j in range(i + 1, n):
                code = (code << 1) | (row >> order[j] & 1)
        return code

    def search(cells):
        cells = _refine(masks, cells)
        pos = next((i for i, c in enumerate(cells) if c & (c - 1)), None)
        if pos is None:
            code = encode([c.bit_length() - 1 for c in cells])
            if code > best[0]:
                best[0] = code
            return
        target = cells[pos]
        tried = []
        rest = target
        while rest:
            bit = rest & -rest
            rest ^= bit
            v = bit.bit_length() - 1
            if any(_twins(masks, u, v) for u in tried):
                continue
            tried.append(v)
            search(cells[:pos] + [bit, target ^ bit] + cells[pos + 1:])

    search([(1 << n) - 1])
    return best[0]


def _masks_to_graph(masks):
    n = len(masks)
    return Graph(n, tuple(tuple(u for u in range(n) if masks[v] >> u & 1) for v in range(n)))


def enumerate_connected_graphs(n):
    '''
    Every connected graph on n vertices exactly once, up to isomorphism

    Each graph on m vertices is grown by a new vertex joined to a non-empty
    subset; children are deduplicated by `canonical_code`.
    '''
    n = check_int_range(n, "n", low=1)
    if n > CONNECTED_CAP:
        msg = f"Connected graph enumeration limited to n <= {CONNECTED_CAP} (got {n})"
        raise SolverCapError(msg)
    level = [(0,)]
    for m in range(2, n + 1):
        seen = set()
        grown = []
        for index, masks in enumerate(level):
            for subset in range(1, 1 << (m - 1)):
                child = tuple(masks[i] | ((subset >> i & 1) << (m - 1)) for i in range(m - 1)) + (subset,)
                code = canonical_code(child)
                if code not in seen:
                    seen.add(code)
                    grown.append(child)
            progress(f"connected graphs n={m}", index + 1, len(level))
        level = grown
        dbg(f"{len(level)} connected graphs on {m} vertices")
    for masks in level:
        yield _masks_to_graph(masks)


@dataclass(frozen=True)
class OracleEntry:
    graph: Graph
    certificate: object

    @property
    def sort_key(self):
        if self.graph.is_tree():
            return (0, canonical_form(self.graph))
        return (1, to_graph6(self.graph).encode())

    def to_json(self):
        return {
            "graph6": to_graph6(self.graph),
            "is_tree": self.graph.is_tree(),
            "rho": self.certificate.approx,
            "rho2": self.certificate.approx ** 2,
            "certificate": certificate_to_json(self.certificate),
        }


@dataclass(frozen=True)
class OracleResult:
    n: int
    alpha: int
    space: str
    minimizers: tuple[OracleEntry, ...]
    search_space_size: int
    class_size: int
    escalations: int = 0
    audits: dict | None = None

    def to_json(self):
        obj = {
            "n": self.n,
            "alpha": self.alpha,
            "space": self.space,
            "search_space_size": self.search_space_size,
            "class_size": self.class_size,
            "escalations": self.escalations,
            "minimizers": [m.to_json() for m in self.minimizers],
        }
        if self.audits is not None:
            obj["audits"] = self.audits
        return obj


@dataclass
class _Bucket:
    '''Graphs whose certified bracket can still hold the class minimum'''
    size: int = 0
    best_upper: float = math.inf
    items: list = field(default_factory=list)

    def offer(self, estimate, g):
        self.size += 1
        if estimate.lower > self.best_upper + SCREEN_MARGIN:
            return
        if estimate.upper < self.best_upper:
            self.best_upper = estimate.upper
            self.items = [(e, h) for e, h in self.items if e.lower <= self.best_upper + SCREEN_MARGIN]
        self.items.append((estimate, g))

    @property
    def best_value(self):
        return min(e.value for e, _ in self.items)


def _exact_certificate(g, tol):
    if g.is_tree():
        return spectral_radius(g, tol)
    estimate = power_iteration(g, tol)
    return certify(exact_graph_polynomial(g), estimate.value, tol)


def _finish(n, alpha, space, bucket, total, tol):
    finalists = bucket.items
    escalations = 0
    if space == "connected":
        bestValue = bucket.best_value
        escalations = sum(1 for estimate, g in finalists
            if not g.is_tree() and abs(estimate.value - bestValue) < NEAR_TIE_GAP)
        if escalations:
            dbg(f"n={n}, alpha={alpha}: {escalations} near tie(s) escalated to exact polynomials")
    entries = [OracleEntry(g, _exact_certificate(g, tol)) for _, g in finalists]
    best = []
    for entry in entries:
        if not best:
            best = [entry]
            continue
        order = compare_radii(entry.certificate, best[0].certificate)
        if order is Order.LESS:
            best = [entry]
        elif order is Order.EQUAL:
            best.append(entry)
    best.sort(key=lambda e: e.sort_key)
    return OracleResult(n, alpha, space, tuple(best), total, bucket.size, escalations)


def _stream(n, space):
    if space == "trees":
        return enumerate_free_trees(n)
    if space == "connected":
        return enumerate_connected_graphs(n)
    msg = f"Unknown search space: {space!r} (expected trees or connected)"
    raise ValueError(msg)


def _scan(n, space, alphas, tol):
    buckets = {}
    total = 0
    for g in _stream(n, space):
        total += 1
        alpha = independence_number(g).alpha
        if alphas is not None and alpha not in alphas:
            continue
        estimate = power_iteration(g, SCREEN_TOL)
        buckets.setdefault(alpha, _Bucket()).offer(estimate, g)
    dbg(f"n={n}, {space}: scanned {total} graphs")
    return {alpha: _finish(n, alpha, space, bucket, total, tol) for alpha, bucket in sorted(buckets.items())}


def brute_force_minimizer(n, alpha, space="trees", tol=DEFAULT_TOL):
    '''
    Minimizers of the spectral radius among connected graphs (or trees) of
    order n and independence number alpha

    :raises EmptyClassError: when no graph in the space has this alpha
    :rtype: OracleResult
    '''
    n = check_int_range(n, "n", low=1)
    alpha = check_int_range(alpha, "alpha", low=1)
    if alpha > max(1, n - 1):
        msg = f"No connected graph of order {n} has independence number {alpha}"
        raise EmptyClassError(msg)
    results = _scan(n, space, {alpha}, tol)
    if alpha not in results:
        msg = f"No graph in the {space} space of order {n} has independence number {alpha}"
        raise EmptyClassError(msg)
    return results[alpha]


def brute_force_all(n, space="trees", tol=DEFAULT_TOL):
    '''Oracle results for every independence number, from one pass'''
    n = check_int_range(n, "n", low=1)
    return _scan(n, space, None, tol)


def _diameter_checks(n, alpha, tree):
    checks = []
    diam = tree.diameter()
    isPath = n <= 2 or max(tree.degree(v) for v in range(n)) <= 2
    if isPath:
        checks.append(("diameter", diam == n - 1, f"path of diameter {diam}"))
    elif alpha == n - 1:
        checks.append(("diameter", diam == 2, f"diameter {diam}, expected 2"))
    elif alpha == n - 2:
        checks.append(("diameter", diam == 4, f"diameter {diam}, expected 4"))
    elif alpha == math.ceil(n / 2):
        checks.append(("diameter", False, f"non-path minimizer with alpha = ceil(n/2), diameter {diam}"))
    else:
        checks.append(("diameter", 6 <= diam <= 2 * (n - alpha),
            f"diameter {diam}, expected 6..{2 * (n - alpha)}"))
    checks.append(("diameter_upper", diam <= 2 * (n - alpha), f"diameter {diam} <= {2 * (n - alpha)}"))
    return checks


def _main_diameter_check(n, alpha, decomposition):
    main = decomposition.main_subgraph()
    diam = nx.diameter(main) if main.number_of_nodes() > 1 else 0
    k = n - alpha
    if alpha >= n - 1:
        ok = diam == 0
    elif alpha == n - 2:
        ok = diam == 2
    else:
        ok = diam % 2 == 0 and 4 <= diam <= 2 * k - 2
    return ("main_diameter", ok, f"main part diameter {diam}")


@dataclass(frozen=True)
class AuditReport:
    n: int
    alpha: int
    entries: tuple[tuple[str, tuple[tuple[str, bool, str], ...]], ...]

    @property
    def passed(self):
        return all(ok for _, checks in self.entries for _, ok, _ in checks)

    def counts(self):
        counts = {}
        for graph6, checks in self.entries:
            for name, ok, detail in checks:
                entry = counts.setdefault(name, {"passed": 0, "failed": 0, "witnesses": []})
                if ok:
                    entry["passed"] += 1
                else:
                    entry["failed"] += 1
                    entry["witnesses"].append({"graph6": graph6, "detail": detail})
        return counts

    def to_json(self):
        return {"n": self.n, "alpha": self.alpha, "passed": self.passed, "checks": self.counts()}


def audit_structural_propositions(result):
    '''
    Check every tree-space minimizer against the structure of minimizer trees

    :raises ValueError: for connected-space results or alpha < ceil(n/2)
    :rtype: AuditReport
    '''
    n, alpha = result.n, result.alpha
    if result.space != "trees":
        raise ValueError("Audits need a tree-space oracle result")
    if n < 2 or alpha < math.ceil(n / 2):
        msg = f"Audits need n >= 2 and alpha >= ceil(n/2) (n={n}, alpha={alpha})"
        raise ValueError(msg)
    entries = []
    for entry in result.minimizers:
        tree = entry.graph
        checks = [("is_tree", tree.is_tree(), "")]
        decomposition = parity_decomposition(tree)
        report = validate_structure(decomposition, n - alpha)
        checks.extend((c.name, c.passed, c.detail) for c in report.checks)
        leafCount = len(decomposition.leaf_set)
        checks.append(("leaf_count", leafCount == 2 * alpha - n + 1,
            f"|L|={leafCount}, expected {2 * alpha - n + 1}"))
        checks.extend(_diameter_checks(n, alpha, tree))
        checks.append(_main_diameter_check(n, alpha, decomposition))
        entries.append((to_graph6(tree), tuple(checks)))
    return AuditReport(n, alpha, tuple(entries))


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    alpha: int
    status: str
    oracle: tuple[str, ...]
    construction: tuple[str, ...]
    detail: str = ""

    def to_json(self):
        return {
            "n": self.n,
            "alpha": self.alpha,
            "status": self.status,
            "oracle": list(self.oracle),
            "construction": list(self.construction),
            "detail": self.detail,
        }


def compare_with_construction(n, alpha, oracle_result=None, tol=DEFAULT_TOL):
    '''
    Compare oracle tree minimizers with the lift construction

    Status is "match", "mismatch", or "recorded" when the construction does
    not apply (n < n0).
    :rtype: ComparisonReport
    '''
    result = oracle_result or brute_force_minimizer(n, alpha, "trees", tol)
    oracleForms = sorted(canonical_form(e.graph) for e in result.minimizers)
    oracleText = tuple(to_graph6(e.graph) for e in result.minimizers)
    try:
        plan = make_plan(n, n - alpha)
    except PlanError as ex:
        return ComparisonReport(n, alpha, "recorded", oracleText, (), str(ex))
    built = construct_minimizers(plan, tol)
    builtForms = sorted(t.canonical for t in built.trees)
    builtText = tuple(to_graph6(t.tree) for t in built.trees)
    status = "match" if oracleForms == builtForms else "mismatch"
    return ComparisonReport(n, alpha, status, oracleText, builtText)


def count_by_alpha(n, space="trees"):
    '''Number of graphs in the space for each independence number'''
    return dict(sorted(Counter(independence_number(g).alpha for g in _stream(n, space)).items()))
