'''
Main trees: minimizer trees with their leaves removed.

A main tree is described by T(d; M_1..M_h; σ*): a control path v_0..v_d and
h levels of matched pairs x-y, where each level-1 x hangs off an interior
even path vertex and each level-s x hangs off a level-(s-1) y. The vertices
split into odd (path odds and x's, all of degree 2) and even (path evens
and y's) classes.
'''

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement, product
from operator import attrgetter
from typing import NamedTuple
import re

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .config import MAIN_TREE_CAP
from .errors import GraphError, SolverCapError
from .graphs import ParityTree, canonical_form, from_edge_list, independence_number, to_graph6
from .msg import dbg, s_if_plural
from .type import check_int_range, type_check


def _check_descriptor(k, d, levels):
    k = check_int_range(k, "k", low=1)
    d = check_int_range(d, "d", low=0)
    if k <= 2:
        if d != 2 * k - 2:
            msg = f"Control path length for k={k} must be {2 * k - 2} (got {d})"
            raise ValueError(msg)
    elif d % 2 != 0 or not 4 <= d <= 2 * k - 2:
        msg = f"Control path length for k={k} must be even in 4..{2 * k - 2} (got {d})"
        raise ValueError(msg)

    type_check(levels, [tuple, list], "levels")
    total = k - 1 - d // 2
    sizes = [len(level) for level in levels]
    if sum(sizes) != total:
        msg = f"Levels hold {sum(sizes)} matched pairs; k={k}, d={d} needs {total}"
        raise ValueError(msg)
    if any(size == 0 for size in sizes):
        raise ValueError("Every level needs at least one matched pair")
    if len(levels) > min(total, d // 4):
        msg = f"Too many levels: {len(levels)} > min({total}, {d // 4})"
        raise ValueError(msg)

    for s, level in enumerate(levels, 1):
        for target in level:
            if s == 1:
                ok = isinstance(target, int) and target % 2 == 0 and 2 <= target <= d - 2
            else:
                ok = isinstance(target, int) and 1 <= target <= sizes[s - 2]
            if not ok:
                where = "v2..v%d" % (d - 2) if s == 1 else "y%d,1..y%d,%d" % (s - 1, s - 1, sizes[s - 2])
                msg = f"Level {s} target out of range: {target!r} (expected {where})"
                raise GraphError(msg)
    return k, d, tuple(tuple(sorted(level)) for level in levels)


def _realize(k, d, levels):
    k, d, levels = _check_descriptor(k, d, levels)
    labels = ["v%d" % i for i in range(d + 1)]
    edges = [(i, i + 1) for i in range(d)]
    odd = list(range(1, d, 2))
    even = list(range(0, d + 1, 2))
    previousY = []
    nextVertex = d + 1
    for s, level in enumerate(levels, 1):
        currentY = []
        for j, target in enumerate(level, 1):
            x, y = nextVertex, nextVertex + 1
            nextVertex += 2
            labels.extend(["x%d,%d" % (s, j), "y%d,%d" % (s, j)])
            host = target if s == 1 else previousY[target - 1]
            edges.extend([(host, x), (x, y)])
            odd.append(x)
            even.append(y)
            currentY.append(y)
        previousY = currentY

    tree = from_edge_list(nextVertex, edges)
    if not tree.is_tree():
        msg = f"Descriptor (k={k}, d={d}, levels={levels}) does not give a tree"
        raise GraphError(msg)
    realized = ParityTree(tree, (), tuple(sorted(odd)), tuple(sorted(even)))
    return realized, tuple(labels), tuple(even), levels


def realize_main_tree(k, d, levels):
    '''
    The labeled tree of the descriptor T(d; M_1..M_h; σ*)

    :param k: size of the even class
    :param d: control path length
    :param levels: per level, the targets of its matched pairs: even path
        indices 2..d-2 on level 1, 1-based indices of the previous level's
        pairs on deeper levels
    :rtype: ParityTree
    '''
    return _realize(k, d, levels)[0]


@dataclass(frozen=True)
class MainTree:
    k: int
    d: int
    levels: tuple[tuple[int, ...], ...]
    realized: ParityTree
    labels: tuple[str, ...]
    even_order: tuple[int, ...]
    index: int = 0

    @classmethod
    def build(cls, k, d, levels, index=0):
        realized, labels, evenOrder, levels = _realize(k, d, levels)
        return cls(k, d, levels, realized, labels, evenOrder, index)

    @property
    def tree(self):
        return self.realized.tree

    @property
    def h(self):
        return len(self.levels)

    @property
    def name(self):
        if self.index:
            return "F%d_%d" % (self.k, self.index)
        return "T(%d;%s)" % (self.d, ";".join(",".join(map(str, level)) for level in self.levels))

    @cached_property
    def canonical(self):
        return canonical_form(self.tree)

    def even_labels(self):
        return [self.labels[v] for v in self.even_order]

    def target_label(self, s, target):
        return "v%d" % target if s == 1 else "y%d,%d" % (s - 1, target)

    def to_json(self):
        return {
            "name": self.name,
            "k": self.k,
            "d": self.d,
            "levels": [
                { "edges": [{ "target": self.target_label(s, t) } for t in level] }
                for s, level in enumerate(self.levels, 1)
            ],
            "graph6": to_graph6(self.tree),
            "even_order": self.even_labels(),
        }


TARGET_RX = re.compile(r"^(?:v(\d+)|y(\d+),(\d+))$")


def main_tree_from_json(obj):
    '''Rebuild a MainTree from its JSON descriptor'''
    try:
        k, d = obj["k"], obj["d"]
        levels = []
        for s, level in enumerate(obj["levels"], 1):
            targets = []
            for edge in level["edges"]:
                m = TARGET_RX.match(edge["target"])
                if m is None:
                    msg = f"Bad target label: {edge['target']!r}"
                    raise GraphError(msg)
                if s == 1 and m.group(1) is not None:
                    targets.append(int(m.group(1)))
                elif s > 1 and m.group(2) is not None and int(m.group(2)) == s - 1:
                    targets.append(int(m.group(3)))
                else:
                    msg = f"Target {edge['target']!r} not allowed on level {s}"
                    raise GraphError(msg)
            levels.append(tuple(targets))
    except (KeyError, TypeError) as ex:
        msg = f"Invalid main tree JSON: {ex}"
        raise GraphError(msg) from ex
    return MainTree.build(k, d, tuple(levels))


def control_lengths(k):
    check_int_range(k, "k", low=1)
    if k <= 2:
        return [2 * k - 2]
    return list(range(4, 2 * k - 1, 2))


def _compositions(total, maxParts):
    if total == 0:
        yield ()
        return

    def parts(remaining, count):
        if count == 1:
            yield (remaining,)
            return
        for first in range(1, remaining - count + 2):
            for rest in parts(remaining - first, count - 1):
                yield (first,) + rest

    for count in range(1, maxParts + 1):
        yield from parts(total, count)


def _level_choices(d, composition):
    choices = []
    previous = None
    for size in composition:
        pool = range(2, d - 1, 2) if previous is None else range(1, previous + 1)
        choices.append(list(combinations_with_replacement(pool, size)))
        previous = size
    return product(*choices)


def enumerate_main_trees(k):
    '''
    All main trees for k, up to isomorphism, sorted by canonical form

    Names follow construction order: control path length, then level
    composition, then targets, all ascending; the i-th tree built is F<k>_<i>.
    :rtype: list of MainTree
    '''
    k = check_int_range(k, "k", low=1)
    if k > MAIN_TREE_CAP:
        msg = f"Main tree enumeration limited to k <= {MAIN_TREE_CAP} (got {k})"
        raise SolverCapError(msg)
    found = []
    seen = set()
    for d in control_lengths(k):
        total = k - 1 - d // 2
        for composition in _compositions(total, min(total, d // 4)):
            for levels in _level_choices(d, composition):
                mt = MainTree.build(k, d, levels, len(found) + 1)
                if mt.tree.diameter() != d:
                    continue
                if mt.canonical in seen:
                    continue
                seen.add(mt.canonical)
                found.append(mt)
    found.sort(key=attrgetter("canonical"))
    dbg(f"k={k}: {len(found)} main tree{s_if_plural(len(found))}")
    return found


def main_tree(k, index):
    '''The main tree named F<k>_<index>'''
    for mt in enumerate_main_trees(k):
        if mt.index == index:
            return mt
    msg = f"No main tree F{k}_{index}"
    raise GraphError(msg)


def automorphisms(mt):
    '''Automorphisms of the main tree as permutations of `even_order` positions'''
    g = mt.tree.to_networkx()
    position = {v: i for i, v in enumerate(mt.even_order)}
    perms = set()
    for mapping in GraphMatcher(g, g).isomorphisms_iter():
        perms.add(tuple(position[mapping[v]] for v in mt.even_order))
    return sorted(perms)


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class StructureReport:
    checks: tuple[Check, ...]
    d: int | None
    h: int | None

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def to_json(self):
        return {
            "passed": self.passed,
            "d": self.d,
            "h": self.h,
            "checks": { c.name: { "passed": c.passed, "detail": c.detail } for c in self.checks },
        }


def control_path(g):
    '''A longest path of a tree given as a networkx graph, ends chosen by lowest label'''
    nodes = sorted(g.nodes())
    if len(nodes) == 1:
        return nodes

    def farthest(source):
        dist = nx.single_source_shortest_path_length(g, source)
        top = max(dist.values())
        return min(v for v, dv in dist.items() if dv == top)

    a = farthest(nodes[0])
    b = farthest(a)
    return nx.shortest_path(g, a, b)


def validate_structure(t, k=None):
    '''
    Check a main tree or a full minimizer candidate against the structure of
    minimizer trees. Failures are report entries, never exceptions.

    :param t: ParityTree
    :param k: expected size of the even class, if known
    :rtype: StructureReport
    '''
    tree = t.tree
    odd, even, leaves = set(t.odd_set), set(t.even_set), set(t.leaf_set)
    main = t.main_subgraph()
    checks = []

    def add(name, passed, detail=""):
        checks.append(Check(name, bool(passed), detail))

    badEdges = [(u, v) for u, v in tree.edges
        if (u in odd and v in odd) or (u in even and v in even)]
    badLeaves = [v for v in leaves if tree.adjacency[v][0] not in even]
    add("parity_classes", not badEdges and not badLeaves,
        "" if not badEdges and not badLeaves
        else f"same-class edges {badEdges[:3]}, leaves off even vertices {sorted(badLeaves)[:3]}")

    badOdd = [v for v in sorted(odd) if tree.degree(v) != 2]
    add("odd_degree_two", not badOdd,
        "" if not badOdd else f"odd vertices of degree != 2: {badOdd[:5]}")

    countsOk = len(odd) == len(even) - 1 and (k is None or len(even) == k)
    add("vertex_counts", countsOk, f"|V2*|={len(even)}, |V1*|={len(odd)}" + ("" if k is None else f", k={k}"))

    mainLeaves = [v for v in main.nodes() if main.degree(v) <= 1]
    oddMainLeaves = sorted(v for v in mainLeaves if v not in even)
    add("main_leaves_even", not oddMainLeaves,
        "" if not oddMainLeaves else f"odd main-tree leaves: {oddMainLeaves[:5]}")

    if main.number_of_nodes() == 0 or not nx.is_connected(main):
        add("control_path_even", False, "main part is empty or disconnected")
        return StructureReport(tuple(checks), None, None)

    path = control_path(main)
    d = len(path) - 1
    add("control_path_even", d % 2 == 0 and path[0] in even,
        f"control path length {d}")

    if leaves:
        onPath = set(path)
        offenders = []
        for v in path[1:-1]:
            for u in tree.adjacency[v]:
                if u in onPath:
                    continue
                branch = _branch(tree, v, u)
                if len(branch) > 1 and all(tree.degree(w) <= 2 for w in branch):
                    offenders.append((v, len(branch)))
        add("no_long_pendant_paths", not offenders,
            "" if not offenders else f"pendant paths (vertex, length): {offenders[:3]}")
    else:
        add("no_long_pendant_paths", True, "not applicable without leaves")

    off = main.copy()
    off.remove_nodes_from(path)
    matching = nx.max_weight_matching(off, maxcardinality=True)
    perfect = 2 * len(matching) == off.number_of_nodes()
    firstLevel = {u for v in path for u in main.neighbors(v) if u not in set(path)}
    components = nx.number_connected_components(off) if off.number_of_nodes() else 0
    firstLevelOdd = all(u in odd for u in firstLevel)
    add("level_matching", perfect and components == len(firstLevel) and firstLevelOdd,
        f"{off.number_of_nodes()} off-path vertices, matching {len(matching)}, "
        f"{components} components, {len(firstLevel)} first-level vertices")

    h = 0
    if off.number_of_nodes():
        dist = nx.multi_source_dijkstra_path_length(main, set(path))
        h = max(dist[v] for v in off.nodes()) // 2
    kk = len(even)
    bound = min(kk - 1 - d // 2, d // 4)
    add("level_bound", h <= bound, f"h={h}, bound={bound}")

    add("edge_partition", main.number_of_edges() == d + 2 * len(matching),
        f"{main.number_of_edges()} edges = {d} + 2*{len(matching)}")

    if leaves:
        alpha = independence_number(tree).alpha
        add("independence", alpha == len(leaves) + len(odd),
            f"alpha={alpha}, |L|+|V1*|={len(leaves) + len(odd)}")

    return StructureReport(tuple(checks), d, h)


def _branch(tree, root, start):
    '''Vertices of the component of tree - root containing start'''
    seen = {root, start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in tree.adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    seen.discard(root)
    return seen
