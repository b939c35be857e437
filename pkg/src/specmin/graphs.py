'''
Graphs, trees and the transformations used by the minimizer construction.

Vertices are dense 0-based indices. A `Graph` is immutable; every operation
returns a new value. networkx is used for the classical graph algorithms
(connectivity, diameters, bridges, barycenters, graph6) and numpy for the
adjacency matrix.
'''

from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import networkx as nx
import numpy as np

from .config import EXACT_MIS_CAP, PERRON_TIE_TOL
from .errors import (
    DisconnectedGraphError,
    Graph6Error,
    GraphError,
    NotATreeError,
    SolverCapError,
)
from .type import check_int_range, type_check


@dataclass(frozen=True)
class Graph:
    '''Undirected simple graph in sorted adjacency-list form'''

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.vertex_count
        if len(self.adjacency) != n:
            msg = f"Adjacency table has {len(self.adjacency)} rows for {n} vertices"
            raise GraphError(msg)
        arcs = set()
        for v, nbrs in enumerate(self.adjacency):
            prev = -1
            for u in nbrs:
                if u == v:
                    msg = f"Self-loop at vertex {v}"
                    raise GraphError(msg)
                if not 0 <= u < n:
                    msg = f"Neighbor {u} of vertex {v} out of range"
                    raise GraphError(msg)
                if u <= prev:
                    msg = f"Neighbors of vertex {v} not strictly increasing"
                    raise GraphError(msg)
                prev = u
                arcs.add((v, u))
        for v, u in arcs:
            if (u, v) not in arcs:
                msg = f"Adjacency not symmetric: {v}->{u}"
                raise GraphError(msg)

    @cached_property
    def edges(self):
        return tuple((v, u) for v, nbrs in enumerate(self.adjacency) for u in nbrs if v < u)

    @property
    def edge_count(self):
        return len(self.edges)

    def degree(self, v):
        return len(self.adjacency[v])

    def neighbors(self, v):
        return self.adjacency[v]

    def has_edge(self, u, v):
        return 0 <= u < self.vertex_count and v in self.adjacency[u]

    def leaves(self):
        return tuple(v for v in range(self.vertex_count) if len(self.adjacency[v]) == 1)

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g):
        nodes = list(g.nodes())
        try:
            nodes.sort()
        except TypeError:
            pass
        index = {node: i for i, node in enumerate(nodes)}
        adj = [set() for _ in nodes]
        for a, b in g.edges():
            if a == b:
                msg = f"Self-loop at vertex {a!r}"
                raise GraphError(msg)
            adj[index[a]].add(index[b])
            adj[index[b]].add(index[a])
        return cls(len(nodes), tuple(tuple(sorted(s)) for s in adj))

    @cached_property
    def connected(self):
        if self.vertex_count == 0:
            return False
        return nx.is_connected(self.to_networkx())

    def is_tree(self):
        return self.vertex_count >= 1 and self.edge_count == self.vertex_count - 1 and self.connected

    def diameter(self):
        require_connected(self, "graph")
        if self.vertex_count == 1:
            return 0
        return nx.diameter(self.to_networkx())

    def adjacency_matrix(self):
        a = np.zeros((self.vertex_count, self.vertex_count))
        for u, v in self.edges:
            a[u, v] = 1.0
            a[v, u] = 1.0
        return a

    def to_json(self):
        return { "n": self.vertex_count, "edges": [[u, v] for u, v in self.edges] }

    @classmethod
    def from_json(cls, obj):
        try:
            n = obj["n"]
            edges = obj["edges"]
        except (KeyError, TypeError) as ex:
            msg = f"Invalid graph JSON: {ex}"
            raise GraphError(msg) from ex
        return from_edge_list(n, [tuple(e) for e in edges])


def require_tree(g, varname="t"):
    if not g.is_tree():
        msg = f"Expected '{varname}' to be a tree ({g.vertex_count} vertices, {g.edge_count} edges)"
        raise NotATreeError(msg)


def require_connected(g, varname="g"):
    if not g.connected:
        msg = f"Expected '{varname}' to be connected ({g.vertex_count} vertices)"
        raise DisconnectedGraphError(msg)


def from_edge_list(n, edges):
    '''Build a simple graph on `n` vertices; repeated pairs collapse to one edge'''
    n = check_int_range(n, "n", low=0)
    adj = [set() for _ in range(n)]
    for pair in edges:
        if len(pair) != 2:
            msg = f"Edge must be a vertex pair: {pair!r}"
            raise GraphError(msg)
        u, v = pair
        for end in (u, v):
            if isinstance(end, bool) or not isinstance(end, int) or not 0 <= end < n:
                msg = f"Edge endpoint out of range: {end!r} (n={n})"
                raise GraphError(msg)
        if u == v:
            msg = f"Self-loop at vertex {u}"
            raise GraphError(msg)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in adj))


def relabel(g, perm):
    '''Copy of `g` with vertex v renamed perm[v]'''
    if sorted(perm) != list(range(g.vertex_count)):
        msg = f"Not a permutation of {g.vertex_count} vertices: {perm!r}"
        raise GraphError(msg)
    return from_edge_list(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges])


def remove_vertex(g, v):
    '''Delete vertex v; higher indices shift down by one'''
    check_int_range(v, "v", 0, g.vertex_count - 1)
    shift = lambda u: u if u < v else u - 1
    return from_edge_list(
        g.vertex_count - 1,
        [(shift(a), shift(b)) for a, b in g.edges if v not in (a, b)])


class Independence(NamedTuple):
    alpha: int
    witness: tuple


def independence_number(g):
    '''
    Independence number of a connected graph, with one maximum independent set

    Trees are handled by a rooted include/exclude dynamic program; when the
    tree has at least three vertices the witness contains every leaf. Other
    graphs are solved exactly as maximum cliques of the complement
    (networkx), limited to EXACT_MIS_CAP vertices.

    :param g: connected Graph
    :return: (alpha, sorted witness tuple)
    :rtype: Independence
    '''
    require_connected(g)
    if g.is_tree():
        return _tree_independence(g)
    return _general_independence(g)


def rooted_order(g, root):
    '''BFS order and parent array of a tree rooted at `root`'''
    parent = [-1] * g.vertex_count
    order = [root]
    seen = [False] * g.vertex_count
    seen[root] = True
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for u in g.adjacency[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                order.append(u)
    return order, parent


def _tree_independence(t):
    n = t.vertex_count
    if n <= 2:
        return Independence(1, (0,))
    root = next(v for v in range(n) if t.degree(v) >= 2)
    order, parent = rooted_order(t, root)
    inc = [1] * n
    exc = [0] * n
    for v in reversed(order):
        p = parent[v]
        if p >= 0:
            inc[p] += exc[v]
            exc[p] += max(inc[v], exc[v])

    # Excluding on ties keeps every leaf in the witness
    take = [False] * n
    for v in order:
        p = parent[v]
        take[v] = (p < 0 or not take[p]) and inc[v] > exc[v]
    witness = tuple(v for v in range(n) if take[v])
    return Independence(max(inc[root], exc[root]), witness)


def _general_independence(g):
    n = g.vertex_count
    if n > EXACT_MIS_CAP:
        msg = f"Exact independence number limited to {EXACT_MIS_CAP} vertices (got {n})"
        raise SolverCapError(msg)
    # maximum independent sets of g are the maximum cliques of its complement
    clique, size = nx.max_weight_clique(nx.complement(g.to_networkx()), weight=None)
    return Independence(size, tuple(sorted(clique)))


def attach_leaves(g, counts):
    '''
    G ∘ l: attach counts[u] new pendant vertices at each host u

    New vertices are numbered after the existing ones, grouped by host in
    ascending host order.
    '''
    type_check(counts, Mapping, "counts")
    n = g.vertex_count
    for host, amount in counts.items():
        if isinstance(host, bool) or not isinstance(host, int) or not 0 <= host < n:
            msg = f"Unknown host vertex: {host!r}"
            raise GraphError(msg)
        if isinstance(amount, bool) or not isinstance(amount, int) or amount < 0:
            msg = f"Leaf count for host {host} must be a nonnegative integer: {amount!r}"
            raise GraphError(msg)
    adj = [list(nbrs) for nbrs in g.adjacency]
    nextVertex = n
    for host in sorted(counts):
        for _ in range(counts[host]):
            adj[host].append(nextVertex)
            adj.append([host])
            nextVertex += 1
    return Graph(nextVertex, tuple(tuple(a) for a in adj))


def subdivide_edge(g, u, v):
    '''Replace edge uv by the path u-w-v through the new vertex w = n'''
    if not g.has_edge(u, v):
        msg = f"Not an edge: ({u}, {v})"
        raise GraphError(msg)
    w = g.vertex_count
    adj = [list(nbrs) for nbrs in g.adjacency]
    adj[u].remove(v)
    adj[u].append(w)
    adj[v].remove(u)
    adj[v].append(w)
    adj.append(sorted((u, v)))
    return Graph(w + 1, tuple(tuple(a) for a in adj))


def perron_vector(g):
    '''Unit positive eigenvector of the largest adjacency eigenvalue'''
    require_connected(g)
    if g.vertex_count == 1:
        return np.ones(1)
    _, vectors = np.linalg.eigh(g.adjacency_matrix())
    x = np.abs(vectors[:, -1])
    return x / np.linalg.norm(x)


def min_perron_neighbor(g, v):
    '''Neighbor of v with the smallest Perron entry (lowest index on ties)'''
    x = perron_vector(g)
    nbrs = g.adjacency[v]
    smallest = min(x[u] for u in nbrs)
    return next(u for u in nbrs if x[u] <= smallest + PERRON_TIE_TOL)


def split_vertex(g, v, left, pivot):
    '''
    Replace v by v' (keeps index v) and v'' (index n), both adjacent to pivot

    v' takes the neighbors in `left`; v'' takes the remaining neighbors.
    The edge v-pivot must be a cut edge and the pivot must carry the
    smallest Perron entry among the neighbors of v (ties within
    PERRON_TIE_TOL allowed); under these conditions the spectral radius
    does not increase.
    '''
    check_int_range(v, "v", 0, g.vertex_count - 1)
    nbrs = set(g.adjacency[v])
    deg = len(nbrs)
    if deg < 3:
        msg = f"Vertex {v} has degree {deg}; splitting needs degree at least 3"
        raise GraphError(msg)
    if pivot not in nbrs:
        msg = f"Pivot {pivot} is not a neighbor of {v}"
        raise GraphError(msg)
    left = set(left)
    if not left <= nbrs - {pivot}:
        msg = f"Left part {sorted(left)} must be neighbors of {v} other than the pivot"
        raise GraphError(msg)
    if not 2 <= len(left) + 1 <= deg - 1:
        msg = f"Degenerate split of vertex {v}: {len(left) + 1} of {deg} neighbors on the left"
        raise GraphError(msg)
    require_connected(g)
    if not g.is_tree():
        bridges = set(nx.bridges(g.to_networkx()))
        if (v, pivot) not in bridges and (pivot, v) not in bridges:
            msg = f"Edge ({v}, {pivot}) is not a cut edge"
            raise GraphError(msg)
    x = perron_vector(g)
    smallest = min(x[u] for u in nbrs)
    if x[pivot] > smallest + PERRON_TIE_TOL:
        msg = (f"Pivot {pivot} has Perron entry {x[pivot]:.9g}; "
            f"the smallest among the neighbors of {v} is {smallest:.9g}")
        raise GraphError(msg)

    w = g.vertex_count
    right = nbrs - left - {pivot}
    adj = [list(a) for a in g.adjacency]
    adj[v] = sorted(left | {pivot})
    for x in right:
        adj[x].remove(v)
        adj[x].append(w)
    adj[pivot].append(w)
    adj.append(sorted(right | {pivot}))
    return Graph(w + 1, tuple(tuple(sorted(a)) for a in adj))


def canonical_form(t):
    '''AHU encoding rooted at the centroid; equal iff the trees are isomorphic

    :rtype: bytes
    '''
    require_tree(t)
    if t.vertex_count == 1:
        return b"()"
    centroids = sorted(nx.barycenter(t.to_networkx()))
    return min(_ahu_code(t, c) for c in centroids)


def _ahu_code(t, root):
    order, parent = rooted_order(t, root)
    labels = [[] for _ in range(t.vertex_count)]
    code = [b""] * t.vertex_count
    for v in reversed(order):
        labels[v].sort()
        code[v] = b"(" + b"".join(labels[v]) + b")"
        if parent[v] >= 0:
            labels[parent[v]].append(code[v])
    return code[root]


def to_graph6(g):
    data = nx.to_graph6_bytes(g.to_networkx(), header=False)
    return data.decode("ascii").strip()


def from_graph6(text):
    if isinstance(text, str):
        try:
            data = text.strip().encode("ascii")
        except UnicodeEncodeError as ex:
            msg = f"graph6 text must be printable ASCII: {ex}"
            raise Graph6Error(msg) from ex
    else:
        data = bytes(text).strip()
    if len(data) == 0:
        raise Graph6Error("Empty graph6 text")
    try:
        g = nx.from_graph6_bytes(data)
    except (nx.NetworkXError, ValueError, IndexError) as ex:
        msg = f"Malformed graph6 text {data!r}: {ex}"
        raise Graph6Error(msg) from ex
    return Graph.from_networkx(g)


def graph6_codec(x):
    '''Encode a Graph to graph6 text, or decode graph6 text to a Graph'''
    if isinstance(x, Graph):
        return to_graph6(x)
    if isinstance(x, (str, bytes)):
        return from_graph6(x)
    msg = f"Expected a Graph or graph6 text, got {type(x)}"
    raise ValueError(msg)


@dataclass(frozen=True)
class ParityTree:
    '''
    A tree split into leaves L, odd main vertices V1* and even main vertices V2*

    Construction only checks that the tree is a tree and that the three sets
    partition its vertices; the structural properties are reported by
    `main_trees.validate_structure`.
    '''

    tree: Graph
    leaf_set: tuple[int, ...]
    odd_set: tuple[int, ...]
    even_set: tuple[int, ...]

    def __post_init__(self):
        require_tree(self.tree, "tree")
        parts = (self.leaf_set, self.odd_set, self.even_set)
        for part in parts:
            if list(part) != sorted(set(part)):
                msg = f"Vertex sets must be sorted without repeats: {part!r}"
                raise GraphError(msg)
        union = [v for part in parts for v in part]
        if sorted(union) != list(range(self.tree.vertex_count)):
            msg = "Leaf, odd and even sets do not partition the vertices"
            raise GraphError(msg)

    @property
    def k(self):
        return len(self.even_set)

    @cached_property
    def main_vertices(self):
        return tuple(sorted(self.odd_set + self.even_set))

    def main_subgraph(self):
        '''The main part T - L as a networkx graph on the original labels'''
        return self.tree.to_networkx().subgraph(self.main_vertices).copy()

    def leaf_counts(self):
        '''Number of leaves of L hosted by each main vertex'''
        leaves = set(self.leaf_set)
        return {
            v: sum(1 for u in self.tree.adjacency[v] if u in leaves)
            for v in self.main_vertices
        }


def parity_decomposition(t):
    '''
    Split a tree into leaves, odd and even main vertices

    L(T) is the leaf set, except that a path on an even number of vertices
    contributes only its lower-indexed end and K1 has no leaves. The even
    class is the colour class of T - L that hosts the leaves.
    '''
    require_tree(t)
    n = t.vertex_count
    if n == 1:
        return ParityTree(t, (), (), (0,))
    leaves = t.leaves()
    if n % 2 == 0 and max(t.degree(v) for v in range(n)) <= 2:
        leaves = (min(leaves),)
    leafSet = set(leaves)
    colour = nx.bipartite.color(t.to_networkx())
    evenColour = colour[t.adjacency[leaves[0]][0]]
    main = [v for v in range(n) if v not in leafSet]
    even = tuple(v for v in main if colour[v] == evenColour)
    odd = tuple(v for v in main if colour[v] != evenColour)
    return ParityTree(t, tuple(leaves), odd, even)


def quotient_bound(g, y):
    '''
    λ = max_v (A·y)_v / y_v for a positive vector y

    Any such λ satisfies A·y ≤ λ·y, hence bounds the spectral radius of a
    connected graph from above.
    '''
    vec = np.asarray(y, dtype=float)
    if vec.shape != (g.vertex_count,) or not np.all(vec > 0):
        msg = f"Expected a positive vector of length {g.vertex_count}"
        raise GraphError(msg)
    return float(np.max(g.adjacency_matrix() @ vec / vec))


def path_graph(n):
    check_int_range(n, "n", low=1)
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n):
    '''K_{1,n-1} with center 0'''
    check_int_range(n, "n", low=1)
    return from_edge_list(n, [(0, i) for i in range(1, n)])


def spider(legs):
    '''Center 0 with pendant paths of the given lengths'''
    edges = []
    nextVertex = 1
    for length in legs:
        check_int_range(length, "leg", low=1)
        prev = 0
        for _ in range(length):
            edges.append((prev, nextVertex))
            prev = nextVertex
            nextVertex += 1
    return from_edge_list(nextVertex, edges)


def w_graph(n):
    '''W_n: a path on n-4 vertices with two pendant leaves at each end'''
    check_int_range(n, "n", low=5)
    if n % 2 == 0:
        msg = f"W_n is defined for odd n (got {n})"
        raise GraphError(msg)
    core = path_graph(n - 4)
    ends = {0: 2}
    ends[n - 5] = ends.get(n - 5, 0) + 2
    return attach_leaves(core, ends)


def d_graph(n):
    '''D_n: a path p0..p_{n-3} with two extra leaves at p0'''
    check_int_range(n, "n", low=4)
    if n % 2 == 1:
        msg = f"D_n is defined for even n (got {n})"
        raise GraphError(msg)
    return attach_leaves(path_graph(n - 2), {0: 2})


def double_star(a, b):
    '''T(a, b) = P3 ∘ (a, 0, b)'''
    return attach_leaves(path_graph(3), {0: a, 2: b})


def is_w_graph(g):
    n = g.vertex_count
    if n < 5 or n % 2 == 0 or not g.is_tree():
        return False
    return canonical_form(g) == canonical_form(w_graph(n))


def random_tree(n, rng):
    '''Uniform labeled tree on n vertices from a random Prüfer sequence'''
    check_int_range(n, "n", low=1)
    if n <= 2:
        return path_graph(n)
    sequence = [rng.randrange(n) for _ in range(n - 2)]
    return Graph.from_networkx(nx.from_prufer_sequence(sequence))
