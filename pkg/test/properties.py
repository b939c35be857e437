'''Seeded property checks of the spectral and structural machinery on random trees'''

import random

import networkx as nx
import numpy as np

from src.specmin.graphs import (
    attach_leaves,
    double_star,
    independence_number,
    is_w_graph,
    min_perron_neighbor,
    quotient_bound,
    random_tree,
    relabel,
    remove_vertex,
    split_vertex,
    subdivide_edge,
    w_graph,
)
from src.specmin.spectral import (
    Order,
    bipartite_lift_radius,
    closed_form_certificate,
    compare_radii,
    spectral_radius,
)

SEED = 20240611


def trees(count, low, high, seed=SEED):
    rng = random.Random(seed)
    return [random_tree(rng.randint(low, high), rng) for _ in range(count)]


def internal_path_edge(t):
    '''First edge of an internal path (branch vertex to branch vertex), or None'''
    for a in range(t.vertex_count):
        if t.degree(a) < 3:
            continue
        for first in t.adjacency[a]:
            prev, cur = a, first
            while t.degree(cur) == 2:
                prev, cur = cur, next(u for u in t.adjacency[cur] if u != prev)
            if t.degree(cur) >= 3:
                return (a, first)
    return None


def radius_top(g):
    return float(np.linalg.eigvalsh(g.adjacency_matrix())[-1])


def test_leaf_removal_lowers_radius():
    '''Deleting any leaf gives a proper subgraph of strictly smaller radius'''
    rng = random.Random(SEED + 3)
    for t in trees(120, 4, 16):
        leaf = rng.choice(t.leaves())
        smaller = remove_vertex(t, leaf)
        if compare_radii(spectral_radius(smaller), spectral_radius(t)) is not Order.LESS:
            return False
    return True


def test_quotient_bound_above_radius():
    rng = random.Random(SEED + 1)
    for t in trees(120, 3, 20):
        y = [rng.uniform(0.5, 2.0) for _ in range(t.vertex_count)]
        if quotient_bound(t, y) < spectral_radius(t).approx - 1e-9:
            return False
    return True


def test_quotient_bound_perron_vector():
    '''The bound is tight at the Perron vector'''
    for t in trees(30, 3, 20, SEED + 4):
        _, vectors = np.linalg.eigh(t.adjacency_matrix())
        y = np.abs(vectors[:, -1])
        if abs(quotient_bound(t, y) - radius_top(t)) > 1e-8:
            return False
    return True


def test_subdivide_internal_path_random():
    '''Subdividing an internal path edge of a tree other than W_n lowers the radius'''
    rng = random.Random(SEED + 5)
    checked = 0
    for _ in range(4000):
        if checked == 200:
            break
        t = random_tree(rng.randint(6, 20), rng)
        edge = internal_path_edge(t)
        if edge is None or is_w_graph(t):
            continue
        checked += 1
        if compare_radii(spectral_radius(subdivide_edge(t, *edge)), spectral_radius(t)) is not Order.LESS:
            return False
    return checked == 200


def test_split_never_raises_radius():
    '''Splitting a vertex around its least-Perron neighbor never raises the radius'''
    rng = random.Random(SEED + 6)
    checked = 0
    for _ in range(2000):
        if checked == 100:
            break
        t = random_tree(rng.randint(5, 16), rng)
        branch = [v for v in range(t.vertex_count) if t.degree(v) >= 3]
        if not branch:
            continue
        v = rng.choice(branch)
        pivot = min_perron_neighbor(t, v)
        others = [u for u in t.adjacency[v] if u != pivot]
        left = rng.sample(others, rng.randint(1, len(others) - 1))
        checked += 1
        split = split_vertex(t, v, left, pivot)
        if compare_radii(spectral_radius(split), spectral_radius(t)) is Order.GREATER:
            return False
    return checked == 100


def test_lift_identity_random():
    '''rho(G o l1_A)^2 = rho(G)^2 + l for a colour class A of a random tree'''
    rng = random.Random(SEED + 7)
    for i in range(200):
        t = random_tree(rng.randint(2, 12), rng)
        l = rng.randint(0, 6)
        colour = nx.bipartite.color(t.to_networkx())
        side = rng.randint(0, 1)
        lifted = attach_leaves(t, {v: l for v in range(t.vertex_count) if colour[v] == side})
        if abs(radius_top(lifted) ** 2 - radius_top(t) ** 2 - l) > 1e-9:
            return False
        if i % 5 == 0:
            expected = bipartite_lift_radius(spectral_radius(t), l)
            if compare_radii(spectral_radius(lifted), expected) is not Order.EQUAL:
                return False
    return True


def test_radius_matches_eigenvalues():
    for t in trees(10, 2, 25):
        top = float(np.linalg.eigvalsh(t.adjacency_matrix())[-1])
        if abs(spectral_radius(t).approx - top) > 1e-9:
            return False
    return True


def test_radius_relabel_invariant():
    rng = random.Random(SEED + 2)
    for t in trees(6, 5, 18):
        perm = list(range(t.vertex_count))
        rng.shuffle(perm)
        if compare_radii(spectral_radius(t), spectral_radius(relabel(t, perm))) is not Order.EQUAL:
            return False
    return True


def test_subdivide_w_graph():
    '''Subdividing the inner path of W_7 keeps the radius at 2'''
    w = w_graph(7)
    subdivided = subdivide_edge(w, 0, 1)
    two = closed_form_certificate(4)
    return (w == double_star(2, 2), compare_radii(spectral_radius(w), two), compare_radii(spectral_radius(subdivided), two))

result_subdivide_w_graph = (True, Order.EQUAL, Order.EQUAL)


def test_subdivide_internal_path():
    '''Outside the W family an internal subdivision lowers the radius'''
    t = double_star(3, 2)
    return compare_radii(spectral_radius(subdivide_edge(t, 0, 1)), spectral_radius(t))

result_subdivide_internal_path = Order.LESS


def test_tree_independence_matching():
    '''alpha + matching number = n on bipartite graphs'''
    for t in trees(15, 1, 30):
        matching = nx.max_weight_matching(t.to_networkx(), maxcardinality=True)
        if independence_number(t).alpha != t.vertex_count - len(matching):
            return False
    return True


def test_witness_is_independent():
    for t in trees(15, 3, 30):
        witness = independence_number(t).witness
        chosen = set(witness)
        if any(u in chosen for v in witness for u in t.adjacency[v]):
            return False
        if not set(t.leaves()) <= chosen:
            return False
    return True
