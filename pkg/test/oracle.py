'''Test the brute-force oracle: generators, canonical codes, minimizers and audits'''

import random

import networkx as nx

from src.specmin.errors import EmptyClassError, SolverCapError
from src.specmin.graphs import (
    Graph,
    canonical_form,
    double_star,
    from_edge_list,
    path_graph,
    random_tree,
    relabel,
    star_graph,
)
from src.specmin.oracle import (
    _Bucket,
    audit_structural_propositions,
    brute_force_all,
    brute_force_minimizer,
    canonical_code,
    compare_with_construction,
    count_by_alpha,
    enumerate_connected_graphs,
    enumerate_free_trees,
)
from src.specmin.spectral import PerronEstimate

SLOW = ["test_generators_agree_large", "test_connected_count_8", "test_connected_minimizer_8"]


def masks_of(g):
    return tuple(sum(1 << u for u in g.adjacency[v]) for v in range(g.vertex_count))


def test_bucket_keeps_overlapping_brackets():
    '''Only a graph whose certified lower bound clears the best upper bound is dropped'''
    bucket = _Bucket()
    bucket.offer(PerronEstimate(2.0, 1.999, 2.001, 0, None), "wide")
    bucket.offer(PerronEstimate(2.0005, 2.0004, 2.0006, 0, None), "tight")
    bucket.offer(PerronEstimate(2.01, 2.009, 2.011, 0, None), "far")
    return (bucket.size, [name for _, name in bucket.items], bucket.best_value)

result_bucket_keeps_overlapping_brackets = (3, ["wide", "tight"], 2.0)


def test_free_tree_counts():
    return [sum(1 for _ in enumerate_free_trees(n)) for n in range(1, 11)]

result_free_tree_counts = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


def test_generators_agree():
    '''Successor generation and leaf augmentation give the same classes'''
    for n in range(1, 11):
        wrom = sorted(canonical_form(t) for t in enumerate_free_trees(n))
        augment = sorted(canonical_form(t) for t in enumerate_free_trees(n, "augment"))
        if wrom != augment or len(set(wrom)) != len(wrom):
            return n
    return True


def test_generators_agree_large():
    counts = []
    for n in (12, 14):
        wrom = sorted(canonical_form(t) for t in enumerate_free_trees(n))
        augment = sorted(canonical_form(t) for t in enumerate_free_trees(n, "augment"))
        counts.append(len(wrom) if wrom == augment else -1)
    return counts

result_generators_agree_large = [551, 3159]


def test_free_tree_cap():
    try:
        next(enumerate_free_trees(19))
    except SolverCapError:
        return True
    return False


def test_connected_counts():
    return [sum(1 for _ in enumerate_connected_graphs(n)) for n in range(1, 8)]

result_connected_counts = [1, 1, 2, 6, 21, 112, 853]


def test_connected_count_8():
    return sum(1 for _ in enumerate_connected_graphs(8))

result_connected_count_8 = 11117


def test_connected_atlas():
    '''The generated classes are exactly the connected graphs of the atlas'''
    atlas = {}
    for g in nx.graph_atlas_g()[1:]:
        if nx.is_connected(g):
            code = canonical_code(masks_of(Graph.from_networkx(g)))
            atlas.setdefault(g.number_of_nodes(), set()).add(code)
    for n in range(1, 8):
        generated = {canonical_code(masks_of(g)) for g in enumerate_connected_graphs(n)}
        if generated != atlas[n]:
            return n
    return True


def test_canonical_code_relabel():
    rng = random.Random(5)
    for n in (4, 6, 8, 9):
        t = random_tree(n, rng)
        extra = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3]
        g = from_edge_list(n, list(t.edges) + extra)
        perm = list(range(n))
        rng.shuffle(perm)
        if canonical_code(masks_of(g)) != canonical_code(masks_of(relabel(g, perm))):
            return False
    return True


def test_canonical_code_distinguishes():
    '''C6 and two disjoint triangles share every degree'''
    c6 = from_edge_list(6, [(i, (i + 1) % 6) for i in range(6)])
    triangles = from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    return canonical_code(masks_of(c6)) != canonical_code(masks_of(triangles))


def test_star_minimizer():
    result = brute_force_minimizer(8, 7)
    (entry,) = result.minimizers
    return canonical_form(entry.graph) == canonical_form(star_graph(8)) and result.class_size == 1


def test_double_star_minimizer():
    result = brute_force_minimizer(9, 7)
    return [canonical_form(e.graph) for e in result.minimizers] == [canonical_form(double_star(3, 3))]


def test_connected_minimizer():
    '''The path minimizes the radius over all connected graphs'''
    result = brute_force_minimizer(6, 3, "connected")
    (entry,) = result.minimizers
    return (entry.graph.is_tree() and canonical_form(entry.graph) == canonical_form(path_graph(6)),
        result.search_space_size)

result_connected_minimizer = (True, 112)


def test_connected_minimizer_8():
    result = brute_force_minimizer(8, 4, "connected")
    return all(e.graph.is_tree() for e in result.minimizers) and \
        [canonical_form(e.graph) for e in result.minimizers] == \
        [canonical_form(e.graph) for e in brute_force_minimizer(8, 4).minimizers]


def test_empty_class():
    try:
        brute_force_minimizer(5, 5)
    except EmptyClassError:
        return True
    return False


def test_empty_tree_class():
    '''No tree on four vertices has independence number 1'''
    try:
        brute_force_minimizer(4, 1)
    except EmptyClassError:
        return True
    return False


def test_all_alphas():
    results = brute_force_all(7)
    return (sorted(results), sum(r.class_size for r in results.values()))

result_all_alphas = ([4, 5, 6], 11)


def test_count_by_alpha():
    return sum(count_by_alpha(8).values())

result_count_by_alpha = 23


def test_audits():
    failed = []
    for alpha, result in brute_force_all(10).items():
        if alpha < 5:
            continue
        audit = audit_structural_propositions(result)
        if not audit.passed:
            failed.append(alpha)
    return failed

result_audits = []


def test_audit_rejects_connected():
    '''Audits apply to tree-space results only'''
    result = brute_force_minimizer(5, 2, "connected")
    try:
        audit_structural_propositions(result)
    except ValueError as ex:
        return not isinstance(ex, EmptyClassError)
    return False


def test_diameter_star():
    return brute_force_minimizer(9, 8).minimizers[0].graph.diameter()

result_diameter_star = 2


def test_diameter_range():
    '''Minimizers with k = 4 have diameter 6 or 8'''
    result = brute_force_minimizer(12, 8)
    return {e.graph.diameter() for e in result.minimizers} <= {6, 8}


def test_compare_match():
    return compare_with_construction(9, 7).status

result_compare_match = "match"


def test_compare_recorded():
    '''Below n0 the construction does not apply'''
    report = compare_with_construction(10, 7)
    return (report.status, report.construction)

result_compare_recorded = ("recorded", ())


def test_oracle_json():
    obj = brute_force_minimizer(9, 7).to_json()
    return (obj["n"], obj["alpha"], obj["space"], len(obj["minimizers"]), obj["minimizers"][0]["is_tree"])

result_oracle_json = (9, 7, "trees", 1, True)
