'''Test main tree descriptors, their enumeration and the structure checks'''

from src.specmin.errors import GraphError
from src.specmin.graphs import ParityTree, canonical_form, path_graph, spider
from src.specmin.main_trees import (
    MainTree,
    automorphisms,
    control_lengths,
    enumerate_main_trees,
    main_tree,
    main_tree_from_json,
    realize_main_tree,
    validate_structure,
)
from src.specmin.reference import MAIN_TREE_COUNTS


def published(k):
    return sorted(enumerate_main_trees(k), key=lambda mt: mt.index)


def test_counts():
    return [len(enumerate_main_trees(k)) for k in range(1, 7)]

result_counts = [MAIN_TREE_COUNTS[k] for k in range(1, 7)]


def test_names():
    return [mt.name for mt in published(5)]

result_names = ["F5_1", "F5_2", "F5_3"]


def test_descriptors_k5():
    return [(mt.d, mt.levels) for mt in published(5)]

result_descriptors_k5 = [(4, ((2, 2),)), (6, ((2,),)), (8, ())]


def test_descriptors_k6():
    '''Isomorphic descriptors such as (6; 4,4) are kept once'''
    return [(mt.d, mt.levels) for mt in published(6)]

result_descriptors_k6 = [
    (4, ((2, 2, 2),)),
    (6, ((2, 2),)),
    (6, ((2, 4),)),
    (8, ((2,),)),
    (8, ((4,),)),
    (10, ()),
]


def test_canonical_order():
    '''Enumeration is sorted by canonical form and keeps every name'''
    mts = enumerate_main_trees(6)
    forms = [mt.canonical for mt in mts]
    return (forms == sorted(forms), sorted(mt.index for mt in mts))

result_canonical_order = (True, [1, 2, 3, 4, 5, 6])


def test_main_tree_missing():
    try:
        main_tree(5, 4)
    except GraphError:
        return True
    return False


def test_longest_is_path():
    mts = published(5)
    return canonical_form(mts[-1].tree) == canonical_form(path_graph(9))


def test_even_labels():
    return main_tree(4, 1).even_labels()

result_even_labels = ["v0", "v2", "v4", "y1,1"]


def test_automorphism_counts():
    '''The spider with four legs of length two has 4! automorphisms'''
    first, _, last = published(5)
    return (len(automorphisms(first)), len(automorphisms(last)))

result_automorphism_counts = (24, 2)


def test_realize_single_vertex():
    t = realize_main_tree(1, 0, ())
    return (t.tree.vertex_count, t.even_set, t.odd_set)

result_realize_single_vertex = (1, (0,), ())


def test_bad_target():
    '''Level-1 pairs hang off interior even path vertices only'''
    try:
        MainTree.build(5, 4, ((3, 3),))
    except GraphError:
        return True
    return False


def test_bad_length():
    try:
        MainTree.build(5, 5, ((2,),))
    except ValueError as ex:
        return not isinstance(ex, GraphError)
    return False


def test_bad_pair_count():
    try:
        MainTree.build(5, 6, ((2, 4),))
    except ValueError:
        return True
    return False


def test_validate_main_trees():
    reports = [validate_structure(mt.realized, 6) for mt in enumerate_main_trees(6)]
    return all(r.passed for r in reports) and sorted(r.d for r in reports) == [4, 6, 6, 8, 8, 10]


def test_validate_failure():
    '''A spider whose center is odd breaks the degree condition'''
    t = ParityTree(spider((2, 2, 2)), (), (0, 2, 4, 6), (1, 3, 5))
    report = validate_structure(t)
    return not report.passed and "odd_degree_two" in [c.name for c in report.failures()]


def test_validate_odd_diameter():
    '''P6 taken whole as a main tree has diameter 5'''
    t = ParityTree(path_graph(6), (), (0, 2, 4), (1, 3, 5))
    report = validate_structure(t, 3)
    return (report.passed, "control_path_even" in [c.name for c in report.failures()])

result_validate_odd_diameter = (False, True)


def test_json_round_trip():
    for mt in enumerate_main_trees(6):
        back = main_tree_from_json(mt.to_json())
        if (back.d, back.levels) != (mt.d, mt.levels) or back.canonical != mt.canonical:
            return False
    return True


def test_json_bad_target():
    obj = main_tree(5, 1).to_json()
    obj["levels"][0]["edges"][0]["target"] = "y1,1"
    try:
        main_tree_from_json(obj)
    except GraphError:
        return True
    return False


def test_control_lengths():
    return (control_lengths(1), control_lengths(2), control_lengths(6))

result_control_lengths = ([0], [2], [4, 6, 8, 10])
