'''Test the worker pool and the job count configuration'''

import time

from src.specmin.pool import parallel_map


def test_order_preserved():
    '''Slow early items still come back first'''
    def work(i):
        time.sleep(0.01 * (5 - i))
        return i * i
    return parallel_map(work, range(5), jobs=3)

result_order_preserved = [0, 1, 4, 9, 16]


def test_inline():
    return parallel_map(str, [3, 1, 2], jobs=1)

result_inline = ["3", "1", "2"]


def test_empty():
    return parallel_map(abs, [], jobs=4)

result_empty = []


def test_first_failure():
    '''The failure of the lowest index is raised'''
    def work(i):
        if i in (2, 4):
            raise ValueError(f"item {i}")
        return i
    try:
        parallel_map(work, range(6), jobs=2)
    except ValueError as ex:
        return str(ex)
    return None

result_first_failure = "item 2"


run_invalid_jobs = ["env", "SPECMIN_JOBS=many", "python3", "-m", "src.specmin", "main-trees", "--k", "1", "--output", "graph6"]

out_invalid_jobs = "@"

err_invalid_jobs = "WARNING: Ignoring invalid SPECMIN_JOBS value: 'many'"
