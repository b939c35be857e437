'''Thread worker pool with order-preserving results'''

from queue import Queue
from threading import Thread

from .msg import dbg, progress


def parallel_map(func, items, jobs=1, label=None):
    '''Apply `func` to every item using `jobs` worker threads

    Results come back in input order whatever the completion order, so any
    reduction over them is deterministic. The first exception raised by a
    worker is re-raised here after all workers finish.
    :param func: callable taking one item
    :param items: iterable of items
    :param jobs: number of worker threads; 1 or less runs inline
    :param label: optional name for progress messages
    :return: list of results
    :rtype: list
    '''
    items = list(items)
    total = len(items)
    if jobs <= 1 or total <= 1:
        results = []
        for index, item in enumerate(items):
            results.append(func(item))
            if label is not None: progress(label, index + 1, total)
        return results

    results = [None] * total
    failures = []
    q = Queue()

    def worker():
        while True:
            entry = q.get()
            if entry is None:
                q.task_done()
                return
            index, item = entry
            try:
                if not failures:
                    results[index] = func(item)
            except Exception as ex:
                failures.append((index, ex))
            q.task_done()
            if label is not None: progress(label, index + 1, total)

    threadCount = min(jobs, total)
    dbg(f"Starting {threadCount} workers for {total} items")
    threads = []
    for threadNum in range(threadCount):
        t = Thread(name="specmin_worker%d" % threadNum, target=worker)
        t.daemon = True
        t.start()
        threads.append(t)

    for entry in enumerate(items):
        q.put(entry)
    for _ in threads:
        q.put(None)
    q.join()

    if failures:
        failures.sort(key=lambda pair: pair[0])
        raise failures[0][1]
    return results
