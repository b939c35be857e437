'''Markers for expected values in specmin test modules

Kept apart from specmin.testing so package code can use them without
importing the harness.
'''
import json
import math


class Grep:
    """
    Expected output given as a regular expression to search for, instead of
    the whole text.
    """

    def __init__(self, search):
        self.search = search


class JSONFilter:
    """
    Expected JSON output with volatile keys removed before comparison

    Output holding several JSON lines is compared record by record; every
    record is re-serialised with sorted keys and an indent of 2.
    """

    def __init__(self, remove, text):
        self.remove = remove
        self.text = text.strip()

    def apply_filter(self, output):
        records = [json.loads(line) for line in output.splitlines() if line.strip()]
        filtered = [filter_json(record, self.remove) for record in records]
        return "\n".join(json.dumps(record, indent=2, sort_keys=True) for record in filtered)


def filter_json(obj, keys):
    """Remove `keys` from every object nested in a JSON value"""
    if isinstance(obj, dict):
        return {key: filter_json(value, keys) for key, value in obj.items() if key not in keys}
    if isinstance(obj, list):
        return [filter_json(value, keys) for value in obj]
    return obj


class Approx:
    """
    Expected float result compared within an absolute tolerance

    Tuples and lists of numbers compare element-wise.
    """

    def __init__(self, value, tol=1e-9):
        self.value = value
        self.tol = tol

    def matches(self, actual):
        if isinstance(self.value, (tuple, list)):
            return isinstance(actual, (tuple, list)) and len(actual) == len(self.value) and all(
                Approx(v, self.tol).matches(a) for v, a in zip(self.value, actual))
        try:
            return math.isclose(float(actual), float(self.value), rel_tol=0.0, abs_tol=self.tol)
        except (TypeError, ValueError):
            return False

    def __repr__(self):
        return f"Approx({self.value!r}, tol={self.tol!r})"
