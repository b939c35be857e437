'''Test the argument checks in specmin.type'''

from src.specmin.msg import err
from src.specmin.type import check_int_range, check_positive, empty, type_check

def test_basic():
    '''Test a basic type check for an integer'''
    i = 1
    type_check(i, int, "i")
    return True

def test_callable():
    '''Test the special case of checking for a callable'''
    def mydef(): pass
    type_check(mydef, callable, "mydef")
    return True

def test_fail():
    '''Test a failing type check and the resulting error'''
    myvar = "string"
    try:
        type_check(myvar, int, "myvar")
    except ValueError as ex:
        err("%s" % str(ex))
        return True
    return False

err_fail = "ERROR: Unexpected type for 'myvar': <class 'str'> (expected <class 'int'>)"

def test_bool_is_not_int():
    '''A bool never passes for a vertex or a count'''
    try:
        type_check(True, int, "n")
    except ValueError:
        return True
    return False

def test_list_items():
    try:
        type_check([1, "two"], [int], "levels")
    except ValueError as ex:
        err(str(ex))
        return True
    return False

err_list_items = "ERROR: Unexpected type for 'levels[1]': <class 'str'> (expected <class 'int'>)"

def test_int_range():
    return check_int_range(7, "k", 1, 10)

result_int_range = 7

def test_int_range_fail():
    try:
        check_int_range(0, "k", low=1)
    except ValueError as ex:
        err(str(ex))
        return True
    return False

err_int_range_fail = "ERROR: Value of 'k' out of range: 0 (expected 1..inf)"

def test_positive():
    try:
        check_positive(0.0, "tol")
    except ValueError:
        return check_positive(1e-12, "tol") == 1e-12
    return False

def test_empty():
    return [empty(None), empty(""), empty(()), empty([0]), empty(0)]

result_empty = [True, True, True, False, False]
