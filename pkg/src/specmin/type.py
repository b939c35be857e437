"""Argument checks shared by the specmin modules"""

from numbers import Integral


def empty(value):
    """
    Emptiness check, polymorphic over None, str, list and tuple

    :param value: value to check for emptiness
    """
    return value is None or (isinstance(value, (str, list, tuple)) and len(value) == 0)

def type_error(varname, actual_typename, expected_typename):
    msg = "Unexpected type for '%s': %s (expected %s)" % (
        varname, actual_typename, expected_typename)
    raise ValueError(msg)

def has_type(val, typ):
    if typ == callable:
        return callable(val)
    if typ is None:
        return val is None
    if typ is int:
        # bool is an int subclass, never a vertex or a count
        return isinstance(val, Integral) and not isinstance(val, bool)
    return isinstance(val, typ)

def type_check(val, typ, varname):
    if isinstance(typ, list):
        # `val` must be a list or tuple whose items have one of the types in `typ`
        if not isinstance(val, (list, tuple)):
            type_error(varname, str(type(val)), "list")
        for index, subval in enumerate(val):
            if not any(has_type(subval, t) for t in typ):
                type_error(
                    "%s[%d]" % (varname, index),
                    str(type(subval)),
                    " or ".join([str(t) for t in typ]))
    elif not has_type(val, typ):
        type_error(varname, str(type(val)), str(typ))

def check_int_range(val, varname, low=None, high=None):
    """
    Check that `val` is an integer within [low, high] (either end optional)

    :param val: the value to check
    :param varname: name used in the error message
    :param low: inclusive lower bound, or None
    :param high: inclusive upper bound, or None
    :return: `val` as a plain int
    """
    type_check(val, int, varname)
    if (low is not None and val < low) or (high is not None and val > high):
        lowText = "-inf" if low is None else str(low)
        highText = "inf" if high is None else str(high)
        msg = f"Value of '{varname}' out of range: {val} (expected {lowText}..{highText})"
        raise ValueError(msg)
    return int(val)

def check_positive(val, varname):
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not val > 0:
        msg = f"Value of '{varname}' must be positive: {val!r}"
        raise ValueError(msg)
    return val
