'''In-house test harness for the specmin test suite

A test module is an ordinary module whose names declare the tests:

* `test_<name>`: a callable run in-process; its return value must be truthy,
  or equal `result_<name>` when that is defined;
* `run_<name>`: an argv list run as a subprocess, checked against
  `code_<name>` (default 0) and fed `in_<name>` on standard input;
* `out_<name>` / `err_<name>`: expected standard output / error of either
  kind of test. Output nobody declared is a failure.

`DISABLED` lists tests to skip; `SLOW` lists tests that only run with
`--slow` or SPECMIN_SLOW_TESTS=1. `global_options` extends the argv prefix
of the module's subprocess tests.
'''

from argparse import ArgumentParser
from difflib import Differ
from importlib import import_module
import inspect
from io import BytesIO, TextIOWrapper
import json
import os
from pathlib import Path
from queue import Queue
import re
import shlex
import subprocess
import sys
from threading import RLock, Thread
import traceback
from types import FunctionType, ModuleType

from .msg import dbg, err, get_debug, info, set_debug, s_if_plural, warn
from .testutil import Approx, Grep, JSONFilter
from .type import empty, type_check

# Test modules run in parallel; tests inside one module run in definition order.
MULTITHREADED = True
MODULE_THREAD_COUNT = 5

INPROCESS_TEST_PREFIX = "test_"
SUBPROCESS_TEST_PREFIX = "run_"
COMMAND_PREFIX_ADDITIONS = "global_options"
DISABLED_TESTS_SYMBOL = "DISABLED"
SLOW_TESTS_SYMBOL = "SLOW"

INPROCESS_RESULT_PREFIX = "result_"
SUBPROCESS_CODE_PREFIX = "code_"
TEST_INPUT_PREFIX = "in_"
TEST_OUTPUT_PREFIX = "out_"
TEST_ERROR_PREFIX = "err_"

SLOW_ENV = "SPECMIN_SLOW_TESTS"
RUN_SLOW = os.environ.get(SLOW_ENV, "") == "1"

redirect = None
# Held while stdout/stderr are redirected for an in-process test
redirect_lock = RLock()
# Held while a test's result is checked and printed
module_lock = RLock()
syspath_lock = RLock()

COLOR = {
    "HEADER": "\033[95m",
    "GREEN": "\033[92m",
    "RED": "\033[91m",
    "YELLOW": "\033[93m",
    "ENDC": "\033[0m",
}


class TestResults:
    def __init__(self, name):
        self.name = name
        self.code = 0
        self.total = 0
        self.failures = 0
        self.skipped = 0

    def add_success(self):
        self.total += 1

    def add_failure(self):
        self.code = 1
        self.total += 1
        self.failures += 1

    def add_skip(self):
        self.skipped += 1

    def print(self):
        with redirect_lock:
            summary = "%s: ran %d test%s" % (self.name, self.total, s_if_plural(self.total))
            if self.skipped:
                summary += ", skipped %d" % self.skipped
            if self.failures:
                warn("%s, %d failure%s" % (summary, self.failures, s_if_plural(self.failures)),
                    target=sys.stdout)
            elif self.total:
                print("%s, all successful" % summary)
            else:
                warn("No tests ran", target=sys.stdout)


def cull_debug_lines(lines, std):
    '''Drop DEBUG lines from captured output, echoing them to `std`

    :return: the remaining text as one string
    '''
    kept = []
    for line in lines:
        if line.startswith("DEBUG: "):
            print(line, file=std, end="")
        else:
            kept.append(line)
    return "".join(kept)


def cull_debug_text(text, std):
    return cull_debug_lines(text.splitlines(keepends=True), std)


class Redirect:
    """Swaps sys.stdout/sys.stderr for in-memory streams until `restore`"""

    def __init__(self):
        self.real_stdout = sys.stdout
        self.real_stderr = sys.stderr
        self.fake_stdout = TextIOWrapper(BytesIO(), sys.stdout.encoding)
        self.fake_stderr = TextIOWrapper(BytesIO(), sys.stderr.encoding)
        sys.stdout = self.fake_stdout
        sys.stderr = self.fake_stderr

    def get_output(self):
        '''(stdout, stderr) captured so far, debug lines removed'''
        self.fake_stdout.seek(0)
        self.fake_stderr.seek(0)
        out = cull_debug_lines(self.fake_stdout.readlines(), self.real_stdout)
        errout = cull_debug_lines(self.fake_stderr.readlines(), self.real_stderr)
        return out, errout

    def restore(self):
        sys.stdout = self.real_stdout
        sys.stderr = self.real_stderr


def init_testing():
    global RUN_SLOW
    parser = ArgumentParser(usage="python3 -m test [-g] [--slow]")
    parser.add_argument("-g", "--debug", action="store_true", dest="debug",
        help="debug information from failed tests")
    parser.add_argument("--slow", action="store_true", dest="slow",
        help=f"also run the tests listed in {SLOW_TESTS_SYMBOL} (or set {SLOW_ENV}=1)")
    options = parser.parse_args()
    if options.debug:
        set_debug(True)
    if options.slow:
        RUN_SLOW = True


def _colours():
    if sys.stdout.isatty():
        return COLOR
    return {name: "" for name in COLOR}


def print_expected_actual_mismatch(testId, testPath, expected, actual,
        expectedTitle="Expected", actualTitle="Actual", command=None):
    if empty(expected): expected = ""
    if empty(actual): actual = ""
    c = _colours()

    header = testId + "\n"
    if not empty(command):
        header += command + "\n"
    if not empty(testPath):
        header += "file: %s\n" % testPath
    titles = []
    if not empty(expected):
        titles.append("--- <%s%s%s>" % (c["RED"], expectedTitle, c["HEADER"]))
    if not empty(actual):
        titles.append("+++ <%s%s%s>" % (c["GREEN"], actualTitle, c["HEADER"]))
    header += ", ".join(titles)

    lines = [c["HEADER"] + header + c["ENDC"]]
    marks = {"+": c["GREEN"], "-": c["RED"], "?": c["YELLOW"]}
    for line in Differ().compare(expected.splitlines(), actual.splitlines()):
        colour = marks.get(line[:1])
        lines.append(line if colour is None else colour + line + c["ENDC"])

    print_divider()
    print_error("\n".join(lines))


def get_test_identifier(mod, testName):
    return "%s/%s" % (mod.__name__, testName)


def check_code(mod, testName, expectedVarname, code, command=None):
    testId = get_test_identifier(mod, testName)
    expected = mod.__dict__.get(expectedVarname, 0)
    if code == expected:
        return True
    print_divider()
    print_expected_actual_mismatch(testId, mod.__file__, "%r" % (expected,), "%r" % (code,),
        expectedTitle="Expected return code", actualTitle="Actual return code", command=command)
    return False


def check_result(mod, testName, expectedVarname, testResult):
    testId = get_test_identifier(mod, testName)
    if expectedVarname in mod.__dict__:
        expected = mod.__dict__[expectedVarname]
        ok = expected.matches(testResult) if isinstance(expected, Approx) else testResult == expected
        if not ok:
            print_divider()
            print_expected_actual_mismatch(testId, mod.__file__, "%r" % (expected,), "%r" % (testResult,),
                expectedTitle="Expected result", actualTitle="Actual result")
        return ok
    if not testResult:
        print_divider()
        print_expected_actual_mismatch(testId, mod.__file__, None, "%r" % (testResult,),
            actualTitle="False result")
        return False
    return True


def _newline_variants(output):
    '''The output as captured, without its final newline, and with a leading one'''
    yield output
    yield output.removesuffix("\n")
    yield "\n" + output
    yield ("\n" + output).removesuffix("\n")


def check_output(mod, testName, expectedVarname, output, streamName, command=None):
    testId = get_test_identifier(mod, testName)
    if expectedVarname not in mod.__dict__:
        if len(output) == 0:
            return True
        print_expected_actual_mismatch(testId, mod.__file__, None, output,
            actualTitle="Unexpected %s output" % streamName, command=command)
        return False

    expected = mod.__dict__[expectedVarname]
    if isinstance(expected, Grep):
        if re.search(expected.search, output) is not None:
            return True
        print_expected_actual_mismatch(testId, mod.__file__, expected.search, output,
            expectedTitle="Expected %s pattern" % streamName,
            actualTitle="Actual %s output" % streamName, command=command)
        return False

    if isinstance(expected, JSONFilter):
        try:
            output = expected.apply_filter(output)
        except json.JSONDecodeError as ex:
            err("Output of %s is not JSON lines: %s" % (testName, ex))
            return False
        expected = expected.text

    if any(variant == expected for variant in _newline_variants(output)):
        return True
    print_expected_actual_mismatch(testId, mod.__file__, expected, output,
        expectedTitle="Expected %s output" % streamName,
        actualTitle="Actual %s output" % streamName, command=command)
    return False


def redirect_output():
    global redirect
    redirect_lock.acquire()
    redirect = Redirect()


def restore_output():
    global redirect
    assert redirect is not None
    redirect.restore()
    out, errout = redirect.get_output()
    redirect = None
    redirect_lock.release()
    return out, errout


def run_test(mod, testName):
    '''Run one in-process test; the caller releases `module_lock` afterwards

    :return: whether the test passed
    '''
    fn = mod.__dict__[testName]
    type_check(fn, callable, testName)

    exception = None
    redirect_output()
    try:
        testResult = fn()
    except Exception as ex:
        exception = ex
        print("Exception occurred during %s/%s: %s: %s"
            % (mod.__name__, testName, ex.__class__.__name__, ex), file=sys.stdout)
        testResult = None
    out, errout = restore_output()

    module_lock.acquire()
    suffix = testName[len(INPROCESS_TEST_PREFIX):]
    passed = check_result(mod, testName, INPROCESS_RESULT_PREFIX + suffix, testResult)
    passed = check_output(mod, testName, TEST_OUTPUT_PREFIX + suffix, out, "stdout") and passed
    passed = check_output(mod, testName, TEST_ERROR_PREFIX + suffix, errout, "stderr") and passed

    if get_debug() and exception is not None:
        print_exception(exception)
    return passed


def check_process_result(mod, testName, processResult, command=None):
    out = cull_debug_text(processResult.stdout.decode("utf-8"), sys.stdout)
    errout = cull_debug_text(processResult.stderr.decode("utf-8"), sys.stderr)
    suffix = testName[len(SUBPROCESS_TEST_PREFIX):]

    passed = check_code(mod, testName, SUBPROCESS_CODE_PREFIX + suffix, processResult.returncode, command)
    passed = check_output(mod, testName, TEST_OUTPUT_PREFIX + suffix, out, "stdout", command) and passed
    passed = check_output(mod, testName, TEST_ERROR_PREFIX + suffix, errout, "stderr", command) and passed
    return passed


def run_subprocess(mod, testName, commandPrefix=None):
    '''Run one subprocess test; the caller releases `module_lock` afterwards'''
    args = mod.__dict__[testName]
    type_check(args, list, testName)
    args = (commandPrefix or []) + list(args)
    if get_debug():
        args.append("-g")

    inputValue = mod.__dict__.get(TEST_INPUT_PREFIX + testName[len(SUBPROCESS_TEST_PREFIX):])

    try:
        commandText = shlex.join(args)
    except TypeError:
        module_lock.acquire()
        print_divider()
        print_error("Command arguments contain unsupported types: %r" % args)
        return False

    dbg("Running subprocess: %s" % commandText)
    processResult = subprocess.run(args, capture_output=True, env=os.environ,
        input=None if inputValue is None else inputValue.encode("utf-8"))

    module_lock.acquire()
    return check_process_result(mod, testName, processResult, commandText)


def print_exception(exception):
    with redirect_lock:
        traceback.print_exception(exception, file=sys.stdout)


def print_divider():
    with redirect_lock:
        info("===================================", target=sys.stdout)


def print_error(text):
    with redirect_lock:
        err(text, target=sys.stdout)


def print_result(packageName, modName, testName, passed):
    with redirect_lock:
        print("%s/%s.%s: %s" % (packageName, modName, testName, "pass" if passed else "FAIL"))
        if not passed:
            print_divider()


def import_test_module(modName, pkgName=None):
    """
    Import a test module, reporting instead of raising on import errors

    :return: the module, or None when it cannot be imported
    :rtype: ModuleType|None
    """
    callingPath = Path(inspect.stack()[1].filename).parent.as_posix()
    with syspath_lock:
        added = callingPath not in sys.path
        if added:
            sys.path.append(callingPath)
        mod = None
        try:
            mod = import_module(modName, pkgName)
        except SyntaxError as ex:
            err(f"Detected syntax error in {modName}: {ex}", target=sys.stdout)
        except ImportError as ex:
            err(f"Unable to import {modName}: {ex}", target=sys.stdout)
        except Exception as ex:
            err(f"Error while loading {modName}: {ex.__class__.__name__}: {ex}", target=sys.stdout)
        if added:
            sys.path.remove(callingPath)
    return mod


def _symbol_list(mod, symbol):
    value = getattr(mod, symbol, [])
    if not isinstance(value, list):
        dbg("Unexpected type for special symbol %s, ignoring" % symbol)
        return []
    return value


def run_module(mod: ModuleType, packageName, results, commandPrefix=None):
    '''
    Run every test of a module in definition order, printing each outcome

    Called from several threads at once; shared state is guarded by the
    module locks.
    '''
    dbg("Running module: %r" % mod.__name__)
    disabled = _symbol_list(mod, DISABLED_TESTS_SYMBOL)
    slow = _symbol_list(mod, SLOW_TESTS_SYMBOL)
    prefix = [] if commandPrefix is None else list(commandPrefix)

    for symName in list(vars(mod)):
        if symName == COMMAND_PREFIX_ADDITIONS:
            prefix.extend(mod.__dict__[symName])
            continue
        if not symName.startswith((INPROCESS_TEST_PREFIX, SUBPROCESS_TEST_PREFIX)):
            continue
        if symName in disabled or (symName in slow and not RUN_SLOW):
            with redirect_lock:
                reason = "disabled" if symName in disabled else "slow"
                print(f"Skipping {reason} test: {mod.__name__}.{symName}")
            results.add_skip()
            continue
        if symName.startswith(INPROCESS_TEST_PREFIX):
            passed = run_test(mod, symName)
        else:
            passed = run_subprocess(mod, symName, prefix)

        print_result(packageName, mod.__name__, symName, passed)
        module_lock.release()
        if passed:
            results.add_success()
        else:
            results.add_failure()


def run_modules(packageName, moduleMap, commandPrefix=None):
    '''Run a set of test modules and print the totals

    Called from a test package's __init__.py:

        def run():
            graphs = import_test_module("graphs")
            return run_modules("specmin", locals())

    :param moduleMap: module name to module (None for a failed import)
    :rtype: TestResults
    '''
    results = TestResults(packageName)
    with redirect_lock:
        print("%s: running tests" % packageName)

    modules = list(moduleMap.values())
    if MULTITHREADED and modules:
        q = Queue()

        def worker():
            while True:
                mod = q.get()
                try:
                    if mod is None:
                        results.add_failure()
                    else:
                        run_module(mod, packageName, results, commandPrefix)
                finally:
                    q.task_done()

        for threadNum in range(min(MODULE_THREAD_COUNT, len(modules))):
            t = Thread(name="run_module%d" % threadNum, target=worker)
            t.daemon = True
            t.start()
        for mod in modules:
            q.put(mod)
        q.join()
    else:
        for mod in modules:
            if mod is None:
                results.add_failure()
            else:
                run_module(mod, packageName, results, commandPrefix)

    results.print()
    return results


def run_suite():
    '''Parse the harness flags, run the calling package's `run` and exit

    A test package's __main__.py is just:

        from src.specmin.testing import run_suite
        from . import run
        run_suite()
    '''
    init_testing()
    mainmod = sys.modules["__main__"]
    dbg(f"Running suite {mainmod.__package__}")
    if not isinstance(getattr(mainmod, "run", None), FunctionType):
        raise ValueError(f"No 'run' function found in module {mainmod.__package__}")
    result = mainmod.run()
    sys.exit(result.code)
