'''
Command line: minimize, kernel, main-trees, oracle and verify.

Results go to standard output as one JSON record per line (sorted keys), as
graph6 lines or as a plain table; diagnostics go to standard error. Exit
status is 0 on success, 1 on a verification mismatch and 2 on usage errors.
'''

from argparse import ArgumentParser
from dataclasses import dataclass
from difflib import unified_diff
import json
import math
import sys

from .config import DEFAULT_TOL, FREE_TREE_CAP, default_jobs
from .errors import PlanError, SpecminError, UsageError
from .graphs import to_graph6
from .kernels import kernel_search
from .main_trees import enumerate_main_trees
from .minimizer import closed_form_check, construct_minimizers, make_plan
from .msg import dbg, err, set_debug, warn
from .oracle import audit_structural_propositions, brute_force_all, brute_force_minimizer
from .verify import SUITES, run_suite

COMMANDS = ("minimize", "kernel", "main-trees", "oracle", "verify")
OUTPUTS = ("json", "graph6", "table")
SPACES = ("trees", "connected")


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    k: int | None = None
    alpha: int | None = None
    r: int | None = None
    tol: float = DEFAULT_TOL
    space: str = "trees"
    output: str = "json"
    suite: str | None = None
    jobs: int = 1

    def validate(self):
        '''
        Check that the parameters fit the command

        :raises UsageError: on a missing, extra or out-of-range parameter
        :return: the effective k for minimize, else None
        '''
        if self.command not in COMMANDS:
            raise UsageError(f"Unknown command: {self.command!r}")
        if not self.tol > 0:
            raise UsageError(f"--tol must be positive (got {self.tol})")
        if self.jobs < 1:
            raise UsageError(f"--jobs must be at least 1 (got {self.jobs})")
        if self.output not in OUTPUTS:
            raise UsageError(f"Unknown output format: {self.output!r}")
        if self.space not in SPACES:
            raise UsageError(f"Unknown search space: {self.space!r}")

        allowed = {
            "minimize": {"n", "k", "alpha"},
            "kernel": {"k", "r"},
            "main-trees": {"k"},
            "oracle": {"n", "alpha"},
            "verify": {"suite"},
        }[self.command]
        given = {name for name in ("n", "k", "alpha", "r", "suite") if getattr(self, name) is not None}
        extra = sorted(given - allowed)
        if extra:
            raise UsageError(f"{self.command} does not take --{', --'.join(extra)}")

        if self.command == "minimize":
            if self.n is None:
                raise UsageError("minimize needs --n")
            if (self.k is None) == (self.alpha is None):
                raise UsageError("minimize needs exactly one of --k and --alpha")
            k = self.k if self.k is not None else self.n - self.alpha
            if self.k is not None and self.alpha is not None and self.n - self.alpha != self.k:
                raise UsageError("--alpha and --k disagree")
            if not 1 <= k <= self.n / 2:
                raise UsageError(f"Need 1 <= k <= n/2 (n={self.n}, k={k})")
            return k
        if self.command == "kernel":
            if self.k is None or self.r is None:
                raise UsageError("kernel needs --k and --r")
            if self.k < 1 or not 0 <= self.r < self.k:
                raise UsageError(f"Need k >= 1 and 0 <= r < k (k={self.k}, r={self.r})")
        if self.command == "main-trees":
            if self.k is None or self.k < 1:
                raise UsageError("main-trees needs --k >= 1")
        if self.command == "oracle":
            if self.n is None or self.n < 1:
                raise UsageError("oracle needs --n >= 1")
        if self.command == "verify":
            if self.suite not in SUITES:
                raise UsageError(f"verify needs --suite, one of {', '.join(SUITES)}")
        return None


def emit(record):
    print(json.dumps(record, sort_keys=True), flush=True)


def _emit_table(rows):
    widths = [max(len(str(row[i])) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        print("  ".join(str(cell).ljust(width) for cell, width in zip(row, widths)).rstrip(), flush=True)


def _output_oracle(config, result, audit):
    if config.output == "json":
        obj = result.to_json()
        obj["record"] = "oracle"
        obj["provenance"] = "oracle"
        if audit is not None:
            obj["audits"] = audit.to_json()
        emit(obj)
    elif config.output == "graph6":
        for entry in result.minimizers:
            print(to_graph6(entry.graph), flush=True)
    else:
        rows = [("n", "alpha", "graph6", "rho")]
        rows.extend((result.n, result.alpha, to_graph6(e.graph), "%.12f" % e.certificate.approx)
            for e in result.minimizers)
        _emit_table(rows)


def _audit_if_applicable(result):
    if result.space == "trees" and result.n >= 2 and result.alpha >= math.ceil(result.n / 2):
        return audit_structural_propositions(result)
    return None


def run_minimize(config, k):
    try:
        plan = make_plan(config.n, k)
    except PlanError as ex:
        if config.n > FREE_TREE_CAP:
            err(f"{ex}; the oracle fallback is limited to n <= {FREE_TREE_CAP}")
            return 2
        dbg(f"{ex}; using the oracle")
        result = brute_force_minimizer(config.n, config.n - k, "trees", config.tol)
        _output_oracle(config, result, None)
        return 0

    result = construct_minimizers(plan, config.tol, config.jobs)
    report = closed_form_check(result)
    if report.known and not report.passed:
        for mismatch in report.mismatches:
            warn(f"closed form {report.expected}: {mismatch}")
    if config.output == "json":
        for t in result.trees:
            record = t.to_json(result.closed_form)
            record.update({"record": "minimizer", "n": plan.n, "k": plan.k, "alpha": plan.alpha, "r": plan.r})
            emit(record)
    elif config.output == "graph6":
        for t in result.trees:
            print(to_graph6(t.tree), flush=True)
    else:
        rows = [("n", "k", "main_tree", "assignment", "rho", "closed_form")]
        rows.extend((plan.n, plan.k, t.kernel.main_tree.name, ",".join(map(str, t.assignment)),
            "%.12f" % t.certificate.approx, result.closed_form or "-") for t in result.trees)
        _emit_table(rows)
    return 0


def run_kernel(config):
    result = kernel_search(config.k, config.r, config.tol, config.jobs)
    if config.output == "json":
        obj = result.to_json()
        obj["record"] = "kernel"
        emit(obj)
    elif config.output == "graph6":
        for cand in result.minimizers:
            print(to_graph6(cand.tree), flush=True)
    else:
        rows = [("main_tree", "count", "best", "rho", "kernel")]
        for summary in result.per_main_tree:
            best = summary.best[0] if summary.best else None
            rows.append((summary.main_tree.name, summary.count,
                "-" if best is None else ",".join(map(str, best.assignment)),
                "-" if best is None else "%.12f" % best.certificate.approx,
                "yes" if best is not None and result.is_kernel(best) else ""))
        _emit_table(rows)
    return 0


def run_main_trees(config):
    mts = enumerate_main_trees(config.k)
    if config.output == "json":
        for mt in mts:
            record = mt.to_json()
            record["record"] = "main_tree"
            emit(record)
    elif config.output == "graph6":
        for mt in mts:
            print(to_graph6(mt.tree), flush=True)
    else:
        rows = [("name", "d", "levels", "graph6")]
        rows.extend((mt.name, mt.d, ";".join(",".join(map(str, level)) for level in mt.levels) or "-",
            to_graph6(mt.tree)) for mt in mts)
        _emit_table(rows)
    return 0


def run_oracle(config):
    if config.alpha is not None:
        results = [brute_force_minimizer(config.n, config.alpha, config.space, config.tol)]
    else:
        results = list(brute_force_all(config.n, config.space, config.tol).values())
    code = 0
    for result in results:
        audit = _audit_if_applicable(result)
        if audit is not None and not audit.passed:
            code = 1
        _output_oracle(config, result, audit)
    return code


def _print_diff(record):
    lines = unified_diff([record.expected], [record.actual],
        fromfile="expected", tofile="actual", lineterm="")
    for line in lines:
        print(line, file=sys.stderr)


def run_verify(config):
    code = 0
    failures = 0
    for record in run_suite(config.suite, config.tol, config.jobs):
        if config.output == "json":
            emit(record.to_json())
        else:
            print("%s %s: %s" % ("pass" if record.passed else "FAIL", record.suite, record.name), flush=True)
        if record.passed:
            continue
        if record.warning_only:
            warn(f"{record.suite}: {record.name} differs (reported only)")
        else:
            err(f"{record.suite}: {record.name}")
            code = 1
            failures += 1
        _print_diff(record)
    dbg(f"{config.suite}: {failures} failure(s)")
    return code


def run(config):
    '''
    Execute one command

    :rtype: int
    :return: 0 on success, 1 on a verification mismatch, 2 on a usage error
    '''
    try:
        k = config.validate()
        if config.command == "minimize":
            return run_minimize(config, k)
        if config.command == "kernel":
            return run_kernel(config)
        if config.command == "main-trees":
            return run_main_trees(config)
        if config.command == "oracle":
            return run_oracle(config)
        return run_verify(config)
    except SpecminError as ex:
        err(str(ex))
        return 2


def parse_args(argv=None):
    parser = ArgumentParser(prog="specmin",
        description="Trees of minimum spectral radius with given independence number")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int, help="order of the graph")
    parser.add_argument("--k", type=int, help="n - alpha")
    parser.add_argument("--alpha", type=int, help="independence number")
    parser.add_argument("--r", type=int, help="residue (n + 1) mod k")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL,
        help="width of radius certificates; exact verdicts do not depend on it")
    parser.add_argument("--space", choices=SPACES, default="trees")
    parser.add_argument("--output", choices=OUTPUTS, default="json")
    parser.add_argument("--suite", choices=SUITES)
    parser.add_argument("--jobs", type=int, default=None,
        help="worker threads (default: $SPECMIN_JOBS or 1)")
    parser.add_argument("-g", "--debug", action="store_true", dest="debug",
        help="print debug information")
    return parser.parse_args(argv)


def main(argv=None):
    options = parse_args(argv)
    if options.debug:
        set_debug(True)
    config = RunConfig(
        command=options.command,
        n=options.n,
        k=options.k,
        alpha=options.alpha,
        r=options.r,
        tol=options.tol,
        space=options.space,
        output=options.output,
        suite=options.suite,
        jobs=default_jobs() if options.jobs is None else options.jobs)
    sys.exit(run(config))
