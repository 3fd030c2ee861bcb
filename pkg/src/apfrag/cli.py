"""Command-line interface.

Exit codes: 0 ok, 1 property or fragment failure, 2 usage or parse error,
3 enumeration (or refutation) left survivors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from multiprocessing import Pool

from .candidates import enumerate_candidates
from .errors import ApfError, NotInFragmentError, ParseError, SortError
from .evaluate import eval_formula
from .fragment import is_in_fragment
from .interp import Outcome, check_candidate, eval_nested, example_problem, verify_example_unsat
from .models import FinArray, diff_case, DiffCase, loads_model, paper_model
from .smtlib import format_formula, parse_script
from .stabilize import DEFAULT_HORIZON, stab_index_formula

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SURVIVORS = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, out):
    out.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _load_script(path):
    if path == "-":
        return parse_script(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_script(fh.read())


def _load_model(source):
    if source.startswith("paper:"):
        try:
            i = int(source[len("paper:"):])
        except ValueError:
            raise ValueError(f"bad model index in {source!r}") from None
        return paper_model(i)
    with open(source, encoding="utf-8") as fh:
        return loads_model(fh.read())


# -- subcommands --------------------------------------------------------------

def _cmd_check_fragment(args, out):
    script = _load_script(args.file)
    ok = True
    for n, f in enumerate(script.assertions):
        verdict = is_in_fragment(f)
        ok = ok and verdict.member
        out.write(f"{n}: {verdict}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_eval(args, out):
    script = _load_script(args.file)
    model = _load_model(args.model)
    for n, f in enumerate(script.assertions):
        try:
            value = eval_formula(model, f)
        except NotInFragmentError:
            value, _ = eval_nested(model, f)
        out.write(f"{n}: {'true' if value else 'false'}\n")
    return EXIT_OK


def diff_axioms_hold(s: FinArray, t: FinArray) -> bool:
    """The diff axioms for one pair, checked by scanning."""
    case, j = diff_case(s, t)
    if case is DiffCase.EQUAL:
        span = range(min(s.lo, t.lo) - 1, max(s.hi, t.hi) + 2)
        return j == 0 and s.left_tail == t.left_tail and all(s[x] == t[x] for x in span)
    if s[j] == t[j]:
        return False
    if j < 0:
        return all(s[x] == t[x] for x in range(j + 1, 0))
    return s.left_tail == t.left_tail and all(s[x] == t[x] for x in range(min(s.lo, t.lo, 0) - 1, j))


def diff_samples(count, seed=0):
    """Check the diff axioms on seeded random pairs; returns ``(passed, total)``."""
    rng = random.Random(seed)

    def arr():
        window = tuple(rng.randint(-2, 2) for _ in range(rng.randint(0, 6)))
        return FinArray(rng.randint(-2, 2), rng.randint(-6, 6), window, rng.randint(-2, 2))

    passed = 0
    for _ in range(count):
        s = arr()
        t = arr() if rng.random() < 0.8 else s.store(rng.randint(-6, 6), s[0])
        passed += diff_axioms_hold(s, t)
    return passed, count


def _cmd_verify_paper(args, out):
    problem = example_problem()
    even_ok = odd_ok = even_n = odd_n = 0
    for i in range(args.max_i + 1):
        m = paper_model(i)
        if i % 2 == 0:
            even_n += 1
            even_ok += eval_formula(m, problem.a)
        else:
            odd_n += 1
            odd_ok += eval_formula(m, problem.b)
    out.write(f"even⊨A: {even_ok}/{even_n}, odd⊨B: {odd_ok}/{odd_n}\n")
    passed, total = diff_samples(args.diff_samples)
    out.write(f"diff axioms: {passed}/{total}\n")
    lit, neg = verify_example_unsat(problem)
    out.write(f"unsat witness: {format_formula(lit)} vs {format_formula(neg)}\n")
    ok = even_ok == even_n and odd_ok == odd_n and passed == total
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_stabilize(args, out):
    script = _load_script(args.file)
    status = EXIT_OK
    for f in script.assertions:
        try:
            _emit(stab_index_formula(f, args.horizon).to_json(), out)
        except ApfError as exc:
            _emit({"subject": format_formula(f), "error": str(exc)}, out)
            status = EXIT_FAIL
    return status


def _cmd_refute(args, out):
    script = _load_script(args.file)
    if len(script.assertions) != 1:
        sys.stderr.write("refute expects exactly one assertion\n")
        return EXIT_USAGE
    verdict = check_candidate(example_problem(), script.assertions[0], args.horizon)
    _emit(verdict.to_json(), out)
    if verdict.refuted:
        return EXIT_OK
    return EXIT_SURVIVORS if verdict.outcome is Outcome.SURVIVES_HORIZON else EXIT_FAIL


_WORKER_HORIZON = DEFAULT_HORIZON


def _init_worker(horizon):
    global _WORKER_HORIZON
    _WORKER_HORIZON = horizon


def _check(f):
    return check_candidate(example_problem(), f, _WORKER_HORIZON).to_json()


def _cmd_enumerate(args, out):
    stream = enumerate_candidates(args.size, include_diff=not args.no_diff)
    total = refuted = 0
    if args.jobs > 1:
        pool = Pool(args.jobs, initializer=_init_worker, initargs=(args.horizon,))
        verdicts = pool.imap(_check, stream, chunksize=256)
    else:
        pool = None
        _init_worker(args.horizon)
        verdicts = map(_check, stream)
    try:
        for v in verdicts:
            total += 1
            refuted += v["condition"] is not None
            if not args.quiet:
                _emit(v, out)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    survivors = total - refuted
    out.write(f"candidates={total} refuted={refuted} survivors={survivors}\n")
    return EXIT_OK if survivors == 0 else EXIT_SURVIVORS


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="apfrag", description="Array property fragment toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check-fragment", help="classify each assertion")
    s.add_argument("file")
    s.set_defaults(run=_cmd_check_fragment)

    s = sub.add_parser("eval", help="evaluate each assertion in a model")
    s.add_argument("file")
    s.add_argument("--model", required=True, help="paper:I or a model JSON file")
    s.set_defaults(run=_cmd_eval)

    s = sub.add_parser("verify-paper", help="parity sweep, diff axioms and the unsat witness")
    s.add_argument("--max-i", type=int, default=200)
    s.add_argument("--diff-samples", type=int, default=1000)
    s.set_defaults(run=_cmd_verify_paper)

    s = sub.add_parser("stabilize", help="stabilization report per assertion")
    s.add_argument("file")
    s.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    s.set_defaults(run=_cmd_stabilize)

    s = sub.add_parser("refute", help="check the single assertion as an interpolant candidate")
    s.add_argument("file")
    s.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    s.set_defaults(run=_cmd_refute)

    s = sub.add_parser("enumerate", help="refute every candidate up to a size bound")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    s.add_argument("--no-diff", action="store_true", help="leave diff out of the signature")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--quiet", action="store_true", help="print only the summary line")
    s.set_defaults(run=_cmd_enumerate)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("horizon", "size", "jobs"):
        if getattr(args, name, 1) < 1:
            parser.error(f"--{name} must be at least 1")
    if getattr(args, "max_i", 0) < 0:
        parser.error("--max-i must be non-negative")
    try:
        return args.run(args, out)
    except ParseError as exc:
        sys.stderr.write(f"{args.file}:{exc}\n")
        return EXIT_USAGE
    except (SortError, OSError, ValueError) as exc:
        sys.stderr.write(f"apfrag: {exc}\n")
        return EXIT_USAGE
    except ApfError as exc:
        sys.stderr.write(f"apfrag: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
