"""ineqlab command line.

Exit codes: 0 proved / true / achievable, 1 disproved / false / not
achievable, 2 unknown (including "not implied by the cone"), 64 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import classical
from .cone import AUGMENTATIONS, ConstraintRow
from .core import EntropyError, mask_label
from .models.groups import InvalidGroup
from .models.pmf import InvalidPMF
from .parser import (ParseError, UnknownVariable, VarMap, format_rational, format_statement,
                     lower_statement, parse_ci, parse_statement, shared_varmap, statement_n)
from .prover import (Disproved, Implied, NotImplied, NotImpliedByCone, Proved, ProvedAugmented,
                     disprove, implies, verdict_name, verify)
from .translate import TRANSLATIONS, Unbalanced

EXIT_OK, EXIT_FALSE, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


# -- problems ------------------------------------------------------------------------

@dataclass
class Problem:
    goal: str
    mode: str = "prove"  # or "disprove"
    assumptions: list[str] = field(default_factory=list)
    vars: list[str] | None = None
    augment: str = "none"
    alphabet: int | None = None
    budget: int | None = None
    seed: int = 0


_OPTIONS = {"augment": str, "alphabet": int, "budget": int, "seed": int}


def read_problem(text: str) -> Problem:
    """Parse the problem-file format.

    One directive per line: ``vars X1 X2 ..``, ``assume: STMT``, a single
    ``prove: STMT`` or ``disprove: STMT``, and option lines ``augment zy98``,
    ``alphabet K``, ``budget N``, ``seed S``. ``#`` starts a comment.
    """
    goal = mode = None
    assumptions: list[str] = []
    opts: dict = {}
    names = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if sep and key in ("assume", "prove", "disprove"):
            if key == "assume":
                if goal is not None:
                    raise UsageError(f"line {lineno}: assumptions must precede the goal")
                assumptions.append(rest.strip())
            else:
                if goal is not None:
                    raise UsageError(f"line {lineno}: more than one goal")
                goal, mode = rest.strip(), key
            continue
        word, *args = line.split()
        if word == "vars":
            names = args
        elif word in _OPTIONS and len(args) == 1:
            try:
                opts[word] = _OPTIONS[word](args[0])
            except ValueError:
                raise UsageError(f"line {lineno}: bad value for {word}") from None
        else:
            raise UsageError(f"line {lineno}: unrecognized directive {line!r}")
    if goal is None:
        raise UsageError("problem file has no prove: or disprove: goal")
    return Problem(goal, mode, assumptions, names, **opts)


def _varmap(names) -> VarMap | None:
    if not names:
        return None
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return VarMap(names, strict=True)


def _goal_and_constraints(goal: str, assumptions, names):
    vm = shared_varmap([goal, *assumptions], vars=_varmap(names))
    st = parse_statement(goal, vm)
    parsed = [parse_statement(a, vm) for a in assumptions]
    n = max([statement_n(st)] + [statement_n(a) for a in parsed] + [vm.n])
    b, rel = lower_statement(st, n)
    if rel != ">=":
        raise UsageError("the goal must be an inequality")
    Q = []
    for text, a in zip(assumptions, parsed):
        form, arel = lower_statement(a, n)
        if arel != "=":
            raise UsageError(f"assumption {text!r} must be an equality")
        Q.append(ConstraintRow(form, f"assume {text}"))
    return b, Q


# -- reports ---------------------------------------------------------------------------

def _ray_text(ray) -> str:
    return " ".join(f"h{mask_label(i + 1)}={format_rational(v)}" for i, v in enumerate(ray))


def _report(verdict, b, as_json: bool) -> str:
    name = verdict_name(verdict)
    if as_json:
        out: dict = {"verdict": name}
        if isinstance(verdict, (Proved, ProvedAugmented, Implied)):
            out["certificate"] = verdict.certificate.to_json()
        elif isinstance(verdict, NotImpliedByCone):
            out["ray"] = [format_rational(v) for v in verdict.ray]
        elif isinstance(verdict, (Disproved, NotImplied)):
            out["witness"] = dict(verdict.witness.to_json(), value=verdict.value)
        return _dump(out)
    lines = [f"verdict: {name}"]
    if b is not None:
        lines.append(f"goal: {format_statement(b)}")
    if isinstance(verdict, (Proved, ProvedAugmented, Implied)):
        lines.append("certificate:")
        lines += [f"  {format_rational(v)} * {label}" for label, v in verdict.certificate.terms()]
    elif isinstance(verdict, NotImpliedByCone):
        lines.append(f"ray: {_ray_text(verdict.ray)}")
        lines.append(f"goal at ray: {format_rational(verdict.value)}")
    elif isinstance(verdict, (Disproved, NotImplied)):
        lines.append(f"value: {verdict.value:.12g}")
        lines.append("witness:")
        lines += ["  " + ln for ln in verdict.witness.to_text().splitlines()]
    return "\n".join(lines)


def _code(verdict) -> int:
    if isinstance(verdict, (Proved, ProvedAugmented, Implied)):
        return EXIT_OK
    if isinstance(verdict, (Disproved, NotImplied)):
        return EXIT_FALSE
    return EXIT_UNKNOWN


# -- commands ----------------------------------------------------------------------------

def _run_prove(goal, assumptions, names, augment, as_json, out):
    b, Q = _goal_and_constraints(goal, assumptions, names)
    v = verify(b, Q, augment=augment)
    print(_report(v, b, as_json), file=out)
    return _code(v)


def _run_disprove(goal, assumptions, names, alphabet, budget, seed, jobs, as_json, out):
    b, Q = _goal_and_constraints(goal, assumptions, names)
    v = disprove(b, Q, alphabets=alphabet, budget=budget, seed=seed, jobs=jobs)
    print(_report(v, b, as_json), file=out)
    return _code(v)


def cmd_prove(a, out):
    return _run_prove(a.expr, a.assume, a.vars, a.augment, a.json, out)


def cmd_disprove(a, out):
    return _run_disprove(a.expr, a.assume, a.vars, a.alphabet, a.budget, a.seed, a.jobs,
                         a.json, out)


def cmd_problem(a, out):
    try:
        text = Path(a.file).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(str(e)) from None
    p = read_problem(text)
    if p.mode == "prove":
        return _run_prove(p.goal, p.assumptions, p.vars, p.augment, a.json, out)
    return _run_disprove(p.goal, p.assumptions, p.vars, p.alphabet, p.budget, p.seed, 1,
                         a.json, out)


def cmd_implies(a, out):
    vm = shared_varmap(cis=[*a.premise, a.conclusion], vars=_varmap(a.vars))
    premises = [parse_ci(t, vm) for t in a.premise]
    conclusion = parse_ci(a.conclusion, vm)
    v = implies(premises, conclusion, n=vm.n or None, budget=a.budget, seed=a.seed,
                alphabets=a.alphabet)
    if a.json:
        print(_report(v, None, True), file=out)
    else:
        head = " , ".join(p.label() for p in premises) or "(nothing)"
        print(f"premises: {head}", file=out)
        print(f"conclusion: {conclusion.label()}", file=out)
        print(_report(v, None, False), file=out)
    return _code(v)


def cmd_translate(a, out):
    text = a.expr
    vm = _varmap(a.vars)
    try:
        st = parse_statement(text, vm)
    except ParseError:
        st = parse_statement(f"{text} >= 0", vm)
    b, rel = lower_statement(st)
    if rel != ">=":
        raise UsageError("only inequalities can be translated")
    kind = "group" if a.group else "minor" if a.minor else "kolmogorov"
    try:
        t = TRANSLATIONS[kind](b)
    except Unbalanced as e:
        print(f"not translatable: {e}", file=sys.stderr)
        return EXIT_FALSE
    print(_dump(t.to_json()) if a.json else t.text, file=out)
    return EXIT_OK


def _numbers(vals) -> list[Fraction]:
    try:
        return [Fraction(v) for v in vals]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected rational numbers, got {' '.join(vals)}") from None


_ARITY = {"amgm": 2, "markov": 3, "cs": 4}


def _region_args(region, vals):
    if len(vals) != _ARITY[region]:
        raise UsageError(f"{region} takes {_ARITY[region]} numbers, got {len(vals)}")
    nums = _numbers(vals)
    if region == "cs":
        if nums[3].denominator != 1 or nums[3] < 0:
            raise UsageError("dim must be a nonnegative integer")
        nums[3] = int(nums[3])
    if region == "markov" and nums[0] <= 0:
        raise UsageError("c must be positive")
    return nums


def cmd_witness(a, out):
    rp = classical.region_point(a.region, *_region_args(a.region, a.values))
    if rp.witness is None:
        print(f"{a.region} point is {rp.membership.value}: no witness", file=sys.stderr)
        return EXIT_FALSE
    w = rp.witness.to_json()
    if a.json:
        print(_dump(w), file=out)
    else:
        for k, v in w.items():
            print(f"{k}: {_dump(v)}", file=out)
    return EXIT_OK


def cmd_region(a, out):
    rp = classical.region_point(a.region, *_region_args(a.region, a.values))
    if a.json:
        print(_dump(rp.to_json()), file=out)
    else:
        print(f"membership: {rp.membership.value}", file=out)
        if rp.witness is not None:
            print(f"witness: {_dump(rp.witness.to_json())}", file=out)
    if a.plot:
        from .plotting import plot_region
        plot_region(a.region, a.plot, rp)
    return EXIT_OK if rp.membership is classical.Membership.ACHIEVABLE else EXIT_FALSE


REPORT_POINTS = [
    ("amgm", (5, 4)), ("amgm", (2, 2)), ("amgm", (0, 0)), ("amgm", (1, 2)),
    ("markov", (1, "1/2", 1)), ("markov", (1, 0, "1/2")), ("markov", (1, 0, "3/2")),
    ("markov", (1, 2, 1)),
    ("cs", (1, 1, "1/2", 2)), ("cs", (1, 1, "1/2", 1)), ("cs", (1, 1, 1, 1)),
    ("cs", (0, 4, 0, 2)), ("cs", (0, 0, 0, 0)),
]


def cmd_report(a, out):
    """TSV of the reference points plus one PNG per region."""
    from .plotting import plot_region

    outdir = Path(a.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = ["region\tpoint\tmembership\twitness"]
    for region, pt in REPORT_POINTS:
        rp = classical.region_point(region, *_region_args(region, [str(v) for v in pt]))
        wit = _dump(rp.witness.to_json()) if rp.witness is not None else ""
        rows.append(f"{region}\t{' '.join(str(v) for v in pt)}\t{rp.membership.value}\t{wit}")
    (outdir / "regions.tsv").write_text("\n".join(rows) + "\n")
    print("\n".join(rows), file=out)
    for region in ("amgm", "markov", "cs"):
        plot_region(region, outdir / f"{region}.png")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="ineqlab", description="Entropy inequality prover and toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def common(sp, assume=True):
        sp.add_argument("expr", help='statement, e.g. "I(X1;X2) >= 0"')
        if assume:
            sp.add_argument("--assume", action="append", default=[], metavar="EXPR",
                            help="equality constraint, repeatable")
        sp.add_argument("--vars", help="variable names in index order, e.g. X,Y,Z")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("prove", help="decide over the Shannon cone")
    common(sp)
    sp.add_argument("--augment", choices=sorted(AUGMENTATIONS), default="none")
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("disprove", help="search for a counterexample distribution")
    common(sp)
    sp.add_argument("--alphabet", type=int, default=None, help="alphabet size per variable")
    sp.add_argument("--budget", type=int, default=None, help="local-search restarts")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_disprove)

    sp = sub.add_parser("implies", help="conditional independence implication")
    sp.add_argument("--premise", action="append", default=[], metavar="CI")
    sp.add_argument("--conclusion", required=True, metavar="CI")
    sp.add_argument("--vars")
    sp.add_argument("--alphabet", type=int, default=None)
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_implies)

    sp = sub.add_parser("translate", help="group / minor / Kolmogorov form")
    kind = sp.add_mutually_exclusive_group(required=True)
    kind.add_argument("--group", action="store_true")
    kind.add_argument("--minor", action="store_true")
    kind.add_argument("--kolmogorov", action="store_true")
    common(sp, assume=False)
    sp.set_defaults(func=cmd_translate)

    for name, func, helptext in (("witness", cmd_witness, "achievability witness"),
                                 ("region", cmd_region, "region membership")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("region", choices=sorted(_ARITY))
        sp.add_argument("values", nargs="+",
                        help="amgm: a g; markov: c p m; cs: x y z dim")
        sp.add_argument("--json", action="store_true")
        if name == "region":
            sp.add_argument("--plot", metavar="FILE", help="write a PNG of the region")
        sp.set_defaults(func=func)

    sp = sub.add_parser("problem", help="run a problem file")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_problem)

    sp = sub.add_parser("report", help="TSV and PNG figures of the classical regions")
    sp.add_argument("outdir")
    sp.set_defaults(func=cmd_report)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, ParseError, UnknownVariable, EntropyError, InvalidPMF,
            InvalidGroup, ValueError) as e:
        print(f"ineqlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))
