"""Command-line front end: ``branchlab <verb> FILE... [options]``.

Exit status is 0 on success, 1 when computations disagree or a check fails,
and 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass, field

from . import __version__
from .branch import Branch, parse_branch_text
from .cluster import Cluster, all_matrices, cluster_validate, format_cluster_text, parse_cluster_text
from .errors import (
    BadOption,
    BranchLabError,
    InputError,
    MissingArgument,
    OracleInapplicable,
    UnknownVerb,
    UsageError,
)
from .generators import random_branch, random_cluster
from .hn import MINIMAL, ToColumns, hn_tableau, render_tableau, synthesize_branch, tableau_validate
from .intersect import (
    approx_spec,
    closed_form_iota,
    contact_order,
    curvette_bridge,
    intersect_all,
    intersection_number,
    mu_approximation,
    resolution_cluster,
    walk_cluster,
)
from .invariants import characteristic_data, chardata_problems, render_chardata
from .serialize import (
    branch_to_json,
    bundle_to_json,
    chardata_to_json,
    cluster_to_json,
    dumps,
    num_str,
    tableau_to_json,
)

VERBS = ("tableau", "invariants", "resolve", "matrices", "intersect", "approx", "check", "oracle")
METHODS = ("tableau", "resultant", "noether", "all")


@dataclass
class Command:
    verb: str
    inputs: list
    depth: object = MINIMAL
    json: bool = False
    index: int | None = None
    method: str = "all"
    options: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadOption(message)


def _depth(text: str):
    if text == "minimal":
        return MINIMAL
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("depth is 'minimal' or a positive integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("depth must be at least 1")
    return ToColumns(n)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="branchlab", description="Exact invariants of plane branches.")
    parser.add_argument("--version", action="version", version=f"branchlab {__version__}")
    parser.add_argument("verb", help=", ".join(VERBS))
    parser.add_argument("inputs", nargs="*", help="branch or cluster files")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--depth", type=_depth, default=MINIMAL,
                        help="'minimal' (default) or a column count")
    parser.add_argument("--index", type=int, help="characteristic index j (approx)")
    parser.add_argument("--method", choices=METHODS, default="all", help="intersect method")
    return parser


_ARITY = {"intersect": 2}


def parse_command(argv: list) -> Command:
    args = _build_parser().parse_args(argv)
    if args.verb not in VERBS:
        raise UnknownVerb(f"unknown verb {args.verb!r}; expected one of {', '.join(VERBS)}")
    want = _ARITY.get(args.verb, 1)
    if len(args.inputs) != want:
        raise MissingArgument(f"{args.verb} takes {want} file(s), got {len(args.inputs)}")
    if args.verb == "approx" and args.index is None:
        raise MissingArgument("approx requires --index")
    return Command(args.verb, list(args.inputs), args.depth, args.json, args.index, args.method)


# ----------------------------------------------------------------------
# input
# ----------------------------------------------------------------------
def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(exc.strerror, source=path) from None


def _located(path: str, parse, text: str):
    try:
        return parse(text)
    except InputError as exc:
        raise type(exc)(exc.message, line=exc.line, column=exc.column, source=path) from None


def load_branch(path: str) -> Branch:
    return _located(path, parse_branch_text, _read(path))


def _is_cluster_text(text: str) -> bool:
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            return s.startswith("point")
    return False


def load_input(path: str):
    text = _read(path)
    if _is_cluster_text(text):
        return _located(path, parse_cluster_text, text)
    return _located(path, parse_branch_text, text)


# ----------------------------------------------------------------------
# verbs
# ----------------------------------------------------------------------
@dataclass
class Report:
    text: str
    code: int = 0


def _row(values) -> str:
    return " ".join(num_str(v) for v in values)


def _tableau(cmd: Command) -> Report:
    b = load_branch(cmd.inputs[0])
    t = hn_tableau(b, cmd.depth)
    if cmd.json:
        return Report(dumps(tableau_to_json(t)))
    return Report(f"{render_tableau(t)}\nm: {_row(t.m_list)}")


def _invariants(cmd: Command) -> Report:
    b = load_branch(cmd.inputs[0])
    cd = characteristic_data(hn_tableau(b))
    if cmd.json:
        return Report(dumps(chardata_to_json(cd)))
    return Report(render_chardata(cd))


def _resolve(cmd: Command) -> Report:
    b = load_branch(cmd.inputs[0])
    cluster, m = resolution_cluster(b)
    if cmd.json:
        return Report(dumps({"cluster": cluster_to_json(cluster), "m": [str(v) for v in m]}))
    return Report(f"{format_cluster_text(cluster)}m: {_row(m)}")


def _matrices(cmd: Command) -> Report:
    item = load_input(cmd.inputs[0])
    cluster = item if isinstance(item, Cluster) else resolution_cluster(item)[0]
    bundle = all_matrices(cluster)
    verdict = "AGREE" if bundle.agree else "DISAGREE"
    if cmd.json:
        return Report(dumps(bundle_to_json(bundle)), 0 if bundle.agree else 1)
    names = (("P", "P"), ("Delta", "Delta"), ("Pprime", "P'"), ("Ptilde", "P~"),
             ("N", "N"), ("Q", "Q"), ("M", "M"))
    blocks = []
    for key, label in names:
        mat = getattr(bundle, key)
        blocks.append(f"{label} = {mat.compact()}\n{mat.render()}")
    blocks.append(f"N vs entrywise N: {verdict}")
    return Report("\n\n".join(blocks), 0 if bundle.agree else 1)


def _intersect(cmd: Command) -> Report:
    b1, b2 = (load_branch(p) for p in cmd.inputs)
    if b1.field != b2.field:
        raise InputError("branches are over different fields")
    methods = ("tableau", "resultant", "noether") if cmd.method == "all" else (cmd.method,)
    values = {}
    for m in methods:
        try:
            values[m] = getattr(intersect_all(b1, b2, (m,)), m)
        except OracleInapplicable:
            if cmd.method != "all":
                raise
            values[m] = None
    known = {v for v in values.values() if v is not None}
    agree = len(known) <= 1
    parts = [f"{m}={'n/a' if v is None else num_str(v)}" for m, v in values.items()]
    if cmd.method == "all":
        parts.append("AGREE" if agree else "DISAGREE")
    if cmd.json:
        doc = {m: None if v is None else num_str(v) for m, v in values.items()}
        if cmd.method == "all":
            doc["verdict"] = "AGREE" if agree else "DISAGREE"
        return Report(dumps(doc), 0 if agree else 1)
    return Report(" ".join(parts), 0 if agree else 1)


def _approx(cmd: Command) -> Report:
    f = load_branch(cmd.inputs[0])
    t = hn_tableau(f)
    spec = approx_spec(t, cmd.index)
    approx = mu_approximation(t, spec)
    g = synthesize_branch(approx)
    tg = hn_tableau(g)
    s = contact_order(t, tg).s
    iota = intersection_number(t, tg)
    r_j = characteristic_data(t).sg_seq[spec.j]
    closed = closed_form_iota(t, spec.mu)
    ok = s == spec.mu - 1 and iota == r_j == closed
    if cmd.json:
        doc = {"mu": str(spec.mu), "j": str(spec.j), "approximation": tableau_to_json(approx),
               "branch": branch_to_json(g), "s": num_str(s), "iota": num_str(iota),
               "r": str(r_j), "closed_form": str(closed), "verdict": "PASS" if ok else "FAIL"}
        return Report(dumps(doc), 0 if ok else 1)
    lines = [f"mu: {spec.mu}", render_tableau(approx), f"branch: {g}",
             f"contact: {num_str(s)}", f"iota: {iota}  r_{spec.j}: {r_j}  closed form: {closed}",
             "PASS" if ok else "FAIL"]
    return Report("\n".join(lines), 0 if ok else 1)


def _oracle(cmd: Command) -> Report:
    b = load_branch(cmd.inputs[0])
    c1, m1 = resolution_cluster(b)
    c2, m2 = walk_cluster(b)
    ok = c1 == c2 and m1 == m2
    lines = ["tableau chains:", format_cluster_text(c1) + f"m: {_row(m1)}",
             "blow-up walk:", format_cluster_text(c2) + f"m: {_row(m2)}",
             "AGREE" if ok else "DISAGREE"]
    return Report("\n".join(lines), 0 if ok else 1)


# ----------------------------------------------------------------------
# self checks
# ----------------------------------------------------------------------
def suite_seed() -> int:
    raw = os.environ.get("BRANCHLAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise BadOption(f"BRANCHLAB_SEED must be an integer, got {raw!r}") from None


def branch_checks(b: Branch, rng: random.Random, partners: int = 10) -> list[tuple[str, bool, str]]:
    """Named invariant checks on one branch and random partners."""
    out = []

    def record(name, fn):
        try:
            ok, detail = fn()
        except BranchLabError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, ok, detail))

    t = hn_tableau(b)
    record("tableau-valid", lambda: (not tableau_validate(t), "; ".join(map(str, tableau_validate(t)))))
    finite = not t.columns[0].degenerate
    if finite:
        def round_trip():
            g = synthesize_branch(t)
            back = hn_tableau(g)
            return back.triples == t.triples, f"{back.triples} vs {t.triples}"
        record("round-trip", round_trip)

        cd = characteristic_data(t)
        record("char-data", lambda: (not chardata_problems(cd), "; ".join(chardata_problems(cd))))

        def approximations():
            bad = []
            for j in range(1, cd.h + 1):
                spec = approx_spec(t, j)
                tg = hn_tableau(synthesize_branch(mu_approximation(t, spec)))
                s = contact_order(t, tg).s
                iota = intersection_number(t, tg)
                if not (s == spec.mu - 1 and tg.realized(spec.mu).c == 1
                        and iota == cd.sg_seq[j] == closed_form_iota(t, spec.mu)):
                    bad.append(f"j={j}: s={s} iota={iota} r={cd.sg_seq[j]}")
            return not bad, "; ".join(bad)
        record("approximations", approximations)

    def clusters():
        c1, m1 = resolution_cluster(b)
        c2, m2 = walk_cluster(b)
        return c1 == c2 and m1 == m2, f"chain m={m1} walk m={m2}"
    record("resolution-cluster", clusters)

    def bridge():
        mll, noether = curvette_bridge(b)
        return mll == noether, f"M_LL={mll} curvettes={noether}"
    record("curvette-bridge", bridge)

    def three_way():
        bad = []
        for _ in range(partners):
            g = random_branch(rng, b.field)
            if g == b:
                continue
            try:
                rep = intersect_all(b, g)
            except OracleInapplicable:
                rep = intersect_all(b, g, ("tableau", "noether"))
            back = intersect_all(g, b, ("tableau",))
            if not rep.agree or back.tableau != rep.tableau:
                bad.append(f"{g}: {rep.values}")
        return not bad, "; ".join(bad)
    record("three-way-intersections", three_way)
    return out


def cluster_checks(c: Cluster) -> list[tuple[str, bool, str]]:
    out = []
    problems = cluster_validate(c)
    out.append(("cluster-valid", not problems, "; ".join(map(str, problems))))
    if problems:
        return out
    bundle = all_matrices(c)
    out.append(("N-entrywise", bundle.agree, ""))
    out.append(("M=-N^-1", bundle.M == -bundle.N.inverse(), ""))
    out.append(("Q-nonnegative", bundle.Q.is_integral() and all(v >= 0 for r in bundle.Q.rows for v in r), ""))
    prod = 1
    for d in c.degrees:
        prod *= d
    out.append(("det(-N)", (-bundle.N).det() == prod, f"expected {prod}"))
    return out


def _check(cmd: Command) -> Report:
    item = load_input(cmd.inputs[0])
    seed = suite_seed()
    rng = random.Random(seed)
    if isinstance(item, Cluster):
        results = cluster_checks(item)
    else:
        results = branch_checks(item, rng)
    for k in range(20):
        results += [(f"random-cluster-{k}:{name}", ok, d)
                    for name, ok, d in cluster_checks(random_cluster(rng, rng.randint(1, 12)))]
    results.sort(key=lambda r: r[0])
    ok = all(r[1] for r in results)
    if cmd.json:
        doc = {"seed": str(seed), "results": [{"name": n, "pass": p, "detail": d} for n, p, d in results],
               "verdict": "PASS" if ok else "FAIL"}
        return Report(dumps(doc), 0 if ok else 1)
    lines = [f"{'PASS' if p else 'FAIL'} {n}" + ("" if p or not d else f": {d}") for n, p, d in results]
    lines.append(f"seed {seed}: {'all checks passed' if ok else 'FAILED'}")
    return Report("\n".join(lines), 0 if ok else 1)


_DISPATCH = {
    "tableau": _tableau, "invariants": _invariants, "resolve": _resolve, "matrices": _matrices,
    "intersect": _intersect, "approx": _approx, "check": _check, "oracle": _oracle,
}


def run(cmd: Command) -> Report:
    return _DISPATCH[cmd.verb](cmd)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_command(argv)
        report = run(cmd)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except BranchLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(report.text)
    return report.code


if __name__ == "__main__":
    sys.exit(main())
