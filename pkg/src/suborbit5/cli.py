"""Command-line entry point.

Exit status is 0 on success, 1 when a check fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .atlas import maximal
from .atlas.symplectic import MAX_PRIME, TARGETS
from .atlas.table3 import build_table3_row
from .atlas.tables import GroupSpec, build_table1_row, build_table2_row
from .errors import GeneratorFileError, PreconditionError, ResourceError, UnsupportedError
from .graphs import AUT_VERTEX_BOUND, graph_aut_order_small, identify_graph
from .orbital import correspondence_check, enumerate_digraphs, norm_quotient_order_via_suborbits, suborbits
from .perm import DEFAULT_COSET_BOUND, DEFAULT_NORMALIZER_BOUND, point_stabilizer, subgroup_normalizer_small
from .selftest import DEFAULT_SEEDS, SUITES, run_selftest
from .verify import (
    NORMALIZER_DEGREE,
    SECTIONS,
    TABLE_FAMILY,
    SuiteConfig,
    centralizer_group,
    decomposition_check,
    run_suite,
    summarize,
    write_reports,
)


class UsageError(Exception):
    """Bad selectors; reported with the synopsis of the subcommand."""


def _add_selectors(p: argparse.ArgumentParser) -> None:
    p.add_argument("--table", type=int, choices=(1, 2, 4, 5))
    p.add_argument("--row", type=int)
    p.add_argument("--family", help="family key of a maximal-subgroup row, instead of --table/--row")
    p.add_argument("--p", type=int, help="prime, or the family parameter")
    p.add_argument("--generator-file", help="generator file (Sz(8) row)")
    p.add_argument("--degree-bound", type=int, default=DEFAULT_COSET_BOUND, help="largest degree built (default %(default)s)")


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="suborbit5", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a row and print degree, order and stabilizer")
    _add_selectors(p)
    _add_seed(p)

    p = sub.add_parser("suborbits", help="suborbit lengths of a row")
    _add_selectors(p)
    _add_seed(p)

    p = sub.add_parser("digraphs", help="arc-transitive digraphs of a given out-valency")
    _add_selectors(p)
    p.add_argument("--valency", type=int, default=5)
    p.add_argument("--out", help="directory receiving one edge file per digraph")
    _add_seed(p)

    p = sub.add_parser("graph", help="build, export and identify a graph-table row")
    p.add_argument("--table", type=int, choices=(3,), default=3)
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--generator-file")
    p.add_argument("--out", help="edge file to write")
    p.add_argument("--aut-bound", type=int, default=AUT_VERTEX_BOUND, help="largest graph whose automorphisms are counted")
    _add_seed(p)

    p = sub.add_parser("normquot", help="order of N(H)/H by suborbit counting and by direct normalizer")
    _add_selectors(p)
    p.add_argument("--normalizer-degree", type=int, default=NORMALIZER_DEGREE, help="largest degree for the direct route")
    p.add_argument("--normalizer-bound", type=int, default=DEFAULT_NORMALIZER_BOUND)
    _add_seed(p)

    p = sub.add_parser("modrep", help="centralizer group and decomposition for a symplectic target")
    p.add_argument("--target", required=True, choices=sorted(TARGETS))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--only", choices=("centralizer", "decomposition"))
    p.add_argument("--prime-cap", type=int, default=MAX_PRIME)
    _add_seed(p)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--sections", nargs="+", choices=SECTIONS, default=list(SECTIONS))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write report lines here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="omit runtimes so reruns are byte-identical")
    p.add_argument("--all-primes", action="store_true", help="every valid prime up to the affine bound")
    p.add_argument("--affine-bound", type=int, default=50_000)
    p.add_argument("--generator-file")
    _add_seed(p)

    p = sub.add_parser("selftest", help="seeded property suites")
    p.add_argument("--seeds", type=int, nargs="+", default=list(DEFAULT_SEEDS))
    p.add_argument("--suites", nargs="+", choices=sorted(SUITES))
    return parser


# ---------------------------------------------------------------------------
# building


def _family_value(args) -> tuple[str, int | None]:
    if args.family:
        key = args.family
    elif args.table in (4, 5):
        if args.row is None:
            raise UsageError("--row is required")
        if (args.table, args.row) in maximal.UNSUPPORTED_ROWS:
            raise UnsupportedError(maximal.UNSUPPORTED_ROWS[(args.table, args.row)])
        if (args.table, args.row) not in TABLE_FAMILY:
            raise UsageError(f"no permutation construction for table {args.table} row {args.row}")
        key = TABLE_FAMILY[(args.table, args.row)]
    else:
        raise UsageError("a family is needed")
    if key not in maximal.FAMILIES:
        raise UsageError(f"unknown family {key!r}; known: {', '.join(sorted(maximal.FAMILIES))}")
    fam = maximal.family(key)
    if fam.param and args.p is None:
        raise UsageError(f"family {key} needs --p ({fam.param})")
    value = args.p if fam.param else None
    if args.table in (4, 5) and fam.row(value) != args.row:
        raise UsageError(f"{fam.param} = {value} belongs to row {fam.row(value)}, not {args.row}")
    return key, value


def build_spec(args) -> GroupSpec:
    """The group selected by --table/--row/--p or --family/--p."""
    if args.family or args.table in (4, 5):
        key, value = _family_value(args)
        return maximal.build_maximal_action(key, value, args.seed, bound=args.degree_bound)
    if args.table is None or args.row is None:
        raise UsageError("--table and --row are required")
    if args.table == 1:
        return build_table1_row(args.row, args.generator_file, args.seed)
    if args.p is None:
        raise UsageError("table 2 rows need --p")
    return build_table2_row(args.row, args.p, args.seed, bound=args.degree_bound)


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    print(build_spec(args).describe())
    return 0


def cmd_suborbits(args) -> int:
    spec = build_spec(args)
    report = suborbits(spec.group, 0, args.seed)
    print(f"degree {spec.degree}: {report.describe()}")
    return 0


def cmd_digraphs(args) -> int:
    spec = build_spec(args)
    found = enumerate_digraphs(spec.group, 0, args.valency, args.seed)
    print(f"{len(found)} digraph(s) of out-valency {args.valency} on {spec.degree} vertices")
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for k, dg in enumerate(found):
        kind = "graph" if dg.symmetric else "digraph"
        print(f"  {k}: {kind}, {dg.arc_count} arcs")
        if out:
            dg.write(out / f"digraph{k}.el")
    return 0


def cmd_graph(args) -> int:
    t3 = build_table3_row(args.row, args.p, args.seed, args.generator_file)
    g = t3.graph
    if args.out:
        g.write(args.out)
    ident = identify_graph(g, args.seed)
    print(f"{g.n} vertices, {t3.edges} edges")
    print(ident.describe())
    if g.n <= args.aut_bound:
        print(f"|Aut| = {graph_aut_order_small(g)}")
    return 0


def cmd_normquot(args) -> int:
    spec = build_spec(args)
    key = args.family or TABLE_FAMILY.get((args.table, args.row))
    if key == "s5-a5":
        # A5 is normal in S5, so only the direct route applies
        H = point_stabilizer(spec.stabilizer, 0, args.seed)
        N = subgroup_normalizer_small(spec.group, H, seed=args.seed, bound=args.normalizer_bound)
        print(f"{N.order // H.order} (direct normalizer)")
        return 0
    count = len(suborbits(spec.group, 0, args.seed).of_length(5))
    quotient = norm_quotient_order_via_suborbits(spec.group, 0, 5, args.seed)
    noun = "no length-5 suborbit" if count == 0 else f"{count} length-5 suborbit" + ("s" if count > 1 else "")
    print(f"{quotient} ({noun})")
    if spec.degree > args.normalizer_degree:
        print(f"normalizer route skipped: degree {spec.degree} exceeds {args.normalizer_degree}")
        return 0
    cc = correspondence_check(spec.group, 0, 5, args.seed)
    print(f"normalizer route: {cc.quotient_order}")
    return 0 if cc.quotient_order == quotient and cc.count_agrees and cc.pairing_agrees else 1


def cmd_modrep(args) -> int:
    t = TARGETS[args.target]
    if not t.condition(args.p):
        raise UsageError(f"p = {args.p} violates the congruence of target {args.target}")
    status = 0
    if args.only != "decomposition":
        cg = centralizer_group(args.p, args.target, args.seed, args.prime_cap)
        print(f"centralizer {cg.structure()}, order {cg.order}, algebra dimension {cg.algebra_dim}, N/H order {cg.quotient_order}")
    if args.only != "centralizer":
        rep = decomposition_check(args.p, args.target, args.seed, args.prime_cap)
        for dim, absolute, form in rep.measured.get("summands", []):
            print(f"summand dim {dim}, {'absolutely irreducible' if absolute else 'not absolutely irreducible'}, {form}")
        print(f"decomposition {rep.status}" + (f": {rep.reason}" if rep.reason else ""))
        status = 0 if rep.passed else 1
    return status


def cmd_verify(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    config = SuiteConfig(tuple(args.sections), args.seed, args.generator_file, args.all_primes, args.affine_bound)
    reports, status = run_suite(config, args.jobs)
    timing = not args.no_timing
    if args.out:
        write_reports(reports, args.out, timing)
    else:
        for r in reports:
            print(r.to_line(timing))
    counts = summarize(reports)
    print(f"{counts['pass']} pass, {counts['fail']} fail, {counts['skip']} skip", file=sys.stderr)
    return status


def cmd_selftest(args) -> int:
    results = run_selftest(args.seeds, args.suites)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "construct": cmd_construct,
    "suborbits": cmd_suborbits,
    "digraphs": cmd_digraphs,
    "graph": cmd_graph,
    "normquot": cmd_normquot,
    "modrep": cmd_modrep,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, GeneratorFileError) as exc:
        print(sub.format_usage().rstrip(), file=sys.stderr)
        print(f"suborbit5 {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedError, ResourceError, PreconditionError) as exc:
        print(f"suborbit5 {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"suborbit5 {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
