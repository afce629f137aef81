"""Command-line surface.

Exit codes: 0 success/verified, 1 verification failed (witness printed),
2 input error, 3 resource/budget error.  The default oracle budget can be
overridden with the GIRTHSPAN_BUDGET environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions as cons
from . import oracles, pipeline, sampling
from . import spanner as sp
from .errors import InputError, ResourceError
from .graphs import INFINITY, girth, parse_graph_text, write_graph_text
from .labelcover import (minrep_expand, parse_cover_text, parse_lc_text,
                         write_cover_text, write_labeling_text, write_lc_text)
from .rng import Stream, child_seed


def _budget_from_env(args) -> oracles.OracleBudget:
    if args.budget is not None:
        return oracles.OracleBudget(max_search_space=args.budget)
    env = os.environ.get("GIRTHSPAN_BUDGET")
    if env:
        return oracles.OracleBudget(max_search_space=int(env))
    return oracles.OracleBudget()


def _read_lc(path):
    return parse_lc_text(Path(path).read_text())


def _print_distance(d) -> None:
    print("infinity" if d == INFINITY else int(d))


def cmd_gen_3sat5(args) -> int:
    planted_bits = None
    if args.planted:
        stream = Stream(child_seed(args.seed, "planted"))
        planted_bits = tuple(stream.randbelow(2) == 1 for _ in range(args.vars))
    formula = cons.gen_3sat5(args.vars, child_seed(args.seed, "gen"), planted_bits)
    Path(args.output).write_text(
        cons.write_formula_text(formula, seed=args.seed, planted=planted_bits))
    print(f"wrote {args.output}: {formula.var_count} vars, "
          f"{formula.clause_count} clauses")
    return 0


def cmd_lc_from_3sat(args) -> int:
    formula = cons.parse_formula_text(Path(args.input).read_text())
    lc = cons.lc_from_3sat5(formula)
    Path(args.output).write_text(write_lc_text(lc))
    print(f"wrote {args.output}: |A|={lc.a_count} |B|={lc.b_count} m={lc.edge_count}")
    return 0


def cmd_regularize(args) -> int:
    lc = _read_lc(args.input)
    out = cons.regularize(lc, require_sat5_shape=not args.any_shape)
    Path(args.output).write_text(write_lc_text(out))
    print(f"wrote {args.output}: |A'|={out.a_count} |B'|={out.b_count} m={out.edge_count}")
    return 0


def cmd_parrep(args) -> int:
    lc = _read_lc(args.input)
    out = cons.parallel_repetition(lc, args.ell, max_superedges=args.max_superedges)
    Path(args.output).write_text(write_lc_text(out))
    print(f"wrote {args.output}: sides {out.a_count}/{out.b_count}, "
          f"alphabets {out.sigma_a}/{out.sigma_b}, m={out.edge_count}")
    return 0


def cmd_subsample(args) -> int:
    lc = _read_lc(args.input)
    params = sampling.SampleParams(alpha=args.alpha, k=max(args.k, 3), seed=args.seed,
                                   clamp_p=not args.no_clamp_p, d_override=args.degree)
    out = sampling.subsample(lc, params)
    Path(args.output).write_text(write_lc_text(out))
    p = sampling.sample_probability(args.alpha, lc.sigma_a,
                                    sampling.effective_degree(lc, params),
                                    not args.no_clamp_p)
    print(f"wrote {args.output}: kept {out.edge_count}/{lc.edge_count} superedges (p={p:.6g})")
    return 0


def cmd_strip_cycles(args) -> int:
    lc = _read_lc(args.input)
    out = sampling.strip_bad_edges(lc, args.k)
    Path(args.output).write_text(write_lc_text(out))
    print(f"wrote {args.output}: removed {lc.edge_count - out.edge_count} bad edges, "
          f"kept {out.edge_count}")
    return 0


def cmd_girth(args) -> int:
    g = parse_graph_text(Path(args.input).read_text())
    _print_distance(girth(g))
    return 0


def cmd_minrep_expand(args) -> int:
    lc = _read_lc(args.input)
    mr = minrep_expand(lc)
    Path(args.output).write_text(write_graph_text(mr.minrep_graph))
    print(f"wrote {args.output}: {mr.vertex_count} vertices, "
          f"{mr.minrep_graph.edge_count} edges")
    return 0


def _build_gadget(args):
    return pipeline.rebuild_gadget(args.lc, args.k, x_override=args.x,
                                   allow_small_supergirth=args.unsafe_supergirth)


def cmd_spanner_reduce(args) -> int:
    lc = _read_lc(args.lc)
    mr = minrep_expand(lc)
    si = sp.build_spanner_instance(mr, args.k, x_override=args.x,
                                   allow_small_supergirth=args.unsafe_supergirth)
    Path(args.output).write_text(write_graph_text(si.base))
    meta_path = args.meta or (str(args.output) + ".meta.json")
    Path(meta_path).write_text(json.dumps(sp.gadget_metadata(si), sort_keys=True, indent=1))
    print(f"wrote {args.output} (+ {meta_path}): {si.base.vertex_count} vertices, "
          f"{si.base.edge_count} edges, x={si.x}")
    return 0


def cmd_spanner_verify(args) -> int:
    g = parse_graph_text(Path(args.graph).read_text())
    h = sp.parse_subset_text(Path(args.subset).read_text(), g)
    ok, witness = sp.verify_spanner(g, h, args.k)
    if ok:
        print(f"valid {args.k}-spanner ({len(h)} of {g.edge_count} edges)")
        return 0
    u, v = g.edge(witness)
    print(f"NOT a {args.k}-spanner: edge {witness} = ({u}, {v}) is violated")
    return 1


def cmd_spanner_greedy(args) -> int:
    g = parse_graph_text(Path(args.graph).read_text())
    h = sp.greedy_spanner(g, args.k)
    Path(args.output).write_text(sp.write_subset_text(h))
    print(f"wrote {args.output}: {len(h)} of {g.edge_count} edges")
    return 0


def cmd_spanner_from_cover(args) -> int:
    si = _build_gadget(args)
    cover = parse_cover_text(Path(args.cover).read_text())
    h = sp.spanner_from_repcover(si, cover)
    Path(args.output).write_text(sp.write_subset_text(h))
    bound = (args.k + 1) * si.x * si.n_tilde
    print(f"wrote {args.output}: {len(h)} edges (cover size {len(cover)}, "
          f"(k+1)*x*n_tilde = {bound})")
    return 0


def cmd_cover_from_spanner(args) -> int:
    si = _build_gadget(args)
    h = sp.parse_subset_text(Path(args.subset).read_text(), si.base)
    cover = sp.repcover_from_spanner(si, h)
    Path(args.output).write_text(write_cover_text(cover))
    print(f"wrote {args.output}: {len(cover)} representatives "
          f"(6|H|/x = {6 * len(h) / si.x:.2f})")
    return 0


def cmd_make_proper(args) -> int:
    si = _build_gadget(args)
    h = sp.parse_subset_text(Path(args.subset).read_text(), si.base)
    proper = sp.make_proper(si, h)
    Path(args.output).write_text(sp.write_subset_text(proper))
    print(f"wrote {args.output}: {len(proper)} edges (input {len(h)}, bound {6 * len(h)})")
    return 0


def cmd_solve_lc_exact(args) -> int:
    lc = _read_lc(args.input)
    opt, witness = oracles.lc_value_exact(lc, _budget_from_env(args))
    print(f"optimum {opt} ({opt.numerator}/{opt.denominator})")
    if args.output:
        Path(args.output).write_text(write_labeling_text(witness))
        print(f"wrote witness {args.output}")
    return 0


def cmd_solve_cover_exact(args) -> int:
    lc = _read_lc(args.input)
    mr = minrep_expand(lc)
    size, cover = oracles.min_repcover_exact(mr, _budget_from_env(args))
    print(f"minimum REP-cover size {size}")
    if args.output:
        Path(args.output).write_text(write_cover_text(cover))
        print(f"wrote witness {args.output}")
    return 0


def cmd_solve_spanner_exact(args) -> int:
    g = parse_graph_text(Path(args.graph).read_text())
    size, h = oracles.min_spanner_exact(g, args.k, _budget_from_env(args))
    print(f"minimum {args.k}-spanner size {size}")
    if args.output:
        Path(args.output).write_text(sp.write_subset_text(h))
        print(f"wrote witness {args.output}")
    return 0


def cmd_pipeline(args) -> int:
    report = pipeline.run_pipeline(
        args.output, n_vars=args.vars, ell=args.ell, alpha=args.alpha,
        k=args.k, seed=args.seed, planted=args.planted, x_override=args.x,
        clamp_p=not args.no_clamp_p)
    verdicts = report["verdicts"]
    for name, ok in sorted(verdicts.items()):
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    print(f"artifacts in {args.output}")
    return 0 if all(verdicts.values()) else 1


def cmd_stats(args) -> int:
    lc = _read_lc(args.input)
    doc = pipeline.instance_stats(lc)
    text = json.dumps(doc, sort_keys=True, indent=1)
    if args.output:
        Path(args.output).write_text(text)
    print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="girthspan",
        description="Label Cover / Min-Rep pipeline with girth control and "
                    "basic k-spanner gadget reductions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, blurb, configure):
        p = sub.add_parser(name, help=blurb, description=blurb)
        configure(p)
        p.set_defaults(fn=fn)

    def io_opts(p, inp=True, out=True):
        if inp:
            p.add_argument("-i", "--input", required=True, help="input file")
        if out:
            p.add_argument("-o", "--output", required=True, help="output file")

    def gadget_opts(p):
        p.add_argument("--lc", required=True, help="stripped LC v1 instance")
        p.add_argument("--k", type=int, required=True, help="stretch (>= 3)")
        p.add_argument("--x", type=int, default=None,
                       help="copy-count override (default ceil(n^2/n_tilde))")
        p.add_argument("--unsafe-supergirth", action="store_true",
                       help="warn instead of erroring when supergirth < k + 2")

    add("gen-3sat5", cmd_gen_3sat5,
        "generate a random 3SAT(5) formula (DIMACS)", lambda p: (
            p.add_argument("--vars", type=int, required=True,
                           help="variable count (divisible by 3)"),
            p.add_argument("--seed", type=int, default=0, help="master seed"),
            p.add_argument("--planted", action="store_true",
                           help="plant a satisfying assignment (seed-derived)"),
            p.add_argument("-o", "--output", required=True, help="output file")))
    add("lc-from-3sat", cmd_lc_from_3sat,
        "clause-variable Label Cover from a 3SAT(5) formula", lambda p: io_opts(p))
    add("regularize", cmd_regularize,
        "3 copies of A, 5 copies of B: 15-regular instance", lambda p: (
            io_opts(p),
            p.add_argument("--any-shape", action="store_true",
                           help="skip the A-degree-3 / B-degree-5 check")))
    add("parrep", cmd_parrep,
        "apply parallel repetition ell times", lambda p: (
            io_opts(p),
            p.add_argument("--ell", type=int, required=True, help="repetitions"),
            p.add_argument("--max-superedges", type=int,
                           default=cons.DEFAULT_MAX_SUPEREDGES,
                           help="superedge budget")))
    add("subsample", cmd_subsample,
        "keep each superedge with probability alpha*log2(sigma_A)/d", lambda p: (
            io_opts(p),
            p.add_argument("--alpha", type=float, required=True,
                           help="sampling strength"),
            p.add_argument("--seed", type=int, default=0, help="master seed"),
            p.add_argument("--k", type=int, default=3,
                           help="cycle threshold recorded in the parameters"),
            p.add_argument("--no-clamp-p", action="store_true",
                           help="error instead of clamping when p > 1"),
            p.add_argument("--degree", type=int, default=None,
                           help="degree override for the p formula")))
    add("strip-cycles", cmd_strip_cycles,
        "remove every superedge lying on a cycle of length <= k", lambda p: (
            io_opts(p),
            p.add_argument("--k", type=int, required=True, help="cycle threshold")))
    add("girth", cmd_girth,
        "print the girth of a GRAPH v1 file", lambda p:
        p.add_argument("-i", "--input", required=True, help="GRAPH v1 file"))
    add("minrep-expand", cmd_minrep_expand,
        "expand a Label Cover instance to its Min-Rep graph", lambda p: io_opts(p))
    add("spanner-reduce", cmd_spanner_reduce,
        "build the k-spanner gadget graph from a stripped instance", lambda p: (
            gadget_opts(p),
            p.add_argument("-o", "--output", required=True, help="GRAPH v1 output"),
            p.add_argument("--meta", default=None,
                           help="sidecar path (default: <output>.meta.json)")))
    add("spanner-verify", cmd_spanner_verify,
        "check a SUBSET v1 edge set is a k-spanner (exit 1 on violation)", lambda p: (
            p.add_argument("--graph", required=True, help="GRAPH v1 host"),
            p.add_argument("--subset", required=True, help="SUBSET v1 candidate"),
            p.add_argument("--k", type=int, required=True, help="stretch")))
    add("spanner-greedy", cmd_spanner_greedy,
        "classical greedy k-spanner baseline", lambda p: (
            p.add_argument("--graph", required=True, help="GRAPH v1 host"),
            p.add_argument("--k", type=int, required=True, help="stretch"),
            p.add_argument("-o", "--output", required=True, help="SUBSET v1 output")))
    add("spanner-from-cover", cmd_spanner_from_cover,
        "spanner of the gadget induced by a REP-cover", lambda p: (
            gadget_opts(p),
            p.add_argument("--cover", required=True, help="COVER v1 file"),
            p.add_argument("-o", "--output", required=True, help="SUBSET v1 output")))
    add("cover-from-spanner", cmd_cover_from_spanner,
        "extract a REP-cover from a gadget k-spanner", lambda p: (
            gadget_opts(p),
            p.add_argument("--subset", required=True, help="SUBSET v1 spanner"),
            p.add_argument("-o", "--output", required=True, help="COVER v1 output")))
    add("make-proper", cmd_make_proper,
        "convert a gadget k-spanner into one without tower-top edges", lambda p: (
            gadget_opts(p),
            p.add_argument("--subset", required=True, help="SUBSET v1 spanner"),
            p.add_argument("-o", "--output", required=True, help="SUBSET v1 output")))
    add("solve-lc-exact", cmd_solve_lc_exact,
        "exact Label Cover optimum by enumeration", lambda p: (
            p.add_argument("-i", "--input", required=True, help="LC v1 file"),
            p.add_argument("-o", "--output", default=None, help="LABEL v1 witness"),
            p.add_argument("--budget", type=int, default=None,
                           help="search-space cap (or GIRTHSPAN_BUDGET)")))
    add("solve-cover-exact", cmd_solve_cover_exact,
        "exact minimum REP-cover by subset enumeration", lambda p: (
            p.add_argument("-i", "--input", required=True, help="LC v1 file"),
            p.add_argument("-o", "--output", default=None, help="COVER v1 witness"),
            p.add_argument("--budget", type=int, default=None,
                           help="search-space cap (or GIRTHSPAN_BUDGET)")))
    add("solve-spanner-exact", cmd_solve_spanner_exact,
        "exact minimum k-spanner by subset enumeration", lambda p: (
            p.add_argument("--graph", required=True, help="GRAPH v1 file"),
            p.add_argument("--k", type=int, required=True, help="stretch"),
            p.add_argument("-o", "--output", default=None, help="SUBSET v1 witness"),
            p.add_argument("--budget", type=int, default=None,
                           help="search-space cap (or GIRTHSPAN_BUDGET)")))
    add("pipeline", cmd_pipeline,
        "full chain: generate, construct, repeat, sample, strip, reduce, verify",
        lambda p: (
            p.add_argument("--vars", type=int, default=3, help="3SAT(5) variables"),
            p.add_argument("--ell", type=int, default=1, help="repetition count"),
            p.add_argument("--alpha", type=float, default=2.0,
                           help="sampling strength"),
            p.add_argument("--k", type=int, default=3,
                           help="stretch; cycles stripped at k + 1"),
            p.add_argument("--seed", type=int, default=0, help="master seed"),
            p.add_argument("--planted", action="store_true",
                           help="plant an assignment and run the verified chain"),
            p.add_argument("--x", type=int, default=None, help="copy-count override"),
            p.add_argument("--no-clamp-p", action="store_true",
                           help="error instead of clamping when p > 1"),
            p.add_argument("-o", "--output", required=True, help="artifact directory")))
    add("stats", cmd_stats,
        "stats_v1 summary of an LC v1 instance", lambda p: (
            p.add_argument("-i", "--input", required=True, help="LC v1 file"),
            p.add_argument("-o", "--output", default=None, help="JSON output path")))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
