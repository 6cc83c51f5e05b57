"""Command-line interface: ``exdir solve|closed|formula|simulate|play|verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource cap exceeded, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import TextIO

from . import cache
from .closed import is_closed, min_closed_containing, min_closed_size, peel
from .formulas import f_star_cycle, lattice_bounds, tree_lower_bound, tree_value
from .graph import DEFAULT_CAP, Graph, GraphError, apsp, load_graph
from .nonadaptive import InvalidSequence, forced_run, parse_sequence, score
from .solver import (AUTO, SOLVER_CAP, CapExceeded, GameState, IllegalMove, Policy,
                     format_trace, game_over, make_engine, optimal_trace, play_step)
from .verify import SUITES, build_suite, run_cases

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP, EXIT_IO = 0, 1, 2, 3, 4


def _vertex_set(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _fmt_set(vs) -> str:
    return "{" + ",".join(str(v) for v in sorted(vs)) + "}"


def _graph(args) -> Graph:
    cap = max(DEFAULT_CAP, args.cap) if getattr(args, "cap", None) else DEFAULT_CAP
    return load_graph(args.graph, cap=cap)


def _solver_cap(args) -> int:
    if args.force_cap:
        return DEFAULT_CAP
    return args.cap or SOLVER_CAP


def _check_start(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"start vertex {v} outside 0..{g.n - 1}")


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_solve(args, out: TextIO) -> int:
    g = _graph(args)
    _check_start(g, args.start)
    family = None if os.path.exists(args.graph) else args.graph
    ghash = cache.graph_hash(g)
    cache_path = args.cache
    record = cache.lookup(cache_path, ghash, args.start) if cache_path else None
    engine = None
    if record is None:
        engine = make_engine(g, cap=_solver_cap(args))
        f_d = engine.value(args.start)
        closed_min = min_closed_size(engine.dm)[0]
        record = cache.ResultRecord(ghash, family, args.start, f_d, closed_min, cache.now_stamp())
        if cache_path:
            cache.append(cache_path, record)
        hit = False
    else:
        hit = True
    if args.json:
        print(record.to_json(), file=out)
    else:
        note = " (cached)" if hit else ""
        print(f"f_d = {record.f_d}{note}", file=out)
        print(f"start = {record.start}, n = {g.n}, min closed size = {record.closed_min}", file=out)
    if args.trace:
        engine = engine or make_engine(g, cap=_solver_cap(args))
        print(format_trace(args.start, optimal_trace(g, args.start, engine=engine)), file=out)
    if args.out:
        cache.append(args.out, record)
    return EXIT_OK


def cmd_closed(args, out: TextIO) -> int:
    g = _graph(args)
    dm = apsp(g)
    if args.check is not None:
        members = _vertex_set(args.check)
        ok = is_closed(dm, members)
        print(f"{_fmt_set(members)} is {'closed' if ok else 'not closed'}", file=out)
    elif args.min:
        size, witness = min_closed_size(dm)
        print(f"min closed size = {size}, witness = {_fmt_set(witness)}", file=out)
    elif args.containing is not None:
        _check_start(g, args.containing)
        size, witness = min_closed_containing(dm, args.containing)
        print(f"min closed size containing {args.containing} = {size}, witness = {_fmt_set(witness)}",
              file=out)
    else:
        res = peel(dm, _vertex_set(args.peel))
        print(f"core = {_fmt_set(res.core)}", file=out)
        for i, layer in enumerate(res.layers, start=1):
            print(f"X_{i} = {_fmt_set(layer)}", file=out)
    return EXIT_OK


def cmd_formula(args, out: TextIO) -> int:
    fam = args.family
    if fam == "cycle":
        print(f"f*({args.n}) = {f_star_cycle(args.n)}", file=out)
    elif fam == "lattice":
        n, m = max(args.n, args.m), min(args.n, args.m)
        b = lattice_bounds(n, m, args.start or 0)
        if b.exact:
            print(f"f_d(L_{{{n},{m}}}) = {b.lower}", file=out)
        else:
            print(f"bounds ({b.lower},{b.upper})", file=out)
    elif fam in ("tree", "treelb"):
        if not args.graph:
            raise GraphError("--graph is required for tree formulas")
        g = _graph(args)
        if fam == "treelb":
            print(f"diam + 1 = {tree_lower_bound(g)}", file=out)
        else:
            _check_start(g, args.start or 0)
            print(f"f_d = {tree_value(g, args.start or 0)}", file=out)
    return EXIT_OK


def cmd_simulate(args, out: TextIO) -> int:
    g = _graph(args)
    _check_start(g, args.start)
    seq = parse_sequence(args.sequence)
    try:
        s = score(g, args.start, seq, cap=_solver_cap(args))
    except InvalidSequence as exc:
        print(f"invalid-at-step-{exc.step}: {exc}", file=out)
        return EXIT_USAGE
    run = forced_run(g, args.start, seq)
    print(f"score = {s}", file=out)
    if run.all_forced:
        print("all steps forced", file=out)
    else:
        print(f"first unforced step = {run.first_unforced}", file=out)
    print("trace = " + " ".join(map(str, run.trace)), file=out)
    return EXIT_OK


def play_session(g: Graph, start: int, role: str, inp: TextIO, out: TextIO,
                 cap: int = SOLVER_CAP) -> int:
    """Line-oriented game against the optimal policy; returns the final visit count."""
    engine = make_engine(g, cap=cap)
    policy = Policy(engine)
    dm = engine.dm
    value = engine.value(start)
    other = "Director" if role == "explorer" else "Explorer"
    print(f"You are the {role.capitalize()}; the computer plays an optimal {other}.", file=out)
    print(f"Game value from {start}: f_d = {value}", file=out)
    state = GameState.start(start)

    def ask(prompt: str) -> str | None:
        print(prompt, end="", file=out)
        out.flush()
        line = inp.readline()
        if not line:
            return None
        line = line.strip()
        return None if line.lower() in ("q", "quit") else line

    while not game_over(policy, state):
        print(f"token at {state.token}, visited {_fmt_set(state.visited)}", file=out)
        if role == "explorer":
            line = ask(f"distance (1..{dm.ecc[state.token]}, q to quit): ")
            if line is None:
                break
            try:
                step = play_step(state, int(line), AUTO, policy)
            except (ValueError, IllegalMove) as exc:
                print(f"illegal: {exc}", file=out)
                continue
            print(f"Director moves to {step.state.token}", file=out)
        else:
            d = policy.explorer_move(state)
            replies = dm.sphere(state.token, d)
            step = None
            while step is None:
                line = ask(f"Explorer calls {d}; move to one of {_fmt_set(replies)} (q to quit): ")
                if line is None:
                    break
                try:
                    step = play_step(state, d, int(line), policy)
                except (ValueError, IllegalMove) as exc:
                    print(f"illegal: {exc}", file=out)
            if step is None:
                print(f"session ended: {len(state.visited)} vertices visited so far", file=out)
                return len(state.visited)
        state = step.state
    else:
        final = len(state.visited)
        print(f"game over: {final} vertices visited (optimal value {value})", file=out)
        print(f"an optimal Explorer forces at least {value}; "
              f"an optimal Director allows at most {value}", file=out)
        return final
    print(f"session ended: {len(state.visited)} vertices visited so far", file=out)
    return len(state.visited)


def cmd_play(args, out: TextIO) -> int:
    g = _graph(args)
    _check_start(g, args.start)
    play_session(g, args.start, args.role, sys.stdin, out, cap=_solver_cap(args))
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    cases = build_suite(args.suite, max_n=args.max_n, count=args.count, seed=args.seed,
                        max_len=args.max_len)
    results = run_cases(cases, workers=args.parallel)
    for r in results:
        print(r.line(), file=out)
    passed = sum(r.ok for r in results)
    print(f"{args.suite}: {passed}/{len(results)} pass", file=out)
    return EXIT_OK if passed == len(results) else EXIT_FAIL


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exdir", description="Explorer-Director game engine")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(p, required=True):
        p.add_argument("--graph", required=required,
                       help="family spec (cycle:7, lattice:4x5, spider:4;5,5, ...) or edge-list file")
        p.add_argument("--cap", type=int, default=None, help="solver vertex cap (default %d)" % SOLVER_CAP)
        p.add_argument("--force-cap", action="store_true",
                       help="lift the solver cap to the graph cap (%d)" % DEFAULT_CAP)

    p = sub.add_parser("solve", help="exact game value from a start vertex")
    graph_args(p)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--trace", action="store_true", help="print an optimal play line")
    p.add_argument("--json", action="store_true", help="print the result record as JSON")
    p.add_argument("--out", help="append the result record to this file")
    p.add_argument("--cache", nargs="?", const=os.environ.get(cache.CACHE_ENV, "exdir-cache.jsonl"),
                   default=None, help="reuse/stash results (default path from $%s)" % cache.CACHE_ENV)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("closed", help="closed-set queries")
    graph_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--check", metavar="SET")
    group.add_argument("--min", action="store_true")
    group.add_argument("--containing", type=int, metavar="V")
    group.add_argument("--peel", metavar="SET")
    p.set_defaults(func=cmd_closed)

    p = sub.add_parser("formula", help="closed-form values and bounds")
    p.add_argument("--family", required=True, choices=["cycle", "lattice", "tree", "treelb"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--graph")
    p.add_argument("--start", type=int)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("simulate", help="score a nonadaptive distance sequence")
    graph_args(p)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--sequence", required=True, help="comma-separated distances, e.g. 1,3,2,3,2")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("play", help="interactive game against the optimal policy")
    graph_args(p)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--role", choices=["explorer", "director"], default="explorer")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--max-n", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--parallel", type=int, default=1, metavar="WORKERS")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
