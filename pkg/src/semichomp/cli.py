"""Command-line interface.

    semichomp <info|apery|classify|search|decide|table|conjecture|
               torsion-info|torsion-search|torsion-witness|play|serve>
              [args] [--json] [--csv] [--max N] [--budget N] [--plot FILE]

Exit codes: 0 ok, 2 parse error, 3 budget exhausted without a verdict.
Machine output (--json/--csv) is deterministic: identical invocations print
identical bytes (runtimes appear only in the human-readable reports).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .decider import (
    decide_winner,
    describe_bound,
    smallest_winning_move,
    theoretical_bound,
)
from .errors import InvalidInputError, SemichompError
from .families import classify
from .posetgame import FinitePoset
from .semigroup import new_semigroup, parse_generators
from .statecodec import initial_state
from . import torsion as tz

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNKNOWN = 3

# published per-cell search horizons for the interval table
TABLE_SEARCH_BOUNDS = {
    (7, 3): 49, (8, 4): 43, (9, 5): 41, (10, 3): 40, (10, 5): 40, (10, 6): 47,
    (11, 5): 42, (11, 7): 43, (12, 3): 43, (12, 4): 50, (12, 6): 44,
    (12, 7): 36, (12, 8): 50, (13, 3): 39, (13, 5): 46, (13, 7): 37,
    (13, 9): 37, (14, 5): 42, (14, 7): 42, (14, 8): 49, (14, 9): 40,
    (14, 10): 50,
}
DEFAULT_SEARCH_BOUND = 40


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _semigroup(arg: str):
    return new_semigroup(parse_generators(arg))


def cmd_info(args) -> int:
    S = _semigroup(args.generators)
    rec = S.record()
    if args.json:
        _emit_json(rec)
        return EXIT_OK
    print(f"S = {S}")
    print(f"  minimal generators : {list(S.minimal_generators)}")
    print(f"  multiplicity       : {S.multiplicity}")
    print(f"  embedding dim      : {S.embedding_dimension}")
    print(f"  frobenius          : {S.frobenius}")
    print(f"  gaps ({S.gap_count:2d})          : {list(S.gaps)}")
    print(f"  pseudo-frobenius   : {list(S.pseudo_frobenius())}  (type {S.type()})")
    print(f"  symmetric          : {S.is_symmetric()}")
    print(f"  max embedding dim  : {S.is_max_embedding_dimension()}")
    if S.frobenius >= 1:
        print(f"  first-move bound   : {describe_bound(S)}")
    return EXIT_OK


def cmd_apery(args) -> int:
    S = _semigroup(args.generators)
    ap = S.apery(args.element)
    poset = FinitePoset.from_leq(ap.elements, S.leq)
    payload = {
        "base": ap.base,
        "elements": list(ap.elements),
        "maximal": list(ap.maximal_elements),
        "covers": [[lo, hi] for lo, hi in poset.cover_pairs()],
        "state": initial_state(S, args.element).render(S),
    }
    if args.plot:
        from .plots import hasse_figure, save_figure

        save_figure(hasse_figure(poset, title=f"board after {args.element} on {S}"),
                    args.plot)
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    print(f"Ap({S}, {args.element}) = {list(ap.elements)}")
    print(f"  maximal elements: {list(ap.maximal_elements)}")
    print(f"  encoded state   : {payload['state']}")
    if args.plot:
        print(f"  hasse diagram   : {args.plot}")
    return EXIT_OK


def cmd_classify(args) -> int:
    S = _semigroup(args.generators)
    report = classify(S)
    if args.json:
        _emit_json(report.record())
        return EXIT_OK
    if report.winner is None:
        print(f"{S}: unresolved by the family theorems; try `decide` or `search`")
    elif report.winner == "A" and report.winning_move is not None:
        print(f"{S}: A wins, first move {report.winning_move} ({report.theorem})")
    else:
        print(f"{S}: {report.winner} wins ({report.theorem})")
    return EXIT_OK


def cmd_search(args) -> int:
    S = _semigroup(args.generators)
    move = smallest_winning_move(S, args.max)
    if args.json:
        _emit_json({"bound": args.max, "smallestWinningMove": move})
        return EXIT_OK
    if move is None:
        print(f"{S}: no winning first move <= {args.max}")
    else:
        print(f"{S}: smallest winning first move: {move}")
    return EXIT_OK


def cmd_decide(args) -> int:
    S = _semigroup(args.generators)
    verdict = decide_winner(S, budget=args.budget)
    rec = verdict.record()
    rec["counters"] = {k: v for k, v in rec["counters"].items() if k != "elapsed"}
    if args.json:
        _emit_json(rec)
    else:
        cert = verdict.certificate
        if verdict.winner == "A":
            print(f"{S}: A wins, first move {cert['move']}")
        elif verdict.winner == "B":
            print(
                f"{S}: B wins (periodicity certificate: tables at {cert['x']} and "
                f"{cert['y']} repeat with window {cert['window']})"
            )
        else:
            print(f"{S}: unknown within budget (scanned to {cert['x_max']})")
    return EXIT_UNKNOWN if verdict.winner == "Unknown" else EXIT_OK


def _table_cell(a: int, k: int, bound_override=None) -> dict:
    t0 = time.perf_counter()
    S = new_semigroup(list(range(a, a + k + 1)))
    report = classify(S)
    if report.winner == "A":
        verdict, source = f"A{report.winning_move}", report.theorem
    elif report.winner == "B":
        verdict, source = "B", report.theorem
    else:
        bound = bound_override or TABLE_SEARCH_BOUNDS.get((a, k), DEFAULT_SEARCH_BOUND)
        move = smallest_winning_move(S, bound)
        if move is not None:
            verdict, source = f"A{move}", "search"
        else:
            verdict, source = f"B<={bound}", "search"
    return {
        "a": a,
        "k": k,
        "verdict": verdict,
        "source": source,
        "runtime": time.perf_counter() - t0,
    }


def cmd_table(args) -> int:
    cells = []
    for a in range(args.a_min, args.a_max + 1):
        for k in range(args.k_min, min(a - 1, args.k_max) + 1):
            cells.append(_table_cell(a, k, args.max))
    if args.plot:
        from .plots import save_figure, table_figure

        save_figure(table_figure(cells, title="interval semigroups: winner"), args.plot)
    if args.json:
        _emit_json([{k: v for k, v in c.items() if k != "runtime"} for c in cells])
        return EXIT_OK
    if args.csv:
        print("a,k,verdict,source")
        for c in cells:
            print(f"{c['a']},{c['k']},{c['verdict']},{c['source']}")
        return EXIT_OK
    ks = sorted({c["k"] for c in cells})
    print("a\\k " + "".join(f"{k:>8}" for k in ks))
    for a in range(args.a_min, args.a_max + 1):
        row = [c for c in cells if c["a"] == a]
        if not row:
            continue
        by_k = {c["k"]: c["verdict"] for c in row}
        print(f"{a:>3} " + "".join(f"{by_k.get(k, ''):>8}" for k in ks))
    total = sum(c["runtime"] for c in cells)
    print(f"({len(cells)} cells in {total:.1f}s)")
    return EXIT_OK


def cmd_conjecture(args) -> int:
    rows = []
    for a in range(max(args.a_min, args.c + 1), args.a_max + 1):
        gens = list(range(a, 2 * a - args.c + 1))
        S = new_semigroup(gens)
        report = classify(S)
        if report.winner is not None:
            winner, source = report.winner, report.theorem
        else:
            move = smallest_winning_move(S, args.max)
            if move is not None:
                winner, source = "A", "search"
            else:
                winner, source = f"B<={args.max}", "search"
        predicted = "A" if (a % 2 == 1 and args.c % 2 == 1) else "B"
        rows.append(
            {
                "a": a,
                "winner": winner,
                "source": source,
                "predicted": predicted,
                "counterexampleCandidate": winner == "A" and predicted == "B",
            }
        )
    if args.json:
        _emit_json({"c": args.c, "rows": rows})
        return EXIT_OK
    print(f"<a,...,2a-{args.c}>: winner by a (prediction: A iff a and c odd)")
    for r in rows:
        flag = "  <- counterexample candidate" if r["counterexampleCandidate"] else ""
        print(f"  a={r['a']:>3}: {r['winner']:>7} ({r['source']}){flag}")
    return EXIT_OK


def _torsion_from_args(args):
    T = tz.parse_group_spec(args.group)
    gens = tz.parse_torsion_generators(args.generators, T)
    return T, gens


def cmd_torsion_info(args) -> int:
    T, gens = _torsion_from_args(args)
    nice = tz.is_nicely_generated(T, gens)
    payload = {
        "group": args.group,
        "generators": args.generators,
        "nicelyGenerated": nice.value,
        "witness": list(nice.witness) if nice.witness else None,
    }
    S = None
    if not isinstance(T, tz.FiniteMonoid) or T.is_group:
        S = tz.new_torsion(T, gens)
        payload.update(
            {
                "frobeniusBound": S.frobenius_bound,
                "recipeBound": S.recipe_bound,
                "gaps": [[a, T.label(t)] for a, t in S.gaps],
                "ordered": S.is_ordered(),
            }
        )
        if getattr(T, "abelian", False) and S.is_ordered():
            payload["symmetric"] = tz.is_symmetric_torsion(S)
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    print(f"N x {args.group} semigroup generated by {args.generators}")
    for key in ("nicelyGenerated", "frobeniusBound", "recipeBound", "ordered",
                "symmetric"):
        if key in payload and payload[key] is not None:
            print(f"  {key}: {payload[key]}")
    if S is not None:
        print(f"  gaps: {[S.render(g) for g in S.gaps]}")
    return EXIT_OK


def cmd_torsion_search(args) -> int:
    T, gens = _torsion_from_args(args)
    S = tz.new_torsion(T, gens)
    move = tz.smallest_winning_move_torsion(S, args.max)
    bound = tz.theoretical_bound_torsion(S) if S.frobenius_bound >= 1 else None
    payload = {
        "bound": args.max,
        "smallestWinningMove": list(move) if move else None,
        "theoreticalBound": str(bound) if bound is not None else None,
    }
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    if move is None:
        print(f"no winning first move with coordinate <= {args.max}")
    else:
        print(f"smallest winning first move: {S.render(move)}")
    if bound is not None:
        print(f"first-move coordinate bound: {bound}")
    return EXIT_OK


def cmd_torsion_witness(args) -> int:
    T = tz.symmetric_group_3()
    names = {n: i for i, n in enumerate(T.names)}
    report = tz.noncommutative_witness(T, names["(12)"], names["(123)"])
    payload = {
        "group": "S3",
        "deepMaximalCount": report.deep_maximal_count,
        "shallowMaximalCount": report.shallow_maximal_count,
        "separated": report.separated(),
    }
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    print("non-commutative ambient S3: maximal-element count after one move")
    print(f"  move (2,id) : {report.deep_maximal_count} maximal elements")
    print(f"  move (1,(12)): {report.shallow_maximal_count} maximal elements")
    print("  the count depends on the move, unlike every abelian ambient")
    return EXIT_OK


def cmd_play(args) -> int:
    from .service import Session
    from .families import classify as _classify

    S = _semigroup(args.generators)
    report = _classify(S)
    strategy = report.strategy
    if strategy is not None and strategy.side != args.engine:
        strategy = None
    sess = Session(
        id="local",
        generators=list(S.generators),
        S=S,
        engine_side=args.engine,
        strategy=strategy,
        opening_hint=report.winning_move if report.winner == "A" else None,
        certificate=report.theorem or "search",
    )
    print(f"chomp on {S} - you lose by taking 0 (engine plays {args.engine})")
    while sess.engine_turn():
        mv = sess.engine_move()
        sess.apply("engine", mv)
        print(f"engine plays {mv}")
    while sess.status == "ongoing":
        legal = sess.legal_moves()
        print(f"board: {legal}")
        try:
            raw = input("your move> ").strip()
        except EOFError:
            print("bye")
            return EXIT_OK
        if not raw.lstrip("-").isdigit():
            print("enter an element")
            continue
        mv = int(raw)
        if mv not in legal and not (sess.position is None and S.contains(mv) and mv > 0):
            print("illegal move")
            continue
        sess.apply("human", mv)
        while sess.engine_turn():
            emv = sess.engine_move()
            sess.apply("engine", emv)
            print(f"engine plays {emv}")
    print(f"game over: {sess.loser} took 0 and loses")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve

    print(f"serving on http://{args.host}:{args.port}")
    serve(port=args.port, host=args.host)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semichomp",
        description="chomp on numerical semigroup posets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gens=True):
        if gens:
            p.add_argument("generators", help='comma-separated, e.g. "6,7,11"')
        p.add_argument("--json", action="store_true", help="machine output")

    p = sub.add_parser("info", help="semigroup invariants")
    common(p)
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("apery", help="board after a first move")
    common(p)
    p.add_argument("element", type=int)
    p.add_argument("--plot", metavar="FILE", help="render the Hasse diagram")
    p.set_defaults(fn=cmd_apery)

    p = sub.add_parser("classify", help="winner by the family theorems")
    common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("search", help="smallest winning first move")
    common(p)
    p.add_argument("--max", type=int, default=DEFAULT_SEARCH_BOUND)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("decide", help="full winner decision")
    common(p)
    p.add_argument("--budget", type=int, default=10**8)
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("table", help="winner grid for interval semigroups")
    p.add_argument("--a-min", type=int, default=2)
    p.add_argument("--a-max", type=int, default=10)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=13)
    p.add_argument("--max", type=int, default=None,
                   help="override per-cell search bound")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--plot", metavar="FILE")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("conjecture", help="scan <a..2a-c> winners")
    p.add_argument("c", type=int)
    p.add_argument("--a-min", type=int, default=4)
    p.add_argument("--a-max", type=int, default=12)
    p.add_argument("--max", type=int, default=DEFAULT_SEARCH_BOUND)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_conjecture)

    p = sub.add_parser("torsion-info", help="N x T semigroup invariants")
    p.add_argument("group", help='"Z2", "Z2xZ4", "S3", or "table:FILE"')
    p.add_argument("generators", help='pairs like "(2,0) (3,1)"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_torsion_info)

    p = sub.add_parser("torsion-search", help="bounded first-move search in N x T")
    p.add_argument("group")
    p.add_argument("generators")
    p.add_argument("--max", type=int, default=16)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_torsion_search)

    p = sub.add_parser("torsion-witness",
                       help="non-commutative ambient breaks move invariance")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_torsion_witness)

    p = sub.add_parser("play", help="interactive game in the terminal")
    p.add_argument("generators")
    p.add_argument("--engine", choices=["A", "B", "none"], default="B")
    p.set_defaults(fn=cmd_play)

    p = sub.add_parser("serve", help="JSON game service")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InvalidInputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except SemichompError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
