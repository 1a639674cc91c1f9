"""Command-line surface: symbol evaluation, rank computation, verification sweeps.

JSON output (--json) is versioned ("schema": 1) and byte-deterministic: identical
invocations produce identical bytes, so timing is only emitted on request
(--timing) or in the human-readable text. Exit codes: 0 ok, 1 verification
counterexample, 2 invalid triple, 3 degenerate arguments, 4 factorization limit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .arith import INFINITY, hilbert_product, square_class
from .conic import enumerate_solutions
from .errors import (
    DegenerateSquareClass,
    FactorLimitExceeded,
    InvalidTriple,
    RedeiError,
)
from .oracle import narrow_ranks
from .redeimatrix import fundamental_discriminant, governing_r4_check, ranks
from .symbol import (
    _symbol_from_witness,
    minimally_ramified_witness,
    redei_symbol,
    twist_witness,
    twisting_group,
    validate_triple,
    verify_reciprocity,
    witness_from_solution,
)

SCHEMA = 1

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INVALID = 2
EXIT_DEGENERATE = 3
EXIT_FACTOR_LIMIT = 4


def _emit(record: dict, as_json: bool, text: str):
    if as_json:
        print(json.dumps(record, sort_keys=True, separators=(",", ":")))
    else:
        print(text)


def _place_key(v) -> str:
    return "infinity" if v is INFINITY else str(v)


def cmd_symbol(args) -> int:
    t0 = time.monotonic()
    try:
        trace = redei_symbol(args.a, args.b, args.c)
    except InvalidTriple as exc:
        for v in exc.violations:
            print(f"invalid triple: {v}", file=sys.stderr)
        return EXIT_INVALID
    except DegenerateSquareClass as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    record = {
        "schema": SCHEMA,
        "command": "symbol",
        "inputs": {"a": args.a, "b": args.b, "c": args.c},
        "canonical": {"a": trace.a, "b": trace.b, "c": trace.c},
        "result": trace.value,
    }
    lines = [f"{trace.value:+d}"]
    if args.trace:
        record["trace"] = {
            "parts": {_place_key(v): s for v, s in trace.parts.items()},
            "sides": {_place_key(v): s for v, s in trace.sides.items()},
        }
        if trace.witness is not None:
            w = trace.witness
            record["trace"]["solution"] = [w.solution.x, w.solution.y, w.solution.z]
            record["trace"]["twist"] = w.twist
            record["trace"]["ram_case"] = w.ram_case
            lines.append(
                f"witness: solution {(w.solution.x, w.solution.y, w.solution.z)}"
                f" twist {w.twist} case {w.ram_case}"
            )
        for v in sorted(trace.parts, key=_place_key):
            lines.append(f"part at {_place_key(v)}: {trace.parts[v]:+d}")
    if args.timing:
        record["timing_ms"] = round(1000 * (time.monotonic() - t0), 3)
    _emit(record, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_ranks(args) -> int:
    t0 = time.monotonic()
    d = square_class(args.d)
    D = fundamental_discriminant(d)
    r = ranks(d)
    record = {
        "schema": SCHEMA,
        "command": "ranks",
        "inputs": {"d": args.d},
        "canonical": {"d": d, "D": D},
        "result": {"r2": r[0], "r4": r[1], "r8": r[2]},
    }
    text = f"D = {D}: r2 = {r[0]}, r4 = {r[1]}, r8 = {r[2]}"
    if args.oracle:
        o = narrow_ranks(D)
        record["oracle"] = {"r2": o[0], "r4": o[1], "r8": o[2], "match": o == r}
        text += f"\noracle: r2 = {o[0]}, r4 = {o[1]}, r8 = {o[2]}"
        text += " (match)" if o == r else " (MISMATCH)"
    if args.timing:
        record["timing_ms"] = round(1000 * (time.monotonic() - t0), 3)
    _emit(record, args.json, text)
    if args.oracle and not record["oracle"]["match"]:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


# --- verification sweeps ----------------------------------------------------


def _squarefree_values(bound: int) -> list[int]:
    out = []
    for n in range(2, bound + 1):
        if square_class(n) == n:
            out.extend([n, -n])
    out.append(-1)
    return sorted(out, key=abs)


def _reciprocity_item(triple) -> list:
    a, b, c = triple
    if validate_triple(a, b, c):
        return []
    rep = verify_reciprocity(a, b, c)
    if not rep.consistent:
        return [(a, b, c, sorted(rep.values.items()))]
    return []


def _sweep_reciprocity(max_entry: int, jobs: int, seed: int):
    values = _squarefree_values(max_entry)
    work = []
    n = len(values)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                work.append((values[i], values[j], values[k]))
    checked = 0
    violations = []
    for out in _map_jobs(_reciprocity_item, work, jobs):
        if out:
            violations.extend(out)
        checked += 1
    return checked, sorted(violations)


def _oracle_item(D: int) -> list:
    from .redeimatrix import r2 as mr2, r4 as mr4, r8 as mr8

    mine = (mr2(D), mr4(D), mr8(D))
    truth = narrow_ranks(D)
    if mine != truth:
        return [(D, mine, truth)]
    return []


def _sweep_oracle(bound: int, jobs: int, seed: int):
    from .arith import is_fundamental_discriminant

    work = [D for D in range(-bound, bound + 1) if is_fundamental_discriminant(D)]
    checked, violations = 0, []
    for out in _map_jobs(_oracle_item, work, jobs):
        violations.extend(out)
        checked += 1
    return checked, sorted(violations)


def _product_item(pair) -> list:
    a, b = pair
    try:
        hilbert_product(a, b)
        return []
    except RedeiError:
        return [(a, b)]


def _sweep_product(count: int, jobs: int, seed: int):
    rng = random.Random(seed)
    work = []
    while len(work) < count:
        a = rng.randint(-(10**6), 10**6)
        b = rng.randint(-(10**6), 10**6)
        if a and b:
            work.append((a, b))
    checked, violations = 0, []
    for out in _map_jobs(_product_item, work, jobs):
        violations.extend(out)
        checked += 1
    return checked, sorted(violations)


def _random_valid_triples(count: int, seed: int, entry_bound: int = 60):
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        a, b, c = (square_class(rng.randint(2, entry_bound) * rng.choice((1, -1))) for _ in range(3))
        if len({a, b, c}) != 3 or 1 in (a, b, c):
            continue
        if validate_triple(a, b, c):
            continue
        found.append((a, b, c))
    return found


def _twist_item(triple) -> list:
    a, b, c = triple
    base = redei_symbol(a, b, c).value
    w = minimally_ramified_witness(a, b)
    alternates = []
    for sol in enumerate_solutions(a, b, 3)[1:]:
        alternates.append(witness_from_solution(a, b, sol))
    for t in twisting_group(a, b).sample()[:2]:
        alternates.append(twist_witness(w, t))
    bad = []
    for alt in alternates:
        value = _symbol_from_witness(alt, c).value
        if value != base:
            bad.append((a, b, c, base, value))
    return bad


def _sweep_twists(count: int, jobs: int, seed: int):
    work = _random_valid_triples(count, seed)
    checked, violations = 0, []
    for out in _map_jobs(_twist_item, work, jobs):
        violations.extend(out)
        checked += 1
    return checked, sorted(violations)


def _sweep_governing(bound: int, jobs: int, seed: int):
    checked, violations = 0, []
    for d in (-1, 2, -2, 3, -3, 5):
        violations.extend(governing_r4_check(d, bound).violations)
        checked += 1
    return checked, sorted(violations)


_SUITES = {
    "reciprocity": (_sweep_reciprocity, 30),
    "oracle": (_sweep_oracle, 2000),
    "product-formula": (_sweep_product, 1000),
    "twist-independence": (_sweep_twists, 50),
    "governing": (_sweep_governing, 2000),
}


def _map_jobs(fn, work, jobs):
    if jobs <= 1:
        for item in work:
            yield fn(item)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, work, chunksize=max(1, len(work) // (8 * jobs)))


def cmd_verify(args) -> int:
    t0 = time.monotonic()
    sweep, default_max = _SUITES[args.suite]
    n = args.max if args.max is not None else default_max
    checked, violations = sweep(n, args.jobs, args.seed)
    record = {
        "schema": SCHEMA,
        "command": "verify",
        "inputs": {"suite": args.suite, "max": n, "seed": args.seed},
        "checked": checked,
        "violations": [list(map(str, v)) if isinstance(v, tuple) else v for v in violations],
        "result": "ok" if not violations else "fail",
    }
    if args.timing:
        record["timing_ms"] = round(1000 * (time.monotonic() - t0), 3)
    text = f"{args.suite}: {checked} items checked, {len(violations)} violations"
    if violations:
        text += f"\nfirst counterexample: {violations[0]}"
    _emit(record, args.json, text)
    return EXIT_COUNTEREXAMPLE if violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="redei",
        description="Redei symbols [a,b,c] and 2/4/8-ranks of narrow quadratic class groups.",
        epilog="Negative arguments parse directly (e.g. `redei symbol -20 41 5`); "
        "use `--` before them if an option ambiguity ever arises. "
        "REDEI_FACTOR_BOUND overrides the trial-division bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_symbol = sub.add_parser("symbol", help="evaluate the symbol [a, b, c]")
    p_symbol.add_argument("a", type=int)
    p_symbol.add_argument("b", type=int)
    p_symbol.add_argument("c", type=int)
    p_symbol.add_argument("--trace", action="store_true", help="print local parts and witness")
    p_symbol.add_argument("--json", action="store_true")
    p_symbol.add_argument("--timing", action="store_true")
    p_symbol.set_defaults(fn=cmd_symbol)

    p_ranks = sub.add_parser("ranks", help="(r2, r4, r8) for squarefree d")
    p_ranks.add_argument("d", type=int)
    p_ranks.add_argument("--oracle", action="store_true", help="cross-check with the form oracle")
    p_ranks.add_argument("--json", action="store_true")
    p_ranks.add_argument("--timing", action="store_true")
    p_ranks.set_defaults(fn=cmd_ranks)

    p_verify = sub.add_parser("verify", help="run a verification sweep")
    p_verify.add_argument("suite", choices=sorted(_SUITES))
    p_verify.add_argument("--max", type=int, default=None, help="sweep size / bound")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("--timing", action="store_true")
    p_verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FactorLimitExceeded as exc:
        print(f"factorization limit: {exc}", file=sys.stderr)
        return EXIT_FACTOR_LIMIT
    except DegenerateSquareClass as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except InvalidTriple as exc:
        for v in exc.violations:
            print(f"invalid triple: {v}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
