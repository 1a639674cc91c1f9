"""The trilinear symbol [a,b,c]: minimally ramified dihedral witnesses, local parts,
and the assembled value, together with its symmetry checks.

A witness for the pair (a, b) is a conic solution (x, y, z) twisted by some
t in {1, -1, 2, -2} so that beta = t(x + y*sqrt a) generates an extension of
E = Q(sqrt a, sqrt b) with the least possible ramification: unramified at all odd
primes not dividing both discriminants (automatic for primitive solutions),
unramified over 2 whenever possible, and of dyadic conductor 2 in the one case
where ramification over 2 cannot be avoided.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import permutations
from math import gcd

from .arith import (
    INFINITY,
    discriminant,
    hilbert,
    prime_divisors,
    signed_prime_decomposition,
    square_class,
)
from .conic import ConicSolution, is_solvable, solve
from .errors import (
    DegenerateSquareClass,
    InvalidTriple,
    NotSolvable,
    OddValuation,
    PartUndefined,
    RamificationAssertFailed,
    TrivialClass,
)
from .gf2 import in_span
from .quadfield import (
    SPLIT,
    QuadElt,
    _frac_mod,
    _split_embedding,
    conductor_two_at_two,
    primes_above,
    residue_symbol,
    unramified_at_two,
)

A_SIDE = "A"
B_SIDE = "B"

UNRAMIFIED_AT_2 = "unramified_at_2"
TWO_MINIMAL = "two_minimal"
ODD_ONLY = "odd_only"


@dataclass(frozen=True)
class Violation:
    kind: str  # "hilbert" or "common_factor"
    slot: str | None  # which argument pair, e.g. "a,c"
    pair: tuple | None
    place: object

    def __str__(self):
        if self.kind == "hilbert":
            return f"hilbert symbol ({self.slot}) = {self.pair} fails at {self.place}"
        return f"all three discriminants share the prime {self.place}"


@dataclass(frozen=True)
class SymbolTriple:
    a: int
    b: int
    c: int

    def violations(self) -> list[Violation]:
        return validate_triple(self.a, self.b, self.c)


def validate_triple(a, b, c) -> list[Violation]:
    """Empty list iff (a, b, c) admits a symbol; otherwise every failing condition."""
    a, b, c = square_class(a), square_class(b), square_class(c)
    out = []
    places = [INFINITY, 2] + sorted(
        {p for n in (a, b, c) for p in prime_divisors(n) if p != 2}
    )
    for slot, u, w in (("a,b", a, b), ("a,c", a, c), ("b,c", b, c)):
        for v in places:
            if hilbert(u, w, v) != 1:
                out.append(Violation("hilbert", slot, (u, w), v))
    discs = [discriminant(n) for n in (a, b, c) if n != 1]
    if len(discs) == 3:
        shared = [p for p in prime_divisors(discs[0]) if discs[1] % p == 0 and discs[2] % p == 0]
        for p in shared:
            out.append(Violation("common_factor", None, None, p))
    return out


def is_valid_triple(a, b, c) -> bool:
    """Short-circuit form of validate_triple, for rejection-sampling sweeps."""
    a, b, c = square_class(a), square_class(b), square_class(c)
    if 1 not in (a, b, c):
        da, db, dc = discriminant(a), discriminant(b), discriminant(c)
        if gcd(gcd(da, db), dc) > 1:
            return False
    places = [INFINITY, 2] + sorted(
        {p for n in (a, b, c) for p in prime_divisors(n) if p != 2}
    )
    for u, w in ((a, b), (a, c), (b, c)):
        for v in places:
            if hilbert(u, w, v) != 1:
                return False
    return True


@dataclass(frozen=True)
class TwistingGroup:
    """Square classes whose twists preserve minimal ramification of F over (a, b)."""

    a: int
    b: int
    generators: tuple[int, ...]

    def contains(self, t: int) -> bool:
        t = square_class(t)
        if t == 1:
            return True
        primes = sorted({p for g in self.generators + (t,) for p in prime_divisors(abs(g))})
        index = {p: i + 1 for i, p in enumerate(primes)}  # bit 0 is the sign

        def vec(g):
            v = 1 if g < 0 else 0
            for p in prime_divisors(abs(g)):
                v |= 1 << index[p]
            return v

        return in_span(vec(t), [vec(g) for g in self.generators], len(primes) + 1)

    def sample(self) -> list[int]:
        """A few nontrivial members: the generators and their pairwise products."""
        out = []
        gens = self.generators
        for g in gens:
            out.append(g)
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                out.append(square_class(gens[i] * gens[j]))
        seen, uniq = set(), []
        for t in out:
            if t != 1 and t not in seen:
                seen.add(t)
                uniq.append(t)
        return uniq


def twisting_group(a: int, b: int) -> TwistingGroup:
    a, b = square_class(a), square_class(b)
    if a == 1 or b == 1:
        raise TrivialClass("twisting group needs nontrivial classes")
    gens = []
    for p in sorted(set(prime_divisors(a) + prime_divisors(b))):
        if p != 2:
            gens.append(p if p % 4 == 1 else -p)
    da, db = discriminant(a), discriminant(b)
    for d in (da, db):
        two_part = signed_prime_decomposition(d).two_part
        if two_part != 1:
            gens.append(square_class(two_part))
    if da % 2 == 0 and db % 2 == 0:
        gens.extend([-1, 2])
    seen, uniq = set(), []
    for g in gens:
        if g not in seen:
            seen.add(g)
            uniq.append(g)
    return TwistingGroup(a, b, tuple(uniq))


@dataclass(frozen=True)
class MinRamWitness:
    a: int
    b: int
    beta: QuadElt  # over Q(sqrt a), norm in b * squares
    alpha: QuadElt  # over Q(sqrt b), norm in a * squares
    twist: int
    solution: ConicSolution
    ram_case: str


def _ram_case(a: int, b: int) -> tuple[str, str | None]:
    """(case, side) where side names the field over which the dyadic test runs."""
    da, db = discriminant(a), discriminant(b)
    both_odd = da % 2 == 1 and db % 2 == 1
    if both_odd:
        return UNRAMIFIED_AT_2, "a"
    if da % 8 == 1:  # db even
        return UNRAMIFIED_AT_2, "b"
    if db % 8 == 1:  # da even
        return UNRAMIFIED_AT_2, "a"
    if {da % 8, db % 8} == {4, 5}:
        return TWO_MINIMAL, "a" if da % 8 == 4 else "b"
    return ODD_ONLY, None


def _dyadic_ok(elt: QuadElt, case: str) -> bool:
    if case == UNRAMIFIED_AT_2:
        return unramified_at_two(elt)
    return conductor_two_at_two(elt)


def witness_from_solution(a: int, b: int, sol: ConicSolution) -> MinRamWitness:
    """Choose the twist in {1, -1, 2, -2} that makes F minimally ramified."""
    beta0 = QuadElt(sol.x, sol.y, a)
    alpha0 = QuadElt(2 * sol.x, 2 * sol.z, b)
    case, side = _ram_case(a, b)
    twists = (1,) if case == ODD_ONLY else (1, -1, 2, -2)
    for t in twists:
        if case != ODD_ONLY:
            elt = beta0 * t if side == "a" else alpha0 * t
            if not _dyadic_ok(elt, case):
                continue
        return MinRamWitness(a, b, beta0 * t, alpha0 * t, t, sol, case)
    raise RamificationAssertFailed(
        f"no twist in {{1,-1,2,-2}} normalizes ({a}, {b}) from {sol}"
    )


@lru_cache(maxsize=None)
def minimally_ramified_witness(a: int, b: int) -> MinRamWitness:
    a, b = square_class(a), square_class(b)
    if a == 1 or b == 1:
        raise TrivialClass("witness needs nontrivial classes")
    if a == b:
        raise DegenerateSquareClass("ab is a square; no dihedral extension")
    if not is_solvable(a, b):
        raise NotSolvable(f"({a}, {b}) fails the local-global test")
    return witness_from_solution(a, b, solve(a, b))


def twist_witness(w: MinRamWitness, t: int) -> MinRamWitness:
    """Twist a witness by t in T_{a,b}; the result is re-checked minimally ramified."""
    t = square_class(t)
    beta, alpha = w.beta * t, w.alpha * t
    case, side = _ram_case(w.a, w.b)
    if case != ODD_ONLY:
        elt = beta if side == "a" else alpha
        if not _dyadic_ok(elt, case):
            raise RamificationAssertFailed(f"twist {t} is not in the twisting group")
    return replace(w, beta=beta, alpha=alpha, twist=square_class(w.twist * t))


def _odd_part(w: MinRamWitness, p: int) -> tuple[int, str]:
    # prefer the side where p splits: the B side when p | a, the A side otherwise
    if w.a % p == 0:
        side, elt, radicand = B_SIDE, w.alpha, w.b
    else:
        side, elt, radicand = A_SIDE, w.beta, w.a
    kind, fraks = primes_above(p, radicand)
    if kind != SPLIT:
        raise RamificationAssertFailed(
            f"{p} does not split in the evaluation field Q(sqrt {radicand})"
        )
    for frak in fraks:
        try:
            return residue_symbol(elt, frak), side
        except OddValuation:
            continue
    raise RamificationAssertFailed(f"odd valuation over {p} at both conjugate primes")


def _dyadic_part(w: MinRamWitness) -> tuple[int, str]:
    # relabel to the side whose radicand is 1 mod 8, where 2 splits
    if w.a % 8 == 1:
        side, elt, radicand = A_SIDE, w.beta, w.a
    elif w.b % 8 == 1:
        side, elt, radicand = B_SIDE, w.alpha, w.b
    else:
        raise RamificationAssertFailed("no side with radicand 1 mod 8 at p = 2")
    _, fraks = primes_above(2, radicand)
    values = set()
    for frak in fraks:
        v, unit = _split_embedding(elt, frak, unit_digits=3)
        if v % 2:
            continue
        u = _frac_mod(unit, 8)
        if u % 4 != 1:
            continue  # the square root ramifies at this prime; use the conjugate
        values.add(1 if u == 1 else -1)
    if len(values) != 1:
        raise RamificationAssertFailed(
            f"dyadic part undetermined for ({w.a}, {w.b}): units {values}"
        )
    return values.pop(), side


def p_part(w: MinRamWitness, c: int, v) -> int:
    """Local factor of [a, b, c] at the place v, computed from the witness w."""
    c = square_class(c)
    if v is INFINITY:
        if c > 0:
            return 1
        # c < 0 forces a, b > 0; beta is totally positive or totally negative
        if w.a < 0 or w.beta.norm() <= 0:
            raise RamificationAssertFailed("sign part needs a totally real witness")
        return 1 if w.beta.x > 0 else -1
    p = int(v)
    if c % p != 0:
        raise PartUndefined(f"{p} does not divide {c}")
    if p == 2:
        return _dyadic_part(w)[0]
    return _odd_part(w, p)[0]


@dataclass(frozen=True)
class SymbolTrace:
    a: int
    b: int
    c: int
    value: int
    parts: dict
    sides: dict
    witness: MinRamWitness | None

    def __int__(self):
        return self.value


def _symbol_from_witness(w: MinRamWitness, c: int) -> SymbolTrace:
    parts, sides = {}, {}
    for p in prime_divisors(c):
        if p == 2:
            parts[p], sides[p] = _dyadic_part(w)
        else:
            parts[p], sides[p] = _odd_part(w, p)
    if c < 0:
        parts[INFINITY] = p_part(w, c, INFINITY)
        sides[INFINITY] = A_SIDE
    value = 1
    for s in parts.values():
        value *= s
    return SymbolTrace(w.a, w.b, c, value, parts, sides, w)


def redei_symbol(a, b, c) -> SymbolTrace:
    """[a, b, c] with its local parts; trilinear and symmetric for valid triples."""
    a, b, c = square_class(a), square_class(b), square_class(c)
    if 1 in (a, b, c):
        # the trivial-argument rule applies regardless of the remaining pair
        return SymbolTrace(a, b, c, 1, {}, {}, None)
    violations = validate_triple(a, b, c)
    if violations:
        raise InvalidTriple(violations)
    if a == b:
        raise DegenerateSquareClass(f"[{a}, {b}, {c}] has ab square")
    return _symbol_from_witness(minimally_ramified_witness(a, b), c)


@dataclass(frozen=True)
class ReciprocityReport:
    triple: tuple[int, int, int]
    values: dict
    consistent: bool


def verify_reciprocity(a, b, c) -> ReciprocityReport:
    """Evaluate all orderings of (a, b, c) independently and compare."""
    a, b, c = square_class(a), square_class(b), square_class(c)
    if 1 in (a, b, c) or a == b or a == c or b == c:
        raise DegenerateSquareClass(f"({a}, {b}, {c}) has a degenerate pair")
    values = {}
    for perm in permutations((a, b, c)):
        values[perm] = redei_symbol(*perm).value
    return ReciprocityReport((a, b, c), values, len(set(values.values())) == 1)
