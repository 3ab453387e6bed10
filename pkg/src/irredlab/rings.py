"""Coefficient rings Z, Z/n, finite products of Z/n_i, and their principal ideals.

Conventions.  A ring is a tuple of factor moduli; modulus 0 means Z itself, so
a factor with modulus m carries divisor arithmetic "mod m" uniformly (gcd with
0 is the identity).  Every ideal is principal and stored as one canonical
nonnegative generator per factor: for Z an integer g >= 0 (g = 0 the zero
ideal, g = 1 the whole ring), for Z/m a divisor of m (m itself is the zero
ideal, 1 the whole ring).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product as iproduct
from math import gcd, lcm

from .arith import distinct_primes, divides, divisors, is_prime, radical_int
from .errors import DomainError, UsageError

IDEAL_PREDICATES = (
    "prime",
    "irreducible",
    "strongly_irreducible",
    "two_irreducible",
    "strongly_two_irreducible",
    "two_absorbing",
)
# predicates the source definitions state for proper ideals only
_PROPER_ONLY = frozenset(
    {"prime", "strongly_irreducible", "strongly_two_irreducible", "two_absorbing"}
)

IDEAL_OPS = ("sum", "intersect", "product", "colon")


@dataclass(frozen=True)
class Ring:
    """Z, Z/n, or a product Z/n_1 x ... x Z/n_k given by one modulus per factor."""

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.moduli:
            raise DomainError("ring needs at least one factor")
        if len(self.moduli) == 1:
            m = self.moduli[0]
            if m != 0 and m < 2:
                raise DomainError(f"residue modulus must be >= 2, got {m}")
        elif any(m < 2 for m in self.moduli):
            raise DomainError("product ring factors must be residue rings Z/m, m >= 2")

    @classmethod
    def integers(cls) -> "Ring":
        return cls((0,))

    @classmethod
    def residue(cls, n: int) -> "Ring":
        if n < 2:
            raise DomainError(f"residue modulus must be >= 2, got {n}")
        return cls((n,))

    @classmethod
    def product(cls, *moduli: int) -> "Ring":
        if len(moduli) < 2:
            raise DomainError("a product ring needs at least two factors")
        return cls(tuple(moduli))

    @property
    def is_integers(self) -> bool:
        return self.moduli == (0,)

    @property
    def is_product(self) -> bool:
        return len(self.moduli) > 1

    @property
    def is_finite(self) -> bool:
        return not self.is_integers

    @property
    def kind(self) -> str:
        if self.is_integers:
            return "IntegerRing"
        return "ProductRing" if self.is_product else "ResidueRing"

    def nfactors(self) -> int:
        return len(self.moduli)

    def canonical_gen(self, factor: int, g: int) -> int:
        m = self.moduli[factor]
        return abs(g) if m == 0 else gcd(g, m)

    def ideal(self, *gens: int) -> "Ideal":
        if len(gens) != len(self.moduli):
            raise DomainError(
                f"expected {len(self.moduli)} generator(s), got {len(gens)}"
            )
        return Ideal(self, tuple(gens))

    def zero_ideal(self) -> "Ideal":
        return self.ideal(*self.moduli)

    def unit_ideal(self) -> "Ideal":
        return self.ideal(*(1 for _ in self.moduli))

    def ideals(self) -> list["Ideal"]:
        """All ideals, for finite rings only; ordered by generator tuples."""
        if not self.is_finite:
            raise DomainError("Z has infinitely many ideals")
        return [
            Ideal(self, gens) for gens in iproduct(*(divisors(m) for m in self.moduli))
        ]

    def __str__(self) -> str:
        if self.is_integers:
            return "Z"
        return "*".join(f"Z{m}" for m in self.moduli)


@dataclass(frozen=True)
class Ideal:
    """A principal ideal, one canonical generator per ring factor."""

    ring: Ring
    gens: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.gens) != self.ring.nfactors():
            raise DomainError("generator count does not match ring factor count")
        canon = tuple(
            self.ring.canonical_gen(i, g) for i, g in enumerate(self.gens)
        )
        object.__setattr__(self, "gens", canon)

    @property
    def is_whole(self) -> bool:
        return all(g == 1 for g in self.gens)

    @property
    def is_zero(self) -> bool:
        return all(g == m for g, m in zip(self.gens, self.ring.moduli))

    def issubset(self, other: "Ideal") -> bool:
        self._check_ring(other)
        return all(divides(h, g) for g, h in zip(self.gens, other.gens))

    def contains_scalar(self, r: int | tuple[int, ...]) -> bool:
        r = _as_scalar_tuple(self.ring, r)
        return all(divides(g, ri) for g, ri in zip(self.gens, r))

    def sum(self, other: "Ideal") -> "Ideal":
        self._check_ring(other)
        return Ideal(self.ring, tuple(gcd(a, b) for a, b in zip(self.gens, other.gens)))

    def intersect(self, other: "Ideal") -> "Ideal":
        self._check_ring(other)
        return Ideal(self.ring, tuple(lcm(a, b) for a, b in zip(self.gens, other.gens)))

    def product(self, other: "Ideal") -> "Ideal":
        self._check_ring(other)
        return Ideal(self.ring, tuple(a * b for a, b in zip(self.gens, other.gens)))

    def colon(self, other: "Ideal") -> "Ideal":
        """(self : other) = {r : r*other is inside self}."""
        self._check_ring(other)
        out = []
        for a, b in zip(self.gens, other.gens):
            g = gcd(a, b)
            out.append(1 if g == 0 else a // g)
        return Ideal(self.ring, tuple(out))

    def radical(self) -> "Ideal":
        return Ideal(self.ring, tuple(radical_int(g) for g in self.gens))

    def _check_ring(self, other: "Ideal") -> None:
        if self.ring != other.ring:
            raise DomainError(f"ideal ring mismatch: {self.ring} vs {other.ring}")

    def __str__(self) -> str:
        if self.ring.is_integers:
            return f"{self.gens[0]}Z"
        return "(" + ", ".join(str(g) for g in self.gens) + f") of {self.ring}"


def _as_scalar_tuple(ring: Ring, r: int | tuple[int, ...]) -> tuple[int, ...]:
    if isinstance(r, int):
        return tuple(r for _ in ring.moduli)
    if len(r) != ring.nfactors():
        raise DomainError("scalar tuple length does not match ring factor count")
    return tuple(r)


def ideal_combine(lhs: Ideal, rhs: Ideal, op: str) -> Ideal:
    if op == "sum":
        return lhs.sum(rhs)
    if op == "intersect":
        return lhs.intersect(rhs)
    if op == "product":
        return lhs.product(rhs)
    if op == "colon":
        return lhs.colon(rhs)
    raise UsageError(f"unknown ideal op {op!r}; expected one of {IDEAL_OPS}")


def ideal_radical(ideal: Ideal) -> Ideal:
    return ideal.radical()


# ---------------------------------------------------------------------------
# classification


class _DivisorLattice:
    """Finite quantification domain for ideal predicates.

    Each factor is the divisor lattice of a cap m > 0: generators range over
    divisors of m, meet is lcm, join is gcd, and containment is reverse
    divisibility.  For a finite ring the caps are the moduli, so this is the
    full ideal lattice.  For a nonzero ideal gZ of Z the single cap is g:
    restricting quantifiers to divisors of g is sound because capping each
    prime valuation of an arbitrary generator at its valuation in g preserves
    both the hypotheses and the conclusions of every predicate below (all are
    divisibility statements against divisors of g, and min(v, v_g) sums behave
    identically against thresholds <= v_g).  The same capping argument lets
    scalar quantifiers ("for all a, b in R") range over divisor classes
    gcd(a, m) instead of raw residues.
    """

    def __init__(self, caps: tuple[int, ...]):
        self.caps = caps
        self.items: list[tuple[int, ...]] = [
            gens for gens in iproduct(*(divisors(m) for m in caps))
        ]
        self.whole = tuple(1 for _ in caps)

    def leq(self, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        # ideal(a) contained in ideal(b)
        return all(ai % bi == 0 for ai, bi in zip(a, b))

    def meet(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(lcm(ai, bi) for ai, bi in zip(a, b))

    def join(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(gcd(ai, bi) for ai, bi in zip(a, b))

    def times(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(gcd(ai * bi, m) for ai, bi, m in zip(a, b, self.caps))


def _quantification_domain(ideal: Ideal) -> _DivisorLattice:
    ring = ideal.ring
    if ring.is_finite:
        return _DivisorLattice(ring.moduli)
    g = ideal.gens[0]
    if g == 0:
        raise DomainError("the zero ideal of Z has no finite quantification domain")
    return _DivisorLattice((g,))


def classify_ideal_exhaustive(ideal: Ideal, predicate: str) -> bool:
    """Decide a predicate by quantifying over the finite divisor lattice.

    For finite rings this is the definition itself; for nonzero ideals of Z it
    is the divisor-capped oracle the fast paths are checked against.
    """
    _check_predicate(ideal, predicate)
    dom = _quantification_domain(ideal)
    t = ideal.gens
    items = dom.items

    if predicate == "prime":
        for a, b in combinations_with_replacement(items, 2):
            if dom.leq(dom.times(a, b), t) and not (dom.leq(a, t) or dom.leq(b, t)):
                return False
        return True
    if predicate == "two_absorbing":
        for a, b, c in combinations_with_replacement(items, 3):
            if dom.leq(dom.times(dom.times(a, b), c), t) and not (
                dom.leq(dom.times(a, b), t)
                or dom.leq(dom.times(a, c), t)
                or dom.leq(dom.times(b, c), t)
            ):
                return False
        return True
    if predicate == "irreducible":
        for a, b in combinations_with_replacement(items, 2):
            if dom.meet(a, b) == t and not (a == t or b == t):
                return False
        return True
    if predicate == "strongly_irreducible":
        for a, b in combinations_with_replacement(items, 2):
            if dom.leq(dom.meet(a, b), t) and not (dom.leq(a, t) or dom.leq(b, t)):
                return False
        return True
    if predicate == "two_irreducible":
        for a, b, c in combinations_with_replacement(items, 3):
            if dom.meet(dom.meet(a, b), c) == t and not (
                dom.meet(a, b) == t or dom.meet(a, c) == t or dom.meet(b, c) == t
            ):
                return False
        return True
    # strongly_two_irreducible
    for a, b, c in combinations_with_replacement(items, 3):
        if dom.leq(dom.meet(dom.meet(a, b), c), t) and not (
            dom.leq(dom.meet(a, b), t)
            or dom.leq(dom.meet(a, c), t)
            or dom.leq(dom.meet(b, c), t)
        ):
            return False
    return True


def classify_ideal(ideal: Ideal, predicate: str) -> bool:
    """Decide one of the six ideal predicates.

    Over Z this takes a factorization fast path (zero ideal, prime powers,
    products of two prime powers); the fast path is validated against
    classify_ideal_exhaustive by the test suite rather than trusted.  Finite
    rings always go through the exhaustive route.
    """
    _check_predicate(ideal, predicate)
    if not ideal.ring.is_integers:
        return classify_ideal_exhaustive(ideal, predicate)

    g = ideal.gens[0]
    if predicate == "prime":
        return g == 0 or is_prime(g)
    if g == 0:
        return True  # 0Z: any intersection landing in 0 has a zero member
    if predicate == "two_absorbing":
        # decided inside Z/(g * rad g), which is faithful for membership in gZ
        reduced = Ring.residue(g * radical_int(g)).ideal(g)
        return classify_ideal_exhaustive(reduced, "two_absorbing")
    nprimes = len(distinct_primes(g))
    if predicate in ("irreducible", "strongly_irreducible"):
        return nprimes <= 1
    return nprimes <= 2  # two_irreducible / strongly_two_irreducible


def ideal_strongly_sum_two_irreducible(ideal: Ideal) -> bool:
    """Sum-dual predicate on an ideal viewed as a submodule of the module R.

    True when every cover I <= J1 + J2 + J3 by ideals refines to a pairwise
    cover.  Only defined over rings with finitely many ideals.
    """
    if not ideal.ring.is_finite:
        raise DomainError("sum-irreducibility quantifier needs a finite ideal lattice")
    dom = _DivisorLattice(ideal.ring.moduli)
    t = ideal.gens
    for a, b, c in combinations_with_replacement(dom.items, 3):
        if dom.leq(t, dom.join(dom.join(a, b), c)) and not (
            dom.leq(t, dom.join(a, b))
            or dom.leq(t, dom.join(a, c))
            or dom.leq(t, dom.join(b, c))
        ):
            return False
    return True


def _check_predicate(ideal: Ideal, predicate: str) -> None:
    if predicate not in IDEAL_PREDICATES:
        raise UsageError(
            f"unknown ideal predicate {predicate!r}; expected one of {IDEAL_PREDICATES}"
        )
    if predicate in _PROPER_ONLY and ideal.is_whole:
        raise DomainError(f"{predicate} is defined for proper ideals only")
