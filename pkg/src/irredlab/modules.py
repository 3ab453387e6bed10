"""Finite modules over Z, Z/n, and product rings, with the submodule toolbox.

A module is a direct sum of cyclic groups arranged in one block per ring
factor; the i-th ring factor acts on its own block and annihilates the others.
Elements are flat residue tuples, one entry per cyclic component.  Submodules
are stored as explicit canonical member lists plus a bitmask over the module's
element order, which makes equality, containment, and intersection exact set
operations at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from math import gcd, lcm, prod

from .arith import divisors, smith_normal_form, valuation, xgcd
from .errors import DomainError, ResourceError, UsageError
from .rings import Ideal, Ring

Element = tuple[int, ...]

DEFAULT_ORDER_CAP = 4096

SUBMODULE_PREDICATES = (
    "prime",
    "primary",
    "two_absorbing",
    "two_absorbing_primary",
    "radical",
    "pure",
    "waist",
)
_PROPER_ONLY = frozenset({"prime", "primary", "two_absorbing", "two_absorbing_primary"})


@dataclass(frozen=True)
class FiniteModule:
    """Direct sum of cyclic groups, one block of cyclic orders per ring factor."""

    ring: Ring
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.parts) != self.ring.nfactors():
            raise DomainError(
                f"module has {len(self.parts)} block(s) but ring {self.ring} "
                f"has {self.ring.nfactors()} factor(s)"
            )
        normalized = []
        for f, block in enumerate(self.parts):
            m = self.ring.moduli[f]
            for d in block:
                if d < 1:
                    raise DomainError(f"cyclic order must be >= 1, got {d}")
                if m and m % d != 0:
                    raise DomainError(
                        f"cyclic order {d} does not divide the factor modulus {m}"
                    )
            # canonical form: descending orders, trivial summands dropped
            normalized.append(tuple(sorted((d for d in block if d > 1), reverse=True)))
        object.__setattr__(self, "parts", tuple(normalized))

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(d for block in self.parts for d in block)

    @cached_property
    def comp_factor(self) -> tuple[int, ...]:
        # ring factor index of each flat component
        return tuple(f for f, block in enumerate(self.parts) for _ in block)

    @cached_property
    def order(self) -> int:
        return prod(self.orders)

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(iproduct(*(range(d) for d in self.orders)))

    @cached_property
    def element_index(self) -> dict[Element, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def zero(self) -> Element:
        return (0,) * len(self.orders)

    def reduce(self, vec) -> Element:
        if len(vec) != len(self.orders):
            raise DomainError(
                f"element has {len(vec)} components, module has {len(self.orders)}"
            )
        return tuple(int(v) % d for v, d in zip(vec, self.orders))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x: Element) -> Element:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def scale(self, r, x: Element) -> Element:
        """Apply a ring scalar; an int acts on every block, a tuple per factor."""
        if isinstance(r, int):
            return tuple((r * a) % d for a, d in zip(x, self.orders))
        if len(r) != self.ring.nfactors():
            raise DomainError("scalar tuple length does not match ring factor count")
        return tuple(
            (r[f] * a) % d for a, d, f in zip(x, self.orders, self.comp_factor)
        )

    def unit_vector(self, comp: int, value: int = 1) -> Element:
        vec = [0] * len(self.orders)
        vec[comp] = value % self.orders[comp]
        return tuple(vec)

    def element_order(self, x: Element) -> int:
        return lcm(*(d // gcd(d, a) for a, d in zip(x, self.orders))) if x else 1

    def factor_limit(self, f: int) -> int:
        """Scalar quantification bound for factor f: the action of the f-th
        ring factor is faithful through Z/limit."""
        m = self.ring.moduli[f]
        return m if m else self.exponent

    def scalar_classes(self) -> list[tuple[int, ...]]:
        """Representatives of the scalar classes relevant to membership tests.

        Per factor, r and gcd(r, limit) generate the same cyclic subgroup
        through every module element, so quantifiers over ring scalars may
        range over divisors of the limit (the limit itself standing for 0).
        """
        return list(iproduct(*(divisors(self.factor_limit(f))
                               for f in range(self.ring.nfactors()))))

    def ideal_classes(self) -> list[Ideal]:
        """Ideals with pairwise distinct action on this module; the finite
        quantification domain for "for every ideal I" clauses."""
        return [Ideal(self.ring, gens) for gens in self.scalar_classes()]

    def descriptor(self) -> str:
        blocks = []
        for block in self.parts:
            blocks.append("x".join(f"Z{d}" for d in block) if block else "Z1")
        return " | ".join(blocks)

    def __str__(self) -> str:
        return f"{self.descriptor()} over {self.ring}"


def build_module(
    ring: Ring,
    blocks: list[list[int]] | tuple[tuple[int, ...], ...],
    order_cap: int = DEFAULT_ORDER_CAP,
) -> FiniteModule:
    """Validated module constructor; rejects over-cap orders before expanding."""
    total = prod(d for block in blocks for d in block)
    if total > order_cap:
        raise ResourceError(f"module order {total} exceeds the order cap {order_cap}")
    return FiniteModule(ring, tuple(tuple(block) for block in blocks))


class Submodule:
    """A ring-stable subgroup held as a canonical sorted member list."""

    __slots__ = ("module", "members", "member_set", "mask", "_hint", "_gens", "_hash")

    def __init__(self, module: FiniteModule, members, gens_hint=None):
        self.module = module
        self.members: tuple[Element, ...] = tuple(sorted(set(members)))
        self.member_set = frozenset(self.members)
        index = module.element_index
        mask = 0
        for x in self.members:
            mask |= 1 << index[x]
        self.mask = mask
        self._hint = gens_hint
        self._gens = None
        self._hash = hash((module, self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def is_zero(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.module.order

    @property
    def is_proper(self) -> bool:
        return not self.is_whole

    def contains(self, x: Element) -> bool:
        return x in self.member_set

    def issubset(self, other: "Submodule") -> bool:
        return (self.mask & other.mask) == self.mask

    def generating_set(self) -> tuple[Element, ...]:
        """Some generating set, cheap to obtain (not necessarily minimal)."""
        if self._hint is not None:
            return self._hint
        return self.gens

    @property
    def gens(self) -> tuple[Element, ...]:
        """Minimal-found generators: greedy by descending element order, then
        drop anything redundant."""
        if self._gens is None:
            picked = []
            reached = {self.module.zero}
            for x in sorted(
                self.members,
                key=lambda e: (-self.module.element_order(e), e),
            ):
                if x not in reached:
                    picked.append(x)
                    reached = _additive_closure(self.module, picked)
                    if len(reached) == self.order:
                        break
            kept = list(picked)
            for g in list(picked):
                trial = [h for h in kept if h != g]
                if len(_span_members(self.module, trial)) == self.order:
                    kept = trial
            self._gens = tuple(kept)
        return self._gens

    def assert_closed(self) -> None:
        """Exhaustively check the subgroup and ring-stability invariants."""
        M = self.module
        if M.zero not in self.member_set:
            raise AssertionError("submodule misses zero")
        for x in self.members:
            for y in self.members:
                if M.add(x, y) not in self.member_set:
                    raise AssertionError(f"not closed under addition: {x} + {y}")
        for f in range(M.ring.nfactors()):
            for r in divisors(M.factor_limit(f)):
                scalar = tuple(r if i == f else 0 for i in range(M.ring.nfactors()))
                for x in self.members:
                    if M.scale(scalar, x) not in self.member_set:
                        raise AssertionError(f"not stable under scalar {scalar}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Submodule)
            and self.module == other.module
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        gens = ",".join("(" + ",".join(map(str, g)) + ")" for g in self.gens)
        return f"<{gens or '0'}> of order {self.order}"


def _seed_elements(module: FiniteModule, gens) -> list[Element]:
    """Generators plus their per-factor projections.

    Additive closure alone yields the Z-span; for product rings the idempotent
    scalars e_f must also act, and e_f * g seeds are enough because every ring
    scalar is a Z-combination of the idempotents.
    """
    seeds = [module.reduce(g) for g in gens]
    if module.ring.is_product:
        k = module.ring.nfactors()
        for f in range(k):
            e_f = tuple(1 if i == f else 0 for i in range(k))
            seeds.extend(module.scale(e_f, g) for g in list(seeds[: len(gens)]))
    return [s for s in dict.fromkeys(seeds) if s != module.zero]


def _additive_closure(module: FiniteModule, gens) -> set[Element]:
    seeds = _seed_elements(module, gens)
    seen = {module.zero}
    frontier = [module.zero]
    while frontier:
        x = frontier.pop()
        for s in seeds:
            y = module.add(x, s)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _span_members(module: FiniteModule, gens) -> set[Element]:
    return _additive_closure(module, gens)


def span(module: FiniteModule, gens) -> Submodule:
    """Smallest submodule containing the given elements."""
    gens = [module.reduce(g) for g in gens]
    members = _additive_closure(module, gens)
    hint = tuple(g for g in dict.fromkeys(gens) if g != module.zero)
    return Submodule(module, members, gens_hint=hint)


def zero_submodule(module: FiniteModule) -> Submodule:
    return Submodule(module, [module.zero], gens_hint=())


def whole_submodule(module: FiniteModule) -> Submodule:
    hint = tuple(module.unit_vector(c) for c in range(len(module.orders)))
    return Submodule(module, module.elements, gens_hint=hint)


def _check_same_module(a: Submodule, b: Submodule) -> None:
    if a.module != b.module:
        raise DomainError("submodules belong to different modules")


def sub_intersect(a: Submodule, b: Submodule) -> Submodule:
    _check_same_module(a, b)
    return Submodule(a.module, a.member_set & b.member_set)


def sub_sum(a: Submodule, b: Submodule) -> Submodule:
    _check_same_module(a, b)
    hint = tuple(dict.fromkeys(a.generating_set() + b.generating_set()))
    members = _additive_closure(a.module, hint)
    return Submodule(a.module, members, gens_hint=hint)


def sub_combine(a: Submodule, b: Submodule, op: str) -> Submodule:
    if op == "intersect":
        return sub_intersect(a, b)
    if op == "sum":
        return sub_sum(a, b)
    raise UsageError(f"unknown submodule op {op!r}; expected 'intersect' or 'sum'")


# ---------------------------------------------------------------------------
# colon ideals, annihilators, ideal action


def colon_into(n: Submodule) -> Ideal:
    """(N :_R M) = the ideal of scalars carrying the whole module into N."""
    module = n.module
    gens = []
    comps_by_factor: dict[int, list[int]] = {}
    for c, f in enumerate(module.comp_factor):
        comps_by_factor.setdefault(f, []).append(c)
    for f in range(module.ring.nfactors()):
        limit = module.factor_limit(f)
        comps = comps_by_factor.get(f, [])
        g = limit
        for r in divisors(limit):
            if r == limit:
                continue
            if all(n.contains(module.unit_vector(c, r)) for c in comps):
                g = gcd(g, r)
        gens.append(g)
    return Ideal(module.ring, tuple(gens))


def annihilator(n: Submodule) -> Ideal:
    """Ann_R(N) = the ideal of scalars killing every element of N."""
    module = n.module
    gens = n.generating_set()
    out = []
    k = module.ring.nfactors()
    for f in range(k):
        limit = module.factor_limit(f)
        g = limit
        for r in divisors(limit):
            if r == limit:
                continue
            scalar = tuple(r if i == f else 0 for i in range(k))
            if all(module.scale(scalar, x) == module.zero for x in gens):
                g = gcd(g, r)
        out.append(g)
    return Ideal(module.ring, tuple(out))


def ideal_apply(ideal: Ideal, n: Submodule, mode: str) -> Submodule:
    """mode 'product': IN.  mode 'torsion': (N :_M I) = {m : I m inside N}."""
    module = n.module
    if ideal.ring != module.ring:
        raise DomainError(f"ideal ring {ideal.ring} does not match module ring")
    if mode == "product":
        members = {module.scale(ideal.gens, x) for x in n.members}
        return Submodule(module, members)
    if mode == "torsion":
        k = module.ring.nfactors()
        masked = [
            tuple(ideal.gens[f] if i == f else 0 for i in range(k)) for f in range(k)
        ]
        members = [
            x
            for x in module.elements
            if all(n.contains(module.scale(s, x)) for s in masked)
        ]
        return Submodule(module, members)
    raise UsageError(f"unknown ideal_apply mode {mode!r}; expected 'product' or 'torsion'")


# ---------------------------------------------------------------------------
# lattice-dependent predicates (the lattice object is passed in by the caller)


def submodule_radical(n: Submodule, lattice) -> Submodule:
    """Intersection of the prime submodules containing N; M when none does."""
    subs = lattice.subs
    mask = None
    for i in lattice.prime_indices:
        p = subs[i]
        if n.issubset(p):
            mask = p.mask if mask is None else mask & p.mask
    if mask is None:
        return whole_submodule(n.module)
    members = [x for x in n.module.elements if (1 << n.module.element_index[x]) & mask]
    return Submodule(n.module, members)


def submodule_predicate(n: Submodule, lattice, predicate: str) -> bool:
    """Element-quantified submodule predicates; scalars range over divisor
    classes of the per-factor limits (see FiniteModule.scalar_classes)."""
    if predicate not in SUBMODULE_PREDICATES:
        raise UsageError(
            f"unknown submodule predicate {predicate!r}; "
            f"expected one of {SUBMODULE_PREDICATES}"
        )
    if predicate in _PROPER_ONLY and n.is_whole:
        raise DomainError(f"{predicate} is defined for proper submodules only")
    module = n.module

    if predicate == "prime":
        colon = colon_into(n)
        for r in module.scalar_classes():
            if colon.contains_scalar(r):
                continue
            for x in module.elements:
                if n.contains(module.scale(r, x)) and not n.contains(x):
                    return False
        return True

    if predicate == "primary":
        rad_colon = colon_into(n).radical()
        for r in module.scalar_classes():
            if rad_colon.contains_scalar(r):
                continue
            for x in module.elements:
                if n.contains(module.scale(r, x)) and not n.contains(x):
                    return False
        return True

    if predicate == "two_absorbing":
        colon = colon_into(n)
        classes = module.scalar_classes()
        for a in classes:
            for b in classes:
                ab = tuple(u * v for u, v in zip(a, b))
                if colon.contains_scalar(ab):
                    continue
                for x in module.elements:
                    if n.contains(module.scale(ab, x)):
                        if not (
                            n.contains(module.scale(a, x))
                            or n.contains(module.scale(b, x))
                        ):
                            return False
        return True

    if predicate == "two_absorbing_primary":
        colon = colon_into(n)
        rad = submodule_radical(n, lattice)
        classes = module.scalar_classes()
        for a in classes:
            for b in classes:
                ab = tuple(u * v for u, v in zip(a, b))
                if colon.contains_scalar(ab):
                    continue
                for x in module.elements:
                    if n.contains(module.scale(ab, x)):
                        if not (
                            rad.contains(module.scale(a, x))
                            or rad.contains(module.scale(b, x))
                        ):
                            return False
        return True

    if predicate == "radical":
        return submodule_radical(n, lattice) == n

    if predicate == "pure":
        whole = whole_submodule(module)
        for ideal in module.ideal_classes():
            left = ideal_apply(ideal, n, "product")
            right = sub_intersect(ideal_apply(ideal, whole, "product"), n)
            if left != right:
                return False
        return True

    # waist
    return all(s.issubset(n) or n.issubset(s) for s in lattice.subs)


# ---------------------------------------------------------------------------
# quotients


class QuotientMap:
    """Canonical projection M -> M/K with exact image and preimage transport."""

    def __init__(self, source: FiniteModule, kernel: Submodule):
        if kernel.module != source:
            raise DomainError("kernel does not belong to the source module")
        self.source = source
        self.kernel = kernel
        self._blocks = []
        target_parts = []
        offset = 0
        for f, block in enumerate(source.parts):
            k = len(block)
            kernel_rows = [
                [x[offset + j] for j in range(k)] for x in kernel.generating_set()
            ]
            rows = [[block[i] if j == i else 0 for j in range(k)] for i in range(k)]
            rows.extend(kernel_rows)
            factors, vmat = smith_normal_form(rows, k)
            layout = sorted(
                (j for j in range(k) if factors[j] > 1),
                key=lambda j: (-factors[j], j),
            )
            self._blocks.append((offset, k, vmat, factors, layout))
            target_parts.append(tuple(factors[j] for j in layout))
            offset += k
        self.target = FiniteModule(source.ring, tuple(target_parts))

    def apply(self, x: Element) -> Element:
        out = []
        for offset, k, vmat, factors, layout in self._blocks:
            xs = x[offset : offset + k]
            for j in layout:
                out.append(sum(xs[c] * vmat[c][j] for c in range(k)) % factors[j])
        return tuple(out)

    def image(self, n: Submodule) -> Submodule:
        if n.module != self.source:
            raise DomainError("submodule does not belong to the source module")
        return Submodule(self.target, {self.apply(x) for x in n.members})

    def preimage(self, nq: Submodule) -> Submodule:
        if nq.module != self.target:
            raise DomainError("submodule does not belong to the quotient module")
        return Submodule(
            self.source,
            [x for x in self.source.elements if nq.contains(self.apply(x))],
        )


def quotient(module: FiniteModule, kernel: Submodule) -> tuple[FiniteModule, QuotientMap]:
    proj = QuotientMap(module, kernel)
    return proj.target, proj


# ---------------------------------------------------------------------------
# localization at a prime (Z-modules only)


class LocalizationMap:
    """S^{-1}M for S = Z minus pZ: the p-primary component of a finite module."""

    def __init__(self, source: FiniteModule, p: int):
        from .arith import is_prime

        if not source.ring.is_integers:
            raise DomainError("localization is defined for Z-modules only")
        if not is_prime(p):
            raise DomainError(f"localization requires a prime, got {p}")
        self.source = source
        self.p = p
        exp = source.exponent
        big = valuation(exp, p) if exp % p == 0 else 0
        if big:
            m_prime = exp // p**big
            g, inv, _ = xgcd(m_prime, p**big)
            self._e = (m_prime * inv) % exp  # idempotent: 1 mod p^big, 0 mod m_prime
        else:
            self._e = 0
        comps = []
        for c, d in enumerate(source.orders):
            a = valuation(d, p) if d % p == 0 else 0
            if a > 0:
                comps.append((c, d, p**a, d // p**a))
        comps.sort(key=lambda t: (-t[2], t[0]))
        self._comps = comps
        self.target = FiniteModule(source.ring, (tuple(t[2] for t in comps),))

    def apply(self, x: Element) -> Element:
        out = []
        for c, d, pa, q in self._comps:
            out.append(((self._e * x[c]) % d) // q % pa)
        return tuple(out)

    def image(self, n: Submodule) -> Submodule:
        if n.module != self.source:
            raise DomainError("submodule does not belong to the source module")
        return Submodule(self.target, {self.apply(x) for x in n.members})


def localize(module: FiniteModule, p: int) -> tuple[FiniteModule, LocalizationMap]:
    loc = LocalizationMap(module, p)
    return loc.target, loc


# ---------------------------------------------------------------------------
# product modules over product rings


def product_module(
    parts: list[FiniteModule], order_cap: int = DEFAULT_ORDER_CAP
) -> FiniteModule:
    """Assemble modules over residue rings into one module over their product ring."""
    if len(parts) < 2:
        raise DomainError("a product module needs at least two factors")
    moduli = []
    for part in parts:
        if part.ring.is_integers or part.ring.is_product:
            raise DomainError("product factors must be modules over residue rings")
        moduli.append(part.ring.moduli[0])
    total = prod(part.order for part in parts)
    if total > order_cap:
        raise ResourceError(f"product order {total} exceeds the order cap {order_cap}")
    return FiniteModule(Ring.product(*moduli), tuple(part.parts[0] for part in parts))


def factor_modules(module: FiniteModule) -> list[FiniteModule]:
    """The per-factor residue-ring modules a product module is built from."""
    if not module.ring.is_product:
        raise DomainError("factor_modules needs a module over a product ring")
    return [
        FiniteModule(Ring.residue(m), (block,))
        for m, block in zip(module.ring.moduli, module.parts)
    ]


def decompose_submodule(n: Submodule) -> list[Submodule]:
    """Split a submodule of a product-ring module into its unique factor parts."""
    module = n.module
    factors = factor_modules(module)
    out = []
    offset = 0
    for fm in factors:
        width = len(fm.orders)
        block_members = {x[offset : offset + width] for x in n.members}
        out.append(Submodule(fm, block_members))
        offset += width
    return out


def compose_submodule(module: FiniteModule, parts: list[Submodule]) -> Submodule:
    """Inverse of decompose_submodule: the product of per-factor submodules."""
    members = [sum(combo, ()) for combo in iproduct(*(p.members for p in parts))]
    return Submodule(module, members)
