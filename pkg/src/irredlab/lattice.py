"""Full submodule lattice enumeration and module-level structural predicates."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations

from .errors import ConsistencyError, DomainError, ResourceError
from .modules import (
    FiniteModule,
    Submodule,
    annihilator,
    colon_into,
    ideal_apply,
    span,
    sub_sum,
    submodule_predicate,
    whole_submodule,
    zero_submodule,
)

DEFAULT_LATTICE_CAP = 300

MODULE_PREDICATES = (
    "distributive",
    "multiplication",
    "comultiplication",
    "dac",
    "strong_comultiplication",
    "fully_pure",
)


class SubmoduleLattice:
    """All submodules of a finite module, sorted by (order, member list)."""

    def __init__(self, module: FiniteModule, subs):
        self.module = module
        self.subs: tuple[Submodule, ...] = tuple(
            sorted(subs, key=lambda s: (s.order, s.members))
        )
        self._index_by_mask = {s.mask: i for i, s in enumerate(self.subs)}

    def __len__(self) -> int:
        return len(self.subs)

    @property
    def zero_index(self) -> int:
        return 0

    @property
    def whole_index(self) -> int:
        return len(self.subs) - 1

    def index_of(self, sub: Submodule) -> int:
        try:
            return self._index_by_mask[sub.mask]
        except KeyError:
            raise ConsistencyError("submodule is not in the enumerated lattice")

    def mask_index(self, mask: int) -> int:
        return self._index_by_mask[mask]

    @cached_property
    def join_table(self) -> list[list[int]]:
        """join_table[i][j] = index of subs[i] + subs[j]; the lattice is closed."""
        n = len(self.subs)
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            table[i][i] = i
            for j in range(i + 1, n):
                si, sj = self.subs[i], self.subs[j]
                if si.issubset(sj):
                    k = j
                elif sj.issubset(si):
                    k = i
                else:
                    k = self.index_of(sub_sum(si, sj))
                table[i][j] = table[j][i] = k
        return table

    @cached_property
    def meet_table(self) -> list[list[int]]:
        n = len(self.subs)
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            table[i][i] = i
            for j in range(i + 1, n):
                k = self._index_by_mask[self.subs[i].mask & self.subs[j].mask]
                table[i][j] = table[j][i] = k
        return table

    @cached_property
    def incomparable_pairs(self) -> tuple[tuple[int, int], ...]:
        """Index pairs i < j with neither submodule containing the other.

        A violating pair or triple for the irreducibility predicates is always
        an antichain: once H1 is inside H2 the multi-way meet (or join)
        collapses onto a pairwise one and the conclusion holds, so comparable
        tuples can be skipped without changing any verdict or witness.
        """
        out = []
        masks = [s.mask for s in self.subs]
        for i in range(len(masks)):
            for j in range(i + 1, len(masks)):
                meet = masks[i] & masks[j]
                if meet != masks[i] and meet != masks[j]:
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def antichain_triples(self) -> tuple[tuple[int, int, int], ...]:
        masks = [s.mask for s in self.subs]
        pairs = set(self.incomparable_pairs)
        out = []
        for i, j in self.incomparable_pairs:
            for k in range(j + 1, len(masks)):
                if (i, k) in pairs and (j, k) in pairs:
                    out.append((i, j, k))
        return tuple(out)

    @cached_property
    def prime_indices(self) -> tuple[int, ...]:
        return tuple(
            i
            for i, s in enumerate(self.subs)
            if s.is_proper and submodule_predicate(s, self, "prime")
        )

    @cached_property
    def maximal_indices(self) -> tuple[int, ...]:
        out = []
        for i, s in enumerate(self.subs):
            if not s.is_proper:
                continue
            if not any(
                s is not t and s.issubset(t) and t.is_proper for t in self.subs
            ):
                out.append(i)
        return tuple(out)


def enumerate_submodules(
    module: FiniteModule, max_subs: int = DEFAULT_LATTICE_CAP
) -> SubmoduleLattice:
    """Join-closure of all cyclic spans; exactly the ring-stable subgroups.

    Every submodule is the join of the cyclic spans of its members, so closing
    the cyclic spans under pairwise sum terminates at the full lattice.
    """
    found: dict[int, Submodule] = {}

    def register(sub: Submodule) -> bool:
        if sub.mask in found:
            return False
        if len(found) >= max_subs:
            raise ResourceError(
                f"submodule lattice of {module} exceeds the lattice cap {max_subs}"
            )
        found[sub.mask] = sub
        return True

    register(zero_submodule(module))
    frontier = []
    for x in module.elements:
        s = span(module, [x])
        if register(s):
            frontier.append(s)
    while frontier:
        current = frontier.pop()
        for other in list(found.values()):
            joined = sub_sum(current, other)
            if register(joined):
                frontier.append(joined)
    return SubmoduleLattice(module, found.values())


def module_predicate(module: FiniteModule, lattice: SubmoduleLattice, name: str) -> bool:
    """Structural module predicates quantified over the whole lattice."""
    if name not in MODULE_PREDICATES:
        raise DomainError(
            f"unknown module predicate {name!r}; expected one of {MODULE_PREDICATES}"
        )
    subs = lattice.subs

    if name == "distributive":
        meet, join = lattice.meet_table, lattice.join_table
        n = len(subs)
        for a in range(n):
            for b in range(n):
                for c in range(b, n):
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                        return False
        return True

    if name == "multiplication":
        whole = subs[lattice.whole_index]
        return all(
            ideal_apply(colon_into(s), whole, "product") == s for s in subs
        )

    if name == "comultiplication":
        zero = subs[lattice.zero_index]
        return all(
            ideal_apply(annihilator(s), zero, "torsion") == s for s in subs
        )

    if name == "dac":
        if not module.ring.is_finite:
            raise DomainError("the double annihilator condition needs a finite ideal lattice")
        zero = subs[lattice.zero_index]
        return all(
            annihilator(ideal_apply(ideal, zero, "torsion")) == ideal
            for ideal in module.ring.ideals()
        )

    if name == "strong_comultiplication":
        return module_predicate(module, lattice, "comultiplication") and module_predicate(
            module, lattice, "dac"
        )

    # fully_pure
    return all(submodule_predicate(s, lattice, "pure") for s in subs)


def maximal_submodules(lattice: SubmoduleLattice) -> list[Submodule]:
    return [lattice.subs[i] for i in lattice.maximal_indices]


def _is_meet_irreducible(lattice: SubmoduleLattice, idx: int) -> bool:
    # N = H1 meet H2 forces N = H1 or N = H2
    meet = lattice.meet_table
    n = len(lattice.subs)
    for i in range(n):
        for j in range(i, n):
            if meet[i][j] == idx and i != idx and j != idx:
                return False
    return True


def irreducible_decomposition(n: Submodule, lattice: SubmoduleLattice) -> list[Submodule]:
    """Shortest irredundant list of irreducible submodules intersecting to N.

    Searched exhaustively over candidate subsets by ascending size; ties are
    broken by lattice order.  Minimality makes the result irredundant.
    """
    if n.is_whole:
        raise DomainError("decomposition is defined for proper submodules only")
    idx = lattice.index_of(n)
    candidates = [
        i
        for i in range(len(lattice.subs))
        if lattice.subs[i].is_proper
        and n.issubset(lattice.subs[i])
        and _is_meet_irreducible(lattice, i)
    ]
    target = n.mask
    for size in range(1, len(candidates) + 1):
        for combo in combinations(candidates, size):
            mask = lattice.subs[combo[0]].mask
            for i in combo[1:]:
                mask &= lattice.subs[i].mask
                if mask == target:
                    break
            if mask == target:
                return [lattice.subs[i] for i in combo]
    raise ConsistencyError(f"no irreducible decomposition found for {n}")
