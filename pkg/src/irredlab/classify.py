"""The irreducibility predicate family and per-module classification reports.

The lattice-quantified predicates run over antichain tuples of submodules
(comparable or repeated arguments can never violate any of the definitions,
because the multi-way meet or join then collapses onto a pairwise one), using
bitmask set algebra.  The first violating tuple in lattice order is the
deterministic witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConsistencyError, DomainError, UsageError
from .lattice import (
    DEFAULT_LATTICE_CAP,
    SubmoduleLattice,
    enumerate_submodules,
    module_predicate,
)
from .modules import (
    FiniteModule,
    Submodule,
    _additive_closure,
    annihilator,
    colon_into,
    span,
    submodule_predicate,
    submodule_radical,
)
from .rings import Ideal

CLASSIFY_PREDICATES = (
    "irreducible",
    "strongly_irreducible",
    "two_irreducible",
    "strongly_two_irreducible",
    "strongly_sum_two_irreducible",
)
# the "strongly" definitions require a proper submodule; the plain ones do not
# say so, and the report relaxes them for the whole-module row only
_STRICTLY_PROPER = frozenset(
    {"strongly_irreducible", "strongly_two_irreducible", "strongly_sum_two_irreducible"}
)

ROW_PREDICATES = CLASSIFY_PREDICATES + (
    "prime",
    "primary",
    "two_absorbing",
    "two_absorbing_primary",
    "radical",
    "pure",
    "waist",
)

MODULE_FLAGS = (
    "distributive",
    "multiplication",
    "comultiplication",
    "fully_pure",
    "strong_comultiplication",
)


def classify_violation(
    n: Submodule, lattice: SubmoduleLattice, predicate: str
) -> tuple[int, ...] | None:
    """First lattice-index tuple violating the predicate, or None if it holds."""
    masks = [s.mask for s in lattice.subs]
    nm = n.mask

    if predicate == "irreducible":
        for i, j in lattice.incomparable_pairs:
            if masks[i] & masks[j] == nm:
                return (i, j)  # an antichain meet equals N and both sides exceed it
        return None
    if predicate == "strongly_irreducible":
        for i, j in lattice.incomparable_pairs:
            t = masks[i] & masks[j]
            if t & nm == t and masks[i] & nm != masks[i] and masks[j] & nm != masks[j]:
                return (i, j)
        return None
    if predicate == "two_irreducible":
        for i, j, k in lattice.antichain_triples:
            pij = masks[i] & masks[j]
            t = pij & masks[k]
            if t == nm:
                if (
                    pij != nm
                    and masks[i] & masks[k] != nm
                    and masks[j] & masks[k] != nm
                ):
                    return (i, j, k)
        return None
    if predicate == "strongly_two_irreducible":
        for i, j, k in lattice.antichain_triples:
            pij = masks[i] & masks[j]
            t = pij & masks[k]
            if t & nm == t:
                pik = masks[i] & masks[k]
                pjk = masks[j] & masks[k]
                if (
                    pij & nm != pij
                    and pik & nm != pik
                    and pjk & nm != pjk
                ):
                    return (i, j, k)
        return None
    if predicate == "strongly_sum_two_irreducible":
        join = lattice.join_table
        for i, j, k in lattice.antichain_triples:
            j3 = masks[join[join[i][j]][k]]
            if nm & j3 == nm:
                jij = masks[join[i][j]]
                jik = masks[join[i][k]]
                jjk = masks[join[j][k]]
                if nm & jij != nm and nm & jik != nm and nm & jjk != nm:
                    return (i, j, k)
        return None
    raise UsageError(
        f"unknown classification predicate {predicate!r}; "
        f"expected one of {CLASSIFY_PREDICATES}"
    )


def classify(
    n: Submodule,
    lattice: SubmoduleLattice,
    predicate: str,
    *,
    allow_improper: bool = False,
) -> bool:
    """Decide one of the five lattice-quantified irreducibility predicates.

    Every predicate requires N proper by default; pass allow_improper=True to
    relax the two predicates whose source definitions omit properness
    (irreducible and two_irreducible).
    """
    if predicate not in CLASSIFY_PREDICATES:
        raise UsageError(
            f"unknown classification predicate {predicate!r}; "
            f"expected one of {CLASSIFY_PREDICATES}"
        )
    if not n.is_proper:
        if predicate in _STRICTLY_PROPER or not allow_improper:
            raise DomainError(f"{predicate} requires a proper submodule")
    return classify_violation(n, lattice, predicate) is None


def classify_via_elements(n: Submodule, _pair_cache: dict | None = None) -> bool:
    """Element-triple route to strongly_two_irreducible.

    True iff for all x, y, z: (Rx+Ry) ^ (Rx+Rz) ^ (Ry+Rz) inside N forces some
    pairwise intersection inside N.  Repeated or zero arguments make one
    pairwise intersection equal the triple one, so distinct nonzero triples
    suffice.  Agreement with the lattice route is a theorem the harness
    asserts, not an assumption made here.
    """
    if not n.is_proper:
        raise DomainError("the element characterization requires a proper submodule")
    module = n.module
    cache: dict = _pair_cache if _pair_cache is not None else {}
    pair_mask = _pair_span_fn(module, cache)
    nm = n.mask
    count = len(module.elements)
    zero_idx = module.element_index[module.zero]
    for ix in range(count):
        if ix == zero_idx:
            continue
        for iy in range(ix + 1, count):
            if iy == zero_idx:
                continue
            pxy = pair_mask(ix, iy)
            for iz in range(iy + 1, count):
                if iz == zero_idx:
                    continue
                pxz = pair_mask(ix, iz)
                pyz = pair_mask(iy, iz)
                triple = pxy & pxz & pyz
                if triple & nm == triple:
                    a = pxy & pxz
                    b = pxy & pyz
                    c = pxz & pyz
                    if a & nm != a and b & nm != b and c & nm != c:
                        return False
    return True


def _pair_span_fn(module: FiniteModule, cache: dict):
    elems = module.elements
    index = module.element_index

    def pair_mask(i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        m = cache.get(key)
        if m is None:
            m = 0
            for x in _additive_closure(module, [elems[key[0]], elems[key[1]]]):
                m |= 1 << index[x]
            cache[key] = m
        return m

    return pair_mask


class ModuleAnalysis:
    """Memoized per-module classification state shared by reports and checks."""

    def __init__(
        self,
        module: FiniteModule,
        lattice_cap: int = DEFAULT_LATTICE_CAP,
    ):
        self.module = module
        self.lattice = enumerate_submodules(module, lattice_cap)
        self._class_tables: dict[str, tuple] = {}
        self._sub_tables: dict[str, tuple] = {}
        self._flags: dict[str, bool | None] = {}
        self._colon: dict[int, Ideal] = {}
        self._ann: dict[int, Ideal] = {}
        self._rad: dict[int, int] = {}
        self._pair_cache: dict = {}
        self._element_s2i: tuple | None = None
        self._cyclic_cond: tuple | None = None

    @property
    def subs(self):
        return self.lattice.subs

    def proper_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.subs) if s.is_proper]

    def nonzero_proper_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.subs) if s.is_proper and not s.is_zero]

    # -- lattice-quantified predicate tables (batched) ----------------------

    def classification(self, predicate: str) -> tuple:
        """Per-lattice-index truth values; None where the predicate is undefined."""
        if predicate not in CLASSIFY_PREDICATES:
            raise UsageError(f"unknown classification predicate {predicate!r}")
        if predicate not in self._class_tables:
            if predicate == "strongly_sum_two_irreducible":
                self._compute_sum_table()
            else:
                self._compute_meet_tables()
        return self._class_tables[predicate]

    def _finish_table(self, predicate: str, raw: list[bool]) -> None:
        whole = self.lattice.whole_index
        if predicate in _STRICTLY_PROPER:
            raw[whole] = None
        self._class_tables[predicate] = tuple(raw)

    def _compute_meet_tables(self) -> None:
        lattice = self.lattice
        masks = [s.mask for s in lattice.subs]
        n = len(masks)
        irr = [True] * n
        si = [True] * n
        two = [True] * n
        s2i = [True] * n
        for i, j in lattice.incomparable_pairs:
            mi, mj = masks[i], masks[j]
            t = mi & mj
            irr[lattice.mask_index(t)] = False
            for idx in range(n):
                if si[idx]:
                    mN = masks[idx]
                    if t & mN == t and mi & mN != mi and mj & mN != mj:
                        si[idx] = False
        for i, j, k in lattice.antichain_triples:
            mi, mj, mk = masks[i], masks[j], masks[k]
            pij = mi & mj
            t = pij & mk
            pik = mi & mk
            pjk = mj & mk
            if pij != t and pik != t and pjk != t:
                two[lattice.mask_index(t)] = False
            for idx in range(n):
                if s2i[idx]:
                    mN = masks[idx]
                    if (
                        t & mN == t
                        and pij & mN != pij
                        and pik & mN != pik
                        and pjk & mN != pjk
                    ):
                        s2i[idx] = False
        self._finish_table("irreducible", irr)
        self._finish_table("strongly_irreducible", si)
        self._finish_table("two_irreducible", two)
        self._finish_table("strongly_two_irreducible", s2i)

    def _compute_sum_table(self) -> None:
        lattice = self.lattice
        masks = [s.mask for s in lattice.subs]
        join = lattice.join_table
        n = len(masks)
        ss = [True] * n
        for i, j, k in lattice.antichain_triples:
            jij = masks[join[i][j]]
            jik = masks[join[i][k]]
            jjk = masks[join[j][k]]
            j3 = masks[join[join[i][j]][k]]
            for idx in range(n):
                if ss[idx]:
                    mN = masks[idx]
                    if (
                        mN & j3 == mN
                        and mN & jij != mN
                        and mN & jik != mN
                        and mN & jjk != mN
                    ):
                        ss[idx] = False
        self._finish_table("strongly_sum_two_irreducible", ss)

    # -- element-quantified routes ------------------------------------------

    def element_s2i_table(self) -> tuple:
        """Batched classify_via_elements over every proper submodule."""
        if self._element_s2i is None:
            module = self.module
            masks = [s.mask for s in self.subs]
            n = len(masks)
            alive = [s.is_proper for s in self.subs]
            pair_mask = _pair_span_fn(module, self._pair_cache)
            count = len(module.elements)
            zero_idx = module.element_index[module.zero]
            nonzero = [i for i in range(count) if i != zero_idx]
            for a_pos, ix in enumerate(nonzero):
                for b_pos in range(a_pos + 1, len(nonzero)):
                    iy = nonzero[b_pos]
                    pxy = pair_mask(ix, iy)
                    for c_pos in range(b_pos + 1, len(nonzero)):
                        iz = nonzero[c_pos]
                        pxz = pair_mask(ix, iz)
                        pyz = pair_mask(iy, iz)
                        t = pxy & pxz & pyz
                        a = pxy & pxz
                        b = pxy & pyz
                        c = pxz & pyz
                        for idx in range(n):
                            if alive[idx]:
                                mN = masks[idx]
                                if (
                                    t & mN == t
                                    and a & mN != a
                                    and b & mN != b
                                    and c & mN != c
                                ):
                                    alive[idx] = False
            self._element_s2i = tuple(
                alive[i] if self.subs[i].is_proper else None for i in range(n)
            )
        return self._element_s2i

    def cyclic_condition_table(self) -> tuple:
        """For each proper N: does Rx^Ry^Rz inside N force a pairwise cyclic
        intersection inside N, over all element triples?"""
        if self._cyclic_cond is None:
            module = self.module
            index = module.element_index
            cyc = []
            for x in module.elements:
                m = 0
                for y in _additive_closure(module, [x]):
                    m |= 1 << index[y]
                cyc.append(m)
            masks = [s.mask for s in self.subs]
            n = len(masks)
            alive = [s.is_proper for s in self.subs]
            count = len(module.elements)
            zero_idx = index[module.zero]
            nonzero = [i for i in range(count) if i != zero_idx]
            for a_pos, ix in enumerate(nonzero):
                for b_pos in range(a_pos + 1, len(nonzero)):
                    iy = nonzero[b_pos]
                    pij = cyc[ix] & cyc[iy]
                    for c_pos in range(b_pos + 1, len(nonzero)):
                        iz = nonzero[c_pos]
                        t = pij & cyc[iz]
                        pik = cyc[ix] & cyc[iz]
                        pjk = cyc[iy] & cyc[iz]
                        for idx in range(n):
                            if alive[idx]:
                                mN = masks[idx]
                                if (
                                    t & mN == t
                                    and pij & mN != pij
                                    and pik & mN != pik
                                    and pjk & mN != pjk
                                ):
                                    alive[idx] = False
            self._cyclic_cond = tuple(
                alive[i] if self.subs[i].is_proper else None for i in range(n)
            )
        return self._cyclic_cond

    # -- submodule predicates and derived data --------------------------------

    def sub_pred(self, predicate: str) -> tuple:
        table = self._sub_tables.get(predicate)
        if table is None:
            out = []
            for s in self.subs:
                if not s.is_proper and predicate in (
                    "prime",
                    "primary",
                    "two_absorbing",
                    "two_absorbing_primary",
                ):
                    out.append(None)
                else:
                    out.append(submodule_predicate(s, self.lattice, predicate))
            table = tuple(out)
            self._sub_tables[predicate] = table
        return table

    def colon(self, idx: int) -> Ideal:
        ideal = self._colon.get(idx)
        if ideal is None:
            ideal = colon_into(self.subs[idx])
            self._colon[idx] = ideal
        return ideal

    def ann(self, idx: int) -> Ideal:
        ideal = self._ann.get(idx)
        if ideal is None:
            ideal = annihilator(self.subs[idx])
            self._ann[idx] = ideal
        return ideal

    def radical_index(self, idx: int) -> int:
        out = self._rad.get(idx)
        if out is None:
            out = self.lattice.index_of(submodule_radical(self.subs[idx], self.lattice))
            self._rad[idx] = out
        return out

    def flag(self, name: str) -> bool | None:
        if name not in self._flags:
            if name == "strong_comultiplication" and not self.module.ring.is_finite:
                self._flags[name] = None  # DAC quantifier undecidable over Z
            else:
                self._flags[name] = module_predicate(self.module, self.lattice, name)
        return self._flags[name]


@dataclass
class ReportRow:
    index: int
    order: int
    gens: tuple
    flags: dict
    colon: Ideal
    annihilator: Ideal
    radical_index: int

    def to_dict(self) -> dict:
        return {
            "id": self.index,
            "order": self.order,
            "gens": [list(g) for g in self.gens],
            "flags": dict(self.flags),
            "colon": list(self.colon.gens),
            "annihilator": list(self.annihilator.gens),
            "radical_id": self.radical_index,
        }


@dataclass
class ClassificationReport:
    module: str
    ring: str
    rows: list[ReportRow] = field(default_factory=list)
    module_flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "module": self.module,
            "ring": self.ring,
            "module_flags": dict(self.module_flags),
            "rows": [row.to_dict() for row in self.rows],
        }

    def check_consistency(self) -> None:
        """Row-wise implication closure; a violation is an internal bug."""
        for row in self.rows:
            f = row.flags
            checks = [
                ("strongly_irreducible", "strongly_two_irreducible"),
                ("strongly_two_irreducible", "two_irreducible"),
                ("irreducible", "two_irreducible"),
            ]
            for weak, strong in checks:
                if f.get(weak) is True and f.get(strong) is False:
                    raise ConsistencyError(
                        f"row {row.index}: {weak} holds but {strong} fails"
                    )
            if f.get("prime") is True and row.radical_index != row.index:
                raise ConsistencyError(
                    f"row {row.index}: prime submodule is not its own radical"
                )


def classify_all(
    module: FiniteModule,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
    analysis: ModuleAnalysis | None = None,
) -> ClassificationReport:
    """Complete classification report over the full submodule lattice."""
    an = analysis if analysis is not None else ModuleAnalysis(module, lattice_cap)
    report = ClassificationReport(module=module.descriptor(), ring=str(module.ring))
    tables = {p: an.classification(p) for p in CLASSIFY_PREDICATES}
    tables.update(
        {p: an.sub_pred(p) for p in ROW_PREDICATES if p not in CLASSIFY_PREDICATES}
    )
    for i, s in enumerate(an.subs):
        flags = {p: tables[p][i] for p in ROW_PREDICATES}
        report.rows.append(
            ReportRow(
                index=i,
                order=s.order,
                gens=s.gens,
                flags=flags,
                colon=an.colon(i),
                annihilator=an.ann(i),
                radical_index=an.radical_index(i),
            )
        )
    for name in MODULE_FLAGS:
        report.module_flags[name] = an.flag(name)
    report.check_consistency()
    return report
