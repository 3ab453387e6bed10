"""Executable encodings of the source theorems, run over generated instances.

Each check separates instance-level hypotheses from the conclusion: instances
failing the hypotheses report hypothesis_not_met (including structural
inapplicability such as a ring of the wrong kind, and degenerate instances
where the statement quantifies over an empty set), and the conclusion is
checked exhaustively otherwise.  Every failure carries a counterexample that
re-verifies independently via replay().  Verdicts and their order are fully
deterministic for a fixed config; timing lives only in the in-memory results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from time import perf_counter

from .arith import distinct_primes
from .classify import ModuleAnalysis, classify_via_elements
from .descriptors import parse_module, parse_ring
from .errors import UsageError
from .lattice import irreducible_decomposition
from .modules import (
    FiniteModule,
    LocalizationMap,
    QuotientMap,
    Submodule,
    build_module,
    ideal_apply,
    span,
    sub_intersect,
    whole_submodule,
)
from .rings import Ring, classify_ideal, ideal_strongly_sum_two_irreducible

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_NOT_MET = "hypothesis_not_met"
SKIPPED = "skipped"

_PRODUCT_FACTOR_CAP = 12  # per-factor order bound for generated product rings


class _Skip(Exception):
    """Raised inside a check when a configured guard rules the instance out."""


@dataclass(frozen=True)
class InstanceConfig:
    """Deterministic instance-family generation bounds."""

    max_order: int = 60
    max_lattice: int = 300
    include_integer: bool = True
    include_residue: bool = True
    include_product: bool = True
    include_noncyclic: bool = False
    seed: int = 0
    element_cap: int = 64  # element-triple quantifiers only run up to this order
    chain_cap: int = 100_000  # guard on enumerated chains per instance


def generate_instances(cfg: InstanceConfig) -> list[FiniteModule]:
    """The deterministic instance suite for a config.

    Z-modules: all cyclic Zn with n <= max_order, plus two-factor Za x Zb when
    include_noncyclic.  Residue-ring modules: Zn over Z/n, plus the small
    probe family Zd over Z/n (d | n, n <= 12) whose members can fail the
    double annihilator condition.  Product-ring modules: Za|Zb and Za|Zb|Zc
    with factor orders between 2 and 12.
    """
    out: list[FiniteModule] = []
    cap = cfg.max_order
    if cfg.include_integer:
        Z = Ring.integers()
        for n in range(1, cap + 1):
            out.append(build_module(Z, [[n]]))
        if cfg.include_noncyclic:
            for a in range(2, cap + 1):
                for b in range(a, cap + 1):
                    if a * b > cap:
                        break
                    out.append(build_module(Z, [[a, b]]))
    if cfg.include_residue:
        for n in range(2, cap + 1):
            out.append(build_module(Ring.residue(n), [[n]]))
        for n in range(2, min(cap, 12) + 1):
            for d in range(2, n):
                if n % d == 0:
                    out.append(build_module(Ring.residue(n), [[d]]))
    if cfg.include_product:
        lim = _PRODUCT_FACTOR_CAP
        for a in range(2, lim + 1):
            for b in range(a, lim + 1):
                if a * b <= cap:
                    out.append(build_module(Ring.product(a, b), [[a], [b]]))
        for a in range(2, lim + 1):
            for b in range(a, lim + 1):
                for c in range(b, lim + 1):
                    if a * b * c <= cap:
                        out.append(build_module(Ring.product(a, b, c), [[a], [b], [c]]))
    seen = set()
    unique = []
    for m in out:
        if m not in seen:
            seen.add(m)
            unique.append(m)
    return unique


class AnalysisCache:
    """Shares ModuleAnalysis objects across instances, quotients, factors."""

    def __init__(self, max_lattice: int):
        self.max_lattice = max_lattice
        self._by_module: dict[FiniteModule, ModuleAnalysis] = {}

    def analysis(self, module: FiniteModule) -> ModuleAnalysis:
        an = self._by_module.get(module)
        if an is None:
            an = ModuleAnalysis(module, self.max_lattice)
            self._by_module[module] = an
        return an


class InstanceContext:
    """One generated module plus every memoized view the checks need."""

    def __init__(self, module: FiniteModule, cfg: InstanceConfig, cache: AnalysisCache):
        self.module = module
        self.cfg = cfg
        self.cache = cache
        self.analysis = cache.analysis(module)
        self._quotients: dict[int, tuple[QuotientMap, ModuleAnalysis]] = {}
        self._localizations: dict[int, tuple[LocalizationMap, ModuleAnalysis]] = {}
        self._factors: list[tuple[FiniteModule, ModuleAnalysis]] | None = None

    @property
    def lattice(self):
        return self.analysis.lattice

    @property
    def subs(self):
        return self.analysis.subs

    def descriptor(self) -> dict:
        return {"module": self.module.descriptor(), "ring": str(self.module.ring)}

    def table(self, predicate: str):
        return self.analysis.classification(predicate)

    def sub(self, predicate: str):
        return self.analysis.sub_pred(predicate)

    def flag(self, name: str):
        return self.analysis.flag(name)

    def proper(self) -> list[int]:
        return self.analysis.proper_indices()

    def nonzero_proper(self) -> list[int]:
        return self.analysis.nonzero_proper_indices()

    def gens_of(self, idx: int) -> list:
        return [list(g) for g in self.subs[idx].gens]

    def restore(self, gens) -> Submodule:
        return span(self.module, [tuple(g) for g in gens])

    def quotient_ctx(self, kernel_idx: int) -> tuple[QuotientMap, ModuleAnalysis]:
        out = self._quotients.get(kernel_idx)
        if out is None:
            proj = QuotientMap(self.module, self.subs[kernel_idx])
            out = (proj, self.cache.analysis(proj.target))
            self._quotients[kernel_idx] = out
        return out

    def localization_ctx(self, p: int) -> tuple[LocalizationMap, ModuleAnalysis]:
        out = self._localizations.get(p)
        if out is None:
            loc = LocalizationMap(self.module, p)
            out = (loc, self.cache.analysis(loc.target))
            self._localizations[p] = out
        return out

    def factor_ctxs(self) -> list[tuple[FiniteModule, ModuleAnalysis]]:
        if self._factors is None:
            from .modules import factor_modules

            self._factors = [
                (fm, self.cache.analysis(fm)) for fm in factor_modules(self.module)
            ]
        return self._factors

    def guard_element_route(self) -> None:
        if self.module.order > self.cfg.element_cap:
            raise _Skip(
                f"element-triple route capped at order {self.cfg.element_cap}"
            )


@dataclass
class TheoremCheckResult:
    theorem_id: str
    instance: dict
    verdict: str
    counterexample: dict | None
    elapsed: float

    def to_dict(self) -> dict:
        # elapsed is intentionally absent: serialized results are byte-deterministic
        return {
            "theorem": self.theorem_id,
            "instance": dict(self.instance),
            "verdict": self.verdict,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class TheoremCheck:
    theorem_id: str
    statement: str
    hypothesis: callable
    conclusion: callable
    replay: callable


# ---------------------------------------------------------------------------
# shared predicate shorthands


def _s2i(ctx):
    return ctx.table("strongly_two_irreducible")


def _si(ctx):
    return ctx.table("strongly_irreducible")


def _twoirr(ctx):
    return ctx.table("two_irreducible")


def _s2i_within(ctx, ambient_mask: int, n_mask: int) -> bool:
    """strongly_two_irreducible of N inside the submodule T given by its mask.

    The submodules of T are exactly the lattice members contained in T, so the
    triple quantifier restricts to those.
    """
    masks = [s.mask for s in ctx.subs if s.mask & ambient_mask == s.mask]
    count = len(masks)
    for i in range(count):
        mi = masks[i]
        for j in range(i, count):
            pij = mi & masks[j]
            for k in range(j, count):
                t = pij & masks[k]
                if t & n_mask == t:
                    pik = mi & masks[k]
                    pjk = masks[j] & masks[k]
                    if (
                        pij & n_mask != pij
                        and pik & n_mask != pik
                        and pjk & n_mask != pjk
                    ):
                        return False
    return True


def _comaximal_prime_triples(ctx):
    primes = ctx.lattice.prime_indices
    join = ctx.lattice.join_table
    whole = ctx.lattice.whole_index
    for a in range(len(primes)):
        for b in range(a + 1, len(primes)):
            if join[primes[a]][primes[b]] != whole:
                continue
            for c in range(b + 1, len(primes)):
                if (
                    join[primes[a]][primes[c]] == whole
                    and join[primes[b]][primes[c]] == whole
                ):
                    yield primes[a], primes[b], primes[c]


def _modular_at(ctx, idx: int) -> bool:
    # (N+T) ^ (N+K) == N + (T^K) whenever T^K lies inside N
    masks = [s.mask for s in ctx.subs]
    join = ctx.lattice.join_table
    meet = ctx.lattice.meet_table
    nm = masks[idx]
    n = len(masks)
    for t in range(n):
        jt = masks[join[idx][t]]
        for k in range(t, n):
            tk = meet[t][k]
            if masks[tk] & nm == masks[tk]:
                if jt & masks[join[idx][k]] != masks[join[idx][tk]]:
                    return False
    return True


def _meet3(ctx, i: int, j: int, k: int) -> int:
    meet = ctx.lattice.meet_table
    return meet[meet[i][j]][k]


def _exactly_two_primes(ctx, idx: int) -> bool:
    primes = ctx.lattice.prime_indices
    meet = ctx.lattice.meet_table
    for a in range(len(primes)):
        for b in range(a + 1, len(primes)):
            if meet[primes[a]][primes[b]] == idx:
                return True
    return False


def _eq4_values(ctx, idx: int) -> dict:
    return {
        "strongly_two_irreducible": _s2i(ctx)[idx],
        "two_absorbing": ctx.sub("two_absorbing")[idx],
        "two_absorbing_primary": ctx.sub("two_absorbing_primary")[idx],
        "prime_or_two_primes": idx in ctx.lattice.prime_indices
        or _exactly_two_primes(ctx, idx),
    }


# ---------------------------------------------------------------------------
# T-DEC


def _dec_hyp(ctx):
    t = _twoirr(ctx)
    return any(t[i] for i in ctx.proper())


def _dec_conclusion(ctx):
    t = _twoirr(ctx)
    for i in ctx.proper():
        if t[i]:
            dec = irreducible_decomposition(ctx.subs[i], ctx.lattice)
            if len(dec) > 2:
                return {
                    "submodule": ctx.gens_of(i),
                    "decomposition": [[list(g) for g in d.gens] for d in dec],
                }
    return None


def _dec_replay(ctx, cex):
    n = ctx.restore(cex["submodule"])
    idx = ctx.lattice.index_of(n)
    if not _twoirr(ctx)[idx]:
        return False
    return len(irreducible_decomposition(n, ctx.lattice)) > 2


# T-2AP


def _tap_hyp(ctx):
    return bool(ctx.flag("multiplication")) and _dec_hyp(ctx)


def _tap_conclusion(ctx):
    t = _twoirr(ctx)
    tap = ctx.sub("two_absorbing_primary")
    for i in ctx.proper():
        if t[i] and not tap[i]:
            return {"submodule": ctx.gens_of(i)}
    return None


def _tap_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    return bool(_twoirr(ctx)[idx]) and not ctx.sub("two_absorbing_primary")[idx]


# T-DIST


def _dist_hyp(ctx):
    return bool(ctx.flag("distributive")) and bool(ctx.proper())


def _dist_conclusion(ctx):
    two, s2i = _twoirr(ctx), _s2i(ctx)
    for i in ctx.proper():
        if two[i] != s2i[i]:
            return {
                "submodule": ctx.gens_of(i),
                "two_irreducible": two[i],
                "strongly_two_irreducible": s2i[i],
            }
    return None


def _dist_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    return _twoirr(ctx)[idx] != _s2i(ctx)[idx]


# T-ELEM


def _elem_hyp(ctx):
    return bool(ctx.proper())


def _elem_conclusion(ctx):
    ctx.guard_element_route()
    via_elements = ctx.analysis.element_s2i_table()
    s2i = _s2i(ctx)
    for i in ctx.proper():
        if via_elements[i] != s2i[i]:
            return {
                "submodule": ctx.gens_of(i),
                "lattice_route": s2i[i],
                "element_route": via_elements[i],
            }
    return None


def _elem_replay(ctx, cex):
    n = ctx.restore(cex["submodule"])
    idx = ctx.lattice.index_of(n)
    return classify_via_elements(n) != _s2i(ctx)[idx]


# T-BASIC-a


def _ba_hyp(ctx):
    s2i = _s2i(ctx)
    return any(s2i[i] for i in ctx.proper())


def _ba_conclusion(ctx):
    s2i, two = _s2i(ctx), _twoirr(ctx)
    for i in ctx.proper():
        if s2i[i] and not two[i]:
            return {"submodule": ctx.gens_of(i)}
    return None


def _ba_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    return bool(_s2i(ctx)[idx]) and not _twoirr(ctx)[idx]


# T-BASIC-b


def _bb_conclusion(ctx):
    s2i = _s2i(ctx)
    for i in ctx.proper():
        if not s2i[i]:
            continue
        n = ctx.subs[i]
        for t_idx in range(len(ctx.subs)):
            t = ctx.subs[t_idx]
            if t_idx == i or t_idx == ctx.lattice.whole_index:
                continue
            if n.issubset(t) and not _s2i_within(ctx, t.mask, n.mask):
                return {
                    "shape": "restriction",
                    "submodule": ctx.gens_of(i),
                    "ambient": ctx.gens_of(t_idx),
                }
        for k_idx in range(len(ctx.subs)):
            k = ctx.subs[k_idx]
            if not k.issubset(n):
                continue
            proj, an_q = ctx.quotient_ctx(k_idx)
            img_idx = an_q.lattice.index_of(proj.image(n))
            if not an_q.classification("strongly_two_irreducible")[img_idx]:
                return {
                    "shape": "quotient",
                    "submodule": ctx.gens_of(i),
                    "kernel": ctx.gens_of(k_idx),
                }
    return None


def _bb_replay(ctx, cex):
    n = ctx.restore(cex["submodule"])
    idx = ctx.lattice.index_of(n)
    if not _s2i(ctx)[idx]:
        return False
    if cex["shape"] == "restriction":
        t = ctx.restore(cex["ambient"])
        return not _s2i_within(ctx, t.mask, n.mask)
    k = ctx.restore(cex["kernel"])
    proj, an_q = ctx.quotient_ctx(ctx.lattice.index_of(k))
    img_idx = an_q.lattice.index_of(proj.image(n))
    return not an_q.classification("strongly_two_irreducible")[img_idx]


# T-BASIC-c


def _bc_hyp(ctx):
    ctx.guard_element_route()
    cond = ctx.analysis.cyclic_condition_table()
    return any(cond[i] for i in ctx.proper())


def _bc_conclusion(ctx):
    ctx.guard_element_route()
    cond = ctx.analysis.cyclic_condition_table()
    s2i = _s2i(ctx)
    for i in ctx.proper():
        if cond[i] and not s2i[i]:
            return {"submodule": ctx.gens_of(i)}
    return None


def _bc_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    cond = ctx.analysis.cyclic_condition_table()
    return bool(cond[idx]) and not _s2i(ctx)[idx]


# T-BASIC-d


def _bd_hyp(ctx):
    waist = ctx.sub("waist")
    return any(waist[i] for i in ctx.proper())


def _bd_conclusion(ctx):
    waist, s2i, two = ctx.sub("waist"), _s2i(ctx), _twoirr(ctx)
    for i in ctx.proper():
        if waist[i] and s2i[i] != two[i]:
            return {
                "submodule": ctx.gens_of(i),
                "strongly_two_irreducible": s2i[i],
                "two_irreducible": two[i],
            }
    return None


def _bd_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    return bool(ctx.sub("waist")[idx]) and _s2i(ctx)[idx] != _twoirr(ctx)[idx]


# T-BASIC-e


def _be_hyp(ctx):
    return any(_modular_at(ctx, i) for i in ctx.proper())


def _be_conclusion(ctx):
    s2i, two = _s2i(ctx), _twoirr(ctx)
    for i in ctx.proper():
        if s2i[i] != two[i] and _modular_at(ctx, i):
            return {
                "submodule": ctx.gens_of(i),
                "strongly_two_irreducible": s2i[i],
                "two_irreducible": two[i],
            }
    return None


def _be_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    return _modular_at(ctx, idx) and _s2i(ctx)[idx] != _twoirr(ctx)[idx]


# T-COMULT


def _comult_sides(ctx):
    ring = ctx.module.ring
    lhs = all(
        ideal_strongly_sum_two_irreducible(ideal)
        for ideal in ring.ideals()
        if not ideal.is_whole and not ideal.is_zero
    )
    s2i = _s2i(ctx)
    rhs = all(s2i[i] for i in ctx.nonzero_proper())
    return lhs, rhs


def _comult_hyp(ctx):
    return ctx.module.ring.is_finite and bool(ctx.flag("strong_comultiplication"))


def _comult_conclusion(ctx):
    lhs, rhs = _comult_sides(ctx)
    if lhs != rhs:
        return {"ideal_side": lhs, "submodule_side": rhs}
    return None


def _comult_replay(ctx, cex):
    lhs, rhs = _comult_sides(ctx)
    return lhs != rhs and lhs == cex["ideal_side"] and rhs == cex["submodule_side"]


# T-COLON


def _colon_hyp(ctx):
    return bool(ctx.flag("multiplication")) and bool(ctx.proper())


def _colon_conclusion(ctx):
    s2i = _s2i(ctx)
    for i in ctx.proper():
        ideal = ctx.analysis.colon(i)
        if s2i[i] != classify_ideal(ideal, "strongly_two_irreducible"):
            return {
                "submodule": ctx.gens_of(i),
                "colon": list(ideal.gens),
                "module_side": s2i[i],
            }
    return None


def _colon_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    ideal = ctx.analysis.colon(idx)
    return _s2i(ctx)[idx] != classify_ideal(ideal, "strongly_two_irreducible")


# T-MEET


def _meet_hyp(ctx):
    si = _si(ctx)
    return any(si[i] for i in ctx.proper())


def _meet_conclusion(ctx):
    si, s2i = _si(ctx), _s2i(ctx)
    meet = ctx.lattice.meet_table
    strong = [i for i in ctx.proper() if si[i]]
    for a in range(len(strong)):
        for b in range(a, len(strong)):
            m = meet[strong[a]][strong[b]]
            if not s2i[m]:
                return {
                    "first": ctx.gens_of(strong[a]),
                    "second": ctx.gens_of(strong[b]),
                }
    return None


def _meet_replay(ctx, cex):
    i = ctx.lattice.index_of(ctx.restore(cex["first"]))
    j = ctx.lattice.index_of(ctx.restore(cex["second"]))
    if not (_si(ctx)[i] and _si(ctx)[j]):
        return False
    return not _s2i(ctx)[ctx.lattice.meet_table[i][j]]


# T-3PRIME


def _threeprime_hyp(ctx):
    if not ctx.flag("multiplication"):
        return False
    return next(_comaximal_prime_triples(ctx), None) is not None


def _threeprime_conclusion(ctx):
    s2i = _s2i(ctx)
    for i, j, k in _comaximal_prime_triples(ctx):
        m = _meet3(ctx, i, j, k)
        if s2i[m]:
            return {
                "primes": [ctx.gens_of(i), ctx.gens_of(j), ctx.gens_of(k)],
            }
    return None


def _threeprime_replay(ctx, cex):
    idxs = [ctx.lattice.index_of(ctx.restore(g)) for g in cex["primes"]]
    join = ctx.lattice.join_table
    whole = ctx.lattice.whole_index
    primes = set(ctx.lattice.prime_indices)
    if not all(i in primes for i in idxs):
        return False
    pairs = ((idxs[0], idxs[1]), (idxs[0], idxs[2]), (idxs[1], idxs[2]))
    if not all(join[a][b] == whole for a, b in pairs):
        return False
    return bool(_s2i(ctx)[_meet3(ctx, *idxs)])


# T-MAX2


def _max2_hyp(ctx):
    if not ctx.flag("multiplication") or not ctx.proper():
        return False
    s2i = _s2i(ctx)
    return all(s2i[i] for i in ctx.proper())


def _max2_conclusion(ctx):
    maximal = ctx.lattice.maximal_indices
    if len(maximal) > 2:
        return {"maximal": [ctx.gens_of(i) for i in maximal]}
    return None


def _max2_replay(ctx, cex):
    return len(ctx.lattice.maximal_indices) > 2


# T-RAD


def _rad_hyp(ctx):
    return bool(ctx.proper())


def _rad_conclusion(ctx):
    an = ctx.analysis
    masks = [s.mask for s in ctx.subs]
    whole = ctx.subs[ctx.lattice.whole_index]
    for ideal in ctx.module.ideal_classes():
        im_idx = ctx.lattice.index_of(ideal_apply(ideal, whole, "product"))
        rad_im = masks[an.radical_index(im_idx)]
        for i in range(len(ctx.subs)):
            in_idx = ctx.lattice.index_of(ideal_apply(ideal, ctx.subs[i], "product"))
            lhs = masks[an.radical_index(in_idx)]
            rhs = masks[an.radical_index(i)] & rad_im
            if lhs != rhs:
                return {"ideal": list(ideal.gens), "submodule": ctx.gens_of(i)}
    return None


def _rad_replay(ctx, cex):
    from .rings import Ideal

    an = ctx.analysis
    masks = [s.mask for s in ctx.subs]
    ideal = Ideal(ctx.module.ring, tuple(cex["ideal"]))
    n = ctx.restore(cex["submodule"])
    i = ctx.lattice.index_of(n)
    whole = ctx.subs[ctx.lattice.whole_index]
    im_idx = ctx.lattice.index_of(ideal_apply(ideal, whole, "product"))
    in_idx = ctx.lattice.index_of(ideal_apply(ideal, n, "product"))
    lhs = masks[an.radical_index(in_idx)]
    rhs = masks[an.radical_index(i)] & masks[an.radical_index(im_idx)]
    return lhs != rhs


# T-EQ4


def _eq4_hyp(ctx):
    if not ctx.flag("multiplication"):
        return False
    radical = ctx.sub("radical")
    return any(radical[i] for i in ctx.proper())


def _eq4_conclusion(ctx):
    radical = ctx.sub("radical")
    for i in ctx.proper():
        if not radical[i]:
            continue
        values = _eq4_values(ctx, i)
        if len(set(values.values())) != 1:
            return {"submodule": ctx.gens_of(i), "values": values}
    return None


def _eq4_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    if not ctx.sub("radical")[idx]:
        return False
    return len(set(_eq4_values(ctx, idx).values())) != 1


# T-PURE3


def _pure3_hyp(ctx):
    return (
        bool(ctx.flag("fully_pure"))
        and bool(ctx.flag("multiplication"))
        and bool(ctx.proper())
    )


def _pure3_values(ctx, idx):
    return {
        "strongly_two_irreducible": _s2i(ctx)[idx],
        "two_absorbing": ctx.sub("two_absorbing")[idx],
        "two_irreducible": _twoirr(ctx)[idx],
    }


def _pure3_conclusion(ctx):
    for i in ctx.proper():
        values = _pure3_values(ctx, i)
        if len(set(values.values())) != 1:
            return {"submodule": ctx.gens_of(i), "values": values}
    return None


def _pure3_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    return len(set(_pure3_values(ctx, idx).values())) != 1


# T-LOC


def _loc_hyp(ctx):
    return ctx.module.ring.is_integers and ctx.module.order > 1


def _loc_scaled_mask(ctx, s: int, idx: int) -> int:
    module = ctx.module
    index = module.element_index
    mask = 0
    for x in ctx.subs[idx].members:
        mask |= 1 << index[module.scale(s, x)]
    return mask


def _loc_lemma_violation(ctx, p: int):
    loc, an_t = ctx.localization_ctx(p)
    exp = ctx.module.exponent
    coprime = [s for s in range(1, exp + 1) if s % p != 0]
    images = [loc.image(s) for s in ctx.subs]
    masks = [s.mask for s in ctx.subs]
    scaled = [
        [_loc_scaled_mask(ctx, s, i) for s in coprime] for i in range(len(ctx.subs))
    ]
    for i in range(len(ctx.subs)):
        for j in range(len(ctx.subs)):
            local = images[i].issubset(images[j])
            mj = masks[j]
            global_s = any(sm & mj == sm for sm in scaled[i])
            if local != global_s:
                return {
                    "shape": "lemma",
                    "prime": p,
                    "first": ctx.gens_of(i),
                    "second": ctx.gens_of(j),
                    "localized": local,
                }
    return None


def _loc_prop_violation(ctx, p: int):
    loc, an_t = ctx.localization_ctx(p)
    s2i = _s2i(ctx)
    primes = set(ctx.lattice.prime_indices)
    target_whole = an_t.lattice.whole_index
    for i in ctx.proper():
        if i not in primes or not s2i[i]:
            continue
        if ctx.analysis.colon(i).gens[0] % p != 0:
            continue  # (N:M) meets S, the proposition does not apply
        img = loc.image(ctx.subs[i])
        img_idx = an_t.lattice.index_of(img)
        if img_idx == target_whole:
            continue
        if not an_t.classification("strongly_two_irreducible")[img_idx]:
            return {"shape": "proposition", "prime": p, "submodule": ctx.gens_of(i)}
    return None


def _loc_conclusion(ctx):
    exp = ctx.module.exponent
    for p in distinct_primes(exp):
        cex = _loc_lemma_violation(ctx, p)
        if cex is not None:
            return cex
        cex = _loc_prop_violation(ctx, p)
        if cex is not None:
            return cex
    return None


def _loc_replay(ctx, cex):
    p = cex["prime"]
    loc, an_t = ctx.localization_ctx(p)
    if cex["shape"] == "lemma":
        i = ctx.lattice.index_of(ctx.restore(cex["first"]))
        j = ctx.lattice.index_of(ctx.restore(cex["second"]))
        exp = ctx.module.exponent
        local = loc.image(ctx.subs[i]).issubset(loc.image(ctx.subs[j]))
        global_s = any(
            _loc_scaled_mask(ctx, s, i) & ctx.subs[j].mask == _loc_scaled_mask(ctx, s, i)
            for s in range(1, exp + 1)
            if s % p != 0
        )
        return local != global_s
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    if idx not in set(ctx.lattice.prime_indices) or not _s2i(ctx)[idx]:
        return False
    img_idx = an_t.lattice.index_of(loc.image(ctx.subs[idx]))
    if img_idx == an_t.lattice.whole_index:
        return False
    return not an_t.classification("strongly_two_irreducible")[img_idx]


# T-CHAIN


def _chain_hyp(ctx):
    return _ba_hyp(ctx)


def _chains(ctx):
    """All nonempty chains of strongly 2-irreducible proper submodules.

    Members are emitted in lattice order; containment implies smaller order,
    so ascending-index extension enumerates every chain exactly once.
    """
    s2i = _s2i(ctx)
    nodes = [i for i in ctx.proper() if s2i[i]]
    subs = ctx.subs
    budget = ctx.cfg.chain_cap

    def extend(chain):
        nonlocal budget
        budget -= 1
        if budget < 0:
            raise _Skip(f"chain enumeration capped at {ctx.cfg.chain_cap}")
        yield chain
        last = chain[-1]
        for j in nodes:
            if j > last and subs[last].issubset(subs[j]):
                yield from extend(chain + (j,))

    for start in nodes:
        yield from extend((start,))


def _chain_conclusion(ctx):
    s2i = _s2i(ctx)
    for chain in _chains(ctx):
        mask = ctx.subs[chain[0]].mask
        for i in chain[1:]:
            mask &= ctx.subs[i].mask
        idx = ctx.lattice.mask_index(mask)
        if not s2i[idx]:
            return {"chain": [ctx.gens_of(i) for i in chain]}
    return None


def _chain_replay(ctx, cex):
    idxs = [ctx.lattice.index_of(ctx.restore(g)) for g in cex["chain"]]
    s2i = _s2i(ctx)
    if not all(s2i[i] for i in idxs):
        return False
    mask = ctx.subs[idxs[0]].mask
    for i in idxs[1:]:
        mask &= ctx.subs[i].mask
    return not s2i[ctx.lattice.mask_index(mask)]


# T-EPI


def _epi_hyp(ctx):
    return ctx.module.order > 1


def _epi_conclusion(ctx):
    s2i = _s2i(ctx)
    for k_idx in range(len(ctx.subs)):
        proj, an_q = ctx.quotient_ctx(k_idx)
        q_s2i = an_q.classification("strongly_two_irreducible")
        kernel = ctx.subs[k_idx]
        for i in ctx.proper():
            if s2i[i] and kernel.issubset(ctx.subs[i]):
                img_idx = an_q.lattice.index_of(proj.image(ctx.subs[i]))
                if not q_s2i[img_idx]:
                    return {
                        "shape": "image",
                        "kernel": ctx.gens_of(k_idx),
                        "submodule": ctx.gens_of(i),
                    }
        for jq in range(len(an_q.subs)):
            if an_q.subs[jq].is_proper and q_s2i[jq]:
                pre_idx = ctx.lattice.index_of(proj.preimage(an_q.subs[jq]))
                if not s2i[pre_idx]:
                    return {
                        "shape": "preimage",
                        "kernel": ctx.gens_of(k_idx),
                        "preimage": ctx.gens_of(pre_idx),
                    }
    return None


def _epi_replay(ctx, cex):
    kernel = ctx.restore(cex["kernel"])
    k_idx = ctx.lattice.index_of(kernel)
    proj, an_q = ctx.quotient_ctx(k_idx)
    q_s2i = an_q.classification("strongly_two_irreducible")
    if cex["shape"] == "image":
        n = ctx.restore(cex["submodule"])
        idx = ctx.lattice.index_of(n)
        if not _s2i(ctx)[idx] or not kernel.issubset(n):
            return False
        return not q_s2i[an_q.lattice.index_of(proj.image(n))]
    pre = ctx.restore(cex["preimage"])
    pre_idx = ctx.lattice.index_of(pre)
    img_idx = an_q.lattice.index_of(proj.image(pre))
    if not q_s2i[img_idx]:
        return False
    return not _s2i(ctx)[pre_idx]


# T-3EQ


def _threeq_hyp(ctx):
    return (
        bool(ctx.flag("multiplication"))
        and bool(ctx.flag("distributive"))
        and bool(ctx.nonzero_proper())
    )


def _threeq_values(ctx, idx):
    ideal = ctx.analysis.colon(idx)
    return {
        "strongly_two_irreducible": _s2i(ctx)[idx],
        "colon_strongly_two_irreducible": classify_ideal(
            ideal, "strongly_two_irreducible"
        ),
        "colon_two_irreducible": classify_ideal(ideal, "two_irreducible"),
    }


def _threeq_conclusion(ctx):
    for i in ctx.nonzero_proper():
        values = _threeq_values(ctx, i)
        if len(set(values.values())) != 1:
            return {"submodule": ctx.gens_of(i), "values": values}
    return None


def _threeq_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    return len(set(_threeq_values(ctx, idx).values())) != 1


# T-PROD2 / T-PRODN


def _prod_expected(ctx, idx: int) -> bool:
    from .modules import decompose_submodule

    parts = decompose_submodule(ctx.subs[idx])
    factors = ctx.factor_ctxs()
    proper_positions = [
        f for f, part in enumerate(parts) if part.order < factors[f][0].order
    ]
    if len(proper_positions) == 1:
        f = proper_positions[0]
        an_f = factors[f][1]
        part_idx = an_f.lattice.index_of(parts[f])
        return bool(an_f.classification("strongly_two_irreducible")[part_idx])
    if len(proper_positions) == 2:
        out = True
        for f in proper_positions:
            an_f = factors[f][1]
            part_idx = an_f.lattice.index_of(parts[f])
            out = out and bool(an_f.classification("strongly_irreducible")[part_idx])
        return out
    return False


def _prod2_hyp(ctx):
    return ctx.module.ring.nfactors() == 2 and bool(ctx.proper())


def _prodn_hyp(ctx):
    return ctx.module.ring.is_product and bool(ctx.proper())


def _prod_conclusion(ctx):
    s2i = _s2i(ctx)
    for i in ctx.proper():
        expected = _prod_expected(ctx, i)
        if bool(s2i[i]) != expected:
            return {
                "submodule": ctx.gens_of(i),
                "whole_module": s2i[i],
                "factorwise": expected,
            }
    return None


def _prod_replay(ctx, cex):
    idx = ctx.lattice.index_of(ctx.restore(cex["submodule"]))
    return bool(_s2i(ctx)[idx]) != _prod_expected(ctx, idx)


# ---------------------------------------------------------------------------
# registry


def _check(theorem_id, statement, hypothesis, conclusion, replay) -> TheoremCheck:
    return TheoremCheck(theorem_id, statement, hypothesis, conclusion, replay)


THEOREMS: dict[str, TheoremCheck] = {
    c.theorem_id: c
    for c in [
        _check(
            "T-DEC",
            "every 2-irreducible proper submodule is irreducible or an "
            "intersection of exactly two irreducible submodules",
            _dec_hyp,
            _dec_conclusion,
            _dec_replay,
        ),
        _check(
            "T-2AP",
            "in a multiplication module, 2-irreducible proper submodules are "
            "2-absorbing primary",
            _tap_hyp,
            _tap_conclusion,
            _tap_replay,
        ),
        _check(
            "T-DIST",
            "in a distributive module the 2-irreducible and strongly "
            "2-irreducible proper submodules coincide",
            _dist_hyp,
            _dist_conclusion,
            _dist_replay,
        ),
        _check(
            "T-ELEM",
            "the lattice definition of strongly 2-irreducible agrees with the "
            "element-triple characterization",
            _elem_hyp,
            _elem_conclusion,
            _elem_replay,
        ),
        _check(
            "T-BASIC-a",
            "strongly 2-irreducible implies 2-irreducible",
            _ba_hyp,
            _ba_conclusion,
            _ba_replay,
        ),
        _check(
            "T-BASIC-b",
            "strongly 2-irreducible submodules stay so in intermediate "
            "submodules and in quotients by smaller submodules",
            _ba_hyp,
            _bb_conclusion,
            _bb_replay,
        ),
        _check(
            "T-BASIC-c",
            "the cyclic-triple condition implies strongly 2-irreducible",
            _bc_hyp,
            _bc_conclusion,
            _bc_replay,
        ),
        _check(
            "T-BASIC-d",
            "for waist submodules, 2-irreducible and strongly 2-irreducible "
            "coincide",
            _bd_hyp,
            _bd_conclusion,
            _bd_replay,
        ),
        _check(
            "T-BASIC-e",
            "under the modularity condition at N, 2-irreducible and strongly "
            "2-irreducible coincide",
            _be_hyp,
            _be_conclusion,
            _be_replay,
        ),
        _check(
            "T-COMULT",
            "over a strong comultiplication module, all nonzero proper ideals "
            "sum-2-irreducible in R iff all nonzero proper submodules strongly "
            "2-irreducible",
            _comult_hyp,
            _comult_conclusion,
            _comult_replay,
        ),
        _check(
            "T-COLON",
            "in a finitely generated multiplication module, N is strongly "
            "2-irreducible iff (N:M) is a strongly 2-irreducible ideal",
            _colon_hyp,
            _colon_conclusion,
            _colon_replay,
        ),
        _check(
            "T-MEET",
            "the intersection of two strongly irreducible submodules is "
            "strongly 2-irreducible",
            _meet_hyp,
            _meet_conclusion,
            _meet_replay,
        ),
        _check(
            "T-3PRIME",
            "in a multiplication module, the intersection of three pairwise "
            "comaximal primes is never strongly 2-irreducible",
            _threeprime_hyp,
            _threeprime_conclusion,
            _threeprime_replay,
        ),
        _check(
            "T-MAX2",
            "a multiplication module whose proper submodules are all strongly "
            "2-irreducible has at most two maximal submodules",
            _max2_hyp,
            _max2_conclusion,
            _max2_replay,
        ),
        _check(
            "T-RAD",
            "rad(IN) equals rad(N) intersect rad(IM)",
            _rad_hyp,
            _rad_conclusion,
            _rad_replay,
        ),
        _check(
            "T-EQ4",
            "on radical submodules of finitely generated multiplication "
            "modules, strongly 2-irreducible, 2-absorbing, 2-absorbing "
            "primary, and prime-or-meet-of-two-primes agree",
            _eq4_hyp,
            _eq4_conclusion,
            _eq4_replay,
        ),
        _check(
            "T-PURE3",
            "on fully pure multiplication modules, strongly 2-irreducible, "
            "2-absorbing, and 2-irreducible agree",
            _pure3_hyp,
            _pure3_conclusion,
            _pure3_replay,
        ),
        _check(
            "T-LOC",
            "localization transports inclusions exactly and preserves strongly "
            "2-irreducible under the stated hypotheses",
            _loc_hyp,
            _loc_conclusion,
            _loc_replay,
        ),
        _check(
            "T-CHAIN",
            "the intersection of a chain of strongly 2-irreducible submodules "
            "is strongly 2-irreducible",
            _chain_hyp,
            _chain_conclusion,
            _chain_replay,
        ),
        _check(
            "T-EPI",
            "canonical projections carry strongly 2-irreducible submodules "
            "forward over their kernel and backward always",
            _epi_hyp,
            _epi_conclusion,
            _epi_replay,
        ),
        _check(
            "T-3EQ",
            "on nonzero proper submodules of finitely generated multiplication "
            "distributive modules, strongly 2-irreducible matches both colon "
            "ideal classifications",
            _threeq_hyp,
            _threeq_conclusion,
            _threeq_replay,
        ),
        _check(
            "T-PROD2",
            "over a two-factor product ring, strongly 2-irreducible submodules "
            "are exactly the factorwise trichotomy cases",
            _prod2_hyp,
            _prod_conclusion,
            _prod_replay,
        ),
        _check(
            "T-PRODN",
            "over any finite product ring, strongly 2-irreducible submodules "
            "are exactly the factorwise trichotomy cases",
            _prodn_hyp,
            _prod_conclusion,
            _prod_replay,
        ),
    ]
}


# ---------------------------------------------------------------------------
# drivers


def _run_check(
    check: TheoremCheck, ctx: InstanceContext, enforce_hypotheses: bool
) -> TheoremCheckResult:
    start = perf_counter()
    verdict = PASS
    cex = None
    try:
        hypothesis_met = check.hypothesis(ctx)
        if enforce_hypotheses and not hypothesis_met:
            verdict = HYPOTHESIS_NOT_MET
        else:
            cex = check.conclusion(ctx)
            verdict = PASS if cex is None else FAIL
    except _Skip:
        verdict = SKIPPED
    return TheoremCheckResult(
        theorem_id=check.theorem_id,
        instance=ctx.descriptor(),
        verdict=verdict,
        counterexample=cex,
        elapsed=perf_counter() - start,
    )


def build_contexts(cfg: InstanceConfig) -> list[InstanceContext]:
    cache = AnalysisCache(cfg.max_lattice)
    return [InstanceContext(m, cfg, cache) for m in generate_instances(cfg)]


def verify(
    theorem_id: str,
    cfg: InstanceConfig | None = None,
    *,
    enforce_hypotheses: bool = True,
    contexts: list[InstanceContext] | None = None,
) -> list[TheoremCheckResult]:
    """Run one theorem check over the generated instance suite."""
    if theorem_id not in THEOREMS:
        raise UsageError(
            f"unknown theorem id {theorem_id!r}; known: {', '.join(THEOREMS)}"
        )
    cfg = cfg if cfg is not None else InstanceConfig()
    if contexts is None:
        contexts = build_contexts(cfg)
    check = THEOREMS[theorem_id]
    return [_run_check(check, ctx, enforce_hypotheses) for ctx in contexts]


@dataclass
class VerifySummary:
    results: list[TheoremCheckResult] = field(default_factory=list)

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.results:
            per = out.setdefault(
                r.theorem_id,
                {PASS: 0, FAIL: 0, HYPOTHESIS_NOT_MET: 0, SKIPPED: 0},
            )
            per[r.verdict] += 1
        return out

    @property
    def failures(self) -> list[TheoremCheckResult]:
        return [r for r in self.results if r.verdict == FAIL]

    def to_dict(self) -> dict:
        counts = self.counts()
        return {
            "theorems": [
                {"id": tid, **counts[tid]} for tid in counts
            ],
            "failures": [r.to_dict() for r in self.failures],
            "totals": {
                verdict: sum(c[verdict] for c in counts.values())
                for verdict in (PASS, FAIL, HYPOTHESIS_NOT_MET, SKIPPED)
            },
        }


def verify_all(
    cfg: InstanceConfig | None = None, *, enforce_hypotheses: bool = True
) -> VerifySummary:
    """Run every registered theorem over one shared instance suite."""
    cfg = cfg if cfg is not None else InstanceConfig()
    contexts = build_contexts(cfg)
    summary = VerifySummary()
    for theorem_id in THEOREMS:
        summary.results.extend(
            verify(
                theorem_id,
                cfg,
                enforce_hypotheses=enforce_hypotheses,
                contexts=contexts,
            )
        )
    return summary


def replay_counterexample(
    result: TheoremCheckResult, cfg: InstanceConfig | None = None
) -> bool:
    """Re-verify a failure from scratch; True means the violation reproduces."""
    if result.counterexample is None:
        return False
    cfg = cfg if cfg is not None else InstanceConfig()
    module = parse_module(result.instance["module"], parse_ring(result.instance["ring"]))
    ctx = InstanceContext(module, cfg, AnalysisCache(cfg.max_lattice))
    return THEOREMS[result.theorem_id].replay(ctx, result.counterexample)
