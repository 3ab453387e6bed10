"""Lattice enumeration, module predicates, decompositions."""

import pytest

from irredlab.arith import divisors
from irredlab.errors import ConsistencyError, DomainError, ResourceError
from irredlab.lattice import (
    enumerate_submodules,
    irreducible_decomposition,
    maximal_submodules,
    module_predicate,
)
from irredlab.modules import build_module, span, sub_combine, zero_submodule
from irredlab.rings import Ring

Z = Ring.integers()


def _mk(*orders, ring=Z):
    return build_module(ring, [list(orders)])


def test_counts_small():
    assert len(enumerate_submodules(_mk(12))) == 6
    assert len(enumerate_submodules(_mk(2, 2))) == 5
    assert len(enumerate_submodules(_mk(4, 2))) == 8


@pytest.mark.parametrize("n", range(1, 201))
def test_cyclic_lattice_size_is_divisor_count(n):
    assert len(enumerate_submodules(_mk(n))) == len(divisors(n))


def test_lattice_is_closed_and_sorted():
    for module in (_mk(12), _mk(4, 2), _mk(6, 2),
                   build_module(Ring.product(4, 6), [[4], [6]])):
        lat = enumerate_submodules(module)
        orders = [s.order for s in lat.subs]
        assert orders == sorted(orders)
        assert lat.subs[0].is_zero and lat.subs[-1].is_whole
        masks = {s.mask for s in lat.subs}
        for a in lat.subs:
            a.assert_closed()
            for b in lat.subs:
                assert sub_combine(a, b, "intersect").mask in masks
                assert sub_combine(a, b, "sum").mask in masks


def test_lattice_cap():
    with pytest.raises(ResourceError):
        enumerate_submodules(_mk(2, 2), max_subs=4)
    with pytest.raises(ResourceError):
        enumerate_submodules(build_module(Z, [[2, 2, 2, 2, 2]]))


def test_maximal_submodules():
    l12 = enumerate_submodules(_mk(12))
    assert sorted(s.order for s in maximal_submodules(l12)) == [4, 6]
    lk = enumerate_submodules(_mk(2, 2))
    assert [s.order for s in maximal_submodules(lk)] == [2, 2, 2]
    l30 = enumerate_submodules(_mk(30))
    assert sorted(s.order for s in maximal_submodules(l30)) == [6, 10, 15]


def test_every_proper_below_some_maximal():
    for module in (_mk(24), _mk(4, 2), _mk(6, 6)):
        lat = enumerate_submodules(module)
        maxima = maximal_submodules(lat)
        for s in lat.subs:
            if s.is_proper:
                assert any(s.issubset(m) for m in maxima)


def test_maximal_of_multiplication_instances_are_prime():
    for module in (_mk(12), _mk(30), _mk(16),
                   build_module(Ring.residue(18), [[18]])):
        lat = enumerate_submodules(module)
        if not module_predicate(module, lat, "multiplication"):
            continue
        primes = {lat.subs[i].mask for i in lat.prime_indices}
        for m in maximal_submodules(lat):
            assert m.mask in primes


def test_module_predicates():
    z12 = _mk(12)
    l12 = enumerate_submodules(z12)
    assert module_predicate(z12, l12, "multiplication") is True
    klein = _mk(2, 2)
    lk = enumerate_submodules(klein)
    assert module_predicate(klein, lk, "distributive") is False
    assert module_predicate(klein, lk, "multiplication") is False
    r12 = build_module(Ring.residue(12), [[12]])
    lr = enumerate_submodules(r12)
    assert module_predicate(r12, lr, "strong_comultiplication") is True
    z30 = _mk(30)
    l30 = enumerate_submodules(z30)
    assert module_predicate(z30, l30, "fully_pure") is True
    assert module_predicate(z12, l12, "fully_pure") is False
    with pytest.raises(DomainError):
        module_predicate(z12, l12, "dac")  # infinitely many ideals over Z
    with pytest.raises(DomainError):
        module_predicate(z12, l12, "sorted")
    # a residue module smaller than its ring fails the double annihilator
    small = build_module(Ring.residue(4), [[2]])
    ls = enumerate_submodules(small)
    assert module_predicate(small, ls, "comultiplication") is True
    assert module_predicate(small, ls, "dac") is False


def test_irreducible_decomposition():
    z12 = _mk(12)
    l12 = enumerate_submodules(z12)
    dec = irreducible_decomposition(span(z12, [(6,)]), l12)
    assert sorted(s.order for s in dec) == [4, 6]  # 3Z12 and 2Z12
    assert irreducible_decomposition(span(z12, [(4,)]), l12) == [span(z12, [(4,)])]
    klein = _mk(2, 2)
    lk = enumerate_submodules(klein)
    dec0 = irreducible_decomposition(zero_submodule(klein), lk)
    assert len(dec0) == 2 and all(s.order == 2 for s in dec0)
    with pytest.raises(DomainError):
        irreducible_decomposition(l12.subs[l12.whole_index], l12)


def test_decomposition_invariants():
    from irredlab.classify import classify

    for module in (_mk(24), _mk(30), _mk(4, 2), _mk(6, 2)):
        lat = enumerate_submodules(module)
        for n in lat.subs:
            if not n.is_proper:
                continue
            dec = irreducible_decomposition(n, lat)
            mask = dec[0].mask
            for d in dec[1:]:
                mask &= d.mask
            assert mask == n.mask
            for d in dec:
                assert classify(d, lat, "irreducible")
            # irredundance: dropping any member strictly enlarges the meet
            if len(dec) > 1:
                for skip in range(len(dec)):
                    rest = [d for i, d in enumerate(dec) if i != skip]
                    m = rest[0].mask
                    for d in rest[1:]:
                        m &= d.mask
                    assert m != n.mask
