import itertools

import pytest
from hypothesis import given, strategies as st

from hypercover import (
    BlockStructure,
    BlockSymmetricSet,
    DomainError,
    SymmetricSet,
    block_index_complexity,
    index_complexity_bruteforce,
    out_measure,
    outer_intact_check,
    pdc_check,
    poset_extremes,
    prefix_set,
)
from hypercover.blockcore import index_lattice, is_downward_closed

from conftest import all_weight_sets


def block_sets(sizes):
    st_ = BlockStructure(sizes)
    tuples = st_.all_tuples()
    for mask in range(1 << len(tuples)):
        yield BlockSymmetricSet(st_, frozenset(t for i, t in enumerate(tuples) if mask >> i & 1))


def extremes_bruteforce(members, q):
    members = set(members)
    box = list(itertools.product(*(range(b + 3) for b in q)))

    def le(x, y):
        return all(a <= b for a, b in zip(x, y))

    inn = {z for z in members if not any(w != z and le(z, w) for w in members)}
    non = [z for z in box if z not in members]
    out = {z for z in non if not any(w != z and le(w, z) for w in non)}
    return inn, out


# ---------------------------------------------------------------- examples


def test_poset_extremes_examples():
    inn, out = poset_extremes({(0, 0), (0, 1), (1, 0)}, (1, 1))
    assert inn == {(0, 1), (1, 0)}
    assert out == {(1, 1), (2, 0), (0, 2)}
    box = set(itertools.product(range(3), range(2), range(4)))
    inn, out = poset_extremes(box, (2, 1, 3))
    assert inn == {(2, 1, 3)}
    assert out == {(3, 0, 0), (0, 2, 0), (0, 0, 4)}
    assert poset_extremes(set(), (1, 2)) == (set(), {(0, 0)})


def test_pdc_examples():
    for S1 in all_weight_sets(2):
        for S2 in all_weight_sets(1):
            if S1.is_empty or S2.is_empty:
                continue
            res = pdc_check(BlockSymmetricSet.grid([S1, S2]))
            assert res.order == ("asc", "asc")
    S = BlockSymmetricSet(BlockStructure((1, 1)), frozenset({(0, 0), (0, 1), (1, 0)}))
    assert pdc_check(S).order == ("asc", "asc")
    lat, _ = index_lattice(S, ("desc", "asc"))
    assert lat.members == {(0, 0), (1, 0), (1, 1)}
    assert not is_downward_closed(lat.members)
    assert pdc_check(S.complement()) is not None


def test_non_pdc_exists():
    S = BlockSymmetricSet(BlockStructure((2, 2)), frozenset({(0, 0), (1, 1), (2, 2)}))
    assert pdc_check(S) is None


def test_prefix_set_examples():
    S = BlockSymmetricSet.grid([SymmetricSet(1, (0, 1)), SymmetricSet(5, (0, 2, 4))])
    assert prefix_set(S, ("asc", "desc"), 1, 2) == S.projection(1)
    assert prefix_set(S, ("asc", "asc"), 0, 0).weights == (0,)
    assert prefix_set(S, ("asc", "desc"), 1, 1).weights == (2, 4)
    with pytest.raises(DomainError):
        prefix_set(S, ("asc", "asc"), 1, 3)


def test_outer_intact_examples():
    for w1, w2 in itertools.product(range(4), range(3)):
        L = BlockSymmetricSet.layer((3, 2), (w1, w2))
        assert outer_intact_check(L, ("asc", "asc"))
        assert block_index_complexity(L, ("asc", "asc")) == min(w1, 3 - w1) + min(w2, 2 - w2)
    grid = BlockSymmetricSet.grid([SymmetricSet(3, (0, 2)), SymmetricSet(2, (1,))])
    assert outer_intact_check(grid, ("asc", "asc"))
    S = BlockSymmetricSet(BlockStructure((3, 3)), frozenset({(0, 0), (0, 3), (3, 0)}))
    res = pdc_check(S)
    assert res is not None
    # innext = {(0,1),(1,0)}; prefixes {0} lose the outer interval of {0,3}
    assert outer_intact_check(S, res.order) is False
    bad = BlockSymmetricSet(BlockStructure((2, 2)), frozenset({(0, 0), (1, 1), (2, 2)}))
    with pytest.raises(DomainError):
        outer_intact_check(bad, ("asc", "asc"))


def test_block_index_examples():
    L = BlockSymmetricSet.layer((2, 2), (1, 1))
    assert block_index_complexity(L, ("asc", "asc")) == 2
    assert index_complexity_bruteforce(L.to_pointset()).value == 2
    for S in all_weight_sets(4):
        if S.is_empty:
            continue
        B = BlockSymmetricSet.grid([S])
        order = pdc_check(B).order
        assert block_index_complexity(B, order) == out_measure(S)
    with pytest.raises(DomainError):
        block_index_complexity(BlockSymmetricSet(BlockStructure((1, 1)), frozenset()), ("asc", "asc"))


# ---------------------------------------------------------------- exhaustive invariants


SIZES = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (1, 1, 1), (1, 1, 2)]


@pytest.mark.parametrize("sizes", SIZES)
def test_pdc_box_decomposition_and_complement(sizes):
    for S in block_sets(sizes):
        res = pdc_check(S)
        if res is None:
            continue
        if all(s == 1 for s in sizes):
            assert pdc_check(S.complement()) is not None
        if S.is_empty:
            continue
        inn, out = poset_extremes(res.lattice.members, res.lattice.q)
        assert (inn, out) == extremes_bruteforce(res.lattice.members, res.lattice.q)
        union = set()
        for z in inn:
            boxes = [prefix_set(S, res.order, j, z[j]).points() for j in range(S.k)]
            union |= {sum(parts, ()) for parts in itertools.product(*boxes)}
        assert union == set(S.points())


def test_complement_of_pdc_layer_need_not_be_pdc():
    # with only ascending/descending orders available, a middle weight that
    # is missing from one slice cannot be placed consistently
    L = BlockSymmetricSet.layer((1, 2), (0, 1))
    assert pdc_check(L) is not None
    assert pdc_check(L.complement()) is None


def test_complement_closure_counts():
    counts = {}
    for sizes in [(1, 2), (2, 2)]:
        pdc = [S for S in block_sets(sizes) if pdc_check(S) is not None]
        counts[sizes] = (len(pdc), sum(pdc_check(S.complement()) is None for S in pdc))
    assert counts == {(1, 2): (42, 4), (2, 2): (154, 52)}


@pytest.mark.parametrize("sizes", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 3)])
def test_block_index_matches_bruteforce(sizes):
    found = 0
    for S in block_sets(sizes):
        if S.is_empty:
            continue
        for order in itertools.product(("asc", "desc"), repeat=2):
            lat, _ = index_lattice(S, order)
            if not is_downward_closed(lat.members) or not outer_intact_check(S, order):
                continue
            assert block_index_complexity(S, order) == index_complexity_bruteforce(S.to_pointset()).value
            found += 1
            break
    assert found > 0


# ---------------------------------------------------------------- properties


@st.composite
def member_sets(draw):
    k = draw(st.integers(1, 3))
    q = tuple(draw(st.integers(0, 3)) for _ in range(k))
    box = list(itertools.product(*(range(b + 1) for b in q)))
    members = draw(st.sets(st.sampled_from(box)))
    return members, q


@given(member_sets())
def test_poset_extremes_antichains(data):
    members, q = data
    inn, out = poset_extremes(members, q)

    def le(x, y):
        return all(a <= b for a, b in zip(x, y))

    for A in (inn, out):
        for x, y in itertools.permutations(A, 2):
            assert not le(x, y)
    for m in members:
        assert any(le(m, z) for z in inn)
    for z in itertools.product(*(range(b + 3) for b in q)):
        if z not in members:
            assert any(le(o, z) for o in out)
