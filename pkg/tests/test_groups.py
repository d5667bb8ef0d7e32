import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cayley_codes.errors import GroupMismatchError, InputError, LimitExceeded
from cayley_codes.groups import (
    AbelianGroup,
    add,
    all_subgroups,
    group_from_primary,
    make_group,
    neg,
    parse_element,
    parse_group,
    primary_decomposition,
    quotient,
    subgroup_from_indices,
    subgroup_generated,
)

from conftest import invariant_factor_groups

factor_lists = st.lists(st.integers(2, 8), min_size=1, max_size=3)


@st.composite
def group_and_elements(draw, count=3):
    G = make_group(draw(factor_lists))
    els = [G.element(tuple(draw(st.integers(0, n - 1)) for n in G.factors)) for _ in range(count)]
    return G, els


def naive_closure(G, gens):
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x + g
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


class TestConstruction:
    @pytest.mark.parametrize("factors, order", [([6, 4], 24), ([2], 2), ([5, 10], 50)])
    def test_orders(self, factors, order):
        assert make_group(factors).order == order

    @pytest.mark.parametrize("bad", [[], [1], [0, 3], [4, -2]])
    def test_rejects_bad_factors(self, bad):
        with pytest.raises(InputError):
            make_group(bad)

    def test_parse_roundtrip(self):
        G = parse_group("6x4")
        assert G.factors == (6, 4) and str(G) == "6x4"
        assert parse_group(" 42 ").factors == (42,)
        for bad in ["", "6x", "x4", "six", "6x0"]:
            with pytest.raises(InputError):
                parse_group(bad)

    def test_element_literals(self):
        G = make_group([6, 4])
        assert parse_element(G, "(5,3)").coords == (5, 3)
        assert parse_element(make_group([42]), "13").coords == (13,)
        with pytest.raises(InputError):
            parse_element(G, "5")
        with pytest.raises(InputError):
            parse_element(G, "(1,2,3)")
        with pytest.raises(InputError):
            G.element(7)


class TestArithmetic:
    def test_examples(self):
        G = make_group([6, 4])
        assert add(G.element((5, 3)), G.element((1, 1))) == G.identity
        assert neg(G.element((1, 2))) == G.element((5, 2))
        Z2 = make_group([2])
        assert (Z2.element(1) + Z2.element(1)).is_identity()

    def test_mixed_groups_refused(self):
        with pytest.raises(GroupMismatchError):
            make_group([6]).element(1) + make_group([7]).element(1)

    def test_index_roundtrip(self):
        G = make_group([3, 4, 2])
        for i in range(G.order):
            assert G.index_of(G.coords_of(i)) == i
        # canonical order is lexicographic on coordinates
        assert [e.coords for e in G.elements()] == sorted(itertools.product(range(3), range(4), range(2)))

    @given(group_and_elements())
    def test_group_axioms(self, data):
        G, (a, b, c) = data
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a + G.identity == a
        assert (a + neg(a)).is_identity()
        assert G.add_index(a.index, b.index) == (a + b).index

    @given(group_and_elements(count=1))
    def test_element_order(self, data):
        G, (a,) = data
        k = a.order()
        assert (a * k).is_identity()
        assert all(not (a * j).is_identity() for j in range(1, k))


class TestSubgroups:
    def test_generated_examples(self):
        Z55 = make_group([5, 5])
        H = subgroup_generated(Z55, [Z55.element((2, 1))])
        assert {e.coords for e in H.elements} == {(0, 0), (2, 1), (4, 2), (1, 3), (3, 4)}
        assert subgroup_generated(Z55, []).is_trivial()
        Z42 = make_group([42])
        assert subgroup_generated(Z42, [Z42.element(6)]).indices == (0, 6, 12, 18, 24, 30, 36)

    @given(group_and_elements(count=2))
    def test_generation_idempotent(self, data):
        G, gens = data
        H = subgroup_generated(G, gens)
        assert subgroup_generated(G, H.elements).indices == H.indices
        assert frozenset(H.elements) == naive_closure(G, gens)

    def test_from_indices_checks_closure(self):
        with pytest.raises(InputError):
            subgroup_from_indices(make_group([6]), [0, 1])

    def test_all_subgroups_examples(self):
        G = make_group([2, 10])
        order4 = all_subgroups(G, order=4)
        assert len(order4) == 1
        assert {e.coords for e in order4[0].elements} == {(0, 0), (0, 5), (1, 0), (1, 5)}
        assert len(all_subgroups(make_group([2]))) == 2

    def test_all_subgroups_count_against_pair_closures(self):
        # 6x4 has rank 2, so every subgroup is generated by two elements
        G = make_group([6, 4])
        els = list(G.elements())
        closures = {naive_closure(G, [a, b]) for a, b in itertools.combinations_with_replacement(els, 2)}
        subs = all_subgroups(G)
        assert len(subs) == len(closures) == 16
        assert {frozenset(H.elements) for H in subs} == closures

    def test_all_subgroups_guard(self):
        with pytest.raises(LimitExceeded):
            all_subgroups(make_group([1024]))


class TestPrimaryDecomposition:
    @pytest.mark.parametrize(
        "factors, expected",
        [([42], {2: [1], 3: [1], 7: [1]}), ([6, 4], {2: [2, 1], 3: [1]}), ([5, 5], {5: [1, 1]})],
    )
    def test_examples(self, factors, expected):
        assert primary_decomposition(make_group(factors)) == expected

    @given(factor_lists)
    def test_roundtrip(self, factors):
        G = make_group(factors)
        d = primary_decomposition(G)
        R = group_from_primary(d)
        assert R.order == G.order
        assert primary_decomposition(R) == d


class TestQuotient:
    def test_examples(self):
        Z42 = make_group([42])
        Q = quotient(Z42, subgroup_generated(Z42, [Z42.element(6)]))
        assert Q.quotient_group.factors == (6,)
        G = make_group([2, 6])
        Q = quotient(G, subgroup_from_indices(G, [G.index_of((0, 0)), G.index_of((1, 3))]))
        assert Q.quotient_group.order == 6
        assert Q.quotient_group.factors == (6,)  # (0,1) has order 6 modulo the kernel

    def test_trivial_kernel_gives_copy(self):
        G = make_group([6, 4])
        Q = quotient(G, subgroup_generated(G, []))
        assert sorted(Q.quotient_group.factors) in ([2, 12], [6, 4], [4, 6])
        assert Q.quotient_group.order == 24

    def test_whole_group_rejected(self):
        G = make_group([6])
        with pytest.raises(InputError):
            quotient(G, subgroup_generated(G, [G.element(1)]))

    @pytest.mark.parametrize("G", invariant_factor_groups(24), ids=str)
    def test_every_subgroup(self, G):
        for H in all_subgroups(G):
            if H.is_whole_group():
                continue
            Q = quotient(G, H)
            assert Q.quotient_group.order * H.order == G.order
            # forward is a homomorphism with kernel H and section is a right inverse
            for a in G.elements():
                assert Q.forward(a).is_identity() == (a in H)
                for b in itertools.islice(G.elements(), 0, None, 3):
                    assert Q.forward(a + b) == Q.forward(a) + Q.forward(b)
            for q in Q.quotient_group.elements():
                assert Q.forward(Q.section(q)) == q
                assert len(Q.preimage(q)) == H.order
