import itertools
import random

import pytest

from cayley_codes.errors import InputError, LimitExceeded, PreconditionError
from cayley_codes.groups import all_subgroups, make_group, subgroup_from_indices, subgroup_generated
from cayley_codes.search import (
    SearchLimits,
    admits_code,
    canonical_code_from_moduli,
    check_sufficiency_moduli,
    enumerate_codes,
    lift_codes,
    moduli_candidates,
    reduce_instance,
    subgroup_code_connection_set,
)
from cayley_codes.subsets import GroupSubset, generates, parse_subset
from cayley_codes.tiling import is_code, is_perfect_code, is_total_perfect_code

from conftest import invariant_factor_groups, random_connection_set

Z42_S = "{1,5,6,7,11,12,13,17,18,19,23,24,25,29,30,31,35,36,37,41}"


def brute_force_codes(G, S, total):
    """All codes by the neighbourhood definition over every subset of the forced size."""
    B = set(S.indices) | (set() if total else {0})
    if G.order % len(B):
        return []
    out = []
    for C in itertools.combinations(range(G.order), G.order // len(B)):
        hits = [0] * G.order
        for c in C:
            for b in B:
                hits[G.add_index(c, b)] += 1
        if all(h == 1 for h in hits):
            out.append(C)
    return out


class TestEnumerate:
    def test_z6(self):
        Z6 = make_group([6])
        res = enumerate_codes(Z6, GroupSubset.of(Z6, [1, 5]))
        assert [str(c) for c in res.codes] == ["{0,3}", "{1,4}", "{2,5}"]
        assert res.exhaustive and res.admits

    def test_four_cycle_total(self):
        Z4 = make_group([4])
        res = enumerate_codes(Z4, GroupSubset.of(Z4, [1, 3]), total=True)
        assert [c.indices for c in res.codes] == [(0, 1), (0, 3), (1, 2), (2, 3)]

    def test_z5x5_contains_subgroup(self):
        G = make_group([5, 5])
        S = GroupSubset.of(G, [(1, 1), (1, 4), (4, 1), (4, 4)])
        H = subgroup_generated(G, [G.element((2, 1))]).as_subset()
        assert H in enumerate_codes(G, S).codes

    def test_size_mismatch_is_exhaustive_empty(self):
        Z7 = make_group([7])
        res = enumerate_codes(Z7, GroupSubset.of(Z7, [1, 6]))
        assert res.codes == () and res.exhaustive and res.admits is False

    @pytest.mark.parametrize("G", [g for g in invariant_factor_groups(12) if g.order >= 4], ids=str)
    def test_against_brute_force(self, G):
        rng = random.Random(G.order)
        for _ in range(12):
            S = random_connection_set(G, rng)
            for total in (False, True):
                got = [c.indices for c in enumerate_codes(G, S, total).codes]
                assert got == brute_force_codes(G, S, total)

    def test_translation_closure(self):
        rng = random.Random(5)
        for factors in ([12], [2, 6], [4, 4], [18], [3, 6]):
            G = make_group(factors)
            for _ in range(6):
                S = random_connection_set(G, rng)
                codes = set(enumerate_codes(G, S).codes)
                assert all(c.translate(g) in codes for c in codes for g in G.elements())

    def test_identity_orbit_mode(self):
        Z42 = make_group([42])
        S = parse_subset(Z42, Z42_S)
        full = enumerate_codes(Z42, S)
        orbit = enumerate_codes(Z42, S, limits=SearchLimits(mode="identity-orbit"))
        assert all(0 in c.index_set for c in orbit.codes)
        assert orbit.orbit_size() == len(full.codes) == 147

    def test_node_limit_flags_partial(self):
        Z42 = make_group([42])
        res = enumerate_codes(Z42, parse_subset(Z42, Z42_S), limits=SearchLimits(max_nodes=20))
        assert not res.exhaustive and res.limit_hit == "max-nodes"
        assert len(res.codes) < 147

    def test_order_guard(self, monkeypatch):
        Z = make_group([30])
        S = GroupSubset.of(Z, [1, 29])
        with pytest.raises(LimitExceeded):
            enumerate_codes(Z, S, limits=SearchLimits(max_order=20))
        monkeypatch.setenv("CAYLEY_CODES_MAX_ORDER", "10")
        with pytest.raises(LimitExceeded):
            enumerate_codes(Z, S)
        monkeypatch.setenv("CAYLEY_CODES_MAX_ORDER", "ten")
        with pytest.raises(InputError):
            SearchLimits()

    def test_invalid_inputs(self):
        Z6 = make_group([6])
        with pytest.raises(InputError):
            enumerate_codes(Z6, GroupSubset.of(Z6, [1]))
        with pytest.raises(InputError):
            SearchLimits(mode="fast")

    def test_admits_code(self):
        Z9 = make_group([9])
        assert admits_code(Z9, GroupSubset.of(Z9, [1, 8])).indices == (0, 3, 6)
        assert admits_code(Z9, GroupSubset.of(Z9, [1, 8]), total=True) is None
        with pytest.raises(LimitExceeded):
            admits_code(make_group([60]), GroupSubset.of(make_group([60]), [1, 2, 58, 59]),
                        limits=SearchLimits(max_nodes=2))


class TestModuli:
    def test_canonical_examples(self):
        G = make_group([6, 4])
        assert {e.coords for e in canonical_code_from_moduli(G, (6, 1))} == {(0, j) for j in range(4)}
        assert len(canonical_code_from_moduli(G, (1, 1))) == 24
        assert canonical_code_from_moduli(make_group([12]), [6]).indices == (0, 6)
        with pytest.raises(InputError):
            canonical_code_from_moduli(G, (5, 1))

    def test_sufficiency_examples(self):
        G = make_group([6, 4])
        S = parse_subset(G, "{(1,1),(1,2),(3,2),(5,2),(5,3)}")
        assert moduli_candidates(G, 6) == [(3, 2), (6, 1)]
        assert check_sufficiency_moduli(S) is None
        Z12 = make_group([12])
        assert check_sufficiency_moduli(GroupSubset.of(Z12, [1, 3, 5, 7, 9, 11]), total=True) is None
        Z9 = make_group([9])
        assert check_sufficiency_moduli(GroupSubset.of(Z9, [1, 8])) == (3,)

    def test_witness_implies_code(self):
        rng = random.Random(11)
        for G in invariant_factor_groups(30, 4):
            for _ in range(5):
                S = random_connection_set(G, rng)
                for total in (False, True):
                    m = check_sufficiency_moduli(S, total)
                    if m is not None:
                        assert is_code(G, S, canonical_code_from_moduli(G, m), total)
                        assert enumerate_codes(G, S, total).codes


class TestReduction:
    def test_z42(self):
        Z42 = make_group([42])
        S = parse_subset(Z42, Z42_S)
        R = reduce_instance(Z42, S)
        assert R.kernel.indices == (0, 6, 12, 18, 24, 30, 36)
        assert R.reduced.group.factors == (6,)
        assert str(R.reduced.connection_set) == "{1,5}"
        Q = R.quotient_map
        reduced = GroupSubset(R.reduced.group, tuple(Q.forward(Z42.element(x)).index for x in (13, 22)))
        lifted = lift_codes(R, [reduced])
        assert len(lifted) == 49 == R.lift_multiplicity(2)
        assert GroupSubset.of(Z42, [13, 22]) in lifted

    def test_identity_reduction(self):
        Z8 = make_group([8])
        S = GroupSubset.of(Z8, [1, 7])
        R = reduce_instance(Z8, S)
        assert R.is_identity and R.reduced == R.original
        codes = enumerate_codes(Z8, S).codes
        assert lift_codes(R, codes) == list(codes)

    def test_refusals(self):
        Z6 = make_group([6])
        with pytest.raises(PreconditionError):
            reduce_instance(Z6, GroupSubset.of(Z6, [1, 5]), total=True)
        with pytest.raises(PreconditionError):
            reduce_instance(Z6, GroupSubset.of(Z6, [2, 4]))
        with pytest.raises(PreconditionError):
            reduce_instance(Z6, GroupSubset.of(Z6, [1, 2, 3, 4, 5]))
        R = reduce_instance(make_group([42]), parse_subset(make_group([42]), Z42_S))
        with pytest.raises(InputError):
            lift_codes(R, [GroupSubset(R.reduced.group, (0, 1))])

    def test_counting_law_on_small_instances(self):
        # periodic S0 are rare at random, so build them as unions of cosets of a subgroup
        rng = random.Random(3)
        checked = 0
        for G in invariant_factor_groups(48, 6):
            proper = [h for h in all_subgroups(G) if 1 < h.order < G.order]
            for H in rng.sample(proper, k=min(3, len(proper))):
                for _ in range(4):
                    S = _periodic_connection_set(G, H, rng)
                    if S is None or not generates(S) or len(S) == G.order - 1:
                        continue
                    R = reduce_instance(G, S)
                    direct = enumerate_codes(G, S).codes
                    reduced = enumerate_codes(R.reduced.group, R.reduced.connection_set).codes
                    assert bool(direct) == bool(reduced)
                    assert len(direct) == sum(R.lift_multiplicity(len(c)) for c in reduced)
                    assert lift_codes(R, reduced) == list(direct)
                    checked += 1
        assert checked > 40


def _periodic_connection_set(G, H, rng):
    """S with S u {0} a union of H-cosets (H itself included), inverse-closed."""
    cosets = {}
    for x in range(G.order):
        key = min(G.translate_indices(H.indices, x).tolist())
        cosets.setdefault(key, set()).add(x)
    reps = [k for k in cosets if k not in H.index_set]
    pairs = {tuple(sorted((r, min(cosets[min(G.translate_indices(H.indices, int(G.neg_index[r])).tolist())])))) for r in reps}
    pairs = sorted(pairs)
    if not pairs:
        return None
    pick = rng.sample(pairs, rng.randint(1, len(pairs)))
    members = set(H.indices) - {0}
    for a, b in pick:
        members |= cosets[a] | cosets[b]
    return GroupSubset(G, tuple(members))


class TestSubgroupCodes:
    def test_total_2x10(self):
        G = make_group([2, 10])
        H = subgroup_from_indices(G, [G.index_of(c) for c in [(0, 0), (0, 5), (1, 0), (1, 5)]])
        S = subgroup_code_connection_set(G, H, total=True)
        assert len(S) == 5
        assert is_total_perfect_code(G, S, H.as_subset())

    def test_perfect_z9(self):
        G = make_group([9])
        H = subgroup_generated(G, [G.element(3)])
        S = subgroup_code_connection_set(G, H)
        assert is_perfect_code(G, S, H.as_subset())
        assert sorted(x % 3 for x in S.with_identity().indices) == [0, 1, 2]

    def test_whole_group_rejected(self):
        G = make_group([4])
        with pytest.raises(PreconditionError):
            subgroup_code_connection_set(G, subgroup_generated(G, [G.element(1)]))

    def test_parity_preconditions(self):
        G = make_group([2, 2])
        H = subgroup_generated(G, [G.element((1, 0))])
        with pytest.raises(PreconditionError):
            subgroup_code_connection_set(G, H)
        Z9 = make_group([9])
        with pytest.raises(PreconditionError):
            subgroup_code_connection_set(Z9, subgroup_generated(Z9, [Z9.element(3)]), total=True)

    def test_every_admissible_subgroup(self):
        for G in invariant_factor_groups(36, 2):
            for H in all_subgroups(G):
                if H.is_whole_group():
                    continue
                idx = G.order // H.order
                if H.order % 2 or idx % 2:
                    S = subgroup_code_connection_set(G, H)
                    assert is_perfect_code(G, S, H.as_subset())
                if H.order % 2 == 0 and idx % 2:
                    S = subgroup_code_connection_set(G, H, total=True)
                    assert is_total_perfect_code(G, S, H.as_subset())
