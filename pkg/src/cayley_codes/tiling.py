"""Factorizations ``G = X (+) Y`` and the code criteria built on them.

A perfect code ``C`` of ``Cay(G, S)`` is the same thing as a factorization
``G = S_0 (+) C`` with ``S_0 = S u {0}``; a total perfect code is a
factorization ``G = S (+) C``.  Both are checked here twice, once through the
factorization and once straight from the graph definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import GroupMismatchError, InputError, InternalConsistencyError
from .groups import AbelianGroup, GroupElement, SubgroupHandle, quotient
from .subsets import (
    GroupSubset,
    _nonempty,
    _same_group,
    difference_set,
    is_inverse_closed_connection_set,
    periods,
    quotient_subset,
    sum_set,
)

SUM_COVERS = "sum-covers"
DIFFERENCE_INTERSECTION = "difference-intersection"
CARDINALITY = "cardinality"


@dataclass(frozen=True)
class FactorizationReport:
    holds: bool
    witness: Optional[GroupElement] = None
    expressions: tuple[tuple[GroupElement, GroupElement], ...] = ()
    condition: Optional[str] = None

    def __post_init__(self):
        if self.holds and (self.witness is not None or self.condition is not None):
            raise InternalConsistencyError("a holding factorization cannot carry a violation")
        if not self.holds and self.witness is None and self.condition is None:
            raise InternalConsistencyError("a failed factorization needs a witness or a condition label")

    @property
    def violation(self):
        if self.holds:
            return None
        return self.witness if self.witness is not None else self.condition

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out: dict = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["expressions"] = [[str(a), str(b)] for a, b in self.expressions]
        if self.condition is not None:
            out["condition"] = self.condition
        return out


def _sum_counts(X: GroupSubset, Y: GroupSubset) -> np.ndarray:
    G = X.group
    coords = G.coordinate_array
    idx = G.indices_of(coords[list(X.indices)][:, None, :] + coords[list(Y.indices)][None, :, :])
    return np.bincount(idx.ravel(), minlength=G.order)


def is_factorization(X: GroupSubset, Y: GroupSubset) -> FactorizationReport:
    """Does every element of ``G`` have exactly one expression ``x + y``?

    On failure the least offending element is reported together with all of
    its expressions.
    """
    _same_group(X, Y)
    _nonempty(X, Y)
    G = X.group
    counts = _sum_counts(X, Y)
    bad = np.flatnonzero(counts != 1)
    if bad.size == 0:
        return FactorizationReport(True)
    g = G.element_at(int(bad[0]))
    exprs = tuple(
        (x, y) for x in X.elements for y in Y.elements if (x + y) == g
    )
    return FactorizationReport(False, witness=g, expressions=exprs)


@dataclass(frozen=True)
class TwoOfThreeReport:
    covers: bool
    differences_meet_trivially: bool
    cardinality: bool

    @property
    def verdict(self) -> bool:
        return (self.covers + self.differences_meet_trivially + self.cardinality) >= 2

    def to_json(self) -> dict:
        return {
            "a_sum_covers": self.covers,
            "b_differences_meet_trivially": self.differences_meet_trivially,
            "c_cardinality": self.cardinality,
            "factorization": self.verdict,
        }


@lru_cache(maxsize=16)
def _table_rows(factors: tuple[int, ...]) -> tuple[list[list[int]], list[int]]:
    G = AbelianGroup(factors)
    return G.addition_table().tolist(), G.neg_index.tolist()


def _sum_bits(rows: list[list[int]], xs, ys) -> int:
    out = 0
    for x in xs:
        row = rows[x]
        for y in ys:
            out |= 1 << row[y]
    return out


def two_of_three(X: GroupSubset, Y: GroupSubset) -> TwoOfThreeReport:
    """Evaluate the three conditions whose pairwise conjunctions each characterize a factorization."""
    _same_group(X, Y)
    _nonempty(X, Y)
    G = X.group
    if G.order <= 4096:
        rows, neg = _table_rows(G.factors)
        covers = _sum_bits(rows, X.indices, Y.indices) == (1 << G.order) - 1
        dx = _sum_bits(rows, X.indices, [neg[x] for x in X.indices])
        dy = _sum_bits(rows, Y.indices, [neg[y] for y in Y.indices])
        meet_trivial = dx & dy == 1
    else:
        covers = len(sum_set(X, Y)) == G.order
        meet_trivial = difference_set(X, X).index_set & difference_set(Y, Y).index_set == {0}
    return TwoOfThreeReport(covers, meet_trivial, G.order == len(X) * len(Y))


@dataclass(frozen=True)
class PeriodQuotientReport:
    """The two sides of the quotient test for ``G = X (+) Y`` with ``H`` the periods of ``X``."""

    kernel: SubgroupHandle
    quotient_factorization: bool
    kernel_meets_differences_trivially: bool

    @property
    def holds(self) -> bool:
        return self.quotient_factorization and self.kernel_meets_differences_trivially


def period_quotient_test(X: GroupSubset, Y: GroupSubset) -> PeriodQuotientReport:
    """With ``H = periods(X)``: is ``G/H = X/H (+) Y/H`` and ``H n (Y - Y) = {0}``?

    Both together are equivalent to ``G = X (+) Y``.
    """
    _same_group(X, Y)
    _nonempty(X, Y)
    G = X.group
    H = periods(X)
    meet = H.index_set & difference_set(Y, Y).index_set == {0}
    if H.is_whole_group():
        # G/H is trivial and X/H (+) Y/H always holds there
        return PeriodQuotientReport(H, True, meet)
    Q = quotient(G, H)
    Xq, Yq = quotient_subset(X, Q), quotient_subset(Y, Q)
    return PeriodQuotientReport(H, bool(is_factorization(Xq, Yq)), meet)


def _check_connection_set(G: AbelianGroup, S: GroupSubset, C: GroupSubset) -> None:
    if S.group != G or C.group != G:
        raise GroupMismatchError("connection set and code must live in the given group")
    if not S.indices:
        raise InputError("the connection set must be nonempty")
    if not is_inverse_closed_connection_set(S):
        raise InputError(f"{S} is not an inverse-closed subset of G minus the identity")
    if not C.indices:
        raise InputError("a code must be nonempty")


def _neighbour_counts(S: GroupSubset, C: GroupSubset) -> np.ndarray:
    """For every vertex v, the number of c in C adjacent to v (v - c in S)."""
    G = S.group
    coords = G.coordinate_array
    # v adjacent to c  <=>  v = c + s
    idx = G.indices_of(coords[list(C.indices)][:, None, :] + coords[list(S.indices)][None, :, :])
    return np.bincount(idx.ravel(), minlength=G.order)


def graph_definition_perfect(S: GroupSubset, C: GroupSubset) -> bool:
    nbrs = _neighbour_counts(S, C)
    in_c = C.mask
    return bool(np.all(nbrs[in_c] == 0) and np.all(nbrs[~in_c] == 1))


def graph_definition_total(S: GroupSubset, C: GroupSubset) -> bool:
    return bool(np.all(_neighbour_counts(S, C) == 1))


def is_perfect_code(G: AbelianGroup, S: GroupSubset, C: GroupSubset) -> FactorizationReport:
    _check_connection_set(G, S, C)
    report = is_factorization(S.with_identity(), C)
    if report.holds != graph_definition_perfect(S, C):
        raise InternalConsistencyError(f"factorization and graph definition disagree for S={S}, C={C}")
    return report


def is_total_perfect_code(G: AbelianGroup, S: GroupSubset, C: GroupSubset) -> FactorizationReport:
    _check_connection_set(G, S, C)
    report = is_factorization(S, C)
    if report.holds != graph_definition_total(S, C):
        raise InternalConsistencyError(f"factorization and graph definition disagree for S={S}, C={C}")
    if report.holds and len(C) % 2:
        raise InternalConsistencyError(f"total perfect code {C} has odd size")
    return report


def is_code(G: AbelianGroup, S: GroupSubset, C: GroupSubset, total: bool) -> FactorizationReport:
    return (is_total_perfect_code if total else is_perfect_code)(G, S, C)


# -- group ring ------------------------------------------------------------------


@dataclass(frozen=True)
class GroupRingElement:
    """An element of the integral group ring Z[G], as a dense coefficient vector."""

    group: AbelianGroup
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64)
        if v.shape != (self.group.order,):
            raise InputError("coefficient vector has the wrong length")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_coefficients(cls, group: AbelianGroup, coefficients: dict) -> GroupRingElement:
        v = np.zeros(group.order, dtype=np.int64)
        for g, c in coefficients.items():
            v[group.element(g).index] += int(c)
        return cls(group, v)

    @property
    def coefficients(self) -> dict[GroupElement, int]:
        return {self.group.element_at(int(i)): int(self.values[i]) for i in np.flatnonzero(self.values)}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupRingElement)
            and other.group == self.group
            and bool(np.array_equal(self.values, other.values))
        )

    def __hash__(self):
        return hash((self.group, self.values.tobytes()))

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        return ring_multiply(self, other)

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        if other.group != self.group:
            raise GroupMismatchError("group ring elements over different groups")
        return GroupRingElement(self.group, self.values + other.values)


def indicator(A: GroupSubset) -> GroupRingElement:
    return GroupRingElement(A.group, A.mask.astype(np.int64))


def all_ones(G: AbelianGroup) -> GroupRingElement:
    return GroupRingElement(G, np.ones(G.order, dtype=np.int64))


def ring_multiply(f: GroupRingElement, g: GroupRingElement) -> GroupRingElement:
    """Convolution: the coefficient of ``h`` is the sum of ``f(a) g(b)`` over ``a + b = h``."""
    if f.group != g.group:
        raise GroupMismatchError("group ring elements over different groups")
    G = f.group
    out = np.zeros(G.order, dtype=np.int64)
    support = np.flatnonzero(f.values)
    coords = G.coordinate_array
    for a in support:
        shifted = G.indices_of(coords + coords[a])
        np.add.at(out, shifted, f.values[a] * g.values)
    return GroupRingElement(G, out)


def polynomial_code_criterion(G: AbelianGroup, S: GroupSubset, C: GroupSubset, total: bool) -> bool:
    """``f_B * f_C == sum of all group elements`` with ``B = S`` (total) or ``S_0``."""
    _check_connection_set(G, S, C)
    B = S if total else S.with_identity()
    return ring_multiply(indicator(B), indicator(C)) == all_ones(G)
