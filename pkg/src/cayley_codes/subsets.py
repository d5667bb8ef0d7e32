"""Subsets of a finite abelian group and the operations performed on them.

>>> from cayley_codes.groups import make_group
>>> Z6 = make_group([6])
>>> X = GroupSubset.of(Z6, [1, 5])
>>> str(difference_set(X, X))
'{0,2,4}'
>>> is_periodic(GroupSubset.of(make_group([4]), [1, 3]))
True
"""

from __future__ import annotations

import re
from math import gcd
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import GroupMismatchError, InputError
from .groups import (
    AbelianGroup,
    GroupElement,
    QuotientMap,
    SubgroupHandle,
    parse_element,
    subgroup_from_indices,
    subgroup_generated,
)


@dataclass(frozen=True)
class GroupSubset:
    """A duplicate-free set of elements of ``group``, stored as sorted indices.

    The ambient group is part of the value: equal coordinate sets in different
    groups compare unequal.
    """

    group: AbelianGroup
    indices: tuple[int, ...] = field()

    def __post_init__(self):
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        if idx and (idx[0] < 0 or idx[-1] >= self.group.order):
            raise InputError(f"index out of range for group {self.group}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, group: AbelianGroup, items: Iterable) -> GroupSubset:
        """Build from elements, coordinate tuples or (rank one) integers."""
        return cls(group, tuple(group.element(x).index for x in items))

    @classmethod
    def from_mask(cls, group: AbelianGroup, mask) -> GroupSubset:
        return cls(group, tuple(np.flatnonzero(np.asarray(mask)).tolist()))

    @cached_property
    def index_set(self) -> frozenset[int]:
        return frozenset(self.indices)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[list(self.indices)] = True
        m.setflags(write=False)
        return m

    @cached_property
    def bits(self) -> int:
        """The subset as a Python integer bitmask over element indices."""
        out = 0
        for i in self.indices:
            out |= 1 << i
        return out

    @property
    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(self.group.element_at(i) for i in self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        if isinstance(g, GroupElement) and g.group != self.group:
            return False
        return self.group.element(g).index in self.index_set

    def __bool__(self) -> bool:
        return bool(self.indices)

    def is_empty(self) -> bool:
        return not self.indices

    def with_identity(self) -> GroupSubset:
        return GroupSubset(self.group, self.indices + (0,))

    def without_identity(self) -> GroupSubset:
        return GroupSubset(self.group, tuple(i for i in self.indices if i != 0))

    def translate(self, g) -> GroupSubset:
        g = self.group.element(g)
        if not self.indices:
            return self
        return GroupSubset(self.group, tuple(self.group.translate_indices(self.indices, g.index).tolist()))

    def negate(self) -> GroupSubset:
        return GroupSubset(self.group, tuple(self.group.neg_index[list(self.indices)].tolist()) if self.indices else ())

    def union(self, other: GroupSubset) -> GroupSubset:
        _same_group(self, other)
        return GroupSubset(self.group, self.indices + other.indices)

    def intersection(self, other: GroupSubset) -> GroupSubset:
        _same_group(self, other)
        return GroupSubset(self.group, tuple(self.index_set & other.index_set))

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"

    def __repr__(self) -> str:
        return f"GroupSubset({self.group}, {self})"

    def to_json(self) -> list:
        if self.group.rank == 1:
            return [e.coords[0] for e in self.elements]
        return [list(e.coords) for e in self.elements]


def _same_group(X: GroupSubset, Y: GroupSubset) -> None:
    if X.group != Y.group:
        raise GroupMismatchError(f"subsets live in different groups: {X.group} and {Y.group}")


def _nonempty(*subsets: GroupSubset) -> None:
    for X in subsets:
        if not X.indices:
            raise InputError("operation requires a nonempty subset")


def _combine(X: GroupSubset, Y: GroupSubset, negate_y: bool) -> GroupSubset:
    _same_group(X, Y)
    _nonempty(X, Y)
    G = X.group
    cx = G.coordinate_array[list(X.indices)]
    cy = G.coordinate_array[list(Y.indices)]
    if negate_y:
        cy = -cy
    idx = G.indices_of(cx[:, None, :] + cy[None, :, :])
    return GroupSubset(G, tuple(np.unique(idx).tolist()))


def sum_set(X: GroupSubset, Y: GroupSubset) -> GroupSubset:
    return _combine(X, Y, negate_y=False)


def difference_set(X: GroupSubset, Y: GroupSubset) -> GroupSubset:
    return _combine(X, Y, negate_y=True)


def is_inverse_closed_connection_set(S: GroupSubset) -> bool:
    if 0 in S.index_set:
        return False
    if not S.indices:
        return True
    if S.group.rank == 1:
        n = S.group.order
        return all((n - i) in S.index_set for i in S.indices)
    neg = S.group.neg_index[list(S.indices)]
    return all(int(i) in S.index_set for i in neg)


def generates(S: GroupSubset) -> bool:
    """Whether ``S`` generates its ambient group (the Cayley graph is connected)."""
    if S.group.rank == 1:
        return gcd(S.group.order, *S.indices) == 1
    return subgroup_generated(S.group, S.elements).is_whole_group()


def _cyclic_periods(bits: int, n: int) -> list[int]:
    full = (1 << n) - 1
    out = []
    for d in range(1, n + 1):
        if n % d:
            continue
        rot = ((bits << d) | (bits >> (n - d))) & full
        if rot == bits:
            return list(range(0, n, d))
    return out


def periods(X: GroupSubset) -> SubgroupHandle:
    """The subgroup ``{g : X + g = X}`` of translations fixing ``X``."""
    _nonempty(X)
    G = X.group
    if G.rank == 1:
        return subgroup_from_indices(G, _cyclic_periods(X.bits, G.order))
    mask = X.mask
    coords = G.coordinate_array
    shifted = G.indices_of(coords[list(X.indices)][:, None, :] + coords[None, :, :])
    stab = np.flatnonzero(mask[shifted].all(axis=0))
    return subgroup_from_indices(G, stab.tolist())


def is_periodic(X: GroupSubset) -> bool:
    return not periods(X).is_trivial()


def quotient_subset(X: GroupSubset, Q: QuotientMap) -> GroupSubset:
    """The image ``X/H`` of ``X`` in the quotient group of ``Q``."""
    if X.group != Q.group:
        raise GroupMismatchError(f"subset lives in {X.group} but the quotient map starts at {Q.group}")
    if not X.indices:
        return GroupSubset(Q.quotient_group, ())
    return GroupSubset(Q.quotient_group, tuple(Q.coset_index[list(X.indices)].tolist()))


def preimage_subset(Y: GroupSubset, Q: QuotientMap) -> GroupSubset:
    """Union of the kernel cosets lying over ``Y``."""
    if Y.group != Q.quotient_group:
        raise GroupMismatchError("subset does not live in the quotient group")
    mask = np.isin(Q.coset_index, list(Y.indices))
    return GroupSubset.from_mask(Q.group, mask)


_SUBSET_RE = re.compile(r"^\s*\{(.*)\}\s*$", re.S)


def parse_subset(G: AbelianGroup, text: str) -> GroupSubset:
    """Parse ``"{(1,1),(1,2)}"`` or ``"{1,5,6}"``; ``"{}"`` is the empty subset."""
    if not isinstance(text, str):
        raise InputError(f"subset literal must be a string, got {type(text).__name__}")
    m = _SUBSET_RE.match(text)
    if not m:
        raise InputError(f"malformed subset literal {text!r}; expected braces, e.g. '{{1,5}}'")
    body = m.group(1).strip()
    if not body:
        return GroupSubset(G, ())
    items = re.findall(r"\([^()]*\)|[^,()\s]+", body)
    rebuilt = ",".join(items).replace(" ", "")
    if rebuilt != re.sub(r"\s+", "", body):
        raise InputError(f"malformed subset literal {text!r}")
    return GroupSubset(G, tuple(parse_element(G, t).index for t in items))
