"""Finite abelian groups given as direct products of cyclic groups.

A group ``Z_{n_1} x ... x Z_{n_d}`` is an :class:`AbelianGroup`; its elements
are stored reduced and indexed in mixed radix with the first coordinate most
significant, so index order coincides with the lexicographic order on
coordinate tuples. Most heavy lifting elsewhere in the package works on these
integer indices.

>>> G = make_group([6, 4])
>>> G.order
24
>>> a = G.element((5, 3))
>>> a + G.element((1, 1))
(0,0)
>>> -G.element((1, 2))
(5,2)
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import prod
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import factorint

from .errors import GroupMismatchError, InputError, LimitExceeded

DEFAULT_SUBGROUP_ORDER_BOUND = 512
_TABLE_ORDER_LIMIT = 4096
# below this order add_index reads the cached addition table
_FAST_ADD_ORDER = 512


@dataclass(frozen=True)
class AbelianGroup:
    """The group ``Z_{n_1} x ... x Z_{n_d}`` with every ``n_i >= 2``."""

    factors: tuple[int, ...]

    def __post_init__(self):
        try:
            factors = tuple(int(f) for f in self.factors)
        except (TypeError, ValueError) as exc:
            raise InputError(f"group factors must be integers: {self.factors!r}") from exc
        if not factors:
            raise InputError("a group needs at least one cyclic factor")
        if any(f < 2 for f in factors):
            raise InputError(f"every cyclic factor must be >= 2, got {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def is_cyclic_presentation(self) -> bool:
        return self.rank == 1

    def __str__(self) -> str:
        return "x".join(str(f) for f in self.factors)

    def __repr__(self) -> str:
        return f"AbelianGroup({self})"

    # -- index <-> coordinates -------------------------------------------------

    @cached_property
    def _weights(self) -> np.ndarray:
        w = [1] * self.rank
        for i in range(self.rank - 2, -1, -1):
            w[i] = w[i + 1] * self.factors[i + 1]
        return np.array(w, dtype=np.int64)

    @cached_property
    def _factor_array(self) -> np.ndarray:
        return np.array(self.factors, dtype=np.int64)

    @cached_property
    def coordinate_array(self) -> np.ndarray:
        """``(order, rank)`` array; row ``i`` holds the coordinates of element ``i``."""
        idx = np.arange(self.order, dtype=np.int64)
        return (idx[:, None] // self._weights[None, :]) % self._factor_array[None, :]

    def index_of(self, coords: Sequence[int]) -> int:
        if len(coords) != self.rank:
            raise InputError(f"expected {self.rank} coordinates for group {self}, got {tuple(coords)}")
        i = 0
        for c, n in zip(coords, self.factors):
            i = i * n + int(c) % n
        return i

    def indices_of(self, coords: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`index_of` for an array whose last axis is the coordinate axis."""
        return ((np.asarray(coords) % self._factor_array) * self._weights).sum(axis=-1)

    def coords_of(self, index: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.factors):
            index, r = divmod(index, n)
            out.append(r)
        return tuple(reversed(out))

    # -- elements --------------------------------------------------------------

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def element(self, value) -> GroupElement:
        """Build an element from a coordinate sequence, an int (rank 1 only) or an element."""
        if isinstance(value, GroupElement):
            if value.group != self:
                raise GroupMismatchError(f"element {value} belongs to {value.group}, not {self}")
            return value
        if isinstance(value, (int, np.integer)):
            if self.rank != 1:
                raise InputError(f"bare integer {value} is only an element literal for cyclic groups")
            return GroupElement(self, (int(value) % self.factors[0],))
        try:
            coords = tuple(int(c) for c in value)
        except (TypeError, ValueError) as exc:
            raise InputError(f"cannot interpret {value!r} as an element of {self}") from exc
        if len(coords) != self.rank:
            raise InputError(f"expected {self.rank} coordinates for group {self}, got {coords}")
        return GroupElement(self, tuple(c % n for c, n in zip(coords, self.factors)))

    def element_at(self, index: int) -> GroupElement:
        return GroupElement(self, self.coords_of(index))

    def elements(self) -> Iterator[GroupElement]:
        for i in range(self.order):
            yield self.element_at(i)

    # -- arithmetic tables -----------------------------------------------------

    @cached_property
    def neg_index(self) -> np.ndarray:
        return self.indices_of(-self.coordinate_array)

    def add_index(self, a: int, b: int) -> int:
        if self.order <= _FAST_ADD_ORDER:
            return int(_addition_table(self.factors)[a, b])
        return self.index_of(tuple(x + y for x, y in zip(self.coords_of(a), self.coords_of(b))))

    def translate_indices(self, indices, g: int) -> np.ndarray:
        """Indices of ``X + g`` for ``X`` given by ``indices``."""
        coords = self.coordinate_array[np.asarray(indices, dtype=np.int64)]
        return self.indices_of(coords + self.coordinate_array[g])

    def addition_table(self) -> np.ndarray:
        """Full ``order x order`` table with ``table[a, b] = a + b``; small groups only."""
        if self.order > _TABLE_ORDER_LIMIT:
            raise LimitExceeded(f"addition table for a group of order {self.order} exceeds {_TABLE_ORDER_LIMIT}")
        return _addition_table(self.factors)

    def order_of(self, index: int) -> int:
        c = self.coords_of(index)
        out = 1
        for x, n in zip(c, self.factors):
            out = np.lcm(out, n // np.gcd(x, n))
        return int(out)


@lru_cache(maxsize=32)
def _addition_table(factors: tuple[int, ...]) -> np.ndarray:
    G = AbelianGroup(factors)
    coords = G.coordinate_array
    table = G.indices_of(coords[:, None, :] + coords[None, :, :])
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class GroupElement:
    """A reduced element of an :class:`AbelianGroup`; equality includes the ambient group."""

    group: AbelianGroup = field(repr=False)
    coords: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.group.index_of(self.coords)

    def _check(self, other) -> GroupElement:
        if not isinstance(other, GroupElement):
            return self.group.element(other)
        if other.group != self.group:
            raise GroupMismatchError(f"cannot combine elements of {self.group} and {other.group}")
        return other

    def __add__(self, other) -> GroupElement:
        other = self._check(other)
        return GroupElement(
            self.group, tuple((a + b) % n for a, b, n in zip(self.coords, other.coords, self.group.factors))
        )

    def __sub__(self, other) -> GroupElement:
        return self + (-self._check(other))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple((-a) % n for a, n in zip(self.coords, self.group.factors)))

    def __mul__(self, k: int) -> GroupElement:
        return GroupElement(self.group, tuple((a * k) % n for a, n in zip(self.coords, self.group.factors)))

    __rmul__ = __mul__

    def __lt__(self, other: GroupElement) -> bool:
        return (self.group.factors, self.coords) < (other.group.factors, other.coords)

    def is_identity(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        return self.group.order_of(self.index)

    def __str__(self) -> str:
        if self.group.rank == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    __repr__ = __str__


def make_group(factors: Sequence[int]) -> AbelianGroup:
    return AbelianGroup(tuple(factors))


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def neg(a: GroupElement) -> GroupElement:
    return -a


# -- subgroups -------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup of ``group``, kept as a sorted tuple of element indices."""

    group: AbelianGroup = field(repr=False)
    indices: tuple[int, ...]
    generators: tuple[GroupElement, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.group.order % len(self.indices):
            raise InputError(f"{len(self.indices)} elements cannot form a subgroup of a group of order {self.group.order}")

    @property
    def order(self) -> int:
        return len(self.indices)

    @cached_property
    def index_set(self) -> frozenset[int]:
        return frozenset(self.indices)

    @property
    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(self.group.element_at(i) for i in self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return self.group.element(g).index in self.index_set

    def is_trivial(self) -> bool:
        return len(self.indices) == 1

    def is_whole_group(self) -> bool:
        return len(self.indices) == self.group.order

    def as_subset(self):
        from .subsets import GroupSubset

        return GroupSubset(self.group, self.indices)

    def coset(self, g) -> tuple[GroupElement, ...]:
        g = self.group.element(g)
        idx = np.sort(self.group.translate_indices(self.indices, g.index))
        return tuple(self.group.element_at(int(i)) for i in idx)

    def __str__(self) -> str:
        return "<" + ",".join(str(e) for e in self.elements) + ">"


def _close(group: AbelianGroup, start: set[int], gens: Iterable[int]) -> set[int]:
    members = set(start)
    for g in gens:
        if g in members:
            continue
        # adjoin the multiples of g until they fall back into the current subgroup
        layers = [sorted(members)]
        step = g
        while step not in members:
            layers.append(group.translate_indices(layers[0], step).tolist())
            step = group.add_index(step, g)
        for layer in layers[1:]:
            members.update(layer)
    return members


def subgroup_generated(G: AbelianGroup, gens: Iterable = ()) -> SubgroupHandle:
    gen_elems = tuple(G.element(g) for g in gens)
    members = _close(G, {0}, [g.index for g in gen_elems])
    return SubgroupHandle(G, tuple(sorted(members)), gen_elems)


def subgroup_from_indices(G: AbelianGroup, indices: Iterable[int]) -> SubgroupHandle:
    """Wrap a set of indices already known to be closed; verifies closure."""
    idx = tuple(sorted(set(int(i) for i in indices)))
    members = set(idx)
    if 0 not in members or _close(G, {0}, idx) != members:
        raise InputError("index set is not a subgroup")
    return SubgroupHandle(G, idx, tuple(G.element_at(i) for i in idx))


def all_subgroups(
    G: AbelianGroup, max_order_bound: int = DEFAULT_SUBGROUP_ORDER_BOUND, order: int | None = None
) -> list[SubgroupHandle]:
    """Every subgroup of ``G`` (optionally only those of a given order).

    Subgroups are found by repeatedly adjoining one coset representative to a
    known subgroup, starting from the trivial one; the result is sorted by
    order and then by element tuple.
    """
    if G.order > max_order_bound:
        raise LimitExceeded(f"subgroup enumeration limited to groups of order <= {max_order_bound}, got {G.order}")
    seen = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for K in frontier:
            covered = set()
            for g in range(G.order):
                if g in covered or g in K:
                    continue
                covered.update(G.translate_indices(sorted(K), g).tolist())
                L = frozenset(_close(G, set(K), [g]))
                if L not in seen:
                    seen.add(L)
                    nxt.append(L)
        frontier = nxt
    out = [subgroup_from_indices(G, s) for s in seen if order is None or len(s) == order]
    out.sort(key=lambda h: (h.order, h.indices))
    return out


def primary_decomposition(G: AbelianGroup) -> dict[int, list[int]]:
    """Map each prime ``p`` to the exponents ``e`` (descending) of the cyclic factors ``Z_{p^e}``."""
    out: dict[int, list[int]] = {}
    for n in G.factors:
        for p, e in factorint(n).items():
            out.setdefault(p, []).append(e)
    return {p: sorted(out[p], reverse=True) for p in sorted(out)}


def group_from_primary(decomposition: dict[int, Sequence[int]]) -> AbelianGroup:
    """Rebuild a group (as a product of prime-power cyclic groups) from its primary decomposition."""
    factors = [p**e for p in sorted(decomposition) for e in decomposition[p] if e > 0]
    return AbelianGroup(tuple(factors))


# -- quotients ---------------------------------------------------------------------


def _invariant_factors(order_counts: dict[int, int], n: int) -> tuple[int, ...]:
    """Invariant factors of an abelian group of order ``n`` from ``#{x : m x = 0}`` for ``m | n``."""
    per_prime: list[list[int]] = []
    for p, e in factorint(n).items():
        logs = [0]
        for j in range(1, e + 1):
            count = order_counts[p**j]
            logs.append(round(np.log(count) / np.log(p)))
        parts_ge = [logs[j] - logs[j - 1] for j in range(1, e + 1)]
        exps = [sum(1 for c in parts_ge if c >= i) for i in range(1, logs[1] + 1)]
        per_prime.append([p**x for x in exps])
    width = max((len(x) for x in per_prime), default=0)
    factors = []
    for i in range(width):
        factors.append(prod(x[i] for x in per_prime if i < len(x)))
    return tuple(sorted(factors))


@dataclass(frozen=True)
class QuotientMap:
    """The natural map ``G -> G/H`` onto a canonical invariant-factor group.

    ``quotient_group`` has factors ``d_1 | d_2 | ... | d_k``; the basis images
    are chosen as the least (in element order) valid coset representatives, so
    for cyclic quotients the generator is the coset of the least element of
    maximal order.
    """

    group: AbelianGroup = field(repr=False)
    kernel: SubgroupHandle = field(repr=False)
    quotient_group: AbelianGroup
    coset_index: np.ndarray = field(repr=False, compare=False)
    section_index: np.ndarray = field(repr=False, compare=False)

    def forward(self, x) -> GroupElement:
        x = self.group.element(x)
        return self.quotient_group.element_at(int(self.coset_index[x.index]))

    def section(self, q) -> GroupElement:
        q = self.quotient_group.element(q)
        return self.group.element_at(int(self.section_index[q.index]))

    def preimage(self, q) -> tuple[GroupElement, ...]:
        """The full coset of the kernel lying over ``q``."""
        return self.kernel.coset(self.section(q))


def quotient(G: AbelianGroup, H: SubgroupHandle) -> QuotientMap:
    if H.group != G:
        raise GroupMismatchError(f"subgroup lives in {H.group}, not {G}")
    members = H.index_set
    if _close(G, set(members), H.indices) != set(members):
        raise InputError("H is not a subgroup of G")
    if H.is_whole_group():
        raise InputError("G/G is the trivial group, which has no cyclic-factor presentation here")
    return _quotient(G, H.indices)


@lru_cache(maxsize=256)
def _quotient(G: AbelianGroup, kernel: tuple[int, ...]) -> QuotientMap:
    H = SubgroupHandle(G, kernel)
    n = G.order
    coset_id = np.full(n, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(n):
        if coset_id[x] < 0:
            coset_id[G.translate_indices(H.indices, x)] = len(reps)
            reps.append(x)
    q = len(reps)

    def qadd(a: int, b: int) -> int:
        return int(coset_id[G.add_index(reps[a], reps[b])])

    def qmul(a: int, k: int) -> int:
        return int(coset_id[G.index_of(tuple(k * c for c in G.coords_of(reps[a])))])

    orders = []
    for a in range(q):
        t, cur = 1, a
        while cur != 0:
            cur = qadd(cur, a)
            t += 1
        orders.append(t)
    divisors = [m for m in range(1, q + 1) if q % m == 0]
    counts = {m: sum(1 for o in orders if m % o == 0) for m in divisors}
    inv = _invariant_factors(counts, q)
    Q = AbelianGroup(inv)

    basis = _find_basis(q, orders, inv, qadd, qmul)
    coset_to_q = np.empty(q, dtype=np.int64)
    for coeffs in itertools.product(*(range(d) for d in inv)):
        c = 0
        for g, a in zip(basis, coeffs):
            c = qadd(c, qmul(g, a))
        coset_to_q[c] = Q.index_of(coeffs)
    forward = coset_to_q[coset_id]
    section = np.empty(q, dtype=np.int64)
    section[coset_to_q] = np.array(reps, dtype=np.int64)
    forward.setflags(write=False)
    section.setflags(write=False)
    return QuotientMap(G, H, Q, forward, section)


def _find_basis(q, orders, inv, qadd, qmul) -> list[int]:
    """Elements ``g_i`` of order ``inv[i]`` whose multiples give a direct decomposition."""
    targets = list(reversed(inv))  # largest first

    def extend(level: int, span: frozenset[int], chosen: list[int]):
        if level == len(targets):
            return chosen if len(span) == q else None
        d = targets[level]
        for g in range(q):
            if orders[g] != d or g in span:
                continue
            mults = [qmul(g, a) for a in range(d)]
            if any(m in span for m in mults[1:]):
                continue
            new_span = frozenset(qadd(s, m) for s in span for m in mults)
            found = extend(level + 1, new_span, chosen + [g])
            if found is not None:
                return found
        return None

    found = extend(0, frozenset({0}), [])
    assert found is not None, "invariant factor profile admits no basis"
    return list(reversed(found))


# -- literal parsing -----------------------------------------------------------

_GROUP_RE = re.compile(r"^\s*\d+(\s*[xX×*]\s*\d+)*\s*$")


def parse_group(text: str) -> AbelianGroup:
    """Parse a group literal such as ``"6x4"`` or ``"42"``."""
    if not isinstance(text, str) or not _GROUP_RE.match(text):
        raise InputError(f"malformed group literal {text!r}; expected e.g. '6x4'")
    return AbelianGroup(tuple(int(t) for t in re.split(r"[xX×*]", text.replace(" ", ""))))


def parse_element(G: AbelianGroup, text: str) -> GroupElement:
    """Parse ``"(3,2)"``, or a bare integer for rank-one groups."""
    t = text.strip()
    if re.fullmatch(r"-?\d+", t):
        return G.element(int(t))
    m = re.fullmatch(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)", t)
    if not m:
        raise InputError(f"malformed element literal {text!r}")
    return G.element(tuple(int(x) for x in m.group(1).split(",")))
