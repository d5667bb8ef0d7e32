"""Exhaustive code search, the moduli construction, and quotient reduction.

Codes are found by exact cover: a code ``C`` for the tile ``B`` (``S_0`` or
``S``) is a set of translates ``B + c`` partitioning the group.

>>> from cayley_codes.groups import make_group
>>> from cayley_codes.subsets import GroupSubset
>>> Z6 = make_group([6])
>>> [str(c) for c in enumerate_codes(Z6, GroupSubset.of(Z6, [1, 5])).codes]
['{0,3}', '{1,4}', '{2,5}']
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from math import prod
from typing import Optional, Sequence

from sympy import divisors

from ._kernels import Budget, SearchAborted, exact_cover_translates
from .errors import InputError, InternalConsistencyError, LimitExceeded, PreconditionError
from .groups import AbelianGroup, QuotientMap, SubgroupHandle, quotient
from .subsets import (
    GroupSubset,
    generates,
    is_inverse_closed_connection_set,
    periods,
    quotient_subset,
)
from .tiling import is_code, is_perfect_code

DEFAULT_MAX_ORDER = 2000
DEFAULT_MAX_NODES = 2_000_000
MODES = ("full", "identity-orbit")


def _env_max_order() -> int:
    raw = os.environ.get("CAYLEY_CODES_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"CAYLEY_CODES_MAX_ORDER must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InputError("CAYLEY_CODES_MAX_ORDER must be positive")
    return value


@dataclass(frozen=True)
class SearchLimits:
    max_order: int = field(default_factory=_env_max_order)
    max_nodes: Optional[int] = DEFAULT_MAX_NODES
    time_budget_ms: Optional[int] = None
    mode: str = "full"

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown search mode {self.mode!r}; choose from {MODES}")

    def budget(self) -> Budget:
        deadline = None
        if self.time_budget_ms is not None:
            deadline = time.monotonic() + self.time_budget_ms / 1000
        return Budget(self.max_nodes, deadline)


@dataclass(frozen=True)
class Instance:
    group: AbelianGroup
    connection_set: GroupSubset
    total: bool

    def to_json(self) -> dict:
        return {
            "group": str(self.group),
            "connection_set": str(self.connection_set),
            "total": self.total,
        }


@dataclass(frozen=True)
class CodeSearchResult:
    instance: Instance
    codes: tuple[GroupSubset, ...]
    exhaustive: bool
    node_count: int
    mode: str = "full"
    limit_hit: Optional[str] = None

    @property
    def admits(self) -> Optional[bool]:
        """True/False when known; None when the search was cut short without finding a code."""
        if self.codes:
            return True
        return False if self.exhaustive else None

    def orbit_size(self) -> int:
        """Number of codes in the full translation orbit (equals ``len(codes)`` in full mode)."""
        if self.mode == "full":
            return len(self.codes)
        G = self.instance.group
        return len({c.translate(g) for c in self.codes for g in G.elements()})


def _validate(G: AbelianGroup, S: GroupSubset) -> None:
    if S.group != G:
        raise InputError(f"connection set lives in {S.group}, not {G}")
    if not S.indices:
        raise InputError("the connection set must be nonempty")
    if not is_inverse_closed_connection_set(S):
        raise InputError(f"{S} is not an inverse-closed subset of G minus the identity")


def _tile_tables(G: AbelianGroup, B: GroupSubset) -> tuple[list[int], list[list[int]]]:
    tiles = []
    placements: list[list[int]] = [[] for _ in range(G.order)]
    for c in range(G.order):
        idx = G.translate_indices(B.indices, c).tolist()
        mask = 0
        for g in idx:
            mask |= 1 << g
            placements[g].append(c)
        tiles.append(mask)
    return tiles, placements


def enumerate_codes(
    G: AbelianGroup, S: GroupSubset, total: bool = False, limits: Optional[SearchLimits] = None
) -> CodeSearchResult:
    """Every (total) perfect code of ``Cay(G, S)``, in canonical order.

    In ``identity-orbit`` mode only codes through the identity are listed.
    Exceeding a limit yields a result flagged non-exhaustive, never a silent
    truncation.
    """
    limits = limits or SearchLimits()
    _validate(G, S)
    if G.order > limits.max_order:
        raise LimitExceeded(f"group order {G.order} exceeds the search guard {limits.max_order}")
    instance = Instance(G, S, total)
    B = S if total else S.with_identity()
    if G.order % len(B):
        return CodeSearchResult(instance, (), True, 0, limits.mode)
    tiles, placements = _tile_tables(G, B)
    budget = limits.budget()
    if limits.mode == "identity-orbit":
        gen = exact_cover_translates(G.order, tiles, placements, start=tiles[0], chosen=(0,), budget=budget)
    else:
        gen = exact_cover_translates(G.order, tiles, placements, budget=budget)
    found = []
    limit_hit = None
    try:
        for sol in gen:
            found.append(GroupSubset(G, sol))
    except SearchAborted as exc:
        limit_hit = exc.reason
    codes = tuple(sorted(found, key=lambda c: c.indices))
    for c in codes:
        if not is_code(G, S, c, total):
            raise InternalConsistencyError(f"search produced {c}, which is not a code")
    return CodeSearchResult(instance, codes, limit_hit is None, budget.nodes, limits.mode, limit_hit)


def admits_code(
    G: AbelianGroup, S: GroupSubset, total: bool = False, limits: Optional[SearchLimits] = None
) -> Optional[GroupSubset]:
    """The first code through the identity, or None when there is none.

    Raises :class:`LimitExceeded` if the budget runs out before a decision.
    """
    limits = limits or SearchLimits()
    _validate(G, S)
    if G.order > limits.max_order:
        raise LimitExceeded(f"group order {G.order} exceeds the search guard {limits.max_order}")
    B = S if total else S.with_identity()
    if G.order % len(B):
        return None
    tiles, placements = _tile_tables(G, B)
    budget = limits.budget()
    try:
        for sol in exact_cover_translates(G.order, tiles, placements, start=tiles[0], chosen=(0,), budget=budget):
            return GroupSubset(G, sol)
    except SearchAborted as exc:
        raise LimitExceeded(f"search budget exhausted ({exc.reason}) after {budget.nodes} nodes") from exc
    return None


# -- moduli construction ---------------------------------------------------------


def canonical_code_from_moduli(G: AbelianGroup, moduli: Sequence[int]) -> GroupSubset:
    """The subgroup ``m_1 Z_{n_1} x ... x m_d Z_{n_d}``."""
    moduli = tuple(int(m) for m in moduli)
    if len(moduli) != G.rank:
        raise InputError(f"need {G.rank} moduli, got {len(moduli)}")
    for m, n in zip(moduli, G.factors):
        if m < 1 or n % m:
            raise InputError(f"modulus {m} does not divide {n}")
    axes = [range(0, n, m) for m, n in zip(moduli, G.factors)]
    return GroupSubset(G, tuple(G.index_of(c) for c in itertools.product(*axes)))


def separates(B: GroupSubset, moduli: Sequence[int]) -> bool:
    """Whether distinct elements of ``B`` always differ in some coordinate ``j`` mod ``m_j``."""
    seen = set()
    for e in B.elements:
        key = tuple(c % m for c, m in zip(e.coords, moduli))
        if key in seen:
            return False
        seen.add(key)
    return True


def moduli_candidates(G: AbelianGroup, size: int) -> list[tuple[int, ...]]:
    """All ``(m_1..m_d)`` with ``m_i | n_i`` and product ``size``, in lexicographic order."""
    return [m for m in itertools.product(*(divisors(n) for n in G.factors)) if prod(m) == size]


def check_sufficiency_moduli(S: GroupSubset, total: bool = False) -> Optional[tuple[int, ...]]:
    """First moduli tuple for which the subgroup construction yields a code, if any."""
    if not is_inverse_closed_connection_set(S) or not S.indices:
        raise InputError(f"{S} is not a valid connection set")
    G = S.group
    B = S if total else S.with_identity()
    for m in moduli_candidates(G, len(B)):
        if separates(B, m):
            C = canonical_code_from_moduli(G, m)
            if not is_code(G, S, C, total):
                raise InternalConsistencyError(f"moduli {m} separate {B} but do not yield a code")
            return m
    return None


# -- reduction -------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionResult:
    original: Instance
    kernel: SubgroupHandle
    quotient_map: Optional[QuotientMap]
    reduced: Instance

    @property
    def is_identity(self) -> bool:
        return self.kernel.is_trivial()

    def lift_multiplicity(self, k: int) -> int:
        """Number of lifts of a reduced code of size ``k``."""
        return self.kernel.order**k


def reduce_instance(G: AbelianGroup, S: GroupSubset, total: bool = False) -> ReductionResult:
    """Pass to ``Cay(G/H, (S/H) minus {H})`` with ``H`` the periods of ``S_0``."""
    if total:
        raise PreconditionError("quotient reduction is only established for perfect codes, not total ones")
    _validate(G, S)
    if not generates(S):
        raise PreconditionError(f"{S} does not generate {G}; the Cayley graph is disconnected")
    if len(S) == G.order - 1:
        raise PreconditionError("S is all of G minus the identity (complete graph); reduction needs a proper subset")
    original = Instance(G, S, False)
    H = periods(S.with_identity())
    if H.is_trivial():
        return ReductionResult(original, H, None, original)
    Q = quotient(G, H)
    reduced_S = quotient_subset(S, Q).without_identity()
    return ReductionResult(original, H, Q, Instance(Q.quotient_group, reduced_S, False))


def lift_codes(R: ReductionResult, reduced_codes: Sequence[GroupSubset]) -> list[GroupSubset]:
    """All codes obtained by picking one element from every kernel coset of each reduced code."""
    red = R.reduced
    for c in reduced_codes:
        if not is_perfect_code(red.group, red.connection_set, c):
            raise InputError(f"{c} is not a perfect code of the reduced instance")
    if R.is_identity:
        return sorted(set(reduced_codes), key=lambda c: c.indices)
    Q = R.quotient_map
    G = R.original.group
    out = set()
    for c in reduced_codes:
        fibres = [Q.preimage(q) for q in c.elements]
        for choice in itertools.product(*fibres):
            out.add(GroupSubset.of(G, choice))
    lifted = sorted(out, key=lambda c: c.indices)
    for c in lifted:
        if not is_perfect_code(G, R.original.connection_set, c):
            raise InternalConsistencyError(f"lifted set {c} is not a perfect code")
    return lifted


# -- subgroups as codes ------------------------------------------------------------


def _least_involution(G: AbelianGroup, indices) -> Optional[int]:
    for i in sorted(indices):
        if i != 0 and G.neg_index[i] == i:
            return int(i)
    return None


def subgroup_code_connection_set(G: AbelianGroup, H: SubgroupHandle, total: bool = False) -> GroupSubset:
    """A connection set ``S`` for which ``H`` is a (total) perfect code.

    One element is taken from every non-identity coset, cosets ``H + g`` and
    ``H - g`` being served by a pair ``g, -g``; a coset equal to its own
    negative is served by one of its involutions.  The total variant also
    takes an involution of ``H``.
    """
    if H.group != G:
        raise InputError("subgroup lives in a different group")
    if H.is_whole_group():
        raise PreconditionError("H = G leaves no room for a connection set")
    index = G.order // H.order
    if total:
        if H.order % 2 or index % 2 == 0:
            raise PreconditionError("a total construction needs |H| even and |G/H| odd")
    elif H.order % 2 == 0 and index % 2 == 0:
        raise PreconditionError("a perfect construction needs |H| or |G/H| odd")
    coset_of = {}
    for x in range(G.order):
        if x not in coset_of:
            for y in G.translate_indices(H.indices, x).tolist():
                coset_of[y] = x
    chosen: list[int] = []
    done = {coset_of[0]}
    for x in range(G.order):
        rep = coset_of[x]
        if rep in done:
            continue
        neg_rep = coset_of[int(G.neg_index[x])]
        members = [y for y in range(G.order) if coset_of[y] == rep]
        if neg_rep == rep:
            inv = _least_involution(G, members)
            if inv is None:
                raise PreconditionError(f"self-inverse coset of {G.element_at(x)} has no involution")
            chosen.append(inv)
        else:
            chosen.extend([x, int(G.neg_index[x])])
            done.add(neg_rep)
        done.add(rep)
    if total:
        inv = _least_involution(G, H.indices)
        if inv is None:
            raise PreconditionError("H has no involution")
        chosen.append(inv)
    S = GroupSubset(G, tuple(chosen))
    if not is_code(G, S, H.as_subset(), total):
        raise InternalConsistencyError(f"construction failed to make {H} a code of Cay(G, {S})")
    return S
