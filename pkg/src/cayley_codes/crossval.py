"""Cross-validation of the theorem registry against exhaustive search.

Every instance where a checker is applicable has its prediction compared
with a brute-force answer.  Small families (all inverse-closed ``S`` of a
given size in ``Z_n``) are handled directly, one tiling search per ``S``.

Families too large for that are handled from the other side.  Every
complement ``C`` through 0 of the right size is enumerated, and for each one
every inverse-closed tile ``B`` with ``B (+) C = Z_n`` is found by exact
cover.  That yields the full set ``A`` of connection sets admitting a code.
The checker is then run on ``A`` together with the full set ``P`` of
connection sets satisfying the theorem's congruence condition.  Outside
``A u P`` the checker predicts "no" (the condition fails) and the oracle says
"no" as well, so agreement there needs no per-instance work.  Random members
of each large family are additionally re-checked with a direct search.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from math import comb, gcd
from typing import Callable, Iterable, Iterator, Optional

from sympy import factorint, isprime

from ._kernels import (
    bits_of,
    cyclic_complements_with_zero,
    cyclic_symmetric_partners,
    cyclic_tiles_with_zero,
    rotations,
)
from .groups import AbelianGroup
from .search import admits_code
from .subsets import GroupSubset, generates, is_inverse_closed_connection_set
from .theorems import CHECKERS, ADMITS_SUBGROUP_CODE, in_N, check_circulant_tpc

GENERAL_THEOREMS = ("APCforP", "APCforPl", "ATPCforP", "ATPCforPl")


@dataclass(frozen=True)
class CrossvalScope:
    max_cyclic_order: int = 60
    min_cyclic_order: int = 2
    max_two_factor_order: int = 50
    max_two_factor_tile: int = 7
    theorems: tuple[str, ...] = tuple(CHECKERS)
    direct_limit: int = 200_000
    instances: tuple[tuple[AbelianGroup, GroupSubset], ...] = ()
    spot_checks: int = 12
    seed: int = 0

    @classmethod
    def empty(cls) -> CrossvalScope:
        return cls(max_cyclic_order=0, max_two_factor_order=0, theorems=(), instances=())


@dataclass(frozen=True)
class Discrepancy:
    theorem_id: str
    group: str
    connection_set: tuple
    predicted: Optional[bool]
    oracle: bool

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "group": self.group,
            "connection_set": list(self.connection_set),
            "predicted": self.predicted,
            "oracle": self.oracle,
        }


@dataclass(frozen=True)
class FamilyRecord:
    n: int
    size: int
    total: bool
    mode: str
    members: int
    compared: int
    admitting: int
    complements: int = 0

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class CrossvalReport:
    checked: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)
    inapplicable: list = field(default_factory=list)
    families: list = field(default_factory=list)
    spot_checks: int = 0
    seconds: float = 0.0

    @property
    def total_checked(self) -> int:
        return sum(self.checked.values())

    def is_clean(self) -> bool:
        return not self.discrepancies

    def _count(self, tid: str) -> None:
        self.checked[tid] = self.checked.get(tid, 0) + 1

    def to_json(self) -> dict:
        return {
            "checked": dict(sorted(self.checked.items())),
            "total_checked": self.total_checked,
            "discrepancies": [d.to_json() for d in self.discrepancies],
            "inapplicable": self.inapplicable,
            "families": [f.to_json() for f in self.families],
            "spot_checks": self.spot_checks,
        }


# -- which tile sizes can pass each theorem's gates ------------------------------


def _prime_power(m: int):
    f = factorint(m) if m > 1 else {}
    return next(iter(f.items())) if len(f) == 1 else None


def _exp(p: int, n: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _semiprime(m: int) -> bool:
    return m > 1 and sum(factorint(m).values()) == 2


def size_gate(theorem_id: str, n: int, m: int) -> bool:
    """Necessary condition on ``(n, tile size)`` for a cyclic instance to be applicable."""
    if m < 1 or m > n or n % m:
        return False
    cof = n // m
    if theorem_id in ("APCforP", "ATPCforP"):
        return isprime(m) and (theorem_id == "APCforP" or m % 2 == 1)
    if theorem_id in ("APCforPl", "ATPCforPl"):
        pp = _prime_power(m)
        return pp is not None and _exp(pp[0], n) == pp[1]
    if theorem_id == "CTPC.subgroup":
        return n >= 4
    if theorem_id == "CTPC.half-order":
        return n >= 4 and isprime(cof)
    if theorem_id == "CTPC.pq-periodic":
        return n >= 6 and _semiprime(m) and gcd(m, cof) == 1
    if theorem_id == "CTPC.pq-aperiodic":
        return in_N(n) and _semiprime(m) and gcd(m, cof) == 1
    if theorem_id == "CTPC.Nbar":
        return in_N(n) and gcd(m, cof) == 1
    raise KeyError(theorem_id)


def is_total_theorem(theorem_id: str) -> bool:
    return CHECKERS[theorem_id][1]


# -- enumeration helpers -----------------------------------------------------------


def cyclic_connection_set_count(n: int, s: int) -> int:
    pairs = (n - 1) // 2
    inv = 1 if n % 2 == 0 else 0
    if s % 2 == 0:
        return comb(pairs, s // 2)
    return inv * comb(pairs, (s - 1) // 2)


def cyclic_connection_sets(n: int, s: int) -> Iterator[int]:
    """Masks of every inverse-closed ``S`` of size ``s`` in ``Z_n`` (0 excluded)."""
    pairs = [(i, n - i) for i in range(1, (n + 1) // 2) if i != n - i]
    half = s // 2
    extra = []
    if s % 2:
        if n % 2:
            return
        extra = [1 << (n // 2)]
    else:
        extra = [0]
    masks = [(1 << a) | (1 << b) for a, b in pairs]
    for combo in itertools.combinations(masks, half):
        base = 0
        for m in combo:
            base |= m
        for e in extra:
            yield base | e


def random_connection_sets(n: int, s: int, k: int, rng: random.Random) -> list[int]:
    """``k`` uniformly random inverse-closed ``S`` of size ``s`` in ``Z_n``."""
    pairs = [(i, n - i) for i in range(1, (n + 1) // 2) if i != n - i]
    if cyclic_connection_set_count(n, s) == 0:
        return []
    out = []
    for _ in range(k):
        mask = 1 << (n // 2) if s % 2 else 0
        for a, b in rng.sample(pairs, s // 2):
            mask |= (1 << a) | (1 << b)
        out.append(mask)
    return out


def residue_transversals(n: int, m: int, with_zero: bool) -> list[int]:
    """Masks of every inverse-closed ``S`` whose tile (``S u {0}`` or ``S``) has ``m`` distinct residues mod ``m``."""
    if m < 1 or n % m:
        return []
    half = n // 2 if n % 2 == 0 else None
    choices: list[list[int]] = []
    for r in range(m):
        nr = (-r) % m
        if nr < r:
            continue
        if nr == r:
            opts = []
            if r == 0 and with_zero:
                opts = [0]  # the identity itself, kept out of the mask
            elif half is not None and half % m == r:
                opts = [1 << half]
            if not opts:
                return []
            choices.append(opts)
        else:
            choices.append([(1 << x) | (1 << ((-x) % n)) for x in range(r, n, m)])
    out = []
    for combo in itertools.product(*choices):
        mask = 0
        for c in combo:
            mask |= c
        if mask and mask & 1 == 0:
            out.append(mask)
    return sorted(set(out))


def _cyclic_aperiodic(mask: int, n: int) -> bool:
    full = (1 << n) - 1
    for d in range(1, n):
        if n % d == 0 and (((mask << d) | (mask >> (n - d))) & full) == mask:
            return False
    return True


def half_order_condition_sets(n: int, m: int) -> list[int]:
    """Masks of every ``S`` of size ``m = n/2`` satisfying the half-order congruence condition."""
    if n != 2 * m:
        return []
    out = set()
    for h in range(1, m + 1):
        if m % h:
            continue
        k = m // h
        step = 2 * k
        for tmask in residue_transversals(step, k, with_zero=False):
            if not _cyclic_aperiodic(tmask, step):
                continue
            smask = 0
            for t in bits_of(tmask):
                for j in range(h):
                    smask |= 1 << (t + step * j)
            out.add(smask)
    return sorted(out)


def subgroup_oracle(n: int, smask: int, m: int) -> bool:
    """Does ``S (+) mZ_n = Z_n`` hold?  Checked by laying the translates side by side."""
    full = (1 << n) - 1
    covered = 0
    for c in range(0, n, m):
        t = ((smask << c) | (smask >> (n - c))) & full if c else smask
        if t & covered:
            return False
        covered |= t
    return covered == full


def _mask_to_subset(G: AbelianGroup, mask: int) -> GroupSubset:
    return GroupSubset(G, tuple(bits_of(mask)))


def _generating(n: int, mask: int) -> bool:
    return gcd(n, *bits_of(mask)) == 1


# -- main driver ----------------------------------------------------------------


class _Runner:
    def __init__(self, scope: CrossvalScope, report: CrossvalReport, log: Optional[Callable[[str], None]]):
        self.scope = scope
        self.report = report
        self.log = log or (lambda msg: None)
        self.rng = random.Random(scope.seed)

    def compare(self, tid: str, G: AbelianGroup, S: GroupSubset, oracle: bool) -> bool:
        verdict = CHECKERS[tid][0](G, S)
        if not verdict.applicable:
            return False
        self.report._count(tid)
        if verdict.predicted_admits != oracle:
            self.report.discrepancies.append(
                Discrepancy(tid, str(G), tuple(S.to_json()), verdict.predicted_admits, oracle)
            )
        return True

    # cyclic groups

    def cyclic_families(self) -> dict[tuple[int, int, bool], list[str]]:
        fams: dict[tuple[int, int, bool], list[str]] = {}
        lo = max(self.scope.min_cyclic_order, 2)
        for n in range(lo, self.scope.max_cyclic_order + 1):
            for tid in self.scope.theorems:
                total = is_total_theorem(tid)
                for m in range(1, n + 1):
                    if size_gate(tid, n, m):
                        s = m if total else m - 1
                        if s >= 1:
                            fams.setdefault((n, s, total), []).append(tid)
        return fams

    def run_cyclic(self) -> None:
        for (n, s, total), tids in sorted(self.cyclic_families().items()):
            members = cyclic_connection_set_count(n, s)
            if members == 0:
                continue
            if members <= self.scope.direct_limit and not self.prefer_complements(n, s, total, tids, members):
                self.direct_family(n, s, total, tids, members)
            else:
                self.complement_family(n, s, total, tids, members)

    @staticmethod
    def prefer_complements(n: int, s: int, total: bool, tids: list[str], members: int) -> bool:
        # rough per-unit costs measured on one core: a checker call on a
        # direct member versus one complement's partner search
        m = s if total else s + 1
        return comb(n - 1, n // m - 1) * 0.6 < members * len(tids)

    def direct_family(self, n: int, s: int, total: bool, tids: list[str], members: int) -> None:
        G = AbelianGroup((n,))
        m = s if total else s + 1
        compared = admitting = 0
        for smask in cyclic_connection_sets(n, s):
            if not _generating(n, smask):
                continue
            S = None
            bmask = smask if total else smask | 1
            oracle = None
            for tid in tids:
                if tid == "CTPC.subgroup":
                    ans = subgroup_oracle(n, smask, m)
                else:
                    if oracle is None:
                        oracle = cyclic_tiles_with_zero(n, bmask)
                    ans = oracle
                S = S or _mask_to_subset(G, smask)
                compared += self.compare(tid, G, S, ans)
            admitting += bool(oracle)
        self.report.families.append(FamilyRecord(n, s, total, "direct", members, compared, admitting))

    def complement_family(self, n: int, s: int, total: bool, tids: list[str], members: int) -> None:
        G = AbelianGroup((n,))
        m = s if total else s + 1
        c = n // m
        admitting: set[int] = set()
        complements = 0
        for rest in itertools.combinations(range(1, n), c - 1):
            cmask = 1
            for x in rest:
                cmask |= 1 << x
            complements += 1
            for bmask in cyclic_symmetric_partners(n, cmask, with_zero=not total):
                admitting.add(bmask & ~1)
        sub_admitting = None
        compared = 0
        for tid in tids:
            if tid == "CTPC.subgroup":
                if sub_admitting is None:
                    sub = 0
                    for x in range(0, n, m):
                        sub |= 1 << x
                    sub_admitting = {b & ~1 for b in cyclic_symmetric_partners(n, sub, with_zero=False)}
                A = sub_admitting
                P = residue_transversals(n, m, with_zero=False)
            elif tid == "CTPC.half-order":
                A = admitting
                P = half_order_condition_sets(n, m)
            else:
                A = admitting
                P = residue_transversals(n, m, with_zero=not total)
            for smask in sorted(A | set(P)):
                if _generating(n, smask):
                    compared += self.compare(tid, G, _mask_to_subset(G, smask), smask in A)
            # random members re-checked against a direct search
            for smask in random_connection_sets(n, s, self.scope.spot_checks, self.rng):
                bmask = smask if total else smask | 1
                direct = subgroup_oracle(n, smask, m) if tid == "CTPC.subgroup" else cyclic_tiles_with_zero(n, bmask)
                in_family = smask in (sub_admitting if tid == "CTPC.subgroup" else admitting)
                self.report.spot_checks += 1
                if direct != in_family:
                    self.report.discrepancies.append(
                        Discrepancy("oracle:" + tid, str(G), tuple(bits_of(smask)), in_family, direct)
                    )
                if _generating(n, smask):
                    compared += self.compare(tid, G, _mask_to_subset(G, smask), direct)
        self.report.families.append(FamilyRecord(n, s, total, "complements", members, compared, len(admitting), complements))

    # two-factor groups

    def run_two_factor(self) -> None:
        tids = [t for t in self.scope.theorems if t in GENERAL_THEOREMS]
        if not tids:
            return
        for a in range(2, self.scope.max_two_factor_order // 2 + 1):
            for b in range(2, self.scope.max_two_factor_order // a + 1):
                G = AbelianGroup((a, b))
                self.two_factor_group(G, tids)

    def two_factor_group(self, G: AbelianGroup, tids: list[str]) -> None:
        n = G.order
        neg = G.neg_index
        invs = [i for i in range(1, n) if neg[i] == i]
        pairs = [(i, int(neg[i])) for i in range(1, n) if neg[i] > i]
        limit = self.scope.max_two_factor_tile
        cache: dict[tuple[tuple[int, ...], bool], bool] = {}
        compared = 0
        members = 0
        for total in (False, True):
            active = [t for t in tids if is_total_theorem(t) == total]
            if not active:
                continue
            max_s = limit if total else limit - 1
            for s in range(1, max_s + 1):
                m = s if total else s + 1
                if n % m:
                    continue
                for k in range(s // 2 + 1):
                    j = s - 2 * k
                    if j > len(invs):
                        continue
                    for pc in itertools.combinations(pairs, k):
                        for ic in itertools.combinations(invs, j):
                            idx = tuple(sorted([x for p in pc for x in p] + list(ic)))
                            S = GroupSubset(G, idx)
                            members += 1
                            if not generates(S):
                                continue
                            for tid in active:
                                v = CHECKERS[tid][0](G, S)
                                if not v.applicable:
                                    continue
                                key = (idx, total)
                                if key not in cache:
                                    cache[key] = admits_code(G, S, total) is not None
                                self.report._count(tid)
                                compared += 1
                                if v.predicted_admits != cache[key]:
                                    self.report.discrepancies.append(
                                        Discrepancy(tid, str(G), tuple(S.to_json()), v.predicted_admits, cache[key])
                                    )
        self.report.families.append(FamilyRecord(n, 0, False, f"two-factor {G}", members, compared, sum(cache.values())))

    # explicit instances

    def run_instances(self) -> None:
        for G, S in self.scope.instances:
            if not S.indices or not is_inverse_closed_connection_set(S):
                self.report.inapplicable.append({"group": str(G), "connection_set": str(S), "reason": "gate.connection-set"})
                continue
            tids = [t for t in self.scope.theorems if t in GENERAL_THEOREMS or G.rank == 1]
            for tid in tids:
                fn, total = CHECKERS[tid]
                v = fn(G, S)
                if not v.applicable:
                    self.report.inapplicable.append(
                        {"theorem_id": tid, "group": str(G), "connection_set": str(S), "reason": v.reason}
                    )
                    continue
                if v.claim == ADMITS_SUBGROUP_CODE:
                    oracle = subgroup_oracle(G.order, S.bits, len(S))
                else:
                    oracle = admits_code(G, S, total) is not None
                self.report._count(tid)
                if v.predicted_admits != oracle:
                    self.report.discrepancies.append(
                        Discrepancy(tid, str(G), tuple(S.to_json()), v.predicted_admits, oracle)
                    )


def registry_crossvalidate(
    scope: Optional[CrossvalScope] = None, log: Optional[Callable[[str], None]] = None
) -> CrossvalReport:
    """Compare every applicable theorem prediction in ``scope`` with exhaustive search."""
    scope = scope or CrossvalScope()
    report = CrossvalReport()
    start = time.monotonic()
    runner = _Runner(scope, report, log)
    if scope.theorems:
        runner.run_cyclic()
        runner.run_two_factor()
    runner.run_instances()
    report.seconds = time.monotonic() - start
    return report


# -- half-order code lists ---------------------------------------------------------


@dataclass
class HalfOrderReport:
    instances: int = 0
    admitting: int = 0
    mismatches: list = field(default_factory=list)


def half_order_completeness(max_n: int = 40, direct_limit: int = 200_000) -> HalfOrderReport:
    """For every applicable ``n = p|S|`` circulant with ``n <= max_n``, compare the structural code list with search."""
    from .theorems import check_CTPC_half_order

    report = HalfOrderReport()
    for n in range(4, max_n + 1):
        G = AbelianGroup((n,))
        for m in range(1, n):
            if n % m or not isprime(n // m):
                continue
            members = cyclic_connection_set_count(n, m)
            if members == 0:
                continue
            if members <= direct_limit:
                source: Iterable[int] = cyclic_connection_sets(n, m)
                lookup = None
            else:
                lookup = {}
                c = n // m
                for rest in itertools.combinations(range(1, n), c - 1):
                    cmask = 1
                    for x in rest:
                        cmask |= 1 << x
                    for b in cyclic_symmetric_partners(n, cmask, with_zero=False):
                        lookup.setdefault(b, []).append(cmask)
                source = sorted(set(lookup) | set(half_order_condition_sets(n, m)))
            for smask in source:
                if not _generating(n, smask):
                    continue
                S = _mask_to_subset(G, smask)
                v = check_CTPC_half_order(G, S)
                if not v.applicable:
                    continue
                report.instances += 1
                if lookup is None:
                    through_zero = cyclic_complements_with_zero(n, smask)
                else:
                    through_zero = lookup.get(smask, [])
                searched = set()
                for cmask in through_zero:
                    searched.update(rotations(cmask, n))
                listed = {c.bits for c in v.details.get("codes", [])} if v.predicted_admits else set()
                report.admitting += bool(searched)
                if searched != listed:
                    report.mismatches.append((n, tuple(bits_of(smask))))
    return report


def circulant_dispatch_consistency(max_n: int = 24) -> int:
    """Run the combined circulant dispatcher on every generating ``S`` with ``|S|`` dividing ``n``; returns the count.

    The dispatcher raises if applicable rows disagree.
    """
    count = 0
    for n in range(4, max_n + 1):
        G = AbelianGroup((n,))
        for s in range(1, n):
            if n % s:
                continue
            for smask in cyclic_connection_sets(n, s):
                if _generating(n, smask):
                    check_circulant_tpc(G, _mask_to_subset(G, smask))
                    count += 1
    return count
