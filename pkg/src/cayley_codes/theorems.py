"""Named existence criteria for (total) perfect codes, with applicability gates.

Each ``check_*`` function returns a :class:`TheoremVerdict`.  A verdict is
either inapplicable, with a machine-readable reason code such as
``gate.cardinality``, or applicable with the evaluated congruence condition,
the predicted answer, and a witness: the least violating pair, or a code
built and verified from the moduli construction.

Theorem ids: APCforP, APCforPl, ATPCforP, ATPCforPl (general abelian
groups), APCsubgp, ATPCsubgp (structure in good groups), and the circulant
rows CTPC.subgroup, CTPC.half-order, CTPC.pq-periodic, CTPC.pq-aperiodic,
CTPC.Nbar.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Optional, Union

from sympy import factorint, isprime

from .cyclotomic import cyclotomic_divisibility_profile
from .errors import InputError, InternalConsistencyError, PreconditionError
from .groups import AbelianGroup, GroupElement, SubgroupHandle, primary_decomposition, quotient, subgroup_generated
from .search import canonical_code_from_moduli
from .subsets import GroupSubset, generates, is_inverse_closed_connection_set, periods, quotient_subset
from .tiling import is_perfect_code, is_total_perfect_code

ADMITS_CODE = "admits-code"
ADMITS_SUBGROUP_CODE = "admits-subgroup-code"

THEOREM_IDS = (
    "APCsubgp",
    "ATPCsubgp",
    "APCforP",
    "APCforPl",
    "ATPCforP",
    "ATPCforPl",
    "CTPC.subgroup",
    "CTPC.half-order",
    "CTPC.pq-periodic",
    "CTPC.pq-aperiodic",
    "CTPC.Nbar",
)


@dataclass(frozen=True)
class ViolatingPair:
    first: GroupElement
    second: GroupElement
    modulus: int
    coordinate: int = 0

    def recheck(self) -> bool:
        t = self.coordinate
        return self.first != self.second and (self.first.coords[t] - self.second.coords[t]) % self.modulus == 0

    def to_json(self) -> dict:
        return {
            "pair": [str(self.first), str(self.second)],
            "modulus": self.modulus,
            "coordinate": self.coordinate,
        }


Witness = Union[ViolatingPair, GroupSubset, None]


@dataclass(frozen=True)
class TheoremVerdict:
    theorem_id: str
    applicable: bool
    reason: Optional[str] = None
    condition_holds: Optional[bool] = None
    predicted_admits: Optional[bool] = None
    witness: Witness = None
    claim: str = ADMITS_CODE
    details: dict = field(default_factory=dict, compare=False)
    related: tuple["TheoremVerdict", ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.applicable and self.predicted_admits is not None:
            raise InternalConsistencyError("an inapplicable verdict cannot predict")
        if self.applicable and self.predicted_admits is None:
            raise InternalConsistencyError("an applicable verdict must predict")
        if isinstance(self.witness, ViolatingPair) and not self.witness.recheck():
            raise InternalConsistencyError(f"witness {self.witness} does not violate the congruence")

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "theorem_id": self.theorem_id,
            "applicable": self.applicable,
            "claim": self.claim,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        if self.applicable:
            out["condition_holds"] = self.condition_holds
            out["predicted_admits"] = self.predicted_admits
        if isinstance(self.witness, ViolatingPair):
            out["witness"] = {"violating_pair": self.witness.to_json()}
        elif isinstance(self.witness, GroupSubset):
            out["witness"] = {"code": str(self.witness)}
        if self.details:
            out["details"] = _jsonable(self.details)
        if self.related:
            out["related"] = [v.to_json() for v in self.related]
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (GroupSubset, GroupElement, SubgroupHandle, AbelianGroup)):
        return str(obj)
    return obj


def _inapplicable(theorem_id: str, reason: str, claim: str = ADMITS_CODE, **details) -> TheoremVerdict:
    return TheoremVerdict(theorem_id, False, reason=reason, claim=claim, details=details)


def _prime_power(m: int) -> Optional[tuple[int, int]]:
    if m < 2:
        return None
    f = factorint(m)
    if len(f) != 1:
        return None
    (p, l), = f.items()
    return p, l


def _exponent_of(p: int, n: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def first_violating_pair(B: GroupSubset, modulus: int, coordinate: int = 0) -> Optional[ViolatingPair]:
    """Least pair (in element order) of distinct elements congruent mod ``modulus`` in ``coordinate``."""
    seen: dict[int, GroupElement] = {}
    best = None
    for e in B.elements:
        r = e.coords[coordinate] % modulus
        if r in seen:
            cand = (seen[r], e)
            if best is None or (cand[1], cand[0]) < (best[1], best[0]):
                best = cand
        else:
            seen[r] = e
    if best is None:
        return None
    return ViolatingPair(best[0], best[1], modulus, coordinate)


def _basic_gates(theorem_id: str, G: AbelianGroup, S: GroupSubset, claim: str = ADMITS_CODE) -> Optional[TheoremVerdict]:
    if S.group != G or not S.indices or not is_inverse_closed_connection_set(S):
        return _inapplicable(theorem_id, "gate.connection-set", claim)
    if not generates(S):
        return _inapplicable(theorem_id, "gate.connectivity", claim)
    return None


def _congruence_theorem(theorem_id: str, G: AbelianGroup, S: GroupSubset, total: bool, power: bool) -> TheoremVerdict:
    gate = _basic_gates(theorem_id, G, S)
    if gate:
        return gate
    B = S if total else S.with_identity()
    m = len(B)
    pp = _prime_power(m)
    if pp is None or (not power and pp[1] != 1) or (total and not power and pp[0] == 2):
        need = "a prime power" if power else ("an odd prime" if total else "a prime")
        return _inapplicable(theorem_id, "gate.cardinality", size=m, required=need)
    p, l = pp
    divisible = [i for i, ni in enumerate(G.factors) if ni % p == 0]
    if len(divisible) != 1:
        return _inapplicable(theorem_id, "gate.divisibility", prime=p, factors_divisible=len(divisible))
    if power and _exponent_of(p, G.order) != l:
        return _inapplicable(theorem_id, "gate.exponent", prime=p, l=l, exponent_in_order=_exponent_of(p, G.order))
    t = divisible[0]
    modulus = p**l
    pair = first_violating_pair(B, modulus, t)
    details = {"prime": p, "l": l, "coordinate": t, "modulus": modulus}
    if G.factors[t] % modulus == 0:
        details["cyclotomic_profile"] = cyclotomic_divisibility_profile(B, t, p, l)
    if pair is not None:
        return TheoremVerdict(theorem_id, True, None, False, False, pair, details=details)
    moduli = [1] * G.rank
    moduli[t] = modulus
    C = canonical_code_from_moduli(G, moduli)
    check = is_total_perfect_code if total else is_perfect_code
    if not check(G, S, C):
        raise InternalConsistencyError(f"{theorem_id}: constructed {C} is not a code")
    return TheoremVerdict(theorem_id, True, None, True, True, C, details=details)


def check_theorem_APCforP(G: AbelianGroup, S: GroupSubset) -> TheoremVerdict:
    """Perfect codes when ``|S_0|`` is a prime dividing exactly one cyclic factor."""
    return _congruence_theorem("APCforP", G, S, total=False, power=False)


def check_theorem_APCforPl(G: AbelianGroup, S: GroupSubset) -> TheoremVerdict:
    """Perfect codes when ``|S_0| = p^l`` is the exact power of ``p`` in ``|G|``."""
    return _congruence_theorem("APCforPl", G, S, total=False, power=True)


def check_theorem_ATPCforP(G: AbelianGroup, S: GroupSubset) -> TheoremVerdict:
    """Total perfect codes when ``|S|`` is an odd prime dividing exactly one cyclic factor."""
    return _congruence_theorem("ATPCforP", G, S, total=True, power=False)


def check_theorem_ATPCforPl(G: AbelianGroup, S: GroupSubset) -> TheoremVerdict:
    """Total perfect codes when ``|S| = p^l`` is the exact power of ``p`` in ``|G|``."""
    return _congruence_theorem("ATPCforPl", G, S, total=True, power=True)


# -- good groups -----------------------------------------------------------------

INF = float("inf")

# each type is a list of (base, exponent); a str base is a prime symbol,
# exponent "k" is unbounded
GOOD_TYPES: tuple[tuple[str, tuple[tuple[Union[str, int], Union[int, str]], ...]], ...] = (
    ("{p^k,q}", (("p", "k"), ("q", 1))),
    ("{p^2,q^2}", (("p", 2), ("q", 2))),
    ("{p^2,q,r}", (("p", 2), ("q", 1), ("r", 1))),
    ("{p,q,r,s}", (("p", 1), ("q", 1), ("r", 1), ("s", 1))),
    ("{p^3,2,2}", (("p", 3), (2, 1), (2, 1))),
    ("{p^2,2,2,2}", (("p", 2), (2, 1), (2, 1), (2, 1))),
    ("{p,2^2,2}", (("p", 1), (2, 2), (2, 1))),
    ("{p,2,2,2,2}", (("p", 1), (2, 1), (2, 1), (2, 1), (2, 1))),
    ("{p,q,2,2}", (("p", 1), ("q", 1), (2, 1), (2, 1))),
    ("{p,3,3}", (("p", 1), (3, 1), (3, 1))),
    ("{3^2,3}", ((3, 2), (3, 1))),
    ("{2^k,2}", ((2, "k"), (2, 1))),
    ("{2^2,2^2}", ((2, 2), (2, 2))),
    ("{p,p}", (("p", 1), ("p", 1))),
)


@dataclass(frozen=True)
class GoodnessCertificate:
    is_good: bool
    matched_type: Optional[str] = None
    assignment: dict = field(default_factory=dict, compare=False)
    embedding: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "is_good": self.is_good,
            "matched_type": self.matched_type,
            "assignment": {k: v for k, v in sorted(self.assignment.items())},
            "embedding": {str(p): v for p, v in sorted(self.embedding.items())},
        }


def embeds(small: list[int], big: list[float]) -> bool:
    """p-group embedding: sorted-descending exponent domination."""
    a = sorted(small, reverse=True)
    b = sorted(big, reverse=True)
    return len(a) <= len(b) and all(x <= y for x, y in zip(a, b))


def is_good_group(G: AbelianGroup) -> GoodnessCertificate:
    """Is ``G`` a subgroup of one of the listed good types (symbols are distinct primes, distinct from the constants)?"""
    decomp = primary_decomposition(G)
    primes = sorted(decomp)
    for name, parts in GOOD_TYPES:
        symbols = sorted({b for b, _ in parts if isinstance(b, str)})
        constants = {b for b, _ in parts if isinstance(b, int)}
        free = [p for p in primes if p not in constants]
        # each symbol goes to a prime of G or stays unused (None)
        for choice in itertools.product(*[free + [None]] * len(symbols)):
            used = [c for c in choice if c is not None]
            if len(set(used)) != len(used):
                continue
            assign = dict(zip(symbols, choice))
            profile: dict[int, list[float]] = {}
            for base, exp in parts:
                prime = assign[base] if isinstance(base, str) else base
                if prime is None:
                    continue
                profile.setdefault(prime, []).append(INF if exp == "k" else exp)
            if all(p in profile and embeds(decomp[p], profile[p]) for p in primes):
                shown = {s: (assign[s] if assign[s] is not None else "unused") for s in symbols}
                emb = {p: {"group": decomp[p], "type": [("k" if e == INF else e) for e in sorted(profile[p], reverse=True)]} for p in primes}
                return GoodnessCertificate(True, name, shown, emb)
    return GoodnessCertificate(False)


def n_class_signature(n: int) -> list[int]:
    return sorted(factorint(n).values(), reverse=True)


def in_N(n: int) -> bool:
    """``n`` of the form p^k, p^k q, p^2 q^2, pqr, p^2 qr or pqrs (distinct primes)."""
    if n < 2:
        return False
    sig = n_class_signature(n)
    return (
        len(sig) == 1
        or (len(sig) == 2 and (sig[1] == 1 or sig == [2, 2]))
        or (len(sig) == 3 and sig[0] <= 2 and sig[1] == 1)
        or sig == [1, 1, 1, 1]
    )


# -- structure in good groups ----------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    theorem_id: str
    branch: str
    subgroup: SubgroupHandle
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "branch": self.branch,
            "subgroup": str(self.subgroup),
            "details": _jsonable(self.details),
        }


def _good_connected(G: AbelianGroup, S: GroupSubset) -> GoodnessCertificate:
    cert = is_good_group(G)
    if not cert.is_good:
        raise PreconditionError(f"{G} is not a good group")
    if S.group != G or not S.indices or not is_inverse_closed_connection_set(S):
        raise PreconditionError(f"{S} is not a valid connection set")
    if not generates(S):
        raise PreconditionError("the Cayley graph is disconnected")
    return cert


def classify_APCsubgp(G: AbelianGroup, S: GroupSubset, C: GroupSubset) -> StructureReport:
    """In a good group, a perfect code of size n/p in a connected graph of degree p-1 is a coset of a subgroup."""
    cert = _good_connected(G, S)
    n = G.order
    p = len(S) + 1
    if not (isprime(p) and p % 2 == 1 and n % p == 0 and p < n):
        raise PreconditionError(f"|S| + 1 = {p} must be an odd prime properly dividing {n}")
    if len(C) != n // p:
        raise PreconditionError(f"code must have size {n // p}")
    if not is_perfect_code(G, S, C):
        raise PreconditionError(f"{C} is not a perfect code")
    H = periods(C)
    rep = G.element_at(C.indices[0])
    if H.order != n // p or set(H.coset(rep)) != set(C.elements):
        raise InternalConsistencyError(f"{C} is not a coset of a subgroup of order {n // p}")
    return StructureReport("APCsubgp", "coset", H, {"representative": rep, "p": p, "goodness": cert.matched_type})


def validate_ATPCsubgp(G: AbelianGroup, S: GroupSubset, C: GroupSubset) -> StructureReport:
    """Classify a total perfect code of size n/p in a good group.

    Branches: ``complete-bipartite`` (S periodic, n = 2p), ``two-cosets`` (C a union of
    two cosets of its periods) and ``subgroup-coset`` (C a single coset, S a transversal).
    The last one is easy to overlook; Z6 with S = {2,3,4} and C = {0,3} is the
    smallest instance.
    """
    cert = _good_connected(G, S)
    n = G.order
    if not C.indices or n % len(C):
        raise PreconditionError("code size must divide the group order")
    p = n // len(C)
    if not (isprime(p) and p % 2 == 1 and p < n):
        raise PreconditionError(f"n/|C| = {p} must be an odd prime properly dividing {n}")
    if not is_total_perfect_code(G, S, C):
        raise PreconditionError(f"{C} is not a total perfect code")

    def require(cond: bool, what: str):
        if not cond:
            raise InternalConsistencyError(f"structure guarantee violated: {what}")

    require(n % 2 == 0, "n is even")
    if not periods(S).is_trivial():
        K = periods(S)
        require(len(C) == 2 and n == 2 * p, "|C| = 2 and n = 2p")
        require(K.order == p, "S is a coset of a subgroup of order p")
        x = next(i for i in S.indices if G.neg_index[i] == i)
        coset = set(K.coset(G.element_at(x)))
        require(coset == set(S.elements), "S = K + x with x an involution")
        require(not (K.index_set & S.index_set), "the two parts are independent sets")
        parts = (tuple(K.elements), tuple(sorted(coset)))
        return StructureReport(
            "ATPCsubgp", "complete-bipartite", K,
            {"p": p, "involution": G.element_at(x), "bipartition": parts, "goodness": cert.matched_type},
        )
    H = periods(C)
    require(not H.is_trivial(), "C is periodic")
    if H.order == len(C):
        # C is one coset of a subgroup and S is a transversal of it, so S/H is all of G/H
        require(len(quotient_subset(S, quotient(G, H))) == p, "S meets every coset of H once")
        return StructureReport(
            "ATPCsubgp", "subgroup-coset", H,
            {"p": p, "representative": G.element_at(C.indices[0]), "goodness": cert.matched_type},
        )
    require(n // H.order == 2 * p and 2 * p < n, "|G/H| = 2p < n")
    require(not (H.index_set & S.index_set), "H and S are disjoint")
    reps = sorted({min(H.coset(G.element_at(c)), key=lambda e: e.coords) for c in C.indices}, key=lambda e: e.coords)
    require(len(reps) == 2 and len(C) == 2 * H.order, "C is a union of exactly two H-cosets")
    details: dict = {"p": p, "coset_representatives": reps, "goodness": cert.matched_type}
    if 0 in C.index_set:
        z = reps[1] if reps[0].is_identity() else reps[0]
        Hz = set(H.coset(z))
        meet = [e for e in Hz if e in S]
        require(len(meet) == 1, "|(H+z) meets S| = 1")
        Q = quotient(G, H)
        K = periods(quotient_subset(S, Q))
        zq = Q.forward(z)
        require(K.order == p, "S/H is periodic with periods of order p")
        # H+z lies outside K, so it is 2(H+z) that generates K (and H+z generates G/H)
        require(zq not in K, "H+z lies outside the periods of S/H")
        require(subgroup_generated(Q.quotient_group, [zq * 2]).indices == K.indices, "2(H+z) generates the periods of S/H")
        require(subgroup_generated(Q.quotient_group, [zq]).is_whole_group(), "H+z generates G/H")
        details.update({
            "z": z,
            "matching_edge_end": meet[0],
            "quotient_periods": K,
            "z_generates_quotient_periods": subgroup_generated(Q.quotient_group, [zq]).indices == K.indices,
        })
    return StructureReport("ATPCsubgp", "two-cosets", H, details)


# -- circulant total perfect codes -----------------------------------------------


def _cyclic_only(G: AbelianGroup) -> None:
    if G.rank != 1:
        raise InputError("circulant criteria need a cyclic group given with a single factor")


def _mod_size_verdict(theorem_id: str, G: AbelianGroup, S: GroupSubset, claim: str = ADMITS_CODE, **details) -> TheoremVerdict:
    n, m = G.order, len(S)
    pair = first_violating_pair(S, m)
    details = {"modulus": m, **details}
    if pair is not None:
        return TheoremVerdict(theorem_id, True, None, False, False, pair, claim, details)
    C = canonical_code_from_moduli(G, [m])
    if not is_total_perfect_code(G, S, C):
        raise InternalConsistencyError(f"{theorem_id}: subgroup {C} is not a total perfect code")
    return TheoremVerdict(theorem_id, True, None, True, True, C, claim, details)


def check_CTPC_subgroup(G: AbelianGroup, S: GroupSubset) -> TheoremVerdict:
    """Existence of a subgroup total perfect code in a circulant, with |S| dividing n."""
    _cyclic_only(G)
    tid = "CTPC.subgroup"
    gate = _basic_gates(tid, G, S, ADMITS_SUBGROUP_CODE)
    if gate:
        return gate
    n, m = G.order, len(S)
    if n < 4:
        return _inapplicable(tid, "gate.order", ADMITS_SUBGROUP_CODE, n=n)
    if n % m:
        return _inapplicable(tid, "gate.divisibility", ADMITS_SUBGROUP_CODE, size=m)
    return _mod_size_verdict(tid, G, S, ADMITS_SUBGROUP_CODE)


def half_order_codes(G: AbelianGroup, H: SubgroupHandle, k: int) -> list[GroupSubset]:
    """The sets ``{a0 + i, a1 + k + i}`` with ``a0, a1`` in ``H`` and ``0 <= i < k``."""
    n = G.order
    out = {
        GroupSubset(G, ((a0 + i) % n, (a1 + k + i) % n))
        for a0 in H.indices
        for a1 in H.indices
        for i in range(k)
    }
    return sorted(out, key=lambda c: c.indices)


def check_CTPC_half_order(G: AbelianGroup, S: GroupSubset) -> TheoremVerdict:
    """Circulants with ``n = p|S|``: codes exist iff p = 2 and coset representatives of S/H are distinct mod k."""
    _cyclic_only(G)
    tid = "CTPC.half-order"
    gate = _basic_gates(tid, G, S)
    if gate:
        return gate
    n, m = G.order, len(S)
    if n < 4:
        return _inapplicable(tid, "gate.order", n=n)
    if n % m:
        return _inapplicable(tid, "gate.divisibility", size=m)
    p = n // m
    if not isprime(p):
        return _inapplicable(tid, "gate.cardinality", size=m, cofactor=p)
    H = periods(S)
    k = m // H.order
    details: dict = {"p": p, "periods": H, "k": k}
    if p != 2:
        details["cause"] = "p-odd"
        return TheoremVerdict(tid, True, None, False, False, None, details=details)
    step = n // H.order  # H = step * Z_n
    reps = sorted({i % step for i in S.indices})
    R = GroupSubset(G, tuple(reps))
    pair = first_violating_pair(R, k)
    if pair is not None:
        return TheoremVerdict(tid, True, None, False, False, pair, details=details)
    codes = half_order_codes(G, H, k)
    for c in codes:
        if not is_total_perfect_code(G, S, c):
            raise InternalConsistencyError(f"{tid}: listed set {c} is not a total perfect code")
    details["codes"] = codes
    return TheoremVerdict(tid, True, None, True, True, codes[0], details=details)


def _semiprime(m: int) -> Optional[tuple[int, int]]:
    f = factorint(m)
    if sum(f.values()) != 2:
        return None
    ps = sorted(p for p, e in f.items() for _ in range(e))
    return ps[0], ps[1]


def _pq_gates(tid: str, G: AbelianGroup, S: GroupSubset, periodic: bool, need_n_class: bool):
    gate = _basic_gates(tid, G, S)
    if gate:
        return gate, None
    n, m = G.order, len(S)
    if need_n_class and not in_N(n):
        return _inapplicable(tid, "gate.n-class", n=n), None
    if not need_n_class and n < 6:
        return _inapplicable(tid, "gate.order", n=n), None
    pq = _semiprime(m)
    if pq is None:
        return _inapplicable(tid, "gate.cardinality", size=m), None
    if n % m:
        return _inapplicable(tid, "gate.divisibility", size=m), None
    if gcd(m, n // m) != 1:
        return _inapplicable(tid, "gate.coprime", size=m, cofactor=n // m), None
    H = periods(S)
    if H.is_trivial() == periodic:
        return _inapplicable(tid, "gate.periodicity", periodic=not H.is_trivial()), None
    return None, {"p": pq[0], "q": pq[1]}


def check_CTPC_pq_periodic(G: AbelianGroup, S: GroupSubset) -> TheoremVerdict:
    _cyclic_only(G)
    gate, details = _pq_gates("CTPC.pq-periodic", G, S, periodic=True, need_n_class=False)
    return gate or _mod_size_verdict("CTPC.pq-periodic", G, S, **details)


def check_CTPC_pq_aperiodic(G: AbelianGroup, S: GroupSubset) -> TheoremVerdict:
    _cyclic_only(G)
    gate, details = _pq_gates("CTPC.pq-aperiodic", G, S, periodic=False, need_n_class=True)
    return gate or _mod_size_verdict("CTPC.pq-aperiodic", G, S, **details)


def check_CTPC_Nbar(G: AbelianGroup, S: GroupSubset) -> TheoremVerdict:
    """Circulants of order in N with |S| and n/|S| coprime."""
    _cyclic_only(G)
    tid = "CTPC.Nbar"
    gate = _basic_gates(tid, G, S)
    if gate:
        return gate
    n, m = G.order, len(S)
    if not in_N(n):
        return _inapplicable(tid, "gate.n-class", n=n)
    if n % m:
        return _inapplicable(tid, "gate.divisibility", size=m)
    if gcd(m, n // m) != 1:
        return _inapplicable(tid, "gate.coprime", size=m, cofactor=n // m)
    return _mod_size_verdict(tid, G, S)


CIRCULANT_ROWS = (
    ("ATPCforP", check_theorem_ATPCforP),
    ("ATPCforPl", check_theorem_ATPCforPl),
    ("CTPC.pq-periodic", check_CTPC_pq_periodic),
    ("CTPC.pq-aperiodic", check_CTPC_pq_aperiodic),
    ("CTPC.Nbar", check_CTPC_Nbar),
    ("CTPC.subgroup", check_CTPC_subgroup),
    ("CTPC.half-order", check_CTPC_half_order),
)


def check_circulant_tpc(n: Union[int, AbelianGroup], S: GroupSubset) -> TheoremVerdict:
    """Evaluate every circulant row and return one verdict.

    The primary verdict is the first applicable row whose claim is about
    codes in general; when only the subgroup row applies, that row is
    returned.  Every other row is attached under ``related``.  Applicable rows
    must agree with each other, and a subgroup code implies a code.
    """
    G = n if isinstance(n, AbelianGroup) else AbelianGroup((int(n),))
    _cyclic_only(G)
    if S.group != G:
        raise InputError(f"connection set lives in {S.group}, not Z_{G.order}")
    verdicts = [fn(G, S) for _, fn in CIRCULANT_ROWS]
    general = [v for v in verdicts if v.applicable and v.claim == ADMITS_CODE]
    subgroup = next(v for v in verdicts if v.theorem_id == "CTPC.subgroup")
    if len({v.predicted_admits for v in general}) > 1:
        raise InternalConsistencyError(f"circulant rows disagree for S={S}: " + ", ".join(f"{v.theorem_id}={v.predicted_admits}" for v in general))
    if general and subgroup.applicable and subgroup.predicted_admits and not general[0].predicted_admits:
        raise InternalConsistencyError(f"a subgroup code is predicted but {general[0].theorem_id} predicts none")
    if general:
        primary = general[0]
    elif subgroup.applicable:
        primary = subgroup
    else:
        reasons = {v.theorem_id: v.reason for v in verdicts}
        return TheoremVerdict("CTPC", False, reason="gate.none-applicable", details={"reasons": reasons}, related=tuple(verdicts))
    others = tuple(v for v in verdicts if v is not primary)
    return TheoremVerdict(
        primary.theorem_id,
        primary.applicable,
        primary.reason,
        primary.condition_holds,
        primary.predicted_admits,
        primary.witness,
        primary.claim,
        primary.details,
        others,
    )


CHECKERS = {
    "APCforP": (check_theorem_APCforP, False),
    "APCforPl": (check_theorem_APCforPl, False),
    "ATPCforP": (check_theorem_ATPCforP, True),
    "ATPCforPl": (check_theorem_ATPCforPl, True),
    "CTPC.subgroup": (check_CTPC_subgroup, True),
    "CTPC.half-order": (check_CTPC_half_order, True),
    "CTPC.pq-periodic": (check_CTPC_pq_periodic, True),
    "CTPC.pq-aperiodic": (check_CTPC_pq_aperiodic, True),
    "CTPC.Nbar": (check_CTPC_Nbar, True),
}
"""Theorem id -> (checker taking (G, S), whether the claim is about total codes)."""
