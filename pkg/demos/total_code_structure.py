"""Three shapes a total perfect code of size n/p can take in a good group."""

from cayley_codes import make_group, validate_ATPCsubgp
from cayley_codes.subsets import GroupSubset

cases = [
    ("Z10, S = odd residues", [10], [1, 3, 5, 7, 9], [0, 1]),
    ("Z2xZ10", [2, 10], [(1, 5), (0, 1), (0, 3), (0, 7), (0, 9)], [(0, 0), (0, 1), (1, 0), (1, 1)]),
    ("Z6, S = {2,3,4}", [6], [2, 3, 4], [0, 3]),
]

for label, factors, s, c in cases:
    G = make_group(factors)
    rep = validate_ATPCsubgp(G, GroupSubset.of(G, s), GroupSubset.of(G, c))
    print(f"{label:22s} branch={rep.branch:18s} subgroup={rep.subgroup}")
    if "z_generates_quotient_periods" in rep.details:
        print(" " * 23, "z generates the periods of S/H:", rep.details["z_generates_quotient_periods"])
