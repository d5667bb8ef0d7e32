"""Solve a 42-vertex circulant by passing to its 6-vertex quotient.

S u {0} is a union of cosets of <6>, so the perfect codes of Cay(Z42, S)
come from the codes of a 6-cycle, each lifted in 7^2 ways.
"""

from cayley_codes import enumerate_codes, lift_codes, make_group, parse_subset, reduce_instance

G = make_group([42])
S = parse_subset(G, "{1,5,6,7,11,12,13,17,18,19,23,24,25,29,30,31,35,36,37,41}")

R = reduce_instance(G, S)
print("kernel        ", R.kernel)
print("reduced graph ", f"Cay(Z{R.reduced.group}, {R.reduced.connection_set})")

small = enumerate_codes(R.reduced.group, R.reduced.connection_set).codes
print("reduced codes ", ", ".join(map(str, small)))

lifted = lift_codes(R, small)
direct = enumerate_codes(G, S).codes
print(f"lifted {len(lifted)} codes, direct search found {len(direct)}")
print("same lists:", lifted == list(direct))
print("a few of them:", ", ".join(str(c) for c in lifted[:4]))
