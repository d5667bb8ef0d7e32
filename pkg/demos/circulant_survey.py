"""Which criterion decides each small circulant, and is it right?

For every connected Cay(Z_n, S) with |S| dividing n, ask the circulant
dispatcher for a verdict and compare it with exhaustive search.
"""

import collections
import sys

from cayley_codes import admits_code, check_circulant_tpc, make_group
from cayley_codes.crossval import cyclic_connection_sets
from cayley_codes.subsets import GroupSubset, generates

max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 16
tally = collections.Counter()
wrong = []

for n in range(4, max_n + 1):
    G = make_group([n])
    for s in range(1, n):
        if n % s:
            continue
        for mask in cyclic_connection_sets(n, s):
            S = GroupSubset(G, tuple(i for i in range(n) if mask >> i & 1))
            if not generates(S):
                continue
            v = check_circulant_tpc(G, S)
            if not v.applicable:
                tally["(no criterion)"] += 1
                continue
            truth = admits_code(G, S, total=True) is not None
            if v.claim == "admits-code" and v.predicted_admits != truth:
                wrong.append((n, str(S)))
            tally[v.theorem_id] += 1

for tid, k in tally.most_common():
    print(f"{tid:20s} {k:6d}")
print("disagreements with search:", wrong or "none")
