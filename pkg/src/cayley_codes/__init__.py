"""Perfect codes and total perfect codes in Cayley graphs of finite abelian groups.

A perfect code of ``Cay(G, S)`` is a set ``C`` whose closed neighbourhoods
partition ``G``; equivalently ``(S u {0}) (+) C = G``.  Total codes use open
neighbourhoods, ``S (+) C = G``.
"""

from .errors import (
    CayleyCodesError,
    GroupMismatchError,
    InputError,
    InternalConsistencyError,
    LimitExceeded,
    PreconditionError,
)
from .groups import (
    AbelianGroup,
    GroupElement,
    QuotientMap,
    SubgroupHandle,
    all_subgroups,
    make_group,
    parse_element,
    parse_group,
    primary_decomposition,
    quotient,
    subgroup_generated,
)
from .subsets import (
    GroupSubset,
    difference_set,
    generates,
    is_inverse_closed_connection_set,
    is_periodic,
    parse_subset,
    periods,
    quotient_subset,
    sum_set,
)
from .tiling import (
    is_code,
    is_factorization,
    is_perfect_code,
    is_total_perfect_code,
    polynomial_code_criterion,
    two_of_three,
)
from .cyclotomic import IntPolynomial, cyclotomic, cyclotomic_divisibility_profile, subset_polynomial
from .search import (
    SearchLimits,
    admits_code,
    canonical_code_from_moduli,
    check_sufficiency_moduli,
    enumerate_codes,
    lift_codes,
    reduce_instance,
    subgroup_code_connection_set,
)
from .theorems import (
    CHECKERS,
    TheoremVerdict,
    check_circulant_tpc,
    classify_APCsubgp,
    in_N,
    is_good_group,
    validate_ATPCsubgp,
)
from .crossval import CrossvalScope, registry_crossvalidate

__version__ = "0.1.0"
