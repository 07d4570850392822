"""Names and one-line statements of the results used by construct and classify."""

RULES = {
    # existence and constructions
    "single-part": "a latin hypercube of any order realizes a one-part partition",
    "asset": "explicit stored hypercube",
    "equal-parts": "LC(a^n) exists for all a, n; LS(a^n) exists iff n != 2",
    "halving": "LC(h_1 ... h_n) with h_1 = N/2 exists iff LC(h_2 ... h_n) exists",
    "ab2-template": "LC(a b^2) with a > b exists iff a <= 2b (outline template for b < a < 2b)",
    "abn-template": "LC(a b^(n-1)) exists iff a <= (n-1)b (outline template for (n-2)b < a < (n-1)b)",
    "two-equal-parts": "LC(h_1 h_2) exists iff h_1 = h_2",
    "a2b2": "LC(a^2 b^2) exists for a <= 2b",
    "asset-inflation": "LC((2b)^2 b), LC((3b)^2 (2b)) and LC((4b)^2 (3b)) exist for all b",
    "inflation": "inflating a realization of p by a latin hypercube of order k realizes kp",
    "merge-equal-parts": "replacing a block of order kb by a realization of (b^k) refines the partition",
    "cube-from-square": "a 2-realization lifts to a 3-realization via C(r,c,l) = L(L(r,l),c)",
    "square-from-outline": "a diagonal outline rectangle realizes to a normal-form 2-realization",
    "combine": "an m- and a k-realization combine into an (m+k-1)-realization",
    "parity": "an m-realization of (1^2) exists iff m is odd",
    "oracle": "exhaustive search",
    # square existence theorems
    "squares-small-n": "LS with n <= 4 parts: n=1 always, n=2 never, n=3 iff equal, "
                       "n=4 iff h1=h2=h3 or (h2=h3=h4 and h1 <= 2 h4)",
    "squares-two-orders": "for a > b and n > 4, LS(a^u b^(n-u)) exists iff u >= 3 "
                          "or a <= (n-2)b",
    # necessary conditions
    "square-condition-A": "LS(h_1 ... h_n) requires h_1 <= h_3 + ... + h_n",
    "square-condition-B": "LS requires N^2 - sum h_i^2 >= 3 (sum_D h)(sum_notD h) for all D",
    "condition-1": "LC with n >= 2 requires h_i <= N/2",
    "condition-2": "LC requires N^3 - sum h^3 >= N^2 s1 + 3 s2 (N - s1) - s3 for every subset D",
    "a2b-bound": "LC(a^2 b^(n-2)) with n >= 3 requires a <= 2(n-2)b",
    "m-from-square": "a 2-realization gives an m-realization for every m >= 3",
    "m-from-k": "an m-realization gives a k-realization for k = 1 mod (m-1)",
}


def describe(rule: str) -> str:
    return RULES.get(rule, rule)
