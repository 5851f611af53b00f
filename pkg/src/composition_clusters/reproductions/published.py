"""
Published enumeration results, registered as executable reproductions.

Generating functions are stored exactly as printed; an overall factor of -1/-1 is
harmless because they are compared as rational functions.
"""

import logging

from composition_clusters.spec import REPRODUCTION_REGISTRY, RankExpectation, ReproductionSpec

logger = logging.getLogger(__name__)

# =============================================================================
# AVOIDANCE RESULTS
# =============================================================================

REPRODUCTION_REGISTRY.append(
    ReproductionSpec(
        id="avoid-34543",
        description="Compositions avoiding 34543: generating function, first 31 terms and growth.",
        kind="avoidance",
        patterns="3,4,5,4,3",
        series=[
            1, 1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384, 32768, 65536,
            131072, 262143, 524281, 1048546, 2097050, 4194001, 8387784, 16775108, 33549270,
            67096623, 134189393, 268371074, 536726740,
        ],
        rate="1.99994300442",
        amplitude="0.50029301491",
        numerator=(
            "-(1 - 4*x + 6*x^2 - 4*x^3 + x^4 + x^16 + x^13 - x^14 + x^9 - 2*x^10 + x^11"
            " + x^5 - 3*x^6 + 3*x^7 - x^8)"
        ),
        denominator=(
            "x^18 + x^17 - x^16 + 2*x^14 - x^13 - 2*x^11 + 3*x^10 - x^9 + 2*x^8 - 5*x^7"
            " + 4*x^6 - x^5 - 2*x^4 + 7*x^3 - 9*x^2 + 5*x - 1"
        ),
    )
)

REPRODUCTION_REGISTRY.append(
    ReproductionSpec(
        id="avoid-252-343-424",
        description="Compositions avoiding 252, 343 and 424: generating function, first 31 terms and growth.",
        kind="avoidance",
        patterns="2,5,2;3,4,3;4,2,4",
        series=[
            1, 1, 2, 4, 8, 16, 32, 64, 128, 255, 505, 998, 1971, 3893, 7697, 15223, 30113, 59575,
            117861, 233164, 461250, 912423, 1804882, 3570257, 7062369, 13970211, 27634848,
            54665348, 108135332, 213906125, 423134791,
        ],
        rate="1.9781317474",
        amplitude="0.54805291269",
        numerator="-(x^17 + 3*x^14 + x^13 - 3*x^11 + x^10 + x^6 - x^5 + x^4 + x^2 - 2*x + 1)",
        denominator=(
            "x^18 + 3*x^15 + 2*x^14 - 2*x^13 - 2*x^12 + 3*x^11 - 3*x^10 + x^8 + x^7 - x^6"
            " + 2*x^5 - x^4 - 2*x^2 + 3*x - 1"
        ),
    )
)

REPRODUCTION_REGISTRY.append(
    ReproductionSpec(
        id="fibonacci",
        description="Avoiding the one-part composition 3 leaves parts 1 and 2: Fibonacci numbers.",
        kind="avoidance",
        patterns="3",
        series=[
            1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584, 4181, 6765,
            10946, 17711, 28657, 46368, 75025, 121393, 196418, 317811, 514229, 832040, 1346269,
        ],
        rate="1.61803398874989",
        amplitude="0.723606797749979",
        numerator="1",
        denominator="1 - x - x^2",
    )
)

# =============================================================================
# WORKED EXAMPLE
# =============================================================================

REPRODUCTION_REGISTRY.append(
    ReproductionSpec(
        id="worked-example",
        description="The two-state system for 232, its solution over x and t, G and F.",
        kind="worked-example",
        patterns="2,3,2",
        closed_forms={
            "B_232": ("-(1 + t*x^3)*t^3*x^7", "1 + t*x^3 + t^2*x^5"),
            "B_233": ("t^4*x^10", "1 + t*x^3 + t^2*x^5"),
            "G_xt": ("-t^3*x^7", "1 + t*x^3 + t^2*x^5"),
            "G": ("x^7", "(1 - 2*x + x^2 + x^3 - x^4 + x^5)*(-1 + x)"),
        },
        numerator="-(1 - 2*x + x^2 + x^3 - x^4 + x^5)",
        denominator="x^6 - x^5 + 2*x^4 - x^3 - 2*x^2 + 3*x - 1",
    )
)

# =============================================================================
# OCCURRENCE STATISTICS
# =============================================================================

REPRODUCTION_REGISTRY.append(
    ReproductionSpec(
        id="occurrences-234-432",
        description="234 and 432: avoider and joint generating functions, growth, moments and correlation.",
        kind="statistics",
        patterns="2,3,4;4,3,2",
        rate="1.976902834153",
        amplitude="0.548269839581",
        numerator="-(x^16 + x^15 + x^12 + 2*x^10 - x^7 + x^5 - x^4 - x^2 + 2*x - 1)",
        denominator=(
            "x^17 + x^16 + x^13 + 2*x^11 - x^10 + x^9 - x^8 + x^7 - 2*x^5 + x^4 + 2*x^2 - 3*x + 1"
        ),
        # X1 counts 234, X2 counts 432
        joint=(
            "-1 + x^12 - 2*x^11 + x^3 + 2*x^5 - x^6 - x^4 - x^7 - 3*x^2 + x^8 + 2*x^10 - x^17"
            " + x^15*X1^2 - x^13*X1^2 - x^12*X1 - x^12*X2 - x^13*X2^2 + x^15*X2^2 - x^17*X2^2"
            " - x^17*X1^2 - 2*x^15*X1 - 2*x^15*X2 + 2*x^11*X2 - 2*x^10*X1 + 2*x^13*X2 + 2*x^11*X1"
            " - 2*x^10*X2 + 2*x^13*X1 + 2*x^17*X2 + 2*x^17*X1 + x^15 + 3*x + x^7*X1*X2 - x^13"
            " + x^6*X1*X2 - x^8*X1*X2 + x^4*X1*X2 + x^15*X1^2*X2^2 - x^17*X1^2*X2^2"
            " + x^13*X1*X2^2 + x^13*X1^2*X2 + x^12*X1*X2 - 3*x^13*X1*X2 - 2*x^11*X1*X2"
            " + 2*x^10*X1*X2 - 2*x^15*X1^2*X2 - 2*x^15*X1*X2^2 + 4*x^15*X1*X2 + 2*x^17*X1^2*X2"
            " - 2*x^5*X1*X2 - 4*x^17*X1*X2 + 2*x^17*X1*X2^2",
            "-1 + 2*x^12 - 3*x^11 + 2*x^3 + 3*x^5 - 2*x^6 - x^4 - x^7 - 5*x^2 + 2*x^8 + 2*x^10"
            " + 2*x^16*X2 + 2*x^16*X1 - 2*x^18*X2 - 2*x^14*X1 - 2*x^14*X2 - 2*x^18*X1"
            " - 2*x^12*X1 - 2*x^12*X2 + x^14*X1^2 + x^9*X1 + x^14*X2^2 + x^18*X2^2 - x^16*X2^2"
            " + x^18*X1^2 + x^9*X2 - x^16*X1^2 + 3*x^11*X2 - 2*x^10*X1 + x^13*X2 + 3*x^11*X1"
            " - 2*x^10*X2 + x^13*X1 + 4*x + 2*x^16*X1*X2^2 + x^7*X1*X2 + 4*x^18*X1*X2"
            " - 4*x^16*X1*X2 - x^13 - 2*x^18*X1*X2^2 + 2*x^6*X1*X2 - 2*x^18*X1^2*X2"
            " - 2*x^8*X1*X2 + 2*x^16*X1^2*X2 + 3*x^14*X1*X2 + x^4*X1*X2 + 2*x^12*X1*X2 - 2*x^9"
            " + x^14 - x^13*X1*X2 - 3*x^11*X1*X2 + 2*x^10*X1*X2 - x^14*X1^2*X2 - x^14*X1*X2^2"
            " - x^16*X1^2*X2^2 + x^18*X1^2*X2^2 - 3*x^5*X1*X2 + x^18 - x^16",
        ),
        expectation="1/128*n - 9/128",
        variance="147/16384*n - 1439/16384",
        correlation="71/147",
    )
)

# =============================================================================
# GROWTH CONSTANTS OF SINGLE PATTERNS
# =============================================================================

REPRODUCTION_REGISTRY.append(
    ReproductionSpec(
        id="single-pattern-ranking",
        description="Growth constants of every single pattern with sum at most 6, one per reversal class.",
        kind="ranking",
        max_sum=6,
        ranking=[
            RankExpectation("2", "1"),
            RankExpectation("12", "1"),
            RankExpectation("3", "1.6180339887498948482"),
            RankExpectation("112", "1"),
            RankExpectation("13", "1.6180339887"),
            RankExpectation("22", "1.7548776662"),
            RankExpectation("4", "1.8392867552"),
            RankExpectation("1112", "1"),
            RankExpectation("113", "1.6180339887"),
            RankExpectation("212", "1.7548776662"),
            RankExpectation("14", "1.83928675521"),
            RankExpectation("23", "1.86676039917"),
            RankExpectation("5", "1.92756197548"),
            RankExpectation("11112", "1"),
            RankExpectation("1113", "1.6180339887"),
            RankExpectation("2112", "1.7548776662"),
            RankExpectation("114", "1.839286755214"),
            RankExpectation("213", "1.866760399"),
            RankExpectation("222", "1.908790738787"),
            RankExpectation("15", "1.92756197548"),
            RankExpectation("24", "1.93318498189952"),
            RankExpectation("33", "1.9417130342786"),
            RankExpectation("6", "1.965948236645"),
        ],
        slow=True,
    )
)
