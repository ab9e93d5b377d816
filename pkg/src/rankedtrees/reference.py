"""Known exact values used as regression targets by ``verify`` and the tests."""

from fractions import Fraction as Fr

#: Number of ranked trees with n = 1..8 leaves.
EULER_PREFIX = [1, 1, 1, 2, 5, 16, 61, 272]

#: Probability that two independent coalescent trees with n leaves coincide.
IDENTITY = {2: Fr(1), 3: Fr(1), 4: Fr(5, 9), 5: Fr(2, 9), 6: Fr(16, 225)}

#: [z**m] Y(1/4, z) for m = 1..5.
Y_QUARTER = [Fr(1, 4), Fr(1, 8), Fr(5, 96), Fr(1, 48), Fr(1, 120)]

#: Series of F by power of z: n -> {o: coefficient of x**o z**n}.
F_TERMS = {
    2: {1: Fr(1)},
    3: {1: Fr(1)},
    4: {2: Fr(1, 3), 1: Fr(2, 3)},
    5: {2: Fr(2, 3), 1: Fr(1, 3)},
    6: {3: Fr(2, 15), 2: Fr(11, 15), 1: Fr(2, 15)},
    7: {3: Fr(17, 45), 2: Fr(26, 45), 1: Fr(2, 45)},
    8: {4: Fr(17, 315), 3: Fr(180, 315), 2: Fr(114, 315), 1: Fr(4, 315)},
}

#: Polynomials Y_m(x, v, z) as {(o, r): coefficient of x**o v**r z**m}.
Y_POLYNOMIALS = {
    1: {(1, 0): Fr(1)},
    2: {(1, 1): Fr(1, 2)},
    3: {(1, 1): Fr(1, 6), (2, 0): Fr(1, 6)},
    4: {(1, 1): Fr(1, 24), (2, 0): Fr(1, 24), (2, 1): Fr(1, 8)},
    5: {
        (1, 1): Fr(1, 120),
        (2, 0): Fr(1, 120),
        (2, 1): Fr(7, 120),
        (2, 2): Fr(1, 40),
        (3, 0): Fr(1, 30),
    },
}

#: Size-6 ranked trees: 16 in total, 11 of them with two cherries.
SIZE6_TOTAL = 16
SIZE6_TWO_CHERRIES = 11
SIZE6_TWO_CHERRY_PROBABILITY = Fr(11, 15)
SIZE6_SINGLE_TREE_PROBABILITY_TWO_CHERRIES = Fr(1, 15)
