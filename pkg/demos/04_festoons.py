"""
Festoons: beads on a labelled cycle
===================================

A festoon of type n tiles the n-cycle with beads; weights say how many
colors each bead type admits.  Counting festoons recovers the "a" row of
the weight sequence, rotation orbits sort themselves by the "b" row, and
the attached polynomial family counts rotation-invariant festoons at
roots of unity.
"""

from sievekit.gaussseq import SequenceSpec, b_from_a
from sievekit.objects import (
    CyclicFamily,
    barrier_festoons,
    festoons_colored,
    festoons_repeated,
    fixed_points,
    orbit_census,
    signed_festoons,
    verify_csp,
    verify_lyndon,
)
from sievekit.qgauss import construct_from_c
from sievekit.semigroup import PositiveIntegers, Window

ZPOS = PositiveIntegers()
window = Window(8)

# two bead types: length 2 in three colors, length 3 in two colors
c = SequenceSpec(ZPOS, window, "c", ((2, 3), (3, 2)))
counts = [len(festoons_colored(c, n)) for n in range(1, 9)]
print("festoon counts:", counts)
print("closed form 2^n + 2(-1)^n:", [2**n + 2 * (-1) ** n for n in range(1, 9)])

objs = festoons_colored(c, 6)
print("\nrank 6: orbit census", orbit_census(objs))
b = b_from_a(SequenceSpec(ZPOS, window, "a", tuple(enumerate(counts, start=1))))
print("matches the b row:", {t: b.value(t) for t in (1, 2, 3, 6)})
print("fixed under half-turn:", len(fixed_points(objs, 2)))

fam = CyclicFamily.from_generator(ZPOS, window, lambda n: festoons_colored(c, n))
print("fixed-point law:", verify_lyndon(fam).ok)
print("sieving polynomials:", verify_csp(fam, construct_from_c(c)).ok)

# one-type-per-festoon variant: counts become divisor sums
b_ones = SequenceSpec(ZPOS, window, "b", tuple((n, 1) for n in range(1, 9)))
print("\nrepeated-bead counts:", [len(festoons_repeated(b_ones, n)) for n in range(1, 9)])

# negative weights split festoons by sign; the net count survives
p = [1, 2, 3, 5, 7, 11]  # partition numbers
neg = SequenceSpec(ZPOS, Window(6), "c", tuple((n, -p[n - 1]) for n in range(1, 7)))
for n in range(1, 7):
    pos_part, neg_part = signed_festoons(neg, n)
    print(f"n={n}: {len(pos_part)} positive - {len(neg_part)} negative = {len(pos_part) - len(neg_part)}")

# barrier drawings tell the same story with no weights at all
nets = [sum(o.sign for o in barrier_festoons(n)) for n in range(1, 7)]
print("barrier nets:", nets)
