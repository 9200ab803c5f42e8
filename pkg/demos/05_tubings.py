"""
Cycle tubings and lattice paths
===============================

Tubings of a cycle graph are nested families of connected proper
subgraphs.  The improper ones (those leaving a free vertex) biject with
unrestricted flat-step paths, the interval ones with nonnegative paths,
and their gradings carry sieving polynomials.
"""

from sievekit.objects import verify_csp
from sievekit.qgauss import PolyFamily
from sievekit.tubings import (
    classify_vertices,
    cycle_tubing_to_delannoy,
    delannoy_to_cycle_tubing,
    enumerate_paths,
    enumerate_tubings,
    free_vertex_polynomial,
    free_vertices,
    interval_tubing_to_schroder,
    is_proper,
    schroder_to_interval_tubing,
    strict_schroder_gf_check,
    tube_count_polynomial,
    tubings_by_free_vertices,
    tubings_by_tube_count,
)

# totals first: interval tubings and improper cycle tubings
print("interval tubings:", [len(enumerate_tubings(n, "interval")) for n in range(1, 7)])
improper = [
    [t for t in enumerate_tubings(n, "cycle") if not is_proper(n, t, "cycle")]
    for n in range(1, 7)
]
print("improper cycle tubings:", [len(ts) for ts in improper])

# a tubing is encoded by (start, length) tubes
t = {(2, 4), (3, 3), (3, 1), (5, 1), (7, 2)}
print("\nvertex roles in an eight-cycle tubing:", classify_vertices(8, t, "cycle"))
print("free vertices:", sorted(free_vertices(8, t, "cycle")))

# interval tubings unroll to nonnegative paths, tubes becoming rises
for tubing in enumerate_tubings(3, "interval")[:6]:
    p = interval_tubing_to_schroder(3, tubing)
    assert schroder_to_interval_tubing(3, p) == tubing
    print(sorted(tubing), "->", p)

# improper cycle tubings reach every unrestricted path
w = cycle_tubing_to_delannoy(8, t)
print("\neight-cycle tubing ->", w)
assert delannoy_to_cycle_tubing(8, w) == t
images = {cycle_tubing_to_delannoy(5, tb) for tb in improper[4]}
print("n=5 image is every path:", images == set(enumerate_paths(8, "delannoy")))

# gradings carry sieving polynomials
fam = tubings_by_free_vertices(6)
F = PolyFamily.from_function(fam.instance, fam.window, lambda s: free_vertex_polynomial(*s))
print("\nfree-vertex grading sieves:", verify_csp(fam, F).ok)
print("f(4, 1) =", free_vertex_polynomial(4, 1).coeffs, "counts", fam.counts()[(4, 1)])

fam = tubings_by_tube_count(6)
F = PolyFamily.from_function(fam.instance, fam.window, lambda s: tube_count_polynomial(*s))
print("tube-count grading sieves:", verify_csp(fam, F).ok)

# strict paths: three independent counts of the same numbers
out = strict_schroder_gf_check(10)
print("\nstrict path counts:", out["solved"])
print("series, recurrence, enumeration agree:", out["ok"])
