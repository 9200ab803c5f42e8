"""sievekit: exact arithmetic for Gauss-type congruences and cyclic sieving.

The package is organised bottom-up:

- ``arith``: divisor sums, Mobius and totient functions, Ramanujan sums.
- ``qpoly``: integer polynomials in q, q-binomials, cyclotomic residues.
- ``semigroup``: ranked commutative semigroups, windows and morphisms.
- ``gaussseq``: integer sequences indexed by a semigroup and the divisibility
  congruences that tie them together.
- ``qgauss``: polynomial-valued refinements of those sequences and their
  root-of-unity characterisation.
- ``objects``: words, compositions and necklace-like cyclic objects used to
  realise the sequences combinatorially.
- ``tubings``: tubings of paths and cycles, lattice-path bijections and their
  sieving polynomials.
- ``cli``: a small command line front end over JSON job configs.

All computation is exact: Python integers, integer polynomials and residues
modulo cyclotomic polynomials.  Nothing here uses floating point.
"""

from __future__ import annotations

__version__ = "0.1.0"
