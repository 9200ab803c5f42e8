"""Polynomial families on ranked instances and their sieve congruence.

A family assigns an integer polynomial in q to every window element.  The
congruence of interest: for each element s, the Mobius-weighted sum of
f_t(q^(s/t)) over unit divisors t of s must vanish mod [rank(s)]_q.  An
equivalent test evaluates f_s at primitive roots of unity and compares
against root-set totals at q = 1.

Three constructions build such a family from an integer sequence (given in
role a, b or c form); they agree modulo q^rank - 1, and the Ramanujan-sum
construction is the canonical low-degree representative.  Transport
operations (pushforward, pullback, multiply, two chainings) produce new
families from old, mirroring how counting problems are rearranged.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .arith import divisors, mobius, ramanujan_sum
from .gaussseq import SequenceSpec
from .qpoly import (
    IntPoly,
    ZERO,
    eval_at_one,
    eval_at_primitive_root,
    q_int,
    q_multinomial,
    q_power,
    reduce_mod_qn_minus_1,
)
from .semigroup import (
    Chain,
    FreeRanked,
    Morphism,
    PositiveIntegers,
    Window,
    _SemigroupBase,
    apply_morphism,
    encode_element,
)


class NonIntegerCoefficient(ValueError):
    """A construction produced a fractional coefficient.

    For the Ramanujan-sum construction this is the integrality certificate
    failing, which means the input sequence was not congruent.
    """

    def __init__(self, element, detail: str):
        self.element = element
        self.detail = detail
        super().__init__(f"non-integer coefficient at {element}: {detail}")


class WindowBoundaryWarning(UserWarning):
    """A pushforward read mass from the edge of its source window.

    Fibers are enumerated inside the declared window, so contributions at
    the boundary suggest the window may be cutting a fiber short.  Widening
    the bounds past the support silences this.
    """


@dataclass(frozen=True)
class PolyFamily:
    """Total mapping from window elements to integer polynomials."""

    instance: _SemigroupBase
    window: Window
    polys: tuple[tuple[object, IntPoly], ...]

    def __post_init__(self) -> None:
        pairs = tuple(
            sorted(self.polys, key=lambda kv: self.instance.sort_key(kv[0]))
        )
        have = set()
        for s, p in pairs:
            self.instance.validate(s)
            if not isinstance(p, IntPoly):
                raise ValueError(f"PolyFamily: value at {s!r} is not a polynomial")
            if s in have:
                raise ValueError(f"PolyFamily: duplicate element {s!r}")
            have.add(s)
        missing = [s for s in self.instance.elements(self.window) if s not in have]
        if missing:
            raise ValueError(f"PolyFamily: not total on window, missing {missing[0]!r}")
        object.__setattr__(self, "polys", pairs)

    @classmethod
    def from_function(
        cls,
        instance: _SemigroupBase,
        window: Window,
        fn: Callable[[object], IntPoly],
    ) -> "PolyFamily":
        pairs = tuple((s, fn(s)) for s in instance.elements(window))
        return cls(instance, window, pairs)

    @classmethod
    def from_mapping(
        cls, instance: _SemigroupBase, window: Window, mapping: Mapping
    ) -> "PolyFamily":
        return cls(instance, window, tuple(mapping.items()))

    def as_dict(self) -> dict:
        return dict(self.polys)

    def value(self, s) -> IntPoly:
        for t, p in self.polys:
            if t == s:
                return p
        raise ValueError(f"PolyFamily: no polynomial at {s!r}")

    def at_one(self, s) -> int:
        return eval_at_one(self.value(s))

    def elements(self) -> list:
        return [s for s, _ in self.polys]

    def canonical(self) -> "PolyFamily":
        """Reduce each entry mod q^rank - 1 (the equivalence-class normal form)."""
        pairs = tuple(
            (s, reduce_mod_qn_minus_1(p, self.instance.rank(s))) for s, p in self.polys
        )
        return PolyFamily(self.instance, self.window, pairs)

    def to_jsonable(self) -> list[dict]:
        return [
            {"element": encode_element(self.instance, s), "poly": list(p.coeffs)}
            for s, p in self.polys
        ]


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class FamilyCheckFailure:
    element: object
    divisor: int | None
    detail: str


@dataclass(frozen=True)
class FamilyReport:
    """Outcome of a family checker: per-element failures with the bad divisor."""

    ok: bool
    checked: int
    failures: tuple[FamilyCheckFailure, ...]

    def witness(self) -> FamilyCheckFailure | None:
        return self.failures[0] if self.failures else None

    def to_jsonable(self, instance: _SemigroupBase | None = None) -> dict:
        def enc(s):
            return encode_element(instance, s) if instance is not None else repr(s)

        return {
            "ok": self.ok,
            "checked": self.checked,
            "failures": [
                {"element": enc(f.element), "divisor": f.divisor, "detail": f.detail}
                for f in self.failures
            ],
        }


def _report(checked: int, failures: list[FamilyCheckFailure]) -> FamilyReport:
    return FamilyReport(not failures, checked, tuple(failures))


# -- the three constructions --------------------------------------------------


def _require_role(seq: SequenceSpec, role: str) -> None:
    if seq.role != role:
        raise ValueError(f"expected a role-{role} sequence, got role-{seq.role}")


def construct_ramanujan(a: SequenceSpec) -> PolyFamily:
    """Canonical family: coefficient j is a Ramanujan-sum average over divisors.

    Degree stays below rank(s) and the result is the unique representative
    of its class mod q^rank - 1 in that degree range.  Integer coefficients
    certify that the input satisfies the sieve congruence; a fractional one
    raises NonIntegerCoefficient.
    """
    _require_role(a, "a")
    inst = a.instance

    def build(s):
        rk = inst.rank(s)
        pairs = [(a.value(t), d) for t, d in inst.unit_divisors(s)]
        coeffs = []
        for j in range(rk):
            coeffs.append(sum(at * ramanujan_sum(j, d) for at, d in pairs))
        try:
            return IntPoly(coeffs).scale_div(rk)
        except ArithmeticError:
            bad = next(c for c in coeffs if c % rk)
            raise NonIntegerCoefficient(s, f"{bad}/{rk}") from None

    return PolyFamily.from_function(inst, a.window, build)


def construct_from_b(b: SequenceSpec) -> PolyFamily:
    """Family from divisor weights: sum of [rank(t)]_{q^d} b_t over unit divisors."""
    _require_role(b, "b")
    inst = b.instance

    def build(s):
        total = ZERO
        for t, d in inst.unit_divisors(s):
            bt = b.value(t)
            if bt:
                total = total + q_int(inst.rank(t)).subst_power(d) * bt
        return total

    return PolyFamily.from_function(inst, b.window, build)


def _weighted_multinomial(weight: int, mults: list[int]) -> IntPoly:
    """Exact ([weight]_q / [sum]_q) times the q-multinomial of mults."""
    total = sum(mults)
    return (q_int(weight) * q_multinomial(mults)).exact_div(q_int(total))


def construct_from_c(c: SequenceSpec) -> PolyFamily:
    """Family from convolution weights, summed over multiset decompositions.

    Each decomposition of s into parts from the support of c contributes a
    weighted q-multinomial times a q-exponential factor per distinct part.
    """
    _require_role(c, "c")
    inst = c.instance
    support = [t for t in c.support() if c.value(t)]

    def build(s):
        rk = inst.rank(s)
        total = ZERO
        for parts in inst.decompositions(s, support=support):
            mults = Counter(parts)
            term = _weighted_multinomial(rk, sorted(mults.values()))
            for t, m in mults.items():
                term = term * q_power(c.value(t), m)
                if not term:
                    break
            total = total + term
        return total

    return PolyFamily.from_function(inst, c.window, build)


# -- checkers ------------------------------------------------------------------


def check_qgauss_definition(F: PolyFamily) -> FamilyReport:
    """Exact-division test: Mobius-weighted divisor sum mod [rank(s)]_q."""
    inst = F.instance
    lookup = F.as_dict()
    failures: list[FamilyCheckFailure] = []
    checked = 0
    for s, _ in F.polys:
        rk = inst.rank(s)
        total = ZERO
        for t, d in inst.unit_divisors(s):
            mu = mobius(d)
            if mu:
                total = total + lookup[t].subst_power(d) * mu
        _, rem = divmod(total, q_int(rk))
        checked += 1
        if rem:
            failures.append(FamilyCheckFailure(s, rk, f"remainder {rem}"))
    return _report(checked, failures)


def check_qgauss_roots(F: PolyFamily) -> FamilyReport:
    """Root-of-unity test: f_s at a primitive d-th root vs the root-set total.

    For every d dividing rank(s), the evaluation must be the integer
    sum of f_t(1) over d-th roots t of s inside the instance.
    """
    inst = F.instance
    lookup = F.as_dict()
    failures: list[FamilyCheckFailure] = []
    checked = 0
    for s, p in F.polys:
        rk = inst.rank(s)
        for d in divisors(rk):
            expected = 0
            for t in inst.root_set(s, d):
                if t not in lookup:
                    raise ValueError(
                        f"family window does not cover the root {t!r} of {s!r}"
                    )
                expected += eval_at_one(lookup[t])
            got = eval_at_primitive_root(p, d)
            checked += 1
            if not got.equals_int(expected):
                failures.append(
                    FamilyCheckFailure(s, d, f"value {got.coeffs} != {expected}")
                )
    return _report(checked, failures)


def equivalent_mod(F: PolyFamily, G: PolyFamily) -> FamilyReport:
    """Entrywise congruence mod q^rank - 1 between families on one window."""
    if F.instance != G.instance or F.window != G.window:
        raise ValueError("equivalent_mod needs families on the same instance/window")
    inst = F.instance
    g = G.as_dict()
    failures: list[FamilyCheckFailure] = []
    checked = 0
    for s, p in F.polys:
        rk = inst.rank(s)
        diff = reduce_mod_qn_minus_1(p - g[s], rk)
        checked += 1
        if diff:
            failures.append(FamilyCheckFailure(s, rk, f"difference {diff}"))
    return _report(checked, failures)


# -- fundamental family on free instances --------------------------------------


def fund_family(beads, window: Window) -> PolyFamily:
    """Weighted q-multinomial family on a free ranked instance.

    ``beads`` is a FreeRanked instance or a sequence of (label, length)
    pairs.  The entry at a multiset alpha is [rank]_q / [|alpha|]_q times
    the q-multinomial of the multiplicities; the division is exact.
    """
    inst = beads if isinstance(beads, FreeRanked) else FreeRanked(tuple(beads))

    def build(alpha):
        return _weighted_multinomial(inst.rank(alpha), sorted(alpha))

    return PolyFamily.from_function(inst, window, build)


# -- transport along morphisms --------------------------------------------------


def _fiber_directions(m: Morphism) -> set[int]:
    """Source coordinates along which a fiber of the morphism can move.

    These are the coordinates carrying a nonzero entry in some kernel
    vector of the coordinate matrix; window edges only threaten fiber
    completeness in those directions.
    """
    src = m.source
    if m.kind == "linear":
        rows = [list(r) for r in m.matrix]
        width = len(rows[0])
    else:
        if isinstance(src, FreeRanked):
            rows = [list(src.lengths)]
            width = len(src.lengths)
        else:
            width = src.arity if isinstance(src, Chain) else 1
            rows = [[1] + [0] * (width - 1)]
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: dict[int, int] = {}
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots[c] = r
        r += 1
    moving: set[int] = set()
    for fc in (c for c in range(width) if c not in pivots):
        moving.add(fc)
        for c, pr in pivots.items():
            if mat[pr][fc]:
                moving.add(c)
    return moving


def _boundary_contact(
    inst: _SemigroupBase, window: Window, s, moving: set[int]
) -> bool:
    """True when s sits on a window edge along a fiber direction."""
    if isinstance(inst, Chain):
        bounds = inst.resolve_bounds(window)
        coords = inst.coords(s)
        return any(
            i + 1 in moving and coords[i + 1] in pair
            for i, pair in enumerate(bounds)
        )
    if isinstance(inst, FreeRanked):
        return (
            bool(moving)
            and window.max_total is not None
            and inst.size(s) >= window.max_total
        )
    return False


def pushforward(F: PolyFamily, m: Morphism, target_window: Window) -> PolyFamily:
    """Sum each fiber of the morphism into a family on the target window.

    Fibers are enumerated inside F's window; it is the caller's job to make
    the window contain every contributing preimage.  A nonzero contribution
    sitting on a window edge along a direction the fiber moves in triggers
    a WindowBoundaryWarning, as does a contribution whose rank differs from
    its image's rank (fibers of such maps are not exhausted by any single
    max_rank).
    """
    if m.source != F.instance:
        raise ValueError("pushforward: family instance does not match morphism source")
    target = m.target
    moving = _fiber_directions(m)
    sums: dict = {}
    edge = None
    rank_jump = None
    for s, p in F.polys:
        t = apply_morphism(m, s)
        sums[t] = sums.get(t, ZERO) + p
        if p:
            if edge is None and _boundary_contact(F.instance, F.window, s, moving):
                edge = s
            if rank_jump is None and F.instance.rank(s) != target.rank(t):
                rank_jump = s
    if edge is not None:
        warnings.warn(
            f"pushforward support touches the source window edge at {edge!r}",
            WindowBoundaryWarning,
            stacklevel=2,
        )
    if rank_jump is not None:
        warnings.warn(
            f"pushforward does not preserve rank at {rank_jump!r}; "
            "fibers may extend beyond the window",
            WindowBoundaryWarning,
            stacklevel=2,
        )
    return PolyFamily.from_function(
        target, target_window, lambda t: sums.get(t, ZERO)
    )


def pullback(G: PolyFamily, m: Morphism, source_window: Window) -> PolyFamily:
    """Restrict a target family along the morphism: f_s = g at the image of s."""
    if m.target != G.instance:
        raise ValueError("pullback: family instance does not match morphism target")
    lookup = G.as_dict()

    def build(s):
        t = apply_morphism(m, s)
        if t not in lookup:
            raise ValueError(
                f"pullback image {t!r} of {s!r} is outside the family window"
            )
        return lookup[t]

    return PolyFamily.from_function(m.source, source_window, build)


def multiply(F: PolyFamily, G: PolyFamily) -> PolyFamily:
    """Entrywise product of two families on the same torsion-free window."""
    if F.instance != G.instance or F.window != G.window:
        raise ValueError("multiply needs families on the same instance/window")
    g = G.as_dict()
    pairs = tuple((s, p * g[s]) for s, p in F.polys)
    return PolyFamily(F.instance, F.window, pairs)


def _chain_shapes(F: PolyFamily, G: PolyFamily) -> tuple[Chain, Chain]:
    if not isinstance(F.instance, Chain) or not isinstance(G.instance, Chain):
        raise ValueError("chaining needs two chain instances")
    return F.instance, G.instance


def chain_prefix(F: PolyFamily, G: PolyFamily) -> PolyFamily:
    """Combine families sharing a base: h at (s, t, u) is F(s, t) * G(s, u).

    F lives on base[T], G on base[U] with the same base and matching base
    windows; the result lives on base[T][U].
    """
    fi, gi = _chain_shapes(F, G)
    if fi.base != gi.base:
        raise ValueError("chain_prefix: the two chains must share a base instance")
    fb = fi.resolve_bounds(F.window)
    gb = gi.resolve_bounds(G.window)
    if F.window.max_rank != G.window.max_rank or fb[:-1] != gb[:-1]:
        raise ValueError("chain_prefix: base windows differ")
    out_inst = Chain(fi, gi.extra)
    out_window = Window(F.window.max_rank, fb + (gb[-1],))
    f = F.as_dict()
    g = G.as_dict()

    def build(e):
        return f[e[:-1]] * g[e[:-2] + (e[-1],)]

    return PolyFamily.from_function(out_inst, out_window, build)


def chain_suffix(F: PolyFamily, G: PolyFamily) -> PolyFamily:
    """Chain through the middle coordinate: h at (s, t, u) is F(s, t) * G(t, u).

    The middle coordinate must itself be ranked, so F's extra kind must be
    "pos" and G's base the plain positive integers; G's window has to reach
    as high as F's middle bound.  The result lives on base[T][U].
    """
    fi, gi = _chain_shapes(F, G)
    if fi.extra != "pos":
        raise ValueError('chain_suffix: the middle coordinate must have kind "pos"')
    if not isinstance(gi.base, PositiveIntegers):
        raise ValueError("chain_suffix: the second family must sit over plain ranks")
    fb = fi.resolve_bounds(F.window)
    gb = gi.resolve_bounds(G.window)
    if fb[-1][1] > G.window.max_rank:
        raise ValueError(
            "chain_suffix: middle bound exceeds the second family's window"
        )
    out_inst = Chain(fi, gi.extra)
    out_window = Window(F.window.max_rank, fb + (gb[-1],))
    f = F.as_dict()
    g = G.as_dict()

    def build(e):
        return f[e[:-1]] * g[(e[-2], e[-1])]

    return PolyFamily.from_function(out_inst, out_window, build)
