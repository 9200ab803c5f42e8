"""Concrete ranked commutative semigroups and their division structure.

Three instance kinds cover everything downstream:

- ``PositiveIntegers``: positive integers under addition, rank(n) = n.
- ``Chain``: a base instance extended by one extra integer coordinate; the
  rank is the base rank and ignores the extras.  Chains of chains flatten,
  so elements are plain tuples (rank, x1, ..., xm).
- ``FreeRanked``: the free commutative semigroup on a finite set of beads
  with declared integer lengths; an element is a tuple of multiplicities,
  its rank the length-weighted sum, which must be >= 1.

Elements are raw payloads (int or tuple), not wrapper objects; instances are
frozen dataclasses and all operations are pure.  Division is by repetition:
t divides s when s = d*t for a positive integer d, so d | rank(s).  All
instances are cancellative and torsion free, hence every root set s/d and
difference set s - t has at most one element.

Infinite instances are always consumed through a finite ``Window`` (rank cap,
per-extra coordinate bounds, bead-count cap), which makes every enumeration
terminating and deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .arith import divisors

Element = "int | tuple[int, ...]"

EXTRA_KINDS = ("ints", "nonneg", "pos")

_EXTRA_MIN = {"ints": None, "nonneg": 0, "pos": 1}


@dataclass(frozen=True)
class Window:
    """Finite viewport on a semigroup instance.

    ``extra_bounds`` holds one (lo, hi) pair per chain extra; a single pair
    broadcasts to all extras.  ``max_total`` caps the bead count |alpha| on
    FreeRanked instances (required whenever some bead length is <= 0).
    """

    max_rank: int
    extra_bounds: tuple[tuple[int, int], ...] = ()
    max_total: int | None = None

    def __post_init__(self) -> None:
        if self.max_rank < 1:
            raise ValueError(f"Window: need max_rank >= 1, got {self.max_rank}")
        eb = tuple(self.extra_bounds)
        if len(eb) == 2 and all(isinstance(b, int) for b in eb):
            eb = (tuple(eb),)  # a bare (lo, hi) pair means "every extra"
        eb = tuple(tuple(pair) for pair in eb)
        for lo, hi in eb:
            if lo > hi:
                raise ValueError(f"Window: empty bound range ({lo}, {hi})")
        object.__setattr__(self, "extra_bounds", eb)
        if self.max_total is not None and self.max_total < 1:
            raise ValueError(f"Window: need max_total >= 1, got {self.max_total}")


class _SemigroupBase:
    """Shared division structure; subclasses supply coords/packing."""

    # -- subclass protocol -------------------------------------------------

    def coords(self, s) -> tuple[int, ...]:
        raise NotImplementedError

    def _build(self, cs: tuple[int, ...]):
        """Pack a coordinate tuple into an element, or None if invalid."""
        raise NotImplementedError

    def validate(self, s) -> None:
        raise NotImplementedError

    def rank(self, s) -> int:
        raise NotImplementedError

    # -- generic operations ------------------------------------------------

    def sort_key(self, s) -> tuple[int, ...]:
        """Canonical order: by rank, then coordinates."""
        return (self.rank(s), *self.coords(s))

    def add(self, s, t):
        self.validate(s)
        self.validate(t)
        out = self._build(tuple(a + b for a, b in zip(self.coords(s), self.coords(t))))
        if out is None:
            raise ValueError(f"add: {s} + {t} leaves the instance")
        return out

    def scale(self, d: int, s):
        """The d-fold sum s + s + ... + s."""
        if d < 1:
            raise ValueError(f"scale: need d >= 1, got {d}")
        self.validate(s)
        out = self._build(tuple(d * a for a in self.coords(s)))
        if out is None:
            raise ValueError(f"scale: {d}*{s} leaves the instance")
        return out

    def nth_root(self, s, d: int):
        """The unique t with d*t = s, or None."""
        self.validate(s)
        if d < 1:
            raise ValueError(f"nth_root: need d >= 1, got {d}")
        cs = self.coords(s)
        if any(c % d for c in cs):
            return None
        return self._build(tuple(c // d for c in cs))

    def root_set(self, s, d: int) -> list:
        """The set s/d = {t | d*t = s}; zero or one element here."""
        r = self.nth_root(s, d)
        return [] if r is None else [r]

    def unit_divisors(self, s) -> list[tuple[object, int]]:
        """All pairs (t, d) with d*t = s, ascending in d; (s, 1) included."""
        out = []
        for d in divisors(self.rank(s)):
            r = self.nth_root(s, d)
            if r is not None:
                out.append((r, d))
        return out

    def difference_set(self, s, t) -> list:
        """The set s - t = {u | u + t = s}; zero or one element here."""
        self.validate(s)
        self.validate(t)
        u = self._build(tuple(a - b for a, b in zip(self.coords(s), self.coords(t))))
        return [] if u is None else [u]

    def decompositions(self, s, support: Sequence | None = None) -> list[tuple]:
        """Every multiset {s_1, ..., s_k} (k >= 1) of parts summing to s.

        Parts are drawn from ``support`` when given (required on chains with
        unbounded integer extras), otherwise from every element that can fit
        under s.  Each multiset is a tuple sorted in canonical element order;
        the outer list is sorted too, so output order is deterministic.
        """
        self.validate(s)
        if support is not None:
            pool = sorted(set(support), key=self.sort_key)
            for p in pool:
                self.validate(p)
        else:
            pool = self._default_parts(s)
        pool_coords = [self.coords(p) for p in pool]
        target = self.coords(s)
        prune = self._remainder_ok
        out: list[tuple] = []
        acc: list = []

        def rec(i: int, remaining: tuple[int, ...]) -> None:
            if not any(remaining):
                out.append(tuple(acc))
                return
            for j in range(i, len(pool)):
                nxt = tuple(a - b for a, b in zip(remaining, pool_coords[j]))
                if prune(nxt):
                    acc.append(pool[j])
                    rec(j, nxt)
                    acc.pop()

        rec(0, target)
        out.sort(key=lambda parts: [self.sort_key(p) for p in parts])
        return out

    def _remainder_ok(self, remaining: tuple[int, ...]) -> bool:
        raise NotImplementedError

    def _default_parts(self, s) -> list:
        raise NotImplementedError

    def elements(self, window: Window) -> list:
        """Window contents in canonical (rank, coordinates) order."""
        raise NotImplementedError


@dataclass(frozen=True)
class PositiveIntegers(_SemigroupBase):
    """Positive integers under addition; rank(n) = n."""

    def coords(self, s) -> tuple[int, ...]:
        return (s,)

    def _build(self, cs):
        return cs[0] if cs[0] >= 1 else None

    def validate(self, s) -> None:
        if not isinstance(s, int) or isinstance(s, bool) or s < 1:
            raise ValueError(f"PositiveIntegers: invalid element {s!r}")

    def rank(self, s) -> int:
        self.validate(s)
        return s

    def _remainder_ok(self, remaining) -> bool:
        return remaining[0] >= 0

    def _default_parts(self, s) -> list:
        return list(range(1, s + 1))

    def elements(self, window: Window) -> list:
        return list(range(1, window.max_rank + 1))


@dataclass(frozen=True)
class Chain(_SemigroupBase):
    """A base instance with one more integer coordinate; rank from the base.

    Elements are flat tuples: chaining ((n,) base, extra) twice gives
    (n, x, y).  The extra kind is one of "ints", "nonneg", "pos".
    """

    base: _SemigroupBase
    extra: str

    def __post_init__(self) -> None:
        if self.extra not in EXTRA_KINDS:
            raise ValueError(f"Chain: unknown extra kind {self.extra!r}")
        if not isinstance(self.base, (PositiveIntegers, Chain)):
            raise ValueError("Chain: base must be PositiveIntegers or Chain")

    @property
    def extras(self) -> tuple[str, ...]:
        base_extras = self.base.extras if isinstance(self.base, Chain) else ()
        return base_extras + (self.extra,)

    @property
    def arity(self) -> int:
        return 1 + len(self.extras)

    def coords(self, s) -> tuple[int, ...]:
        return tuple(s)

    def _build(self, cs):
        if cs[0] < 1:
            return None
        for kind, value in zip(self.extras, cs[1:]):
            lo = _EXTRA_MIN[kind]
            if lo is not None and value < lo:
                return None
        return tuple(cs)

    def validate(self, s) -> None:
        if (
            not isinstance(s, tuple)
            or len(s) != self.arity
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in s)
            or self._build(s) is None
        ):
            raise ValueError(f"{self.describe()}: invalid element {s!r}")

    def rank(self, s) -> int:
        self.validate(s)
        return s[0]

    def describe(self) -> str:
        return "Chain[" + ",".join(self.extras) + "]"

    def _remainder_ok(self, remaining) -> bool:
        if remaining[0] < 0:
            return False
        for kind, value in zip(self.extras, remaining[1:]):
            if kind != "ints" and value < 0:
                return False
        return True

    def _default_parts(self, s) -> list:
        if "ints" in self.extras:
            raise ValueError(
                "decompositions on a chain with unbounded integer extras "
                "requires an explicit support"
            )
        ranges = [range(1, s[0] + 1)]
        for kind, value in zip(self.extras, s[1:]):
            ranges.append(range(_EXTRA_MIN[kind], value + 1))
        return [tuple(c) for c in itertools.product(*ranges)]

    def resolve_bounds(self, window: Window) -> tuple[tuple[int, int], ...]:
        """Per-extra (lo, hi) enumeration bounds implied by the window."""
        extras = self.extras
        eb = window.extra_bounds
        if not eb:
            pairs = []
            for kind in extras:
                if kind == "ints":
                    raise ValueError(
                        "window needs explicit extra_bounds for an ints extra"
                    )
                pairs.append((_EXTRA_MIN[kind], window.max_rank))
            return tuple(pairs)
        if len(eb) == 1:
            eb = eb * len(extras)
        if len(eb) != len(extras):
            raise ValueError(
                f"window has {len(eb)} extra bounds for {len(extras)} extras"
            )
        out = []
        for kind, (lo, hi) in zip(extras, eb):
            floor = _EXTRA_MIN[kind]
            if floor is not None:
                lo = max(lo, floor)
            out.append((lo, hi))
        return tuple(out)

    def elements(self, window: Window) -> list:
        bounds = self.resolve_bounds(window)
        ranges = [range(1, window.max_rank + 1)]
        ranges.extend(range(lo, hi + 1) for lo, hi in bounds)
        return sorted(itertools.product(*ranges), key=self.sort_key)


@dataclass(frozen=True)
class FreeRanked(_SemigroupBase):
    """Free commutative semigroup on labelled beads with integer lengths.

    An element is a tuple of bead multiplicities (aligned with ``beads``)
    with at least one bead; its rank is the length-weighted sum and must be
    >= 1 even though individual bead lengths may be zero or negative.
    """

    beads: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        beads = tuple((str(label), int(length)) for label, length in self.beads)
        labels = [label for label, _ in beads]
        if not beads:
            raise ValueError("FreeRanked: need at least one bead")
        if len(set(labels)) != len(labels):
            raise ValueError(f"FreeRanked: duplicate bead labels in {labels}")
        object.__setattr__(self, "beads", beads)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(length for _, length in self.beads)

    def coords(self, s) -> tuple[int, ...]:
        return tuple(s)

    def _build(self, cs):
        if any(c < 0 for c in cs):
            return None
        if sum(cs) < 1:
            return None
        if sum(c * length for c, length in zip(cs, self.lengths)) < 1:
            return None
        return tuple(cs)

    def validate(self, s) -> None:
        if (
            not isinstance(s, tuple)
            or len(s) != len(self.beads)
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in s)
            or self._build(s) is None
        ):
            raise ValueError(f"FreeRanked{self.lengths}: invalid element {s!r}")

    def rank(self, s) -> int:
        self.validate(s)
        return sum(c * length for c, length in zip(s, self.lengths))

    def size(self, s) -> int:
        """Total bead count |alpha|."""
        self.validate(s)
        return sum(s)

    def _remainder_ok(self, remaining) -> bool:
        return all(c >= 0 for c in remaining)

    def _default_parts(self, s) -> list:
        out = []
        for cs in itertools.product(*(range(c + 1) for c in s)):
            if sum(cs) >= 1 and self._build(cs) is not None:
                out.append(cs)
        return sorted(out, key=self.sort_key)

    def elements(self, window: Window) -> list:
        if window.max_total is None and any(length < 1 for length in self.lengths):
            raise ValueError(
                "window needs max_total when some bead length is not positive"
            )
        caps = []
        for length in self.lengths:
            cap = window.max_rank // length if length >= 1 else window.max_total
            if window.max_total is not None:
                cap = min(cap, window.max_total)
            caps.append(cap)
        out = []
        for cs in itertools.product(*(range(c + 1) for c in caps)):
            total = sum(cs)
            if total < 1 or (window.max_total is not None and total > window.max_total):
                continue
            rank = sum(c * length for c, length in zip(cs, self.lengths))
            if 1 <= rank <= window.max_rank:
                out.append(cs)
        return sorted(out, key=self.sort_key)

    def label_index(self, label: str) -> int:
        for i, (name, _) in enumerate(self.beads):
            if name == label:
                return i
        raise ValueError(f"FreeRanked: unknown bead label {label!r}")


# -- morphisms ---------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    """A named additive map between instances.

    kind "rank" sends s to rank(s); kind "linear" applies an integer matrix
    to the coordinate tuple (rows indexed by target coordinates).  Linear
    maps with no constant term are exactly the additive ones expressible on
    coordinates, which covers projections, permutations, reindexings like
    (n, k) -> (n, k, n-k), and bead label maps.
    """

    source: _SemigroupBase
    target: _SemigroupBase
    kind: str
    matrix: tuple[tuple[int, ...], ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("rank", "linear"):
            raise ValueError(f"Morphism: unknown kind {self.kind!r}")
        if self.kind == "linear":
            rows = tuple(tuple(int(c) for c in row) for row in self.matrix)
            if not rows:
                raise ValueError("Morphism: linear kind needs a matrix")
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("Morphism: ragged matrix")
            object.__setattr__(self, "matrix", rows)

    def __call__(self, s):
        return apply_morphism(self, s)


def rank_morphism(source: _SemigroupBase, name: str = "rank") -> Morphism:
    return Morphism(source, PositiveIntegers(), "rank", name=name)


def linear_morphism(
    source: _SemigroupBase,
    target: _SemigroupBase,
    rows: Iterable[Iterable[int]],
    name: str = "",
) -> Morphism:
    return Morphism(source, target, "linear", tuple(tuple(r) for r in rows), name=name)


def relabel_morphism(
    source: FreeRanked, target: FreeRanked, label_map: dict[str, str], name: str = ""
) -> Morphism:
    """Bead label map: multiplicities of beads with a common image add up."""
    rows = []
    for t_label, _ in target.beads:
        row = []
        for s_label, _ in source.beads:
            image = label_map.get(s_label)
            if image is None:
                raise ValueError(f"relabel: no image for bead {s_label!r}")
            row.append(1 if image == t_label else 0)
        rows.append(tuple(row))
    return Morphism(source, target, "linear", tuple(rows), name=name)


def apply_morphism(m: Morphism, s):
    m.source.validate(s)
    if m.kind == "rank":
        return m.source.rank(s)
    xs = m.source.coords(s)
    if any(len(row) != len(xs) for row in m.matrix):
        raise ValueError("apply_morphism: matrix width does not match source arity")
    ys = tuple(sum(c * x for c, x in zip(row, xs)) for row in m.matrix)
    out = m.target._build(ys)
    if out is None:
        raise ValueError(f"apply_morphism: image {ys} of {s} is not a valid element")
    return out


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    failures: tuple[str, ...]


# Additivity of rank/linear maps is structural, so the pairwise check is a
# packing sanity test; it runs on a bounded prefix of the window to keep
# large windows affordable.
_ADDITIVITY_PREFIX = 48


def check_morphism(m: Morphism, kind: str, window: Window) -> MorphismReport:
    """Verify morphism health on a window.

    kind is "rank-dividing" (rank of the image divides the rank) or
    "rank-multiplying" (rank divides the image rank).  For rank-multiplying
    maps the root-set bijection condition needed for pullbacks is checked:
    for every s and d | rank(s), the sets s/d and image/d have equal size.
    """
    if kind not in ("rank-dividing", "rank-multiplying"):
        raise ValueError(f"check_morphism: unknown kind {kind!r}")
    failures: list[str] = []
    elems = m.source.elements(window)
    images = {}
    for s in elems:
        try:
            images[s] = apply_morphism(m, s)
        except ValueError as exc:
            failures.append(f"image of {s}: {exc}")
    for s, phi_s in images.items():
        rs, rp = m.source.rank(s), m.target.rank(phi_s)
        if kind == "rank-dividing" and rs % rp:
            failures.append(f"rank {rp} of image of {s} does not divide rank {rs}")
        if kind == "rank-multiplying" and rp % rs:
            failures.append(f"rank {rs} of {s} does not divide image rank {rp}")
    prefix = elems[:_ADDITIVITY_PREFIX]
    in_window = set(elems)
    for s in prefix:
        if s not in images:
            continue
        for t in prefix:
            if t not in images:
                continue
            try:
                st = m.source.add(s, t)
            except ValueError:
                continue
            if st not in in_window:
                continue
            lhs = apply_morphism(m, st)
            rhs = m.target.add(images[s], images[t])
            if lhs != rhs:
                failures.append(f"additivity broken at {s} + {t}")
    if kind == "rank-multiplying":
        for s, phi_s in images.items():
            for d in divisors(m.source.rank(s)):
                if len(m.source.root_set(s, d)) != len(m.target.root_set(phi_s, d)):
                    failures.append(f"root sets of {s} and its image differ at d={d}")
    return MorphismReport(ok=not failures, failures=tuple(failures))


# -- JSON plumbing -----------------------------------------------------------


def encode_element(instance: _SemigroupBase, s):
    """JSON-friendly form: int, list of ints, or label->multiplicity dict."""
    instance.validate(s)
    if isinstance(instance, PositiveIntegers):
        return s
    if isinstance(instance, Chain):
        return list(s)
    return {label: c for (label, _), c in zip(instance.beads, s) if c}


def decode_element(instance: _SemigroupBase, obj):
    if isinstance(instance, PositiveIntegers):
        s = obj
    elif isinstance(instance, Chain):
        s = tuple(obj)
    else:
        if not isinstance(obj, dict):
            raise ValueError(f"expected a label->multiplicity object, got {obj!r}")
        counts = [0] * len(instance.beads)
        for label, c in obj.items():
            counts[instance.label_index(label)] = c
        s = tuple(counts)
    instance.validate(s)
    return s


def window_from_config(cfg: dict) -> Window:
    allowed = {"max_rank", "extra_bounds", "max_total"}
    unknown = set(cfg) - allowed
    if unknown:
        raise ValueError(f"window config: unknown keys {sorted(unknown)}")
    if "max_rank" not in cfg:
        raise ValueError("window config: max_rank is required")
    eb = cfg.get("extra_bounds", ())
    if eb and isinstance(eb[0], list):
        eb = tuple(tuple(p) for p in eb)
    else:
        eb = tuple(eb)
    return Window(cfg["max_rank"], eb, cfg.get("max_total"))


def instance_from_config(cfg: dict) -> tuple[_SemigroupBase, Window | None]:
    """Build an instance (and optional window) from its JSON declaration.

    {"kind": "zpos"} | {"kind": "chain", "base": ..., "extra": "ints"}
    | {"kind": "free", "beads": [["a", 1], ["b", 2]]}, each optionally with
    a "window" member.
    """
    if not isinstance(cfg, dict):
        raise ValueError(f"instance config must be an object, got {cfg!r}")
    kind = cfg.get("kind")
    window = window_from_config(cfg["window"]) if "window" in cfg else None
    if kind == "zpos":
        _reject_unknown(cfg, {"kind", "window"})
        return PositiveIntegers(), window
    if kind == "chain":
        _reject_unknown(cfg, {"kind", "base", "extra", "window"})
        base_cfg = cfg.get("base", "zpos")
        if base_cfg == "zpos":
            base: _SemigroupBase = PositiveIntegers()
        else:
            base, base_window = instance_from_config(base_cfg)
            if base_window is not None:
                raise ValueError("instance config: window belongs on the outer chain")
        if not isinstance(base, (PositiveIntegers, Chain)):
            raise ValueError("chain base must be zpos or another chain")
        return Chain(base, cfg.get("extra", "ints")), window
    if kind == "free":
        _reject_unknown(cfg, {"kind", "beads", "window"})
        beads = tuple((label, length) for label, length in cfg.get("beads", ()))
        return FreeRanked(beads), window
    raise ValueError(f"instance config: unknown kind {kind!r}")


def _reject_unknown(cfg: dict, allowed: set[str]) -> None:
    unknown = set(cfg) - allowed
    if unknown:
        raise ValueError(f"instance config: unknown keys {sorted(unknown)}")
