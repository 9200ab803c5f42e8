"""Tubings of interval and cycle graphs, and their lattice-path bijections.

A tube is a nonempty connected vertex set; a tubing is a set of tubes that
are pairwise nested, or disjoint with no edge between them.  Vertices are
0-indexed; on the cycle they run clockwise and arcs wrap modulo n.  Tubes
are stored as (start, length) pairs.  On the interval the full vertex set
is a valid tube; on the cycle the full circle is excluded.

Lattice paths are strings over U = (1,1), D = (1,-1), F = (2,0), and the
length of a path is its x-extent.  The height of a step is the y-coordinate
before it.  Tubings of the n-interval biject with nonnegative paths of
length 2n; improper tubings of the n-cycle biject with unrestricted paths
of length 2(n-1), through an intermediate marked path.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .gaussseq import TruncatedSeries, solve_functional_equation
from .objects import CyclicFamily, CyclicObject
from .qpoly import IntPoly, ONE, ZERO, q_binomial, q_power
from .semigroup import Chain, PositiveIntegers, Window

Tube = tuple[int, int]
Tubing = frozenset

MAX_INTERVAL = 12
MAX_CYCLE = 10

_STEP_X = {"U": 1, "D": 1, "F": 2}
_STEP_Y = {"U": 1, "D": -1, "F": 0}


# -- tubes and tubings -------------------------------------------------------------


def interval_tubes(n: int) -> list[Tube]:
    """All tubes of the n-vertex interval graph, the full interval included."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return [
        (start, length)
        for length in range(1, n + 1)
        for start in range(0, n - length + 1)
    ]

def cycle_tubes(n: int) -> list[Tube]:
    """All tubes of the n-vertex cycle graph; the full circle is not a tube."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return [(start, length) for length in range(1, n) for start in range(n)]


def tube_vertices(n: int, tube: Tube, kind: str = "interval") -> frozenset:
    start, length = tube
    if kind == "interval":
        if not (0 <= start and start + length <= n and length >= 1):
            raise ValueError(f"tube {tube!r} does not fit in the {n}-interval")
        return frozenset(range(start, start + length))
    if kind == "cycle":
        if not (0 <= start < n and 1 <= length <= n - 1):
            raise ValueError(f"tube {tube!r} does not fit in the {n}-cycle")
        return frozenset((start + i) % n for i in range(length))
    raise ValueError(f"unknown graph kind {kind!r}")


def tubes_compatible(n: int, t1: Tube, t2: Tube, kind: str = "interval") -> bool:
    """Nested, or vertex-disjoint with no edge between the two tubes."""
    a = tube_vertices(n, t1, kind)
    b = tube_vertices(n, t2, kind)
    if a <= b or b <= a:
        return True
    if a & b:
        return False
    for v in a:
        if kind == "cycle":
            if (v + 1) % n in b or (v - 1) % n in b:
                return False
        else:
            if v + 1 in b or v - 1 in b:
                return False
    return True


def is_tubing(n: int, tubes: Iterable[Tube], kind: str = "interval") -> bool:
    tubes = list(tubes)
    if len(set(tubes)) != len(tubes):
        return False
    for t in tubes:
        tube_vertices(n, t, kind)
    return all(
        tubes_compatible(n, t1, t2, kind)
        for t1, t2 in itertools.combinations(tubes, 2)
    )


def enumerate_tubings(n: int, kind: str = "interval") -> list[Tubing]:
    """Every tubing of the n-interval or n-cycle, the empty tubing included."""
    cap = MAX_INTERVAL if kind == "interval" else MAX_CYCLE
    if n > cap:
        raise ValueError(f"refusing to enumerate {kind} tubings beyond n = {cap}")
    if kind not in ("interval", "cycle"):
        raise ValueError(f"unknown graph kind {kind!r}")
    tubes = interval_tubes(n) if kind == "interval" else cycle_tubes(n)
    out: list[Tubing] = []
    chosen: list[Tube] = []

    def rec(i: int) -> None:
        out.append(frozenset(chosen))
        for t in range(i, len(tubes)):
            if all(tubes_compatible(n, tubes[t], c, kind) for c in chosen):
                chosen.append(tubes[t])
                rec(t + 1)
                chosen.pop()

    rec(0)
    return out


def free_vertices(n: int, tubing: Iterable[Tube], kind: str = "interval") -> set[int]:
    covered: set[int] = set()
    for t in tubing:
        covered |= tube_vertices(n, t, kind)
    return set(range(n)) - covered


def is_proper(n: int, tubing: Iterable[Tube], kind: str = "interval") -> bool:
    return not free_vertices(n, tubing, kind)


def final_vertices(n: int, tubing: Iterable[Tube], kind: str = "interval") -> dict[Tube, int]:
    """Map each tube to the last of its vertices not in a subtube.

    Within a tubing the proper subtubes of a tube never cover it, so the
    final vertex always exists, and distinct tubes get distinct finals.
    On the cycle "last" follows the tube's clockwise traversal.
    """
    tubing = set(tubing)
    out: dict[Tube, int] = {}
    for tube in tubing:
        mine = tube_vertices(n, tube, kind)
        covered: set[int] = set()
        for other in tubing:
            if other != tube:
                vs = tube_vertices(n, other, kind)
                if vs < mine:
                    covered |= vs
        start, length = tube
        walk = (
            range(start, start + length)
            if kind == "interval"
            else ((start + i) % n for i in range(length))
        )
        out[tube] = [v for v in walk if v not in covered][-1]
    return out


def classify_vertices(n: int, tubing: Iterable[Tube], kind: str = "interval") -> dict[int, str]:
    """Per-vertex classification: free, final, or nonfinal."""
    tubing = set(tubing)
    if not is_tubing(n, tubing, kind):
        raise ValueError(f"not a valid {kind} tubing")
    finals = set(final_vertices(n, tubing, kind).values())
    frees = free_vertices(n, tubing, kind)
    out = {}
    for v in range(n):
        out[v] = "free" if v in frees else ("final" if v in finals else "nonfinal")
    return out


# -- lattice paths -----------------------------------------------------------------


def path_length(path: str) -> int:
    return sum(_STEP_X[s] for s in path)


def step_heights(path: str) -> list[int]:
    """Height before each step."""
    out = []
    h = 0
    for s in path:
        if s not in _STEP_X:
            raise ValueError(f"unknown step {s!r} in {path!r}")
        out.append(h)
        h += _STEP_Y[s]
    return out


def classify_path(path: str) -> str:
    """The strongest of delannoy / schroder / strict that the path satisfies."""
    h = 0
    nonneg = True
    strict = True
    for s in path:
        if s not in _STEP_X:
            raise ValueError(f"unknown step {s!r} in {path!r}")
        if s == "F" and h == 0:
            strict = False
        h += _STEP_Y[s]
        if h < 0:
            nonneg = False
    if h != 0:
        raise ValueError(f"path {path!r} does not return to height 0")
    if nonneg and strict:
        return "strict"
    if nonneg:
        return "schroder"
    return "delannoy"


def enumerate_paths(length: int, kind: str = "delannoy", flats: int | None = None) -> list[str]:
    """All paths of the given x-extent, optionally with a fixed F count."""
    if kind not in ("delannoy", "schroder", "strict"):
        raise ValueError(f"unknown path kind {kind!r}")
    if length < 0 or length % 2:
        raise ValueError(f"path length must be even and nonnegative, got {length}")
    out: list[str] = []
    acc: list[str] = []

    def rec(rem: int, h: int, nf: int) -> None:
        if abs(h) > rem:
            return
        if rem == 0:
            if h == 0 and (flats is None or nf == flats):
                out.append("".join(acc))
            return
        acc.append("U")
        rec(rem - 1, h + 1, nf)
        acc.pop()
        if kind == "delannoy" or h >= 1:
            acc.append("D")
            rec(rem - 1, h - 1, nf)
            acc.pop()
        if rem >= 2 and not (kind == "strict" and h == 0):
            acc.append("F")
            rec(rem - 2, h, nf + 1)
            acc.pop()

    rec(length, 0, 0)
    return sorted(out)


# -- interval bijection ------------------------------------------------------------


def interval_tubing_to_schroder(n: int, tubing: Iterable[Tube]) -> str:
    """Walk the interval: a rise per tube started, outermost first, then a
    fall at a final vertex or a flat otherwise."""
    tubing = set(tubing)
    if not is_tubing(n, tubing, "interval"):
        raise ValueError("not a valid interval tubing")
    finals = set(final_vertices(n, tubing).values())
    steps: list[str] = []
    for v in range(n):
        opens = sorted((t for t in tubing if t[0] == v), key=lambda t: -t[1])
        steps.extend("U" * len(opens))
        steps.append("D" if v in finals else "F")
    return "".join(steps)


def schroder_to_interval_tubing(n: int, path: str) -> Tubing:
    """Each rise opens a tube; it closes right before the next flat or fall
    at the rise's height, or at the end of the path."""
    if classify_path(path) == "delannoy":
        raise ValueError(f"path {path!r} dips below height 0")
    if path_length(path) != 2 * n:
        raise ValueError(f"need length {2 * n}, got {path_length(path)}")
    heights = step_heights(path)
    m = len(path)
    close_at: dict[int, list[int]] = {}
    for t, s in enumerate(path):
        if s != "U":
            continue
        slot = m
        for u in range(t + 1, m):
            if path[u] in ("D", "F") and heights[u] == heights[t]:
                slot = u
                break
        close_at.setdefault(slot, []).append(t)
    tubes: list[Tube] = []
    stack: list[tuple[int, int]] = []
    vi = 0
    for u in range(m + 1):
        for t in sorted(close_at.get(u, ()), reverse=True):
            opener, start = stack.pop()
            if opener != t:
                raise ValueError(f"mismatched tube brackets in {path!r}")
            tubes.append((start, vi - start))
        if u == m:
            break
        if path[u] == "U":
            stack.append((u, vi))
        else:
            vi += 1
    tubing = frozenset(tubes)
    if not is_tubing(n, tubing, "interval"):
        raise ValueError(f"path {path!r} does not decode to a tubing")
    return tubing


# -- cycle bijection ---------------------------------------------------------------


def _marked_ok(path: str, j: int) -> bool:
    if not path or path[-1] != "F":
        return False
    heights = step_heights(path)
    if classify_path(path) == "delannoy":
        return False
    first_flat0 = next(
        t for t, s in enumerate(path) if s == "F" and heights[t] == 0
    )
    return 1 <= j <= first_flat0 + 1 and path[j - 1] in ("D", "F")


def cycle_tubing_to_marked(n: int, tubing: Iterable[Tube], basepoint: int = 0) -> tuple[str, int]:
    """Unroll an improper cycle tubing to a marked nonnegative path (p, j).

    The cycle is cut after the free vertex preceding the basepoint, so the
    linearized tubing has its last vertex free; the mark j is the step of
    the vertex that was the basepoint.
    """
    tubing = set(tubing)
    if not is_tubing(n, tubing, "cycle"):
        raise ValueError("not a valid cycle tubing")
    if basepoint % n:
        tubing = {((s - basepoint) % n, length) for s, length in tubing}
    frees = free_vertices(n, tubing, "cycle")
    if not frees:
        raise ValueError("tubing is proper: it has no free vertex to cut at")
    f = max(frees - {0}) if frees != {0} else 0
    shift = lambda v: (v - f - 1) % n
    unrolled = frozenset((shift(s), length) for s, length in tubing)
    p = interval_tubing_to_schroder(n, unrolled)
    i = shift(0) + 1
    vertex_steps = [t for t, s in enumerate(p) if s in ("D", "F")]
    j = vertex_steps[i - 1] + 1
    return p, j


def marked_to_cycle_tubing(n: int, path: str, j: int, basepoint: int = 0) -> Tubing:
    if not _marked_ok(path, j):
        raise ValueError(f"({path!r}, {j}) is not a marked path")
    unrolled = schroder_to_interval_tubing(n, path)
    i = sum(1 for s in path[:j] if s in ("D", "F"))
    tubing = frozenset(
        ((s - (i - 1) + basepoint) % n, length) for s, length in unrolled
    )
    if not is_tubing(n, tubing, "cycle"):
        raise ValueError(f"({path!r}, {j}) does not roll up to a cycle tubing")
    return tubing


def marked_to_delannoy(path: str, j: int) -> str:
    """Drop the final flat and rotate the mark to the front of the cut."""
    if not _marked_ok(path, j):
        raise ValueError(f"({path!r}, {j}) is not a marked path")
    m = len(path)
    if j == m:
        return path[:-1]
    return path[j : m - 1] + path[j - 1] + path[: j - 1]


def delannoy_to_marked(path: str) -> tuple[str, int]:
    """Restore the marked nonnegative path from an unrestricted one.

    The cut point is recovered from the lowest level of the path: the last
    flat at that level if there is one, the first step reaching it if the
    path dips below zero, and the appended final flat otherwise.
    """
    heights_after: list[int] = []
    h = 0
    for s in path:
        if s not in _STEP_X:
            raise ValueError(f"unknown step {s!r} in {path!r}")
        h += _STEP_Y[s]
        heights_after.append(h)
    if h != 0:
        raise ValueError(f"path {path!r} does not return to height 0")
    m = len(path)
    min_h = min(heights_after, default=0)
    flats_at_min = [
        t for t, s in enumerate(path) if s == "F" and heights_after[t] == min_h
    ]
    if flats_at_min:
        s0 = flats_at_min[-1]
    elif min_h == 0:
        return path + "F", m + 1
    else:
        s0 = heights_after.index(min_h)
    p = path[s0 + 1 :] + path[s0] + path[:s0] + "F"
    return p, m - s0


def cycle_tubing_to_delannoy(n: int, tubing: Iterable[Tube], basepoint: int = 0) -> str:
    p, j = cycle_tubing_to_marked(n, tubing, basepoint)
    return marked_to_delannoy(p, j)


def delannoy_to_cycle_tubing(n: int, path: str, basepoint: int = 0) -> Tubing:
    if path_length(path) != 2 * (n - 1):
        raise ValueError(f"need length {2 * (n - 1)}, got {path_length(path)}")
    p, j = delannoy_to_marked(path)
    return marked_to_cycle_tubing(n, p, j, basepoint)


# -- cyclic families of tubings ----------------------------------------------------


def cycle_tubing_object(n: int, tubing: Iterable[Tube], colors: Mapping | None = None) -> CyclicObject:
    """Encode a cycle tubing slotwise: per vertex, the (length, offset,
    color) of each tube through it, sorted.  Rotation of the cycle is
    rotation of the encoding."""
    slots: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for tube in tubing:
        start, length = tube
        color = colors.get(tube, 0) if colors else 0
        for i in range(length):
            slots[(start + i) % n].append((length, i, color))
    return CyclicObject("tubing", tuple(tuple(sorted(sl)) for sl in slots))


def _tubing_sets(max_rank: int, colors: int):
    per_n: dict[int, list[tuple[Tubing, dict]]] = {}
    for n in range(1, max_rank + 1):
        items = []
        for tubing in enumerate_tubings(n, "cycle"):
            if not free_vertices(n, tubing, "cycle"):
                continue
            tubes = sorted(tubing)
            for assignment in itertools.product(range(1, colors + 1), repeat=len(tubes)):
                items.append((tubing, dict(zip(tubes, assignment))))
        per_n[n] = items
    return per_n


def tubings_by_free_vertices(max_rank: int, colors: int = 1) -> CyclicFamily:
    """Improper cycle tubings graded by (length, free-vertex count)."""
    per_n = _tubing_sets(max_rank, colors)
    inst = Chain(PositiveIntegers(), "pos")
    window = Window(max_rank, ((1, max_rank),))

    def gen(s):
        n, k = s
        return [
            cycle_tubing_object(n, tubing, assignment)
            for tubing, assignment in per_n[n]
            if len(free_vertices(n, tubing, "cycle")) == k
        ]

    return CyclicFamily.from_generator(inst, window, gen)


def tubings_by_tube_count(max_rank: int, colors: int = 1) -> CyclicFamily:
    """Improper cycle tubings graded by (length, tube count)."""
    per_n = _tubing_sets(max_rank, colors)
    inst = Chain(PositiveIntegers(), "nonneg")
    window = Window(max_rank, ((0, max_rank),))

    def gen(s):
        n, k = s
        return [
            cycle_tubing_object(n, tubing, assignment)
            for tubing, assignment in per_n[n]
            if len(tubing) == k
        ]

    return CyclicFamily.from_generator(inst, window, gen)


def tubings_all_improper(max_rank: int) -> CyclicFamily:
    """All improper cycle tubings graded by length alone."""
    per_n = _tubing_sets(max_rank, 1)
    inst = PositiveIntegers()
    window = Window(max_rank)

    def gen(n):
        return [cycle_tubing_object(n, tubing) for tubing, _ in per_n[n]]

    return CyclicFamily.from_generator(inst, window, gen)


def only_last_free_count(n: int) -> int:
    """Tubings of the n-interval whose unique free vertex is the last one."""
    return sum(
        1
        for t in enumerate_tubings(n, "interval")
        if free_vertices(n, t, "interval") == {n - 1}
    )


def free_vertex_polynomial(n: int, k: int) -> IntPoly:
    """Sieving polynomial for improper cycle tubings with k free vertices.

    The m = n-k term only contributes on the diagonal k = n, where the
    empty tubing needs the q-binomial bottom-entry convention to count it.
    """
    from .qpoly import ONE, ZERO, q_binomial, q_power

    total = ZERO
    for m in range(0, max(n - k, 0) + 1):
        exp2 = ONE if m == 0 else q_power(2, m)
        total = total + q_binomial(n, m + k) * q_binomial(n - k - 1, m) * exp2
    return total


def tube_count_polynomial(n: int, k: int, colors: int = 1) -> IntPoly:
    """Sieving polynomial for improper cycle tubings with k tubes."""
    f = q_binomial(n + k - 1, k) * q_binomial(n - 1, k)
    if colors != 1 and k >= 1:
        f = f * q_power(colors, k)
    return f


def improper_total_polynomial(n: int) -> IntPoly:
    """Sieving polynomial for all improper cycle tubings of length n."""
    total = ZERO
    for k in range(0, n):
        total = total + tube_count_polynomial(n, k)
    return total


def strict_schroder_gf_check(order: int, exhaustive_up_to: int = 8) -> dict:
    """Cross-check three ways of counting strict paths of length 2(n-1).

    The counts solve C = x * D(C) with D = (1-t)/(1-2t), equivalently
    C = x + C^2 + C^3 + ...; both are compared against exhaustive path
    enumeration up to a size cap.
    """
    if not 1 <= order <= 14:
        raise ValueError(f"order must be between 1 and 14, got {order}")
    D = TruncatedSeries.from_rational([1, -1], [1, -2], order + 1)
    C = solve_functional_equation(D, order + 1)
    solved = []
    for nn in range(1, order + 1):
        v = C.coeff(nn)
        if v.denominator != 1:
            raise ArithmeticError(f"non-integer series coefficient at {nn}: {v}")
        solved.append(int(v))
    # first-return decomposition: a strict path is empty or a sequence of
    # k >= 2 strict blocks, giving c_n = [n == 1] + sum over compositions
    rec = [0] * (order + 1)
    rec[1] = 1
    for nn in range(2, order + 1):
        total = 0
        conv = rec[:]  # C^k coefficients, starting at k = 1
        for _ in range(2, nn + 1):
            conv = [
                sum(conv[i] * rec[m - i] for i in range(m + 1))
                for m in range(order + 1)
            ]
            total += conv[nn]
        rec[nn] = total
    counted = [
        len(enumerate_paths(2 * (nn - 1), "strict"))
        for nn in range(1, min(order, exhaustive_up_to) + 1)
    ]
    ok = solved == rec[1:] and counted == solved[: len(counted)]
    return {
        "order": order,
        "solved": solved,
        "recurrence": rec[1:],
        "enumerated": counted,
        "ok": ok,
    }


def tubing_to_jsonable(tubing: Iterable[Tube]) -> list[list[int]]:
    return [list(t) for t in sorted(tubing)]
