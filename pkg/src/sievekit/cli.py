"""Batch command-line surface over the library.

One JSON config per invocation; deterministic output (stable key order,
no timestamps).  Exit codes: 0 all checks pass, 1 configuration problem,
2 verification failure with the witness named in the output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .gaussseq import (
    GaussReport,
    NonIntegerWitness,
    SequenceSpec,
    TruncatedSeries,
    a_from_b,
    a_from_c,
    b_from_a,
    c_from_a,
    check_gauss,
    riordan_count,
    sequence_from_config,
)
from .objects import (
    CyclicFamily,
    festoons_by_content,
    festoons_colored,
    festoons_repeated,
    signed_festoons,
    verify_csp,
    verify_lyndon,
    verify_signed_csp,
    words_with_content,
)
from .qgauss import (
    NonIntegerCoefficient,
    PolyFamily,
    check_qgauss_definition,
    check_qgauss_roots,
    construct_from_b,
    construct_from_c,
    construct_ramanujan,
    fund_family,
)
from .qpoly import q_binomial, q_power
from .semigroup import (
    Chain,
    FreeRanked,
    PositiveIntegers,
    Window,
    encode_element,
    instance_from_config,
    window_from_config,
)
from . import tubings as tb


class ConfigError(ValueError):
    pass


def _require_keys(cfg: dict, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(cfg, dict):
        raise ConfigError(f"{where}: expected an object, got {cfg!r}")
    unknown = set(cfg) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(cfg)
    if missing:
        raise ConfigError(f"{where}: missing keys {sorted(missing)}")


def _report_jsonable(report, instance=None) -> dict:
    return report.to_jsonable(instance)


# -- seq ---------------------------------------------------------------------------


def cmd_seq(cfg: dict) -> tuple[dict, int]:
    _require_keys(cfg, {"sequence"}, {"sequence"}, "seq config")
    try:
        spec = sequence_from_config(cfg["sequence"])
    except (ValueError, KeyError, TypeError) as e:
        raise ConfigError(str(e))
    payload: dict = {"command": "seq", "role": spec.role}
    try:
        if spec.role == "a":
            a = spec
        elif spec.role == "b":
            a = a_from_b(spec)
        elif spec.role == "c":
            a = a_from_c(spec)
        else:
            raise ConfigError(f"seq config: unknown role {spec.role!r}")
        b = b_from_a(a)
        c = c_from_a(a)
    except NonIntegerWitness as e:
        payload["ok"] = False
        payload["witness"] = {
            "element": encode_element(spec.instance, e.element),
            "detail": str(e),
        }
        return payload, 2
    elements = list(spec.instance.elements(spec.window))
    payload["elements"] = [encode_element(spec.instance, s) for s in elements]
    payload["rows"] = {
        "a": [a.value(s) for s in elements],
        "b": [b.value(s) for s in elements],
        "c": [c.value(s) for s in elements],
    }
    report = check_gauss(a)
    payload["ok"] = report.ok
    if not report.ok:
        element, residue = report.failures[0]
        payload["witness"] = {
            "element": encode_element(spec.instance, element),
            "detail": f"sieve sum residue {residue}",
        }
        return payload, 2
    return payload, 0


# -- qgauss ------------------------------------------------------------------------

_CONSTRUCTIONS: dict[str, tuple[str, Callable]] = {
    "ramanujan": ("a", construct_ramanujan),
    "from-b": ("b", construct_from_b),
    "from-c": ("c", construct_from_c),
}


def _closed_form_family(cfg: dict) -> PolyFamily:
    _require_keys(
        cfg, {"name", "window", "base"}, {"name", "window"}, "closed_form config"
    )
    window = window_from_config(cfg["window"])
    name = cfg["name"]
    if name == "q-binomial":
        inst = Chain(PositiveIntegers(), "nonneg")
        return PolyFamily.from_function(
            inst, window, lambda s: q_binomial(s[0], s[1])
        )
    if name == "q-power":
        lam = int(cfg.get("base", 2))
        return PolyFamily.from_function(
            PositiveIntegers(), window, lambda n: q_power(lam, n)
        )
    raise ConfigError(f"closed_form config: unknown name {name!r}")


def cmd_qgauss(cfg: dict) -> tuple[dict, int]:
    _require_keys(
        cfg,
        {"construction", "sequence", "closed_form", "beads", "window", "checks"},
        set(),
        "qgauss config",
    )
    checks = cfg.get("checks", ["definition", "roots"])
    if not isinstance(checks, list) or set(checks) - {"definition", "roots"}:
        raise ConfigError(f"qgauss config: bad checks {checks!r}")
    payload: dict = {"command": "qgauss"}
    if "closed_form" in cfg:
        family = _closed_form_family(cfg["closed_form"])
        payload["construction"] = "closed-form"
    elif "construction" in cfg:
        name = cfg["construction"]
        payload["construction"] = name
        if name == "fund":
            if "beads" not in cfg or "window" not in cfg:
                raise ConfigError("qgauss config: fund needs beads and window")
            try:
                beads = FreeRanked(tuple((b, int(l)) for b, l in cfg["beads"]))
                window = window_from_config(cfg["window"])
            except (ValueError, TypeError) as e:
                raise ConfigError(str(e))
            family = fund_family(beads, window)
        else:
            if name not in _CONSTRUCTIONS:
                raise ConfigError(f"qgauss config: unknown construction {name!r}")
            role, build = _CONSTRUCTIONS[name]
            if "sequence" not in cfg:
                raise ConfigError("qgauss config: construction needs a sequence")
            try:
                spec = sequence_from_config(cfg["sequence"])
            except (ValueError, KeyError, TypeError) as e:
                raise ConfigError(str(e))
            if spec.role != role:
                raise ConfigError(
                    f"qgauss config: {name} needs a role-{role} sequence, "
                    f"got role-{spec.role}"
                )
            try:
                family = build(spec)
            except NonIntegerCoefficient as e:
                payload["ok"] = False
                payload["witness"] = {
                    "element": encode_element(spec.instance, e.element),
                    "detail": str(e),
                }
                return payload, 2
    else:
        raise ConfigError("qgauss config: needs construction or closed_form")
    payload["family"] = family.to_jsonable()
    payload["checks"] = {}
    ok = True
    if "definition" in checks:
        rep = check_qgauss_definition(family)
        payload["checks"]["definition"] = _report_jsonable(rep, family.instance)
        ok = ok and rep.ok
    if "roots" in checks:
        rep = check_qgauss_roots(family)
        payload["checks"]["roots"] = _report_jsonable(rep, family.instance)
        ok = ok and rep.ok
    payload["ok"] = ok
    return payload, 0 if ok else 2


# -- csp ---------------------------------------------------------------------------


def _family_words(cfg: dict) -> tuple[CyclicFamily, PolyFamily, bool]:
    _require_keys(cfg, {"family", "beads", "window"}, {"beads", "window"}, "csp config")
    try:
        beads = FreeRanked(tuple((b, int(l)) for b, l in cfg["beads"]))
        window = window_from_config(cfg["window"])
    except (ValueError, TypeError) as e:
        raise ConfigError(str(e))
    if cfg.get("family") == "words":
        if set(beads.lengths) != {1}:
            raise ConfigError("csp config: words need all bead lengths equal to 1")
        labels = [label for label, _ in beads.beads]

        def generate(alpha):
            return words_with_content(list(zip(labels, alpha)))

    else:
        def generate(alpha):
            return festoons_by_content(beads, alpha)

    fam = CyclicFamily.from_generator(beads, window, generate)
    return fam, fund_family(beads, window), False


def _family_from_sequence(cfg: dict, name: str) -> tuple[CyclicFamily, PolyFamily, bool]:
    key = "b" if name == "festoons-repeated" else "c"
    _require_keys(cfg, {"family", key}, {key}, "csp config")
    try:
        spec = sequence_from_config(cfg[key])
    except (ValueError, KeyError, TypeError) as e:
        raise ConfigError(str(e))
    if spec.role != key:
        raise ConfigError(
            f"csp config: {name} needs a role-{key} sequence, got role-{spec.role}"
        )
    if name == "festoons-colored":
        gen = lambda s: festoons_colored(spec, s)
        poly = construct_from_c(spec)
        signed = False
    elif name == "festoons-repeated":
        gen = lambda s: festoons_repeated(spec, s)
        poly = construct_from_b(spec)
        signed = False
    else:
        def gen(s):
            pos, neg = signed_festoons(spec, s)
            return pos + neg

        poly = construct_from_c(spec)
        signed = True
    fam = CyclicFamily.from_generator(spec.instance, spec.window, gen)
    return fam, poly, signed


def _family_tubings(cfg: dict) -> tuple[CyclicFamily, PolyFamily, bool]:
    _require_keys(
        cfg,
        {"family", "max_rank", "grading", "colors"},
        {"max_rank"},
        "csp config",
    )
    max_rank = int(cfg["max_rank"])
    grading = cfg.get("grading", "tubes")
    colors = int(cfg.get("colors", 1))
    if colors != 1 and grading != "tubes":
        raise ConfigError("csp config: colors only combine with the tubes grading")
    if grading == "free":
        fam = tb.tubings_by_free_vertices(max_rank)
        poly = PolyFamily.from_function(
            fam.instance, fam.window, lambda s: tb.free_vertex_polynomial(*s)
        )
    elif grading == "tubes":
        fam = tb.tubings_by_tube_count(max_rank, colors)
        poly = PolyFamily.from_function(
            fam.instance,
            fam.window,
            lambda s: tb.tube_count_polynomial(s[0], s[1], colors),
        )
    elif grading == "all":
        fam = tb.tubings_all_improper(max_rank)
        poly = PolyFamily.from_function(
            fam.instance, fam.window, tb.improper_total_polynomial
        )
    else:
        raise ConfigError(f"csp config: unknown grading {grading!r}")
    return fam, poly, False


def cmd_csp(cfg: dict) -> tuple[dict, int]:
    if not isinstance(cfg, dict) or "family" not in cfg:
        raise ConfigError("csp config: missing family name")
    name = cfg["family"]
    if name in ("words", "festoons-content"):
        fam, poly, signed = _family_words(cfg)
    elif name in ("festoons-colored", "festoons-repeated", "signed-festoons"):
        fam, poly, signed = _family_from_sequence(cfg, name)
    elif name == "tubings-cycle":
        fam, poly, signed = _family_tubings(cfg)
    else:
        raise ConfigError(
            f"csp config: {name!r} is not a cyclic family "
            "(expected words, festoons-content, festoons-colored, "
            "festoons-repeated, signed-festoons, or tubings-cycle)"
        )
    payload: dict = {"command": "csp", "family": name}
    payload["counts"] = [
        [encode_element(fam.instance, s), len(objs)] for s, objs in fam.sets
    ]
    checks = {}
    ok = True
    if signed:
        rep = verify_signed_csp(fam, poly)
        checks["signed-csp"] = _report_jsonable(rep, fam.instance)
        ok = rep.ok
    else:
        rep_l = verify_lyndon(fam)
        rep_c = verify_csp(fam, poly)
        checks["lyndon"] = _report_jsonable(rep_l, fam.instance)
        checks["csp"] = _report_jsonable(rep_c, fam.instance)
        ok = rep_l.ok and rep_c.ok
    payload["checks"] = checks
    payload["ok"] = ok
    return payload, 0 if ok else 2


# -- bijection ---------------------------------------------------------------------


def cmd_bijection(cfg: dict) -> tuple[dict, int]:
    _require_keys(cfg, {"kind", "max_n"}, {"kind", "max_n"}, "bijection config")
    kind = cfg["kind"]
    max_n = int(cfg["max_n"])
    if kind not in ("interval", "cycle"):
        raise ConfigError(f"bijection config: unknown kind {kind!r}")
    cap = tb.MAX_INTERVAL if kind == "interval" else tb.MAX_CYCLE
    if not 1 <= max_n <= cap:
        raise ConfigError(f"bijection config: max_n must be in 1..{cap}")
    payload: dict = {"command": "bijection", "kind": kind, "per_n": []}
    total = 0
    for n in range(1, max_n + 1):
        if kind == "interval":
            items = tb.enumerate_tubings(n, "interval")
            paths = tb.enumerate_paths(2 * n, "schroder")
            fwd, inv = tb.interval_tubing_to_schroder, tb.schroder_to_interval_tubing
        else:
            items = [
                t
                for t in tb.enumerate_tubings(n, "cycle")
                if tb.free_vertices(n, t, "cycle")
            ]
            paths = tb.enumerate_paths(2 * (n - 1), "delannoy")
            fwd, inv = tb.cycle_tubing_to_delannoy, tb.delannoy_to_cycle_tubing
        seen = set()
        for t in items:
            p = fwd(n, t)
            if inv(n, p) != t:
                payload["ok"] = False
                payload["witness"] = {
                    "n": n,
                    "tubing": tb.tubing_to_jsonable(t),
                    "path": p,
                }
                return payload, 2
            seen.add(p)
        if seen != set(paths):
            bad = sorted(set(paths) ^ seen)[0]
            payload["ok"] = False
            payload["witness"] = {"n": n, "path": bad, "detail": "image mismatch"}
            return payload, 2
        payload["per_n"].append([n, len(items)])
        total += len(items)
    payload["total"] = total
    payload["ok"] = True
    return payload, 0


# -- riordan -----------------------------------------------------------------------


def cmd_riordan(cfg: dict) -> tuple[dict, int]:
    _require_keys(cfg, {"series", "max_n"}, {"series", "max_n"}, "riordan config")
    series = cfg["series"]
    _require_keys(series, {"numer", "denom"}, {"numer"}, "riordan series")
    max_n = int(cfg["max_n"])
    if not 1 <= max_n <= 24:
        raise ConfigError("riordan config: max_n must be in 1..24")
    order = max_n + 1
    try:
        if "denom" in series:
            D = TruncatedSeries.from_rational(series["numer"], series["denom"], order)
        else:
            D = TruncatedSeries.from_coeffs(series["numer"], order)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"riordan series: {e}")
    rows = []
    for n in range(1, max_n + 1):
        rows.append([n, [riordan_count(D, n, k) for k in range(1, n + 1)]])
    return {"command": "riordan", "rows": rows, "ok": True}, 0


# -- rendering and entry -----------------------------------------------------------


def _render_table(payload: dict) -> str:
    lines: list[str] = []
    cmd = payload.get("command")
    if cmd == "seq" and "rows" in payload:
        headers = ["element"] + [json.dumps(e) for e in payload["elements"]]
        rows = [[role] + [str(v) for v in payload["rows"][role]] for role in "abc"]
        widths = [
            max(len(headers[i]), *(len(r[i]) for r in rows))
            for i in range(len(headers))
        ]
        lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
        for r in rows:
            lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    elif cmd == "qgauss" and "family" in payload:
        for entry in payload["family"]:
            lines.append(f"{json.dumps(entry['element'])}: {entry['poly']}")
        for name, rep in sorted(payload.get("checks", {}).items()):
            lines.append(
                f"check {name}: {'ok' if rep['ok'] else 'FAILED'}"
                f" ({rep['checked']} checked)"
            )
            for fl in rep.get("failures", [])[:5]:
                lines.append(f"  failure: {json.dumps(fl)}")
    elif cmd == "csp" and "counts" in payload:
        for elem, count in payload["counts"]:
            lines.append(f"{json.dumps(elem)}: {count} objects")
        for name, rep in sorted(payload.get("checks", {}).items()):
            lines.append(
                f"check {name}: {'ok' if rep['ok'] else 'FAILED'}"
                f" ({rep['checked']} checked)"
            )
            for fl in rep.get("failures", [])[:5]:
                lines.append(f"  failure: {json.dumps(fl)}")
    elif cmd == "bijection" and payload.get("ok"):
        for n, count in payload["per_n"]:
            lines.append(f"n={n}: {count} roundtrips")
        lines.append(f"{payload['total']} roundtrips OK")
    elif cmd == "riordan":
        for n, row in payload["rows"]:
            lines.append(f"n={n}: " + " ".join(str(v) for v in row))
    if "witness" in payload and payload["witness"]:
        lines.append(f"verification failure: {json.dumps(payload['witness'], sort_keys=True)}")
    if not payload.get("ok", True) and "witness" not in payload:
        lines.append("verification failure (see checks)")
    return "\n".join(lines) + "\n"


_COMMANDS = {
    "seq": cmd_seq,
    "qgauss": cmd_qgauss,
    "csp": cmd_csp,
    "bijection": cmd_bijection,
    "riordan": cmd_riordan,
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="sievekit",
        description="sieve congruences, sieving polynomials, and their object families",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to a JSON job config")
        p.add_argument("--format", choices=("json", "table"), default="table")
        p.add_argument("--out", help="write output here instead of stdout")
    args = parser.parse_args(argv)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1

    try:
        payload, code = _COMMANDS[args.command](cfg)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1

    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = _render_table(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
