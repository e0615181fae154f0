"""Command-line front end and the reproduction targets.

Every command prints one JSON run report (sorted keys, LF endings).  The exit
code is 0 exactly when the report carries no failed check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path

from . import expected
from .groebner import MonomialIdeal, count_standard_monomials, initial_ideal, verify_groebner
from .jets import EXPANSION, check_iso_scaling, jet_generators
from .lattice import (
    Graph,
    build_P_from_triangulation,
    build_Pn,
    ehrhart_interpolate,
    lattice_count,
    qstab,
)
from .poly import MonomialOrdering, format_rational
from .triangulation import (
    LOWER,
    GridConfig,
    completeness_guard,
    enumerate_regular_unimodular,
    from_segments,
    gb_triangulation_search,
    is_t_ordering,
    parse_triangulation,
    placing_triangulation,
    regular_from_heights,
    t_ordering_weights,
)

DEFAULT_SEARCH_POINTS = 12

TARGETS = (
    "dim-seq-n6",
    "ehrhart-p6",
    "tri-counts",
    "gb-search-2x2",
    "gb-search-3x2",
    "gb-search-1x3",
    "gb-search-3x3",
    "zobnin",
    "tm2-theorem",
    "non-gb-witness",
    "iso-check",
)


class CommandError(Exception):
    """A failed check; ``detail`` goes into the failure report."""

    def __init__(self, message: str, detail=None):
        super().__init__(message)
        self.detail = detail


def _frac(x) -> str:
    return format_rational(x)


def _first_diff(want, got):
    for i, (a, b) in enumerate(zip(want, got)):
        if a != b:
            return {"index": i, "expected": str(a), "got": str(b)}
    if len(want) != len(got):
        return {"index": min(len(want), len(got)), "expected_length": len(want), "got_length": len(got)}
    return None


def _shape(n, m):
    return n if m is None else (m, n)


# ------------------------------------------------------------ dimensions


def dim_groebner(p: int, n: int, m: int | None = None) -> int:
    gens = jet_generators(p, _shape(n, m), EXPANSION)
    order = MonomialOrdering.degrevlex(gens.ring.space)
    rep = verify_groebner(gens.generators, order)
    if not rep.is_gb:
        raise CommandError("generators are not a Groebner basis under revlex", rep.to_json(gens.labels))
    return count_standard_monomials(initial_ideal(gens.generators, order, rep))


def dim_lattice(p: int, n: int, m: int | None = None) -> int:
    if n < 1:
        raise CommandError("the lattice route needs n >= 1")
    if m is None:
        P = build_Pn(n)
    else:
        P = build_P_from_triangulation(placing_triangulation(GridConfig(m, n)))
    return lattice_count(P, p - 1)


def cmd_dim(p: int, n: int, m: int | None = None, route: str = "both") -> dict:
    out: dict = {"p": p, "n": n, "m": m, "route": route}
    if route in ("groebner", "both"):
        out["groebner"] = dim_groebner(p, n, m)
    if route in ("lattice", "both"):
        out["lattice"] = dim_lattice(p, n, m)
    if route == "both" and out["groebner"] != out["lattice"]:
        raise CommandError("routes disagree", out)
    out["dim"] = out.get("groebner", out.get("lattice"))
    return out


# ------------------------------------------------------------ targets


def _target_dim_seq(extended: bool, jobs: int):
    pmax = 8 if extended else 6
    got = [cmd_dim(p, 6)["dim"] for p in range(pmax + 1)]
    want = expected.DIM_SEQUENCE_N6[: pmax + 1]
    return {"values": got, "table": [got]}, _first_diff(want, got)


def _target_ehrhart(extended: bool, jobs: int):
    L = ehrhart_interpolate(build_Pn(6))
    q = L.shifted(-1)
    got = list(q.coeffs)
    res = {"coeffs_in_t": [_frac(c) for c in L.coeffs], "coeffs_in_p": [_frac(c) for c in got],
           "checked_points": L.checked_points, "table": [[_frac(c) for c in got]]}
    return res, _first_diff(expected.EHRHART_P6_IN_P, got)


def _target_tri_counts(extended: bool, jobs: int):
    sizes = [(2, 2), (3, 2), (4, 2)] + ([(3, 3)] if extended else [])
    counts, totals, guards = {}, {}, {}
    for m, n in sizes:
        cfg = GridConfig(m, n)
        regs, total = enumerate_regular_unimodular(cfg, with_total=True)
        counts[f"{m}x{n}"] = len(regs)
        totals[f"{m}x{n}"] = total
        guards[f"{m}x{n}"] = completeness_guard(cfg, regs)
    want = [expected.TRIANGULATION_COUNTS[s] for s in sizes]
    got = [counts[f"{m}x{n}"] for m, n in sizes]
    diff = _first_diff(want, got)
    if diff is None and any(guards.values()):
        diff = {"completeness_guard": guards}
    res = {"regular_unimodular": counts, "unimodular": totals, "guard_missing": guards,
           "table": [[k, v] for k, v in counts.items()]}
    return res, diff


def _target_gb_search(m: int, n: int):
    def run(extended: bool, jobs: int):
        cfg = GridConfig(m, n)
        r = gb_triangulation_search(cfg, 3, jobs=jobs)
        res = r.to_json()
        res["table"] = [[T.format().strip().replace("\n", "; ")] for T in r.winners]
        want = expected.GB_FILTER_COUNTS[(m, n)]
        if len(r.winners) != want:
            return res, {"expected_count": want, "got_count": len(r.winners)}
        figs = expected.GB_FIGURES.get((m, n))
        if figs is not None:
            drawn = {from_segments(cfg, segs) for segs in figs}
            if drawn != set(r.winners):
                return res, {"figure_mismatch": [T.to_json() for T in sorted(drawn ^ set(r.winners))]}
            res["matches_figure"] = True
        if (m, n) == (1, 3):
            excluded = placing_triangulation(cfg) not in r.winners
            res["placing_excluded"] = excluded
            if not excluded:
                return res, {"placing_excluded": False}
        return res, None

    return run


def expected_initial_family(p: int, n: int) -> MonomialIdeal:
    """``x_i^a x_{i+1}^(p-a)`` for ``0 <= a <= p`` and ``0 <= i < n``."""
    mons = []
    for i in range(n):
        for a in range(p + 1):
            e = [0] * (n + 1)
            e[i] += a
            e[i + 1] += p - a
            mons.append(tuple(e))
    return MonomialIdeal.from_monomials(n + 1, mons)


def _target_zobnin(extended: bool, jobs: int):
    rows = []
    bad = None
    for p in range(1, 5):
        for n in range(1, 5):
            gens = jet_generators(p, n)
            order = MonomialOrdering.degrevlex(gens.ring.space)
            rep = verify_groebner(gens.generators, order, paranoid=True)
            same = rep.is_gb and initial_ideal(gens.generators, order, rep) == expected_initial_family(p, n)
            rows.append([p, n, rep.is_gb, same, rep.pairs_checked])
            if not same and bad is None:
                bad = {"p": p, "n": n, "is_gb": rep.is_gb}
    return {"instances": rows, "table": rows}, bad


def _target_tm2(extended: bool, jobs: int):
    rows = []
    bad = None
    for m in (1, 2, 3):
        for p in (1, 2, 3):
            gens = jet_generators(p, (m, 2))
            order = MonomialOrdering.degrevlex(gens.ring.space)
            T = placing_triangulation(GridConfig(m, 2))
            ok_t = is_t_ordering(T, order, p)
            rep = verify_groebner(gens.generators, order, paranoid=True)
            rows.append(["revlex", m, p, ok_t, rep.is_gb])
            if not (ok_t and rep.is_gb) and bad is None:
                bad = {"ordering": "revlex", "m": m, "p": p, "t_ordering": ok_t, "is_gb": rep.is_gb}
    T22 = placing_triangulation(GridConfig(2, 2))
    w22 = t_ordering_weights(T22)
    for p in range(1, (8 if extended else 6) + 1):
        gens = jet_generators(p, (2, 2))
        ok_t = is_t_ordering(T22, w22, p)
        rep = verify_groebner(gens.generators, w22)
        rows.append(["w22", 2, p, ok_t, rep.is_gb])
        if not (ok_t and rep.is_gb) and bad is None:
            bad = {"ordering": "w22", "m": 2, "p": p, "t_ordering": ok_t, "is_gb": rep.is_gb}
    return {"instances": rows, "w22": list(w22.weights), "table": rows}, bad


def _target_non_gb(extended: bool, jobs: int):
    rows = []
    bad = None
    for p in (2, 3):
        gens = jet_generators(p, (1, 3))
        order = MonomialOrdering.degrevlex(gens.ring.space)
        rep = verify_groebner(gens.generators, order)
        i, j = (rep.failing_pair[0], rep.failing_pair[1]) if rep.failing_pair else (None, None)
        pair = {gens.labels[i], gens.labels[j]} if i is not None else set()
        want_pair = {(p - 1, 3), (p - 1, 0)}
        want_lcm = [0] * 8
        want_lcm[0] = want_lcm[3] = 1
        want_lcm[4] = p - 1
        got_lcm = list(rep.failing_lcm) if rep.failing_lcm else None
        ok = (not rep.is_gb) and pair == want_pair and got_lcm == want_lcm
        rows.append([p, rep.is_gb, sorted(pair), got_lcm])
        if not ok and bad is None:
            bad = {"p": p, "is_gb": rep.is_gb, "pair": sorted(pair), "lcm": got_lcm,
                   "expected_pair": sorted(want_pair), "expected_lcm": want_lcm}
    return {"instances": rows, "table": rows}, bad


def _target_iso(extended: bool, jobs: int):
    rows = []
    for p in range(1, 4):
        for n in range(1, 7):
            rows.append([p, f"chain {n}", check_iso_scaling(p, n)])
        for m in range(1, 4):
            for n in range(1, 4):
                rows.append([p, f"grid {m}x{n}", check_iso_scaling(p, (m, n))])
    bad = next(({"p": r[0], "shape": r[1]} for r in rows if not r[2]), None)
    return {"instances": rows, "table": rows}, bad


_TARGET_FUNCS = {
    "dim-seq-n6": _target_dim_seq,
    "ehrhart-p6": _target_ehrhart,
    "tri-counts": _target_tri_counts,
    "gb-search-2x2": _target_gb_search(2, 2),
    "gb-search-3x2": _target_gb_search(3, 2),
    "gb-search-1x3": _target_gb_search(1, 3),
    "gb-search-3x3": _target_gb_search(3, 3),
    "zobnin": _target_zobnin,
    "tm2-theorem": _target_tm2,
    "non-gb-witness": _target_non_gb,
    "iso-check": _target_iso,
}


def cmd_reproduce(target: str, extended: bool = False, jobs: int = 1) -> dict:
    if target not in _TARGET_FUNCS:
        raise CommandError(f"unknown target {target!r}")
    if target == "gb-search-3x3" and not extended:
        raise CommandError("gb-search-3x3 is an extended run; pass --extended")
    res, diff = _TARGET_FUNCS[target](extended, jobs)
    if diff is not None:
        raise CommandError(f"{target}: mismatch against the reference values", {"first_difference": diff, "result": res})
    return res


# ------------------------------------------------------------ plumbing


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def to_csv(report: dict) -> str:
    """Rows of ``result.table``; an empty or missing table gives an empty
    document."""
    table = (report.get("result") or {}).get("table") or []
    buf = io.StringIO(newline="")
    w = csv.writer(buf, lineterminator="\n")
    for row in table:
        w.writerow(row if isinstance(row, list) else [row])
    return buf.getvalue()


def _read_ints(path: str) -> list[int]:
    return [int(x) for x in Path(path).read_text(encoding="utf-8").replace(",", " ").split()]


def _ordering_for(args, space):
    if getattr(args, "weights", None):
        return MonomialOrdering.weighted(space, _read_ints(args.weights))
    if getattr(args, "order", "revlex") == "placing":
        if not space.is_grid:
            raise CommandError("placing weights need a grid (--m)")
        return t_ordering_weights(placing_triangulation(GridConfig(space.m, space.n)))
    return MonomialOrdering.degrevlex(space)


def _polytope(args):
    fam = args.family
    if fam == "Pn":
        return build_Pn(args.n)
    if fam == "Pm2":
        return build_P_from_triangulation(placing_triangulation(GridConfig(args.m, 2)))
    if fam.startswith("triangulation:"):
        if args.m is None or args.n is None:
            raise CommandError("triangulation files need --m and --n")
        cfg = GridConfig(args.m, args.n)
        return build_P_from_triangulation(parse_triangulation(Path(fam.split(":", 1)[1]).read_text(encoding="utf-8"), cfg))
    if fam.startswith("qstab:"):
        return qstab(Graph.from_edge_list_text(Path(fam.split(":", 1)[1]).read_text(encoding="utf-8")))
    raise CommandError(f"unknown polytope family {fam!r}")


def _check_points(cfg: GridConfig, extended: bool, cap: int):
    if cfg.size > cap and not extended:
        raise CommandError(f"{cfg.m}x{cfg.n} has {cfg.size} points; runs above {cap} points need --extended")


def _run(args) -> dict:
    c = args.cmd
    if c == "jets":
        if args.action == "gen":
            gens = jet_generators(args.p, _shape(args.n, args.m), args.route)
            order = _ordering_for(args, gens.ring.space)
            payload = {"labels_are": "(s-weight, t-weight)" if args.m is not None else "t-weight",
                       "generators": gens.to_json(order), "route": args.route}
            payload["table"] = [[json.dumps(g["index"]), len(g["terms"])] for g in payload["generators"]]
            return payload
        return cmd_dim(args.p, args.n, args.m, args.route)
    if c == "gb":
        gens = jet_generators(args.p, _shape(args.n, args.m))
        order = _ordering_for(args, gens.ring.space)
        rep = verify_groebner(gens.generators, order, paranoid=args.paranoid, full_scan=getattr(args, "full_scan", False))
        if args.action == "verify":
            out = rep.to_json(gens.labels)
            out["ordering"] = order.describe()
            if rep.failures:
                out["failures"] = [[list(gens.labels[i]) if isinstance(gens.labels[i], tuple) else gens.labels[i],
                                    list(gens.labels[j]) if isinstance(gens.labels[j], tuple) else gens.labels[j]]
                                   for i, j in rep.failures]
            out["table"] = [[rep.is_gb, rep.pairs_checked]]
            return out
        if not rep.is_gb:
            raise CommandError("not a Groebner basis; the initial ideal is not determined", rep.to_json(gens.labels))
        I = initial_ideal(gens.generators, order, rep)
        gensI = [list(e) for e in I.generators]
        return {"vars": [gens.ring.space.name(i) for i in range(gens.ring.space.size)],
                "generators": gensI, "standard_monomials": count_standard_monomials(I),
                "table": gensI}
    if c == "polytope":
        P = _polytope(args)
        if args.action == "count":
            v = lattice_count(P, args.t)
            return {"dim": P.dim, "t": args.t, "count": v, "table": [[args.t, v]]}
        L = ehrhart_interpolate(P)
        out = L.to_json()
        out["table"] = [out["coeffs"]]
        return out
    if c == "tri":
        cfg = GridConfig(args.m, args.n)
        if args.action == "enum":
            _check_points(cfg, args.extended, DEFAULT_SEARCH_POINTS)
            regs, total = enumerate_regular_unimodular(cfg, with_total=True)
            return {"count": len(regs), "unimodular": total,
                    "triangulations": [T.to_json() for T in regs],
                    "table": [[T.format().strip().replace("\n", "; ")] for T in regs]}
        if args.action == "placing":
            T = placing_triangulation(cfg)
        else:
            T = regular_from_heights(cfg, _read_ints(args.heights), args.hull)
        return {"triangles": T.to_json(), "text": T.format(),
                "table": [[line] for line in T.format().splitlines()]}
    if c == "search":
        cfg = GridConfig(args.m, args.n)
        _check_points(cfg, args.extended, DEFAULT_SEARCH_POINTS)
        weights = _read_ints(args.weights) if args.weights else None
        r = gb_triangulation_search(cfg, args.p, jobs=args.jobs, weights=weights)
        out = r.to_json()
        out["table"] = [[T.format().strip().replace("\n", "; ")] for T in r.winners]
        return out
    if c == "reproduce":
        return cmd_reproduce(args.target, args.extended, args.jobs)
    raise CommandError(f"unknown command {c!r}")


def _params(args) -> dict:
    skip = {"cmd", "action", "func", "out", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and k != "jobs"}


def build_parser() -> argparse.ArgumentParser:
    env_jobs = int(os.environ.get("DIFFJETS_JOBS", "1") or 1)
    ap = argparse.ArgumentParser(prog="diffjets", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=env_jobs, help="worker processes (env DIFFJETS_JOBS)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def shape(p):
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, default=None, help="second truncation order (grid case)")

    jets = sub.add_parser("jets").add_subparsers(dest="action", required=True)
    g = jets.add_parser("gen", parents=[common])
    shape(g)
    g.add_argument("--route", choices=("expansion", "differentiation"), default="expansion")
    g.add_argument("--order", choices=("revlex", "placing"), default="revlex")
    g.add_argument("--weights")
    d = jets.add_parser("dim", parents=[common])
    shape(d)
    d.add_argument("--route", choices=("groebner", "lattice", "both"), default="both")

    gb = sub.add_parser("gb").add_subparsers(dest="action", required=True)
    for name in ("verify", "initial"):
        q = gb.add_parser(name, parents=[common])
        shape(q)
        q.add_argument("--order", choices=("revlex", "placing"), default="revlex")
        q.add_argument("--weights", help="file with one weight per variable")
        q.add_argument("--paranoid", action="store_true", help="no pair-skipping criteria")
        if name == "verify":
            q.add_argument("--full-scan", action="store_true", help="record every failing pair")

    poly = sub.add_parser("polytope").add_subparsers(dest="action", required=True)
    for name in ("count", "ehrhart"):
        q = poly.add_parser(name, parents=[common])
        q.add_argument("--family", default="Pn", help="Pn | Pm2 | triangulation:FILE | qstab:FILE")
        q.add_argument("--n", type=int)
        q.add_argument("--m", type=int)
        if name == "count":
            q.add_argument("--t", type=int, required=True)

    tri = sub.add_parser("tri").add_subparsers(dest="action", required=True)
    for name in ("enum", "placing", "from-weights"):
        q = tri.add_parser(name, parents=[common])
        q.add_argument("--m", type=int, required=True)
        q.add_argument("--n", type=int, required=True)
        if name == "enum":
            q.add_argument("--extended", action="store_true")
        if name == "from-weights":
            q.add_argument("--heights", required=True)
            q.add_argument("--hull", choices=("lower", "upper"), default=LOWER)

    search = sub.add_parser("search").add_subparsers(dest="action", required=True)
    q = search.add_parser("gb-triangulations", parents=[common])
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--weights", help="use this weight vector for every triangulation")
    q.add_argument("--extended", action="store_true")

    r = sub.add_parser("reproduce", parents=[common])
    r.add_argument("target", choices=TARGETS)
    r.add_argument("--extended", action="store_true")

    e = sub.add_parser("emit")
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.add_argument("--out")
    e.add_argument("report", nargs="?", help="report file (default: stdin)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "emit":
        text = Path(args.report).read_text(encoding="utf-8") if args.report else sys.stdin.read()
        report = json.loads(text) if text.strip() else {}
        _write(_dump(report) if args.format == "json" else to_csv(report), args.out)
        return 0
    command = " ".join(x for x in (args.cmd, getattr(args, "action", None), getattr(args, "target", None)) if x)
    start = time.perf_counter()
    report = {"command": command, "parameters": _params(args)}
    code = 0
    try:
        report["result"] = _run(args)
        report["status"] = "pass"
    except (CommandError, ValueError) as exc:
        report["status"] = "fail"
        report["error"] = str(exc)
        detail = getattr(exc, "detail", None)
        if detail is not None:
            report["detail"] = detail
        code = 1
    report["wall_time"] = round(time.perf_counter() - start, 3)
    _write(_dump(report) if args.format == "json" else to_csv(report), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
