"""Command-line interface: ``insideout COMMAND PROBLEM [MODE] [options]``."""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import oracle, squares
from .ehrhart import intersection_poset, transversality
from .polytope import denominator, format_point, inside_out_vertices, points_to_json, vertices
from .ratfunc import format_constituent, format_rational

COMMANDS = ("count", "series", "quasipoly", "geometry", "verify", "export", "period-report")
FORMATS = ("text", "json", "csv", "bfile")


@dataclass
class Config:
    """Settings readable from a ``key = value`` file."""

    budget: int = oracle.DEFAULT_BUDGET
    jobs: int = 1
    bfile_offset: int = 1
    sequences: dict[tuple[str, str], str] = field(default_factory=lambda: dict(oracle.OEIS_SEQUENCES))
    offsets: dict[str, int] = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | None) -> "Config":
        cfg = cls()
        if not path:
            return cfg
        parser = configparser.ConfigParser()
        parser.optionxform = str  # keep key case
        parser.read_string("[main]\n" + Path(path).read_text())
        for key, value in parser["main"].items():
            if key == "budget":
                cfg.budget = int(value)
            elif key == "jobs":
                cfg.jobs = int(value)
            elif key == "bfile_offset":
                cfg.bfile_offset = int(value)
            elif key.startswith("offset."):
                cfg.offsets[key[len("offset."):]] = int(value)
            elif key.startswith("sequence."):
                problem, _, mode = key[len("sequence."):].rpartition(".")
                cfg.sequences[(problem, mode)] = value
            else:
                raise ValueError(f"unknown config key {key!r}")
        return cfg

    def offset_for(self, problem: str, mode: str) -> int:
        seq = self.sequences.get((problem, mode))
        return self.offsets.get(seq, self.bfile_offset) if seq else self.bfile_offset


def _fmt(v) -> str:
    return format_rational(Fraction(v))


def _dump_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="insideout", description="Exact counts of 3x3 magic-type squares.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("problem_pos", nargs="?", metavar="PROBLEM", help="one of: " + ", ".join(squares.PROBLEM_KEYS))
    ap.add_argument("mode_pos", nargs="?", metavar="MODE", help="one of: " + ", ".join(squares.MODE_KEYS))
    ap.add_argument("--problem")
    ap.add_argument("--mode")
    ap.add_argument("--t", type=int)
    ap.add_argument("--t-max", type=int, default=30)
    ap.add_argument("--terms", type=int, default=30)
    ap.add_argument("--format", choices=FORMATS, default="text")
    ap.add_argument("--budget", type=int)
    ap.add_argument("--jobs", type=int)
    ap.add_argument("--out")
    ap.add_argument("--config")
    return ap


def _resolve(ap: argparse.ArgumentParser, args) -> tuple[str, str]:
    problem = args.problem or args.problem_pos
    mode = args.mode or args.mode_pos or "all"
    if problem is None:
        ap.error("a problem key is required")
    if problem not in squares.PROBLEM_KEYS:
        ap.error(f"unknown problem {problem!r}; choose from {', '.join(squares.PROBLEM_KEYS)}")
    if mode not in squares.MODE_KEYS:
        ap.error(f"unknown mode {mode!r}; choose from {', '.join(squares.MODE_KEYS)}")
    return problem, mode


# --- commands ------------------------------------------------------------


def cmd_count(problem, mode, args, cfg) -> tuple[str, int]:
    if args.t is None or args.t < 1:
        raise _Usage("count needs --t with a positive value")
    n = squares.count(problem, mode, args.t)
    if args.format == "json":
        return _dump_json({"problem": problem, "mode": mode, "t": args.t, "count": n}), 0
    if args.format == "csv":
        return oracle.table_csv(("t", "count"), [(args.t, n)]), 0
    if args.format == "bfile":
        return f"{args.t} {n}\n", 0
    return f"{n}\n", 0


def _series_values(problem, mode, terms) -> list[int]:
    return squares.count_gf(problem, mode).coefficients(terms)[1:]


def cmd_series(problem, mode, args, cfg) -> tuple[str, int]:
    terms = args.terms
    values = _series_values(problem, mode, terms)
    gf = squares.count_gf(problem, mode)
    if args.format == "json":
        return _dump_json({"problem": problem, "mode": mode, "gf": str(gf), "gf_raw": gf.to_json(),
                           "coefficients": {str(t): v for t, v in enumerate(values, 1)}}), 0
    if args.format == "csv":
        return oracle.table_csv(("t", "count"), enumerate(values, 1)), 0
    if args.format == "bfile":
        return oracle.bfile(values[cfg.offset_for(problem, mode) - 1:], cfg.offset_for(problem, mode)), 0
    lines = [f"{problem} {mode}", f"gf = {gf}"]
    lines += [f"{t:>4} {v}" for t, v in enumerate(values, 1)]
    return "\n".join(lines) + "\n", 0


def _quasi_data(problem, mode) -> dict:
    q = squares.quasipolynomial(problem, mode)
    return {
        "problem": problem,
        "mode": mode,
        "period": q.period,
        "degree": q.degree,
        "principal_constant": _fmt(q.principal[0]),
        "constituents": [[_fmt(c) for c in cons] for cons in q.constituents],
    }


def cmd_quasipoly(problem, mode, args, cfg) -> tuple[str, int]:
    q = squares.quasipolynomial(problem, mode)
    if args.format == "json":
        return _dump_json(_quasi_data(problem, mode)), 0
    if args.format in ("csv", "bfile"):
        header = ["residue"] + [f"c{k}" for k in range(q.degree + 1)]
        rows = [[r] + [_fmt(c) for c in cons] for r, cons in enumerate(q.constituents)]
        return oracle.table_csv(header, rows), 0
    lines = [
        f"{problem} {mode}",
        f"period {q.period}",
        f"principal constant {_fmt(q.principal[0])}",
    ]
    lines += [f"t = {r} mod {q.period}: {format_constituent(c)}" for r, c in enumerate(q.constituents)]
    return "\n".join(lines) + "\n", 0


def _geometry_data(problem) -> dict:
    inst = squares.instance(problem)
    geom = inst.reduced_geometry
    verts = vertices(geom.polytope)
    io_verts = inside_out_vertices(inst.geometry)
    poset = intersection_poset(geom)
    report = transversality(geom)
    return {
        "problem": problem,
        "dim": geom.polytope.dim,
        "vertices": [[_fmt(c) for c in v] for v in verts],
        "inside_out_vertices": [[_fmt(c) for c in v] for v in io_verts],
        "denominator": denominator(io_verts),
        "arrangement_size": len(geom.arrangement),
        "poset": [
            {"label": u.label, "codim": u.codim, "moebius": poset.moebius[u]} for u in poset.elements
        ],
        "moebius_alternating": poset.is_alternating(),
        "transverse": report.transverse,
        "plan": [{"face": e.name, "weight": e.weight} for e in inst.plan],
    }


def cmd_geometry(problem, mode, args, cfg) -> tuple[str, int]:
    data = _geometry_data(problem)
    if args.format == "json":
        return _dump_json(data), 0
    if args.format in ("csv", "bfile"):
        rows = [(e["label"], e["codim"], e["moebius"]) for e in data["poset"]]
        return oracle.table_csv(("flat", "codim", "moebius"), rows), 0
    inst = squares.instance(problem)
    lines = [f"{problem}: reduced polytope of dimension {data['dim']}", "vertices:"]
    lines += ["  " + format_point(v) for v in vertices(inst.reduced_geometry.polytope)]
    lines.append(f"inside-out vertices: {len(data['inside_out_vertices'])}, denominator {data['denominator']}")
    lines.append(f"intersection poset: {len(data['poset'])} flats, "
                 f"{data['arrangement_size']} hyperplanes, alternating Moebius: {data['moebius_alternating']}")
    lines += [f"  {e['label']:>6} codim {e['codim']} mu {e['moebius']}" for e in data["poset"]]
    lines.append("faces: " + ", ".join(f"{e['face']} x{e['weight']}" for e in data["plan"]))
    return "\n".join(lines) + "\n", 0


def verify_rows(problem, mode, t_max: int, budget: int, jobs: int = 1) -> list[tuple[int, int, int]]:
    """``(t, gf coefficient, oracle count)`` for ``t = 1..t_max``."""
    pid = squares.as_problem(problem)
    gf = _series_values(problem, mode, t_max)
    if t_max > budget:
        raise oracle.BudgetExceeded()
    oracle.counts_upto(pid.family, pid.parameter, t_max, mode)  # builds the shared table once

    def one(t):
        return oracle.enumerate_count(pid.family, pid.parameter, t, mode, budget=budget)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        counts = list(pool.map(one, range(1, t_max + 1)))
    return [(t, gf[t - 1], counts[t - 1]) for t in range(1, t_max + 1)]


def cmd_verify(problem, mode, args, cfg) -> tuple[str, int]:
    rows = verify_rows(problem, mode, args.t_max, cfg.budget, cfg.jobs)
    shown = [r for r in rows if r[1] or r[2]]
    bad = [r for r in rows if r[1] != r[2]]
    status = 1 if bad else 0
    if args.format == "json":
        data = {"problem": problem, "mode": mode, "t_max": args.t_max, "mismatches": len(bad),
                "rows": [{"t": t, "gf": g, "oracle": o, "match": g == o} for t, g, o in rows]}
        return _dump_json(data), status
    if args.format in ("csv", "bfile"):
        return oracle.table_csv(("t", "gf", "oracle", "match"), [(t, g, o, int(g == o)) for t, g, o in rows]), status
    lines = [f"{problem} {mode}, t = 1..{args.t_max}", f"{'t':>4} {'gf':>14} {'oracle':>14}"]
    lines += [f"{t:>4} {g:>14} {o:>14}{'' if g == o else '  MISMATCH'}" for t, g, o in shown]
    lines.append(f"{len(shown) - sum(1 for r in bad if r in shown)} matched rows, {len(bad)} mismatches")
    return "\n".join(lines) + "\n", status


def cmd_export(problem, mode, args, cfg) -> tuple[str, int]:
    t_max = args.t_max
    values = _series_values(problem, mode, t_max)
    if args.format == "bfile":
        off = cfg.offset_for(problem, mode)
        return oracle.bfile(values[off - 1:], off), 0
    if args.format == "csv":
        return oracle.table_csv(("t", "count"), enumerate(values, 1)), 0
    gf = squares.count_gf(problem, mode)
    data = {
        "problem": problem,
        "mode": mode,
        "sequence": cfg.sequences.get((problem, mode)),
        "gf": str(gf),
        "gf_raw": gf.to_json(),
        "quasipolynomial": _quasi_data(problem, mode),
        "counts": values,
    }
    return _dump_json(data), 0


def cmd_period_report(problem, mode, args, cfg) -> tuple[str, int]:
    rep = squares.period_report(problem, mode)
    if args.format == "json":
        return _dump_json(rep.to_json()), 0
    if args.format in ("csv", "bfile"):
        rows = [
            (k, p, w, _fmt(r))
            for k, (p, w, r) in enumerate(zip(rep.coefficient_periods, rep.weak_coefficient_periods, rep.ratios))
        ]
        return oracle.table_csv(("k", "period", "weak_period", "ratio"), rows), 0
    lines = [
        f"{problem} {mode}",
        f"denominator {rep.denominator}, period {rep.period}, weak period {rep.weak_period}",
        f"{'k':>3} {'p_k':>6} {'weak':>6} {'ratio':>8}",
    ]
    for k, (p, w, r) in enumerate(zip(rep.coefficient_periods, rep.weak_coefficient_periods, rep.ratios)):
        lines.append(f"{k:>3} {p:>6} {w:>6} {_fmt(r):>8}")
    return "\n".join(lines) + "\n", 0


HANDLERS = {
    "count": cmd_count,
    "series": cmd_series,
    "quasipoly": cmd_quasipoly,
    "geometry": cmd_geometry,
    "verify": cmd_verify,
    "export": cmd_export,
    "period-report": cmd_period_report,
}


class _Usage(Exception):
    pass


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    problem, mode = _resolve(ap, args)
    try:
        cfg = Config.load(args.config)
    except (OSError, ValueError) as exc:
        ap.error(f"bad config: {exc}")
    if args.budget is not None:
        cfg.budget = args.budget
    if args.jobs is not None:
        cfg.jobs = args.jobs
    try:
        text, status = HANDLERS[args.command](problem, mode, args, cfg)
    except _Usage as exc:
        ap.error(str(exc))
    except (ValueError, RuntimeError) as exc:
        print(f"insideout: error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
