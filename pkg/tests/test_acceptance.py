"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import time
from fractions import Fraction as F

import pytest

import reference as ref
from insideout import oracle, squares
from insideout.ehrhart import (
    intersection_poset,
    open_series_reciprocity_first,
    open_series_reciprocity_last,
)
from insideout.polytope import denominator, inside_out_vertices
from insideout.ratfunc import to_quasipolynomial


def _strip(p) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


class Gate:
    """Collects failed checks for one criterion and reports a single line."""

    def __init__(self, number: int, title: str, limit: float | None = None):
        self.number, self.title, self.limit = number, title, limit
        self.failures: list[str] = []
        self.start = time.perf_counter()

    def check(self, cond: bool, what: str) -> None:
        if not cond:
            self.failures.append(what)

    def equal(self, got, want, what: str) -> None:
        if got != want:
            self.failures.append(f"{what}: got {got}, want {want}")

    def finish(self, capsys) -> None:
        elapsed = time.perf_counter() - self.start
        if self.limit is not None and elapsed >= self.limit:
            self.failures.append(f"runtime {elapsed:.1f}s exceeds {self.limit}s")
        status = "PASS" if not self.failures else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {self.number}: {self.title} ({elapsed:.1f}s)")
            for f in self.failures[:10]:
                print(f"    {f}")
        assert not self.failures, self.failures


def _table_check(g: Gate, problem, mode, table, what):
    for t, want in table.items():
        g.equal(squares.count(problem, mode, t), want, f"{what}({t})")


def test_criterion_01_magic_cubic(capsys):
    g = Gate(1, "magic cubic gf, table, constituents, period 12", limit=5)
    g.equal(squares.count_gf("magic-cubic"), ref.MAGIC_CUBIC_GF, "gf")
    _table_check(g, "magic-cubic", "all", ref.MAGIC_CUBIC_TABLE, "M_c")
    q = squares.quasipolynomial("magic-cubic")
    g.equal(q.period, 12, "period")
    for r in range(12):
        g.equal(_strip(q.constituents[r]), _strip(ref.MAGIC_CUBIC_CONSTITUENTS[r]), f"constituent {r}")
    g.finish(capsys)


def test_criterion_02_magic_affine(capsys):
    g = Gate(2, "magic affine gf, table, constituents, period 18", limit=5)
    g.equal(squares.count_gf("magic-affine"), ref.MAGIC_AFFINE_GF, "gf")
    _table_check(g, "magic-affine", "all", ref.MAGIC_AFFINE_TABLE, "M_a")
    q = squares.quasipolynomial("magic-affine")
    g.equal(q.period, 18, "period")
    for r in range(18):
        g.equal(_strip(q.constituents[r]), _strip(ref.MAGIC_AFFINE_CONSTITUENTS[r]), f"constituent {r}")
    g.check(all(squares.count("magic-affine", "all", t) == 0 for t in range(1, 200) if t % 3), "nonzero off 3Z")
    g.finish(capsys)


def test_criterion_03_reduced_magic(capsys):
    g = Gate(3, "reduced magic gfs, constituents, R_mc(2k) = R_ma(3k)")
    g.equal(squares.count_gf("magic-cubic", "reduced-sym"), ref.MAGIC_REDUCED_CUBIC_SYM_GF, "r_mc gf")
    g.equal(squares.count_gf("magic-affine", "reduced-sym"), ref.MAGIC_REDUCED_AFFINE_SYM_GF, "r_ma gf")
    qc = squares.quasipolynomial("magic-cubic", "reduced")
    qa = squares.quasipolynomial("magic-affine", "reduced")
    g.equal(qc.period, 12, "R_mc period")
    g.equal(qa.period, 18, "R_ma period")
    for r in range(12):
        g.equal(_strip(qc.constituents[r]), _strip(ref.MAGIC_REDUCED_CUBIC_CONSTITUENTS[r]), f"R_mc constituent {r}")
    for r in range(18):
        g.equal(_strip(qa.constituents[r]), _strip(ref.MAGIC_REDUCED_AFFINE_CONSTITUENTS[r]), f"R_ma constituent {r}")
    rc = squares.count_gf("magic-cubic", "reduced").coefficients(100)
    ra = squares.count_gf("magic-affine", "reduced").coefficients(150)
    for k in range(1, 51):
        g.equal(rc[2 * k], ra[3 * k], f"R_mc({2 * k}) vs R_ma({3 * k})")
    g.finish(capsys)


def test_criterion_04_semimagic_cubic(capsys):
    g = Gate(4, "semimagic cubic poset, vertices, gf, constituents, period 60", limit=60)
    inst = squares.instance("semimagic-cubic")
    poset = intersection_poset(inst.geometry)
    g.equal(len(poset.elements), 17, "poset size")
    g.equal([len(poset.by_codim(k)) for k in range(4)], [1, 7, 8, 1], "flats by codimension")
    for u in poset.elements:
        want = 2 if u.label == "356" else (-1) ** u.codim
        g.equal(poset.moebius[u], want, f"mu({u.label})")
    verts = inside_out_vertices(inst.geometry)
    g.equal(set(verts), ref.SEMI_CUBIC_INSIDE_OUT_VERTICES, "inside-out vertices")
    g.equal(denominator(verts), 60, "denominator")
    g.equal(squares.count_gf("semimagic-cubic"), ref.SEMI_CUBIC_GF, "gf")
    _table_check(g, "semimagic-cubic", "all", ref.SEMI_CUBIC_TABLE, "S_c")
    q = squares.quasipolynomial("semimagic-cubic")
    g.equal(q.period, 60, "period")
    for r in range(60):
        c = q.constituents[r]
        g.equal(c[5:], (F(3, 10),), f"t^5 at {r}")
        g.equal(c[4], F(-75, 8), f"t^4 at {r}")
        g.equal(c[3], F(331, 3), f"t^3 at {r}")
        g.equal(c[2], ref.SEMI_CUBIC_T2[r % 2], f"t^2 at {r}")
        g.equal(c[1], F(ref.SEMI_CUBIC_C1[r % 6]), f"c1 at {r}")
    for r, c0 in ref.SEMI_CUBIC_C0.items():
        g.equal(-q.constituents[r][0], F(c0), f"c0 at {r}")
    g.equal(q.principal, ref.SEMI_CUBIC_PRINCIPAL, "principal constituent")
    g.finish(capsys)


def test_criterion_05_semimagic_affine(capsys):
    g = Gate(5, "semimagic affine gf, 840 constituents, S_7 decomposition", limit=180)
    g.equal(squares.inside_out_denominator("semimagic-affine"), 840, "denominator")
    gf = squares.count_gf("semimagic-affine")
    g.equal(gf, ref.SEMI_AFFINE_GF, "gf")
    _table_check(g, "semimagic-affine", "all", ref.SEMI_AFFINE_TABLE, "S_a")
    q = squares.quasipolynomial("semimagic-affine")
    g.equal(q.period, 840, "period")
    g.equal(q.principal, ref.SEMI_AFFINE_PRINCIPAL, "principal constituent")
    g.check(all(c[4] == F(1, 8) and c[3] == F(-9, 2) for c in q.constituents), "leading terms t^4/8 - 9t^3/2")
    tr = squares.truncated_quasipolynomial("semimagic-affine")
    g.equal(tr.period, 120, "truncated period")
    for r in range(tr.period):
        c = tr.constituents[r]
        g.equal(c[2], ref.SEMI_AFFINE_A2[r % 6], f"a2 at {r}")
        g.equal(-c[1], ref.SEMI_AFFINE_A1[r % 12], f"a1 at {r}")
    for r, a0 in ref.SEMI_AFFINE_A0.items():
        g.equal(tr.constituents[r][0], a0, f"a0 at {r}")
    coeffs = gf.coefficients(1700)
    for t in range(1, 1701):
        if tr(t) - 72 * squares.s7_correction(t) != coeffs[t]:
            g.failures.append(f"S_a({t}) != truncated - 72 S_7")
            break
    g.finish(capsys)


def test_criterion_06_magilatin_cubic(capsys):
    g = Gate(6, "magilatin cubic facets, gf, symmetry-type gf, constant 948, period 60")
    from insideout.ehrhart import closed_inside_out_series

    inst = squares.instance("magilatin-cubic")
    for e in inst.plan:
        if e.name in ref.MAGILATIN_CUBIC_FACE_CLOSED:
            got = closed_inside_out_series(e.geometry)
            g.equal(got, ref.MAGILATIN_CUBIC_FACE_CLOSED[e.name], f"closed sum {e.name}")
    g.equal(squares.count_gf("magilatin-cubic"), ref.MAGILATIN_CUBIC_GF, "gf")
    g.equal(squares.count_gf("magilatin-cubic", "sym"), ref.MAGILATIN_CUBIC_SYM_GF, "sym gf")
    _table_check(g, "magilatin-cubic", "all", ref.MAGILATIN_CUBIC_TABLE, "L_c")
    _table_check(g, "magilatin-cubic", "sym", ref.MAGILATIN_CUBIC_SYM_TABLE, "sym L_c")
    g.equal(squares.principal_constant("magilatin-cubic"), 948, "principal constant")
    g.equal(squares.quasipolynomial("magilatin-cubic").period, 60, "period")
    g.finish(capsys)


def test_criterion_07_magilatin_affine(capsys):
    g = Gate(7, "magilatin affine gf, table, symmetry-type principal constituent, period 840")
    g.equal(squares.count_gf("magilatin-affine"), ref.MAGILATIN_AFFINE_GF, "gf")
    _table_check(g, "magilatin-affine", "all", ref.MAGILATIN_AFFINE_TABLE, "L_a")
    qs = squares.quasipolynomial("magilatin-affine", "sym")
    g.equal(qs.principal, ref.MAGILATIN_AFFINE_SYM_PRINCIPAL, "sym principal constituent")
    g.equal(squares.quasipolynomial("magilatin-affine").period, 840, "period")
    g.finish(capsys)


def test_criterion_08_oracle_equivalence(capsys):
    g = Gate(8, "brute-force counts equal gf coefficients, every problem and mode")
    for pid in squares.ALL_PROBLEMS:
        t_max = 60 if pid.family == "magic" else 40
        for mode in squares.MODE_KEYS:
            brute = oracle.counts_upto(pid.family, pid.parameter, t_max, mode)
            series = squares.count_gf(pid, mode).coefficients(t_max)
            bad = [t for t in range(1, t_max + 1) if brute[t] != series[t]]
            g.check(not bad, f"{pid.key} {mode}: mismatches at {bad[:5]}")
    g.finish(capsys)


def test_criterion_09_weak_counts(capsys):
    g = Gate(9, "weak counts match the weak polynomials")
    for t in range(1, 19):
        want = sum(c * t**k for k, c in enumerate(ref.WEAK_SEMI_CUBIC)) / 10
        g.equal(oracle.weak_count("semimagic", "cubic", t), want, f"weak semimagic cubic({t})")
    for t in range(1, 21):
        want = sum(c * t**k for k, c in enumerate(ref.WEAK_SEMI_AFFINE)) / 8
        g.equal(oracle.weak_count("semimagic", "affine", t), want, f"weak semimagic affine({t})")
    for t in range(3, 31, 3):
        want = sum(c * t**k for k, c in enumerate(ref.WEAK_MAGIC_AFFINE)) / 9
        g.equal(oracle.weak_count("magic", "affine", t), want, f"weak magic affine({t})")
    # the same polynomials from the polytopes
    g.equal(squares.weak_quasipolynomial("semimagic-cubic").principal, tuple(c / 10 for c in ref.WEAK_SEMI_CUBIC),
            "weak semimagic cubic from polytope")
    g.equal(squares.weak_quasipolynomial("semimagic-affine").principal, tuple(c / 8 for c in ref.WEAK_SEMI_AFFINE),
            "weak semimagic affine from polytope")
    g.equal(squares.weak_quasipolynomial("magic-affine"), to_quasipolynomial(ref.WEAK_MAGIC_AFFINE_GF),
            "weak magic affine from polytope")
    g.finish(capsys)


def test_criterion_10_structure(capsys):
    g = Gate(10, "constant leading coefficients, period = denominator, route equivalence")
    lead = {"cubic": F(3, 10), "affine": F(1, 8)}
    for pid in squares.ALL_PROBLEMS:
        for mode in squares.MODE_KEYS:
            q = squares.quasipolynomial(pid, mode)
            nonzero = {c[q.degree] for c in q.constituents if any(c)}
            g.check(len(nonzero) == 1, f"{pid.key} {mode}: leading coefficient varies")
            if pid.family != "magic" and mode in ("all", "sym"):
                want = lead[pid.parameter] / (72 if mode == "sym" else 1)
                g.equal(nonzero, {want}, f"{pid.key} {mode} leading coefficient")
        g.equal(squares.quasipolynomial(pid).period, squares.inside_out_denominator(pid), f"{pid.key} period")
        g.equal(squares.principal_constant(pid), ref.PRINCIPAL_CONSTANTS[pid.key], f"{pid.key} principal constant")
        inst = squares.instance(pid)
        geoms = {inst.geometry, inst.reduced_geometry} | {e.geometry for e in inst.plan}
        for geom in geoms:
            g.check(open_series_reciprocity_first(geom) == open_series_reciprocity_last(geom),
                    f"{pid.key}: inversion routes differ")
    g.finish(capsys)
