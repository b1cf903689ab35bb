"""The six 3x3 counting problems as inside-out polytopes.

Each problem is counted through reduced squares (minimum entry 0) in a
normal form.  Reduced counts come from open inside-out series on a small
polytope (or on some of its faces, for magilatin squares); counts of all
squares follow by one convolution:

* cubic counts (entries in ``(0, t)``) multiply by ``x^2 / (1-x)^2``,
* affine counts (magic sum ``t``) multiply by ``x^3 / (1-x^3)``.

Semimagic and magilatin squares share one normal form: with parameters
``a, b, g, d`` the reduced square is ::

    0        b            2a+b+g
    a+b      a+b+g-d      d
    a+b+g    a+d          b-d

with largest entry ``2a+b+g`` and line sum ``2a+2b+g``.  The coordinates are
``(x, y, z) = (a, b, d)`` scaled by the largest entry (cubic) or by the line
sum (affine).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ehrhart import ehrhart_series, intersection_poset, open_inside_out_series, open_series_via_reciprocity
from .polytope import HPolytope, Hyperplane, InsideOutPolytope, denominator, hyperplane, inside_out_vertices
from .ratfunc import Quasipolynomial, RationalGF, convolve_magic_sum, convolve_upper_bound, to_quasipolynomial

FAMILIES = ("magic", "semimagic", "magilatin")
PARAMETERS = ("cubic", "affine")


@dataclass(frozen=True, order=True)
class ProblemId:
    family: str
    parameter: str

    def __post_init__(self):
        if self.family not in FAMILIES or self.parameter not in PARAMETERS:
            raise ValueError(f"unknown problem {self.family}-{self.parameter}")

    @property
    def key(self) -> str:
        return f"{self.family}-{self.parameter}"

    @classmethod
    def parse(cls, key: str) -> "ProblemId":
        family, _, parameter = key.partition("-")
        return cls(family, parameter)

    def __str__(self):
        return self.key


ALL_PROBLEMS = tuple(ProblemId(f, p) for f in FAMILIES for p in PARAMETERS)
PROBLEM_KEYS = tuple(p.key for p in ALL_PROBLEMS)


class CountMode(enum.Enum):
    ALL = "all"
    SYM = "sym"
    REDUCED = "reduced"
    REDUCED_SYM = "reduced-sym"

    @property
    def reduced(self) -> bool:
        return self in (CountMode.REDUCED, CountMode.REDUCED_SYM)

    @property
    def symmetry_types(self) -> bool:
        return self in (CountMode.SYM, CountMode.REDUCED_SYM)


MODE_KEYS = tuple(m.value for m in CountMode)


def as_problem(p) -> ProblemId:
    return p if isinstance(p, ProblemId) else ProblemId.parse(p)


def as_mode(m) -> CountMode:
    return m if isinstance(m, CountMode) else CountMode(m)


@dataclass(frozen=True)
class PlanEntry:
    """One face of the reduced polytope, counted ``weight`` times per point
    (the orbit size ``72 / |stabilizer|``, or 8 for magic squares)."""

    name: str
    geometry: InsideOutPolytope
    weight: int


@dataclass(frozen=True)
class ProblemInstance:
    id: ProblemId
    geometry: InsideOutPolytope
    reduced_geometry: InsideOutPolytope
    plan: tuple[PlanEntry, ...]
    convolution: str  # "upper-bound" or "magic-sum"
    multiplier: int | None = None  # symmetry group order, when every orbit is full

    def convolve(self, f: RationalGF) -> RationalGF:
        return convolve_upper_bound(f) if self.convolution == "upper-bound" else convolve_magic_sum(f)


def _h(*coeffs, rhs=0) -> Hyperplane:
    return hyperplane(coeffs, Fraction(rhs))


def magic_geometry(parameter: str) -> InsideOutPolytope:
    """Normal magic squares: center ``g``, corners ``g + a``, ``g + b``, with
    ``a > b > 0``, ``a != 2b`` and minimum ``g - a - b > 0``.  Coordinates
    ``(a, b, g)`` over the bound (cubic) or the magic sum (affine)."""
    ineqs = (_h(0, -1, 0), _h(-1, 1, 0), _h(1, 1, -1))
    if parameter == "cubic":
        p = HPolytope(3, (), ineqs + (_h(1, 1, 1, rhs=1),))
    else:
        p = HPolytope(3, (_h(0, 0, 3, rhs=1),), ineqs)
    return InsideOutPolytope(p, (_h(1, -2, 0),))


def reduced_magic_geometry(parameter: str) -> InsideOutPolytope:
    """Reduced normal magic squares (``g = a + b``): a segment in ``(a, b)``."""
    eq = _h(2, 2, rhs=1) if parameter == "cubic" else _h(3, 3, rhs=1)
    p = HPolytope(2, (eq,), (_h(0, -1), _h(-1, 1)))
    return InsideOutPolytope(p, (_h(1, -2),))


def normal_form_geometry(parameter: str) -> InsideOutPolytope:
    """Reduced normal semimagic squares: the tetrahedron Q and seven planes.

    Inequality order: ``x >= 0``, ``y >= 0``, ``z >= 0``, ``z <= y``, ``g >= 0``.
    """
    if parameter == "cubic":
        # g = 1 - 2x - y
        top = _h(2, 1, 0, rhs=1)
        planes = (
            _h(1, -1, 2),
            _h(0, 1, -2),
            _h(2, 0, 2, rhs=1),
            _h(1, 0, 2, rhs=1),
            _h(1, -1, 1),
            _h(1, 1, 1, rhs=1),
            _h(2, 1, 1, rhs=1),
        )
    else:
        # g = 1 - 2x - 2y
        top = _h(2, 2, 0, rhs=1)
        planes = (
            _h(1, -1, 2),
            _h(0, 1, -2),
            _h(2, 1, 2, rhs=1),
            _h(1, 1, 2, rhs=1),
            _h(1, -1, 1),
            _h(1, 2, 1, rhs=1),
            _h(2, 2, 1, rhs=1),
        )
    q = HPolytope(3, (), (_h(-1, 0, 0), _h(0, -1, 0), _h(0, 0, -1), _h(0, -1, 1), top))
    return InsideOutPolytope(q, planes)


def normal_form_square(parameter: str, x: Fraction, y: Fraction, z: Fraction) -> list[list[Fraction]]:
    """The reduced normal square at a point of Q (scaled so the bound or the
    magic sum is 1)."""
    a, b, d = x, y, z
    g = 1 - 2 * a - b if parameter == "cubic" else 1 - 2 * a - 2 * b
    return [
        [Fraction(0), b, 2 * a + b + g],
        [a + b, a + b + g - d, d],
        [a + b + g, a + d, b - d],
    ]


# magilatin faces of Q by tight inequalities, with their orbit sizes 72/|F|
MAGILATIN_FACES = (("Q", (), 72), ("OAB", (2,), 36), ("OAC", (3,), 36), ("OBC", (0,), 36), ("OB", (0, 2), 12))


@lru_cache(maxsize=None)
def instance(problem) -> ProblemInstance:
    pid = as_problem(problem)
    conv = "upper-bound" if pid.parameter == "cubic" else "magic-sum"
    if pid.family == "magic":
        reduced = reduced_magic_geometry(pid.parameter)
        return ProblemInstance(
            pid, magic_geometry(pid.parameter), reduced, (PlanEntry("Q", reduced, 8),), conv, 8
        )
    q = normal_form_geometry(pid.parameter)
    if pid.family == "semimagic":
        return ProblemInstance(pid, q, q, (PlanEntry("Q", q, 72),), conv, 72)
    plan = tuple(PlanEntry(name, q.on_face(tight), w) for name, tight, w in MAGILATIN_FACES)
    return ProblemInstance(pid, q, q, plan, conv, None)


def face_series(problem, name: str) -> RationalGF:
    """Open inside-out series of one plan entry (a reduced symmetry-type count)."""
    inst = instance(problem)
    for e in inst.plan:
        if e.name == name:
            return open_inside_out_series(e.geometry)
    raise KeyError(name)


@lru_cache(maxsize=None)
def count_gf(problem, mode="all") -> RationalGF:
    """Generating function ``sum_{t>0} N(t) x^t`` of one problem and mode."""
    inst = instance(problem)
    mode = as_mode(mode)
    reduced = RationalGF.zero()
    for e in inst.plan:
        w = 1 if mode.symmetry_types else e.weight
        reduced = reduced + open_inside_out_series(e.geometry).scale(w)
    return reduced if mode.reduced else inst.convolve(reduced)


def direct_gf(problem) -> RationalGF:
    """Magic squares counted directly on the full normal-form polytope,
    without the reduction (a cross-check of ``count_gf(.., "all")``)."""
    inst = instance(problem)
    if inst.id.family != "magic":
        raise ValueError("direct route only for magic squares")
    return open_inside_out_series(inst.geometry).scale(8)


@lru_cache(maxsize=None)
def quasipolynomial(problem, mode="all") -> Quasipolynomial:
    return to_quasipolynomial(count_gf(problem, mode))


def count(problem, mode, t: int) -> int:
    if t < 1:
        raise ValueError("t must be positive")
    return count_gf(problem, mode).coefficient(t)


def principal_constant(problem) -> int:
    """Absolute constant term of the principal constituent of the all-squares count."""
    c = quasipolynomial(problem, "all").principal[0]
    if c.denominator != 1:
        raise ValueError("principal constant is not an integer")
    return abs(int(c))


def inside_out_denominator(problem) -> int:
    inst = instance(problem)
    return denominator(inside_out_vertices(inst.geometry))


# --- the seven-correction view for affine counts -------------------------

S7_RESIDUES = frozenset({10, 13, 16, 17, 19, 20})


def s7_correction(t: int) -> int:
    """``floor((t-1)/21)`` plus one on six residues mod 21."""
    if t < 1:
        raise ValueError("t must be positive")
    return (t - 1) // 21 + (1 if t % 21 in S7_RESIDUES else 0)


def s7_quasipolynomial() -> Quasipolynomial:
    """``S_7`` as a quasipolynomial of period 21: ``(t - tbar)/21 + s_7(t)``
    with ``tbar`` in ``1..21`` the residue of ``t``."""
    cons = []
    for r in range(21):
        tbar = r or 21
        cons.append((Fraction(-tbar, 21) + (1 if r in S7_RESIDUES else 0), Fraction(1, 21)))
    return Quasipolynomial(21, tuple(cons))


def truncated_quasipolynomial(problem, mode="all") -> Quasipolynomial:
    """``N(t) + w S_7(t)``: an affine count with the ``1/(1-x^7)``
    contribution split off (``w`` is 72, or 1 for symmetry types)."""
    pid, mode = as_problem(problem), as_mode(mode)
    if pid.parameter != "affine" or pid.family == "magic":
        raise ValueError("the seven-correction applies to affine semimagic and magilatin counts")
    w = 1 if mode.symmetry_types else 72
    return quasipolynomial(pid, mode) + s7_quasipolynomial().scale(w)


# --- weak counts ---------------------------------------------------------


def _cell(i: int, j: int) -> int:
    return 3 * i + j


def _line_vectors(magic: bool) -> list[list[int]]:
    lines = []
    for i in range(3):
        lines.append([1 if c // 3 == i else 0 for c in range(9)])
    for j in range(3):
        lines.append([1 if c % 3 == j else 0 for c in range(9)])
    if magic:
        lines.append([1 if c in (0, 4, 8) else 0 for c in range(9)])
        lines.append([1 if c in (2, 4, 6) else 0 for c in range(9)])
    return lines


def weak_polytope(problem) -> HPolytope:
    """All 3x3 squares with the problem's line conditions and no distinctness,
    in ``R^9``: entries in ``[0, 1]`` with equal line sums (cubic) or
    nonnegative with every line sum 1 (affine)."""
    pid = as_problem(problem)
    lines = _line_vectors(pid.family == "magic")
    eye = [[1 if c == k else 0 for c in range(9)] for k in range(9)]
    lower = tuple(_h(*[-v for v in row]) for row in eye)
    if pid.parameter == "cubic":
        first = lines[0]
        eqs = tuple(_h(*[a - b for a, b in zip(line, first)]) for line in lines[1:])
        upper = tuple(_h(*row, rhs=1) for row in eye)
        return HPolytope(9, eqs, lower + upper)
    eqs = tuple(_h(*line, rhs=1) for line in lines)
    return HPolytope(9, eqs, lower)


@lru_cache(maxsize=None)
def weak_open_gf(problem) -> RationalGF:
    p = weak_polytope(problem)
    return open_series_via_reciprocity(ehrhart_series(p), p.dim)


def weak_quasipolynomial(problem) -> Quasipolynomial:
    """Counts of squares with the line conditions only (entries may repeat)."""
    return to_quasipolynomial(weak_open_gf(problem))


# --- period report -------------------------------------------------------


@dataclass(frozen=True)
class PeriodReport:
    problem: str
    mode: str
    denominator: int
    period: int
    weak_period: int
    degree: int
    coefficient_periods: tuple[int, ...]  # p_k for k = 0..degree
    weak_coefficient_periods: tuple[int, ...]

    @property
    def ratios(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, b) for a, b in zip(self.coefficient_periods, self.weak_coefficient_periods))

    def to_json(self) -> dict:
        return {
            "problem": self.problem,
            "mode": self.mode,
            "denominator": self.denominator,
            "period": self.period,
            "weak_period": self.weak_period,
            "degree": self.degree,
            "coefficient_periods": list(self.coefficient_periods),
            "weak_coefficient_periods": list(self.weak_coefficient_periods),
            "ratios": [str(r) for r in self.ratios],
        }


def period_report(problem, mode="all") -> PeriodReport:
    """Per-coefficient periods of the strong and weak quasipolynomials.

    Exploratory data only: nothing here is asserted about how the two sets
    of periods relate.
    """
    pid, mode = as_problem(problem), as_mode(mode)
    strong = quasipolynomial(pid, mode)
    weak = weak_quasipolynomial(pid)
    deg = strong.degree
    weak_periods = tuple(weak.coefficient_period(k) if k <= weak.degree else 1 for k in range(deg + 1))
    return PeriodReport(
        pid.key,
        mode.value,
        inside_out_denominator(pid),
        strong.period,
        weak.period,
        deg,
        tuple(strong.coefficient_period(k) for k in range(deg + 1)),
        weak_periods,
    )


def poset_summary(problem) -> list[tuple[str, int, int]]:
    """``(label, codim, moebius)`` for the reduced polytope's flats."""
    poset = intersection_poset(instance(problem).reduced_geometry)
    return [(u.label, u.codim, poset.moebius[u]) for u in poset.elements]
