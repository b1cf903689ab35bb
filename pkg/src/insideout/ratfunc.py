"""Rational generating functions over products of ``(1 - x^a)``, and the
quasipolynomials they encode.

A ``RationalGF`` is an integer numerator polynomial (coefficient list, index
is the exponent) over a multiset of denominator factors ``1 - x^a``.  The
denominator is kept factored; it is only expanded when a quasipolynomial is
extracted.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Poly = list[int]


# --- integer polynomials -------------------------------------------------


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def poly_divexact(a: Sequence[int], d: Sequence[int]) -> Poly | None:
    """Quotient ``a / d`` if ``d`` divides ``a`` over the integers, else None."""
    a, d = trim(a), trim(d)
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    if len(a) < len(d):
        return None
    rem = list(a)
    lead = d[-1]
    q = [0] * (len(a) - len(d) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = rem[i + len(d) - 1]
        if c % lead:
            return None
        c //= lead
        q[i] = c
        if c:
            for j, y in enumerate(d):
                rem[i + j] -= c * y
    if any(rem):
        return None
    return trim(q)


def one_minus_power(a: int) -> Poly:
    """``1 - x^a`` (``a = 0`` gives the zero polynomial)."""
    if a == 0:
        return []
    p = [0] * (a + 1)
    p[0], p[a] = 1, -1
    return p


def mul_geometric(p: Sequence[int], step: int, terms: int) -> Poly:
    """``p * (1 + x^step + ... + x^(step*(terms-1)))`` in linear time."""
    n = len(p) + step * (terms - 1)
    out = [0] * n
    for i in range(n):
        acc = p[i] if i < len(p) else 0
        if i >= step:
            acc += out[i - step]
        j = i - step * terms
        if 0 <= j < len(p):
            acc -= p[j]
        out[i] = acc
    return trim(out)


def monomial(e: int, c: int = 1) -> Poly:
    return [0] * e + [c]


def poly_str(p: Sequence[int], var: str = "x") -> str:
    terms = []
    for e, c in enumerate(p):
        if not c:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else "+"
        else:
            coef = f"{c:+d}"
        terms.append(coef + mono)
    if not terms:
        return "0"
    s = " ".join(terms)
    return s[1:] if s.startswith("+") else s


# --- rational generating functions ---------------------------------------


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class RationalGF:
    """``numerator(x) / prod_a (1 - x^a)`` with integer numerator."""

    __slots__ = ("numerator", "denom_factors")

    def __init__(self, numerator: Iterable[int], denom_factors: Iterable[int] = ()):
        self.numerator: tuple[int, ...] = tuple(trim(int(c) for c in numerator))
        factors = tuple(sorted(int(a) for a in denom_factors))
        if any(a <= 0 for a in factors):
            raise ValueError("denominator exponents must be positive")
        self.denom_factors: tuple[int, ...] = factors if self.numerator else ()

    @classmethod
    def zero(cls) -> "RationalGF":
        return cls((), ())

    @classmethod
    def monomial(cls, e: int, c: int = 1, denom: Iterable[int] = ()) -> "RationalGF":
        return cls(monomial(e, c), denom)

    def __repr__(self):
        return f"RationalGF({list(self.numerator)}, {list(self.denom_factors)})"

    def __str__(self):
        if not self.numerator:
            return "0"
        counts = Counter(self.denom_factors)
        den = "".join(
            (f"(1-x^{a})" if a > 1 else "(1-x)") + (f"^{m}" if m > 1 else "")
            for a, m in sorted(counts.items())
        )
        num = poly_str(self.numerator)
        return f"({num})/({den})" if den else num

    def is_zero(self) -> bool:
        return not self.numerator

    # arithmetic

    def _over(self, factors: Counter) -> Poly:
        """Numerator after rewriting over the (larger) factor multiset."""
        missing = factors - Counter(self.denom_factors)
        num = list(self.numerator)
        for a, m in missing.items():
            for _ in range(m):
                num = poly_mul(num, one_minus_power(a))
        return num

    def __add__(self, other: "RationalGF") -> "RationalGF":
        if not isinstance(other, RationalGF):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        common = Counter(self.denom_factors) | Counter(other.denom_factors)
        num = poly_add(self._over(common), other._over(common))
        return RationalGF(num, common.elements()).normalized()

    def __neg__(self) -> "RationalGF":
        return RationalGF([-c for c in self.numerator], self.denom_factors)

    def __sub__(self, other: "RationalGF") -> "RationalGF":
        return self + (-other)

    def __mul__(self, other) -> "RationalGF":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, RationalGF):
            return NotImplemented
        return RationalGF(
            poly_mul(self.numerator, other.numerator), self.denom_factors + other.denom_factors
        ).normalized()

    __rmul__ = __mul__

    def scale(self, c: int) -> "RationalGF":
        return RationalGF([c * v for v in self.numerator], self.denom_factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalGF):
            return NotImplemented
        common = Counter(self.denom_factors) | Counter(other.denom_factors)
        return self._over(common) == other._over(common)

    def __hash__(self):
        return hash(tuple(self.coefficients(40)))

    def normalized(self) -> "RationalGF":
        """Cancel cyclotomic factors of the numerator into the denominator.

        A factor ``1 - x^a`` is replaced by ``1 - x^b`` (``b`` a proper divisor
        of ``a``, or dropped entirely) whenever the numerator is divisible by
        the quotient.  Largest factors and largest cancellations go first.
        """
        num = list(self.numerator)
        factors = list(self.denom_factors)
        if not num:
            return RationalGF.zero()
        changed = True
        while changed:
            changed = False
            for a in sorted(set(factors), reverse=True):
                for b in [0] + _divisors(a)[:-1]:
                    q = one_minus_power(a) if b == 0 else [1 if i % b == 0 else 0 for i in range(a - b + 1)]
                    div = poly_divexact(num, q)
                    if div is None:
                        continue
                    num = div
                    factors.remove(a)
                    if b:
                        factors.append(b)
                    changed = True
                    break
                if changed:
                    break
        return RationalGF(num, factors)

    # series

    def coefficients(self, n: int) -> list[int]:
        """Series coefficients for exponents ``0..n``."""
        s = [0] * (n + 1)
        for i, c in enumerate(self.numerator[: n + 1]):
            s[i] = c
        for a in self.denom_factors:
            for i in range(a, n + 1):
                s[i] += s[i - a]
        return s

    def coefficient(self, t: int) -> int:
        return self.coefficients(t)[t]

    def at_inverse(self) -> "RationalGF":
        """The rational function ``F(1/x)`` rewritten over the same factors."""
        total = sum(self.denom_factors)
        if len(self.numerator) - 1 > total:
            raise ValueError("F(1/x) is not a power series: numerator degree too large")
        padded = list(self.numerator) + [0] * (total + 1 - len(self.numerator))
        sign = -1 if len(self.denom_factors) % 2 else 1
        return RationalGF([sign * c for c in reversed(padded)], self.denom_factors)

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denom_factors": list(self.denom_factors)}

    @classmethod
    def from_json(cls, data: dict) -> "RationalGF":
        return cls(data["numerator"], data["denom_factors"])


def reciprocity(f: RationalGF, dim: int) -> RationalGF:
    """``(-1)^(1+dim) F(1/x)``: closed series to open series and back."""
    g = f.at_inverse()
    return g if dim % 2 else -g


def add(f: RationalGF, g: RationalGF) -> RationalGF:
    return f + g


def mul(f: RationalGF, g: RationalGF) -> RationalGF:
    return f * g


def scale(f: RationalGF, c: int) -> RationalGF:
    return f.scale(c)


def coefficients(f: RationalGF, n: int) -> list[int]:
    return f.coefficients(n)


UPPER_BOUND_KERNEL = RationalGF([0, 0, 1], (1, 1))  # x^2 / (1-x)^2
MAGIC_SUM_KERNEL = RationalGF([0, 0, 0, 1], (3,))  # x^3 / (1-x^3)


def convolve_upper_bound(f: RationalGF) -> RationalGF:
    """From counts by maximum entry to counts by strict upper bound.

    A reduced square with maximum ``k`` yields ``t - 1 - k`` squares with all
    entries in ``(0, t)``.
    """
    return f * UPPER_BOUND_KERNEL


def convolve_magic_sum(f: RationalGF) -> RationalGF:
    """From reduced counts by magic sum ``s`` to counts by magic sum ``t``:
    one square for every ``s < t`` with ``s = t mod 3``."""
    return f * MAGIC_SUM_KERNEL


# --- quasipolynomials ----------------------------------------------------


def _poly_eval(coeffs: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class Quasipolynomial:
    """Constituent ``r`` (a coefficient tuple, lowest degree first) applies to
    every ``t`` with ``t mod period == r``; constituent 0 is the principal one."""

    period: int
    constituents: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.period < 1 or len(self.constituents) != self.period:
            raise ValueError("need exactly one constituent per residue")
        width = max(len(c) for c in self.constituents)
        deg = max(
            (i for c in self.constituents for i, v in enumerate(c) if v), default=0
        )
        width = max(1, min(width, deg + 1))
        padded = tuple(
            tuple(Fraction(v) for v in (list(c) + [0] * width)[:width]) for c in self.constituents
        )
        object.__setattr__(self, "constituents", padded)

    @property
    def degree(self) -> int:
        return len(self.constituents[0]) - 1

    def constituent(self, t: int) -> tuple[Fraction, ...]:
        return self.constituents[t % self.period]

    @property
    def principal(self) -> tuple[Fraction, ...]:
        return self.constituents[0]

    def __call__(self, t) -> Fraction:
        return _poly_eval(self.constituent(t), t)

    def evaluate(self, t: int) -> int:
        v = self(t)
        if v.denominator != 1:
            raise ValueError("constituent mismatch")
        return int(v)

    def coefficient_sequence(self, k: int) -> list[Fraction]:
        return [c[k] if k < len(c) else Fraction(0) for c in self.constituents]

    def coefficient_period(self, k: int) -> int:
        seq = self.coefficient_sequence(k)
        return _minimal_period(seq)

    def leading_coefficients(self) -> set[Fraction]:
        return {c[self.degree] for c in self.constituents}

    def minimized(self) -> "Quasipolynomial":
        p = _minimal_period(self.constituents)
        return Quasipolynomial(p, self.constituents[:p])

    def with_period(self, p: int) -> "Quasipolynomial":
        """Same function listed over a multiple ``p`` of the period."""
        if p % self.period:
            raise ValueError("new period must be a multiple of the period")
        return Quasipolynomial(p, tuple(self.constituents[r % self.period] for r in range(p)))

    def __add__(self, other: "Quasipolynomial") -> "Quasipolynomial":
        p = math.lcm(self.period, other.period)
        out = []
        for r in range(p):
            a, b = self.constituents[r % self.period], other.constituents[r % other.period]
            n = max(len(a), len(b))
            out.append(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))
        return Quasipolynomial(p, tuple(out)).minimized()

    def scale(self, c) -> "Quasipolynomial":
        return Quasipolynomial(self.period, tuple(tuple(c * v for v in q) for q in self.constituents))

    def __sub__(self, other: "Quasipolynomial") -> "Quasipolynomial":
        return self + other.scale(-1)

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "constituents": [[[v.numerator, v.denominator] for v in c] for c in self.constituents],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Quasipolynomial":
        return cls(
            data["period"],
            tuple(tuple(Fraction(n, d) for n, d in c) for c in data["constituents"]),
        )


def _minimal_period(seq: Sequence) -> int:
    n = len(seq)
    for p in _divisors(n):
        if all(seq[r] == seq[r % p] for r in range(n)):
            return p
    return n


def eval_quasipolynomial(q: Quasipolynomial, t: int) -> int:
    return q.evaluate(t)


def _binomial_shift_polys(d: int, count: int) -> list[list[int]]:
    """``d! * binom(u - j + d, d)`` as integer polynomials in ``u``, j < count."""
    out = []
    for j in range(count):
        p = [1]
        for i in range(1, d + 1):
            p = poly_mul(p, [i - j, 1]) or [0]
        out.append(p + [0] * (d + 1 - len(p)))
    return out


def to_quasipolynomial(f: RationalGF) -> Quasipolynomial:
    """Constituents of the series coefficients ``t >= 1`` of ``f``.

    ``f`` is put over ``(1 - x^p)^(d+1)`` with ``p`` the lcm of its factors;
    numerator terms ``a_e x^e`` then contribute
    ``a_e * binom(d + (t - e)/p, d)`` to the constituent of ``e mod p``.
    The result is reduced to its minimal period.
    """
    f = f.normalized()
    if f.is_zero():
        return Quasipolynomial(1, ((Fraction(0),),))
    factors = f.denom_factors
    if not factors:
        raise ValueError("a polynomial is not a quasipolynomial generating function")
    k = len(factors)
    if len(f.numerator) - 1 > sum(factors):
        raise ValueError("numerator degree exceeds the standard-form bound")
    p = math.lcm(*factors)
    d = k - 1
    num = list(f.numerator)
    for a in factors:
        num = mul_geometric(num, a, p // a)
    assert len(num) <= p * k + 1
    shifts = _binomial_shift_polys(d, k + 1)
    fact = math.factorial(d)
    constituents = []
    for r in range(p):
        q_u = [0] * (d + 1)
        for j in range(k + 1):
            e = p * j + r
            if e < len(num) and num[e]:
                c = num[e]
                for i, v in enumerate(shifts[j]):
                    q_u[i] += c * v
        # substitute u = (t - r) / p
        acc: list[Fraction] = [Fraction(0)]
        lin = [Fraction(-r, p), Fraction(1, p)]
        for c in reversed(q_u):
            nxt = [Fraction(0)] * (len(acc) + 1)
            for i, v in enumerate(acc):
                nxt[i] += v * lin[0]
                nxt[i + 1] += v * lin[1]
            nxt[0] += Fraction(c, fact)
            acc = nxt
        constituents.append(tuple(acc))
    return Quasipolynomial(p, tuple(constituents)).minimized()


def format_rational(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def format_constituent(coeffs: Sequence[Fraction], var: str = "t") -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        mag = abs(c)
        body = format_rational(mag) if (mag != 1 or not mono) else ""
        if body and mono:
            body += "*"
        terms.append(("-" if c < 0 else "+", body + mono))
    if not terms:
        return "0"
    s = "".join(f" {sign} {t}" for sign, t in terms).strip()
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
