"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored on the power basis 1, zeta, ..., zeta^(phi(N)-1),
reduced modulo the N-th cyclotomic polynomial Phi_N.  Internally a value is
an integer coefficient vector over a single positive denominator, kept in
lowest terms, so equality is plain coefficient equality and there is
exactly one representation per field element.

Conductor mixing is always explicit: binary operations on elements of
different conductors raise ConductorMismatch; use promote() first.  Plain
ints and Fractions coerce into any conductor (Q embeds everywhere).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConductorMismatch, DivisionByZero, NotASubfield

#: Rational scalars are stdlib Fractions (arbitrary precision, always reduced).
Rational = Fraction


def _divisors(n: int) -> list[int]:
    divs = []
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            divs.append(d)
            if d != n // d:
                divs.append(n // d)
    return sorted(divs)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("conductor must be a positive integer")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_div_exact(num: list[int], den: Sequence[int]) -> list[int]:
    # Exact division of integer polynomials, divisor monic.  Lowest degree first.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        out[i - dd] = c
        if c:
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first (monic)."""
    poly = [0] * (n + 1)
    poly[0] = -1
    poly[n] = 1
    for d in _divisors(n):
        if d < n:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class _Field:
    """Cached reduction tables for one conductor."""

    __slots__ = ("n", "phi", "modulus", "xpow")

    def __init__(self, n: int):
        self.n = n
        self.phi = euler_phi(n)
        self.modulus = cyclotomic_polynomial(n)
        phi = self.phi
        # lower coefficients of Phi_n: x^phi = -(c_0 + c_1 x + ... )
        lower = self.modulus[:phi]
        # x^e reduced mod Phi_n for 0 <= e <= max(n-1, 2*phi-2)
        top = max(n - 1, 2 * phi - 2)
        rows: list[tuple[int, ...]] = []
        cur = [0] * phi
        cur[0] = 1
        rows.append(tuple(cur))
        for _ in range(top):
            lead = cur[phi - 1]
            nxt = [0] + cur[:phi - 1]
            if lead:
                for j in range(phi):
                    nxt[j] -= lead * lower[j]
            cur = nxt
            rows.append(tuple(cur))
        self.xpow = tuple(rows)


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    g = 0
    for v in num:
        g = math.gcd(g, v)
        if g == 1:
            break
    g = math.gcd(g, den)
    if den < 0:
        g = -g
    if g not in (0, 1):
        num = [v // g for v in num]
        den //= g
    if g == 0:
        den = 1
    return tuple(num), den


def _reduce(conv: list[int], fld: _Field) -> list[int]:
    # Fold a raw convolution (length <= 2*phi-1) back onto the power basis.
    phi = fld.phi
    out = list(conv[:phi]) + [0] * (phi - min(phi, len(conv)))
    for e in range(phi, len(conv)):
        c = conv[e]
        if c:
            row = fld.xpow[e]
            for j in range(phi):
                out[j] += c * row[j]
    return out


class CycNum:
    """An element of Q(zeta_N), immutable and hashable."""

    __slots__ = ("conductor", "_num", "_den")

    def __init__(self, conductor: int, num: Iterable[int], den: int = 1):
        fld = _field(conductor)
        numl = list(num)
        if len(numl) != fld.phi:
            raise ValueError(
                f"coefficient vector must have length phi({conductor}) = {fld.phi}"
            )
        object.__setattr__(self, "conductor", conductor)
        n, d = _normalize(numl, den)
        object.__setattr__(self, "_num", n)
        object.__setattr__(self, "_den", d)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("CycNum is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rational(cls, value: Rational | int, conductor: int = 1) -> "CycNum":
        q = Fraction(value)
        num = [0] * euler_phi(conductor)
        num[0] = q.numerator
        return cls(conductor, num, q.denominator)

    @classmethod
    def from_coeffs(
        cls, conductor: int, coeffs: Sequence[Rational | int | str]
    ) -> "CycNum":
        fracs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        num = [int(f * den) for f in fracs]
        return cls(conductor, num, den)

    @classmethod
    def zero(cls, conductor: int = 1) -> "CycNum":
        return cls.from_rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "CycNum":
        return cls.from_rational(1, conductor)

    # -- basic queries ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Rational, ...]:
        return tuple(Fraction(v, self._den) for v in self._num)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self._num)

    @property
    def is_one(self) -> bool:
        return self._den == 1 and self._num[0] == 1 and all(
            v == 0 for v in self._num[1:]
        )

    @property
    def is_rational(self) -> bool:
        return all(v == 0 for v in self._num[1:])

    def as_rational(self) -> Rational | None:
        if not self.is_rational:
            return None
        return Fraction(self._num[0], self._den)

    def as_integer(self) -> int | None:
        """The rational integer value, or None (implements Tr(S) in Z tests)."""
        q = self.as_rational()
        if q is None or q.denominator != 1:
            return None
        return q.numerator

    @property
    def is_real(self) -> bool:
        return self == self.conj()

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other, self.conductor)
        if not isinstance(other, CycNum):
            return NotImplemented
        return (
            self.conductor == other.conductor
            and self._den == other._den
            and self._num == other._num
        )

    def __hash__(self):
        return hash((self.conductor, self._num, self._den))

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                z = f"z{self.conductor}" + (f"^{j}" if j > 1 else "")
                terms.append(z if c == 1 else f"{c}*{z}")
        return " + ".join(terms) if terms else "0"

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.conductor != self.conductor:
                raise ConductorMismatch(
                    f"conductors {self.conductor} and {other.conductor} differ; "
                    "promote() explicitly"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(other, self.conductor)
        raise TypeError(f"cannot coerce {type(other).__name__} to CycNum")

    def __add__(self, other) -> "CycNum":
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        da, db = self._den, other._den
        l = math.lcm(da, db)
        fa, fb = l // da, l // db
        num = [fa * a + fb * b for a, b in zip(self._num, other._num)]
        return CycNum(self.conductor, num, l)

    __radd__ = __add__

    def __sub__(self, other) -> "CycNum":
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycNum":
        return (-self) + other

    def __neg__(self) -> "CycNum":
        return CycNum(self.conductor, [-v for v in self._num], self._den)

    def __mul__(self, other) -> "CycNum":
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        fld = _field(self.conductor)
        phi = fld.phi
        a, b = self._num, other._num
        conv = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return CycNum(self.conductor, _reduce(conv, fld), self._den * other._den)

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        fld = _field(self.conductor)
        # extended Euclid over Q[x]: s*f + t*Phi = gcd = nonzero constant
        f = [Fraction(v, self._den) for v in self._num]
        mod = [Fraction(c) for c in fld.modulus]
        r0, r1 = mod, f
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _poly_deg(r1) > 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0] if r1 else Fraction(0)
        if c == 0:  # pragma: no cover - cannot happen over a field
            raise DivisionByZero("element not invertible")
        inv_coeffs = [s / c for s in s1] + [Fraction(0)] * (fld.phi - len(s1))
        return CycNum.from_coeffs(self.conductor, inv_coeffs[: fld.phi])

    def __truediv__(self, other) -> "CycNum":
        other = self._coerce(other)
        return self * other.inv()

    def __rtruediv__(self, other) -> "CycNum":
        return self._coerce(other) * self.inv()

    def __pow__(self, e: int) -> "CycNum":
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e < 0:
            return self.inv() ** (-e)
        result = CycNum.one(self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "CycNum":
        """Complex conjugation: the Galois map zeta -> zeta^(N-1)."""
        n = self.conductor
        fld = _field(n)
        out = [0] * fld.phi
        for j, c in enumerate(self._num):
            if c:
                row = fld.xpow[(n - j) % n]
                for i in range(fld.phi):
                    out[i] += c * row[i]
        return CycNum(n, out, self._den)

    def promote(self, m: int) -> "CycNum":
        """The same field element viewed in Q(zeta_m); requires conductor | m."""
        n = self.conductor
        if m % n != 0:
            raise NotASubfield(f"Q(zeta_{n}) is not a subfield of Q(zeta_{m})")
        if m == n:
            return self
        fld = _field(m)
        step = m // n
        out = [0] * fld.phi
        for j, c in enumerate(self._num):
            if c:
                row = fld.xpow[(j * step) % m]
                for i in range(fld.phi):
                    out[i] += c * row[i]
        return CycNum(m, out, self._den)

    def to_complex(self) -> complex:
        """Evaluation at the canonical embedding zeta_N = exp(2*pi*i/N)."""
        z = cmath.exp(2j * cmath.pi / self.conductor)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc


def make_root_of_unity(n: int, k: int = 1) -> CycNum:
    """zeta_n^k as an exact element of Q(zeta_n)."""
    fld = _field(n)
    return CycNum(n, fld.xpow[k % n], 1)


def omega(conductor: int = 3) -> CycNum:
    """A primitive third root of unity, promoted into Q(zeta_conductor)."""
    if conductor % 3 != 0:
        raise NotASubfield(f"conductor {conductor} is not divisible by 3")
    return make_root_of_unity(conductor, conductor // 3)


def rational_integer_value(x: CycNum) -> int | None:
    """The rational-integer value of x, or None when x is not one."""
    return x.as_integer()


def dot(xs: Sequence[CycNum], ys: Sequence[CycNum]) -> CycNum:
    """Exact sum of pairwise products with a single basis reduction.

    This is the matmul inner loop; fusing the reduction and normalization
    keeps coefficient gcd work per entry instead of per product.
    """
    if not xs:
        raise ValueError("empty dot product")
    n = xs[0].conductor
    fld = _field(n)
    phi = fld.phi
    conv = [0] * (2 * phi - 1)
    den = 1
    for x, y in zip(xs, ys):
        if x.conductor != n or y.conductor != n:
            raise ConductorMismatch("dot operands must share a conductor")
        dxy = x._den * y._den
        l = math.lcm(den, dxy)
        if l != den:
            f = l // den
            for i in range(len(conv)):
                conv[i] *= f
            den = l
        scale = den // dxy
        a, b = x._num, y._num
        for i, ai in enumerate(a):
            if ai:
                aval = ai * scale
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += aval * bj
    return CycNum(n, _reduce(conv, fld), den)


# -- small polynomial helpers over Fractions (for inv) ------------------------

def _poly_deg(p: list[Fraction]) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i] != 0:
            return i
    return -1


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    db = _poly_deg(b)
    r = list(a)
    q = [Fraction(0)] * max(1, len(a))
    lead = b[db]
    for i in range(_poly_deg(r), db - 1, -1):
        if r[i] == 0:
            continue
        c = r[i] / lead
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] -= c * b[j]
    return q[: max(1, _poly_deg(q) + 1)], r[: max(1, _poly_deg(r) + 1)]


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    m = max(len(a), len(b))
    out = [Fraction(0)] * m
    for i in range(m):
        if i < len(a):
            out[i] += a[i]
        if i < len(b):
            out[i] -= b[i]
    return out


# -- n-th roots inside the field ----------------------------------------------

def _int_nth_root(m: int, n: int) -> int | None:
    """Exact integer n-th root of m >= 0, or None."""
    if m < 0:
        return None
    if m in (0, 1):
        return m
    lo, hi = 1, 2
    while hi**n < m:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**n < m:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**n == m else None


def rational_nth_root(q: Rational, n: int) -> Rational | None:
    """The rational n-th root of q, or None when none exists."""
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if n % 2 == 0:
            return None
        sign, q = -1, -q
    a = _int_nth_root(q.numerator, n)
    b = _int_nth_root(q.denominator, n)
    if a is None or b is None:
        return None
    return Fraction(sign * a, b)


def roots_of_unity(conductor: int) -> list[CycNum]:
    """All roots of unity contained in Q(zeta_N): the group <+-zeta_N>."""
    n = conductor
    if n % 2 == 0:
        gen = make_root_of_unity(n, 1)
        order = n
    else:
        gen = -make_root_of_unity(n, 1)
        order = 2 * n
    out = []
    u = CycNum.one(n)
    for _ in range(order):
        out.append(u)
        u = u * gen
    return out


def nth_root_in_field(x: CycNum, n: int) -> list[CycNum]:
    """All y in Q(zeta_N) with y**n = x.

    First searches rational multiples of the roots of unity in the field
    (complete whenever any root has that shape); for n <= 3 falls back to
    exact factorization of T^n - x over the field.  An empty list means the
    caller must enlarge the conductor.
    """
    if n < 1:
        raise ValueError("root order must be >= 1")
    if n == 1:
        return [x]
    if x.is_zero:
        return [CycNum.zero(x.conductor)]
    found: dict[tuple, CycNum] = {}
    for u in roots_of_unity(x.conductor):
        t = x / u**n
        q = t.as_rational()
        if q is None:
            continue
        r = rational_nth_root(q, n)
        if r is None:
            continue
        y = u * r
        found.setdefault((y._num, y._den), y)
    if found:
        return sorted(found.values(), key=lambda y: (y._num, y._den))
    if n <= 3 and euler_phi(x.conductor) > 1:
        return _roots_by_factorization(x, n)
    return []


def _roots_by_factorization(x: CycNum, n: int) -> list[CycNum]:
    # Exact factorization of T^n - x over Q(zeta_N), via sympy's algebraic
    # field machinery (Trager).  Only reached for n <= 3.  sympy represents
    # Q(zeta_N) on the same power basis mod Phi_N, so coefficients map over
    # directly (its lists are highest degree first).
    import sympy

    N = x.conductor
    phi = euler_phi(N)
    zeta = sympy.exp(2 * sympy.pi * sympy.I * sympy.Rational(1, N))
    K = sympy.QQ.algebraic_field(zeta)
    T = sympy.Symbol("T")
    expr = sum(sympy.Rational(c) * zeta**j for j, c in enumerate(x.coeffs))
    poly = sympy.Poly(T**n - expr, T, domain=K)
    roots = []
    for factor, _mult in poly.factor_list()[1]:
        if factor.degree() != 1:
            continue
        a, b = factor.rep.to_list()
        anp = (-b) / a
        raw = list(reversed(anp.to_list()))
        coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in raw]
        coeffs += [Fraction(0)] * (phi - len(coeffs))
        roots.append(CycNum.from_coeffs(N, coeffs))
    return sorted(set(roots), key=lambda y: (y._num, y._den))
