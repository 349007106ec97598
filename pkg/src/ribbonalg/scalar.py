"""Exact arithmetic in the union of the cyclotomic fields Q(zeta_N).

A value is stored over the power basis ``zeta_N**0 .. zeta_N**(phi(N)-1)``
modulo the N-th cyclotomic polynomial, as an integer numerator vector and
a positive common denominator.  Every value is kept in canonical form: the
order N is the smallest conductor of a cyclotomic field containing it, and
numerator and denominator are coprime.  Two values are equal iff their
canonical forms coincide.

Operands of different orders are lifted to the lcm of their orders before
an operation; the result is then reduced back to its minimal conductor.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import DivByZero, MalformedScalar

__all__ = [
    "CycNum",
    "cyc_make",
    "cyc_arith",
    "cyc_conj",
    "cyclotomic_poly",
    "totient",
    "zeta",
    "ZERO",
    "ONE",
]

Rationalish = Union[int, Fraction]


@lru_cache(maxsize=None)
def _primes(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # both low-to-high, den monic
    num = list(num)
    dq = len(den) - 1
    out = [0] * (len(num) - dq)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dq]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise MalformedScalar(f"order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse coordinates of zeta_n**e for 0 <= e < 2n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    vec = [0] * deg
    vec[0] = 1
    out = []
    for _ in range(2 * n):
        out.append(tuple((i, c) for i, c in enumerate(vec) if c))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            for i in range(deg):
                vec[i] -= top * phi[i]
    return tuple(out)


@lru_cache(maxsize=None)
def _lift_map(n: int, big: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    step = big // n
    table = _power_table(big)
    return tuple(table[(j * step) % big] for j in range(totient(n)))


def _solve_fraction(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(mat)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def _descent_data(big: int, small: int):
    """Pivot rows and integer inverse block for membership in Q(zeta_small)."""
    lm = _lift_map(small, big)
    rows_n, cols_n = totient(big), totient(small)
    mat = [[Fraction(0)] * cols_n for _ in range(rows_n)]
    for j in range(cols_n):
        for i, c in lm[j]:
            mat[i][j] = Fraction(c)
    chosen: list[int] = []
    basis: list[tuple[list[Fraction], int]] = []
    for i in range(rows_n):
        row = mat[i][:]
        for b, piv in basis:
            if row[piv] != 0:
                f = row[piv] / b[piv]
                row = [x - f * y for x, y in zip(row, b)]
        nz = next((k for k, v in enumerate(row) if v != 0), None)
        if nz is not None:
            basis.append((row, nz))
            chosen.append(i)
            if len(chosen) == cols_n:
                break
    sub = [mat[i] for i in chosen]
    inv_cols = [_solve_fraction(sub, [Fraction(int(k == r)) for r in range(cols_n)]) for k in range(cols_n)]
    den = 1
    for col in inv_cols:
        for q in col:
            den = lcm(den, q.denominator)
    inv = [[int(inv_cols[k][j] * den) for k in range(cols_n)] for j in range(cols_n)]
    return tuple(chosen), inv, den, lm


def _try_descend(big: int, small: int, num: Sequence[int]):
    p = big // small
    if small % p == 0:
        # Phi_big(x) = Phi_small(x**p): the subfield is spanned by powers divisible by p
        if any(c for j, c in enumerate(num) if j % p):
            return None
        return list(num[::p]), 1
    rows, inv, den, lm = _descent_data(big, small)
    ynum = [sum(row[k] * num[r] for k, r in enumerate(rows)) for row in inv]
    back = [0] * len(num)
    for j, c in enumerate(ynum):
        if c:
            for i, v in lm[j]:
                back[i] += c * v
    if any(b != n * den for b, n in zip(back, num)):
        return None
    return ynum, den


def _canonical(order: int, num: list[int], den: int) -> tuple[int, tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    if not any(num[1:]):
        g = gcd(num[0], den)
        return 1, (num[0] // g,), den // g
    g = gcd(den, *num)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    n = order
    progress = True
    while progress:
        progress = False
        for p in _primes(n):
            res = _try_descend(n, n // p, num)
            if res is not None:
                num, yden = res
                den *= yden
                n //= p
                g = gcd(den, *num)
                if g > 1:
                    num = [c // g for c in num]
                    den //= g
                progress = True
                break
    return n, tuple(num), den


class CycNum:
    """Immutable exact element of a cyclotomic field."""

    __slots__ = ("order", "num", "den")

    order: int
    num: tuple[int, ...]
    den: int

    def __init__(self, value: Rationalish | "CycNum" = 0):
        if isinstance(value, CycNum):
            object.__setattr__(self, "order", value.order)
            object.__setattr__(self, "num", value.num)
            object.__setattr__(self, "den", value.den)
            return
        q = Fraction(value)
        object.__setattr__(self, "order", 1)
        object.__setattr__(self, "num", (q.numerator,))
        object.__setattr__(self, "den", q.denominator)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    @classmethod
    def _raw(cls, order: int, num: Iterable[int], den: int, canonical: bool = False) -> "CycNum":
        self = object.__new__(cls)
        if canonical:
            o, n, d = order, tuple(num), den
        else:
            o, n, d = _canonical(order, list(num), den)
        object.__setattr__(self, "order", o)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)
        return self

    # -- constructors -----------------------------------------------------
    @classmethod
    def coerce(cls, x: "CycNum | Rationalish") -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> "CycNum":
        """zeta_n**k with zeta_n = exp(2 pi i / n)."""
        k %= n
        table = _power_table(n)
        vec = [0] * totient(n)
        for i, c in table[k]:
            vec[i] = c
        return cls._raw(n, vec, 1)

    # -- coordinates ------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def coords_at(self, order: int) -> list[Fraction]:
        """Coordinates of self in the power basis of Q(zeta_order)."""
        if order % self.order:
            raise MalformedScalar(f"{self.order} does not divide {order}")
        return [Fraction(c, self.den) for c in self._lift(order)]

    def _lift(self, big: int) -> list[int]:
        if big == self.order:
            return list(self.num)
        out = [0] * totient(big)
        lm = _lift_map(self.order, big)
        for j, c in enumerate(self.num):
            if c:
                for i, v in lm[j]:
                    out[i] += c * v
        return out

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num[0] == 0 and self.order == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.order == 1

    def to_fraction(self) -> Fraction:
        if self.order != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "CycNum":
        return CycNum._raw(self.order, tuple(-c for c in self.num), self.den, canonical=True)

    def __add__(self, other) -> "CycNum":
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.order == 1 and o.order == 1:
            return CycNum(Fraction(self.num[0], self.den) + Fraction(o.num[0], o.den))
        big = lcm(self.order, o.order)
        a, b = self._lift(big), o._lift(big)
        num = [x * o.den + y * self.den for x, y in zip(a, b)]
        return CycNum._raw(big, num, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "CycNum":
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "CycNum":
        return CycNum.coerce(other) - self

    def __mul__(self, other) -> "CycNum":
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return ZERO
        if o.order == 1:
            return self._scale(o.num[0], o.den)
        if self.order == 1:
            return o._scale(self.num[0], self.den)
        big = lcm(self.order, o.order)
        a, b = self._lift(big), o._lift(big)
        deg = len(a)
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:deg]
        table = _power_table(big)
        for e in range(deg, 2 * deg - 1):
            c = conv[e]
            if c:
                for i, v in table[e]:
                    out[i] += c * v
        return CycNum._raw(big, out, self.den * o.den)

    __rmul__ = __mul__

    def _scale(self, p: int, q: int) -> "CycNum":
        if q < 0:
            p, q = -p, -q
        num = [c * p for c in self.num]
        den = self.den * q
        g = gcd(den, *num)
        return CycNum._raw(self.order, tuple(c // g for c in num), den // g, canonical=True)

    def galois(self, k: int) -> "CycNum":
        """Image under the automorphism zeta_N -> zeta_N**k (k coprime to N)."""
        n = self.order
        if gcd(k, n) != 1:
            raise MalformedScalar(f"{k} is not a unit mod {n}")
        table = _power_table(n)
        out = [0] * len(self.num)
        for j, c in enumerate(self.num):
            if c:
                for i, v in table[(j * k) % n]:
                    out[i] += c * v
        return CycNum._raw(n, out, self.den)

    def conj(self) -> "CycNum":
        return self.galois(-1 % self.order) if self.order > 1 else self

    def inv(self) -> "CycNum":
        if self.is_zero():
            raise DivByZero("inverse of zero")
        if self.order == 1:
            return CycNum(Fraction(self.den, self.num[0]))
        n = self.order
        rest = ONE
        for k in range(2, n):
            if gcd(k, n) == 1:
                rest = rest * self.galois(k)
        norm = (self * rest).to_fraction()
        return rest._scale(norm.denominator, norm.numerator)

    def __truediv__(self, other) -> "CycNum":
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            raise DivByZero("division by zero")
        return self * o.inv()

    def __rtruediv__(self, other) -> "CycNum":
        return CycNum.coerce(other) / self

    def __pow__(self, e: int) -> "CycNum":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- roots of unity ---------------------------------------------------
    def root_of_unity_order(self) -> int | None:
        """Multiplicative order if self is a root of unity, else None."""
        if self.is_zero():
            return None
        bound = lcm(2, self.order)
        if self ** bound != ONE:
            return None
        for d in sorted(d for d in range(1, bound + 1) if bound % d == 0):
            if self ** d == ONE:
                return d
        return None

    def root_of_unity_exponent(self) -> tuple[int, int] | None:
        """(n, k) with self == zeta_n**k and n minimal, or None."""
        n = self.root_of_unity_order()
        if n is None:
            return None
        for k in range(n):
            if gcd(k, n) == 1 and CycNum.root_of_unity(n, k) == self:
                return n, k
        return None

    def sqrt_root_of_unity(self) -> "CycNum":
        """A square root of a root of unity (the one zeta_{2n}**k)."""
        nk = self.root_of_unity_exponent()
        if nk is None:
            raise MalformedScalar(f"{self} is not a root of unity")
        n, k = nk
        return CycNum.root_of_unity(2 * n, k)

    # -- comparison and display -------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.order == other.order and self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        if self.order == 1:
            return hash(Fraction(self.num[0], self.den))
        return hash((self.order, self.num, self.den))

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * z ** j for j, c in enumerate(self.num)) / self.den

    def __repr__(self) -> str:
        return f"CycNum({self})"

    def __str__(self) -> str:
        if self.order == 1:
            return str(Fraction(self.num[0], self.den))
        terms = []
        for j, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            mono = "" if j == 0 else (f"z{self.order}" if j == 1 else f"z{self.order}^{j}")
            if not mono:
                terms.append(str(q))
            elif q == 1:
                terms.append(mono)
            elif q == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{q}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(q) for q in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CycNum":
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            try:
                return cls(Fraction(obj))
            except (ValueError, ZeroDivisionError) as exc:
                raise MalformedScalar(f"bad rational {obj!r}") from exc
        if not isinstance(obj, dict) or set(obj) != {"order", "coeffs"}:
            raise MalformedScalar(f"bad scalar document {obj!r}")
        coeffs = obj["coeffs"]
        if not isinstance(coeffs, list):
            raise MalformedScalar("coeffs must be a list")
        try:
            qs = [Fraction(c) for c in coeffs]
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise MalformedScalar(f"bad coefficient in {coeffs!r}") from exc
        return cyc_make(obj["order"], qs)


def cyc_make(order: int, coeffs: Sequence[Rationalish | str]) -> CycNum:
    """Build sum_j coeffs[j] * zeta_order**j; coeffs has length phi(order)."""
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise MalformedScalar(f"order must be a positive integer, got {order!r}")
    if len(coeffs) != totient(order):
        raise MalformedScalar(f"order {order} needs {totient(order)} coefficients, got {len(coeffs)}")
    qs = [Fraction(c) for c in coeffs]
    den = 1
    for q in qs:
        den = lcm(den, q.denominator)
    return CycNum._raw(order, [int(q * den) for q in qs], den)


def zeta(n: int, k: int = 1) -> CycNum:
    return CycNum.root_of_unity(n, k)


def cyc_arith(kind: str, a: CycNum, b: CycNum | None = None) -> CycNum:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind == "neg":
        return -a
    if kind == "inv":
        return a.inv()
    raise ValueError(f"unknown operation {kind!r}")


def cyc_conj(a: CycNum) -> CycNum:
    return a.conj()


ZERO = CycNum(0)
ONE = CycNum(1)
