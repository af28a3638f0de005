"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis of Q[x]/Phi_N(x) as an integer
numerator vector over a single positive denominator, always at the
smallest conductor whose field contains them.  Complex conjugation is the
Galois automorphism zeta -> zeta^-1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

Scalar = Union[int, Fraction, "CycNum"]


def _prime_factors(n: int) -> list[int]:
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
    return out


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result = n
    for p in _prime_factors(n):
        result -= result // p
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dn]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    assert not any(num[:dn]), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _reduce(vec: list[int], n: int) -> list[int]:
    """Reduce a length-n exponent vector (sum v_k x^k, x^n = 1) modulo Phi_n."""
    phi = totient(n)
    poly = cyclotomic_poly(n)
    for deg in range(n - 1, phi - 1, -1):
        c = vec[deg]
        if c:
            base = deg - phi
            for i in range(phi):
                pi = poly[i]
                if pi:
                    vec[base + i] -= c * pi
    return vec[:phi]


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    g = den
    for c in num:
        if c:
            g = gcd(g, c)
            if g == 1:
                break
    if den < 0:
        g = -g
    return tuple(c // g for c in num), den // g


@lru_cache(maxsize=None)
def _crt_split(n: int, p: int) -> tuple[int, int]:
    """For n = m*p with gcd(m, p) = 1, return (a, b) with a*m + b*p = 1."""
    m = n // p
    a = pow(m, -1, p)
    b = (1 - a * m) // p
    return a, b


def _try_shrink(num: tuple[int, ...], n: int, p: int) -> tuple[tuple[int, ...], int] | None:
    """(numerators, extra denominator) at conductor n/p if the element lies in Q(zeta_{n/p})."""
    m = n // p
    if m % p == 0:
        # Phi_n(x) = Phi_m(x^p): subfield elements use only exponents divisible by p
        if any(c for k, c in enumerate(num) if k % p):
            return None
        return tuple(num[::p]), 1
    # linearly disjoint case: average the trace down to Q(zeta_m) and compare
    a, b = _crt_split(n, p)
    acc = [0] * m
    for k, c in enumerate(num):
        if not c:
            continue
        s = (k * b) % m
        t = (k * a) % p
        acc[s] += c * (p - 1) if t == 0 else -c
    reduced = _reduce(acc, m)
    lifted = [0] * n
    for s, c in enumerate(reduced):
        lifted[(s * p) % n] += c
    lifted = _reduce(lifted, n)
    if any(c != (p - 1) * x for c, x in zip(lifted, num)):
        return None
    return tuple(reduced), p - 1


def _minimize(num: tuple[int, ...], den: int, n: int) -> tuple[tuple[int, ...], int, int]:
    changed = True
    while changed and n > 1:
        changed = False
        for p in _prime_factors(n):
            smaller = _try_shrink(num, n, p)
            if smaller is not None:
                num, extra = smaller
                n //= p
                if extra != 1:
                    num, den = _normalize(list(num), den * extra)
                changed = True
                break
    return num, den, n


@lru_cache(maxsize=4096)
def _lift(num: tuple[int, ...], n: int, target: int) -> tuple[int, ...]:
    if n == target:
        return num
    step = target // n
    vec = [0] * target
    for k, c in enumerate(num):
        if c:
            vec[k * step] = c
    return tuple(_reduce(vec, target))


class CycNum:
    """An element of Q(zeta_N) in canonical form.

    >>> (zeta(8) + zeta(8) ** -1) ** 2
    CycNum(2)
    """

    __slots__ = ("conductor", "num", "den", "_hash")

    def __init__(self, num: Iterable[int], den: int = 1, conductor: int = 1, *, _canonical: bool = False):
        num = tuple(num)
        if not _canonical:
            if len(num) != totient(conductor):
                raise ValueError(f"expected {totient(conductor)} coefficients for conductor {conductor}")
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            num, den = _normalize(list(num), den)
            num, den, conductor = _minimize(num, den, conductor)
        self.conductor = conductor
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, num: list[int], den: int, n: int) -> "CycNum":
        num_t, den = _normalize(num, den)
        num_t, den, n = _minimize(num_t, den, n)
        return cls(num_t, den, n, _canonical=True)

    @classmethod
    def rational(cls, q: int | Fraction) -> "CycNum":
        q = Fraction(q)
        return cls((q.numerator,), q.denominator, 1, _canonical=True)

    @classmethod
    def from_exponents(cls, terms: dict[int, int | Fraction], n: int) -> "CycNum":
        """Build sum c_k zeta_n^k from an exponent -> coefficient mapping."""
        den = 1
        for c in terms.values():
            den = _lcm(den, Fraction(c).denominator)
        vec = [0] * n
        for k, c in terms.items():
            c = Fraction(c)
            vec[k % n] += c.numerator * (den // c.denominator)
        return cls._raw(_reduce(vec, n), den, n)

    @classmethod
    def coerce(cls, x: Scalar) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    # accessors ------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_fraction(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def canonical_key(self) -> tuple:
        """Total order key: (conductor, coefficient vector)."""
        return (self.conductor, self.coeffs)

    # arithmetic -----------------------------------------------------------

    def _common(self, other: "CycNum") -> tuple[tuple[int, ...], tuple[int, ...], int]:
        if self.conductor == other.conductor:
            return self.num, other.num, self.conductor
        n = _lcm(self.conductor, other.conductor)
        return _lift(self.num, self.conductor, n), _lift(other.num, other.conductor, n), n

    def __add__(self, other: Scalar) -> "CycNum":
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b, n = self._common(other)
        da, db = self.den, other.den
        return CycNum._raw([x * db + y * da for x, y in zip(a, b)], da * db, n)

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(tuple(-c for c in self.num), self.den, self.conductor, _canonical=True)

    def __sub__(self, other: Scalar) -> "CycNum":
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "CycNum":
        return CycNum.coerce(other) - self

    def __mul__(self, other: Scalar) -> "CycNum":
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        if other.conductor == 1:
            return CycNum._raw([c * other.num[0] for c in self.num], self.den * other.den, self.conductor)
        if self.conductor == 1:
            return other * self
        a, b, n = self._common(other)
        vec = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        vec[(i + j) % n] += x * y
        return CycNum._raw(_reduce(vec, n), self.den * other.den, n)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycNum":
        """Image under zeta_N -> zeta_N^k, for k a unit mod N."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        if n <= 2:
            return self
        vec = [0] * n
        for e, c in enumerate(self.num):
            if c:
                vec[(e * k) % n] += c
        return CycNum._raw(_reduce(vec, n), self.den, n)

    def conj(self) -> "CycNum":
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        n = self.conductor
        prod = self
        for k in range(2, n):
            if gcd(k, n) == 1:
                prod = prod * self.galois(k)
        return prod.to_fraction()

    def inverse(self) -> "CycNum":
        return _inverse(self)

    def __truediv__(self, other: Scalar) -> "CycNum":
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "CycNum":
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.conductor == other.conductor and self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.conductor, self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.conductor == 1:
            return f"CycNum({Fraction(self.num[0], self.den)})"
        return f"CycNum({self})"

    def __str__(self) -> str:
        if self.conductor == 1:
            return str(Fraction(self.num[0], self.den))
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if k == 0 else (f"z{self.conductor}" if k == 1 else f"z{self.conductor}^{k}")
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [_fmt_fraction(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "CycNum":
        if isinstance(data, bool):
            raise ValueError("boolean is not a number")
        if isinstance(data, int):
            return cls.rational(data)
        if isinstance(data, str):
            return cls.rational(Fraction(data))
        if not isinstance(data, dict) or set(data) != {"conductor", "coeffs"}:
            raise ValueError("CycNum must be an integer, a 'p/q' string or {'conductor', 'coeffs'}")
        n = data["conductor"]
        if not isinstance(n, int) or n < 1:
            raise ValueError("conductor must be a positive integer")
        coeffs = [Fraction(c) for c in data["coeffs"]]
        if len(coeffs) != totient(n):
            raise ValueError(f"conductor {n} needs {totient(n)} coefficients, got {len(coeffs)}")
        den = 1
        for c in coeffs:
            den = _lcm(den, c.denominator)
        return cls([c.numerator * (den // c.denominator) for c in coeffs], den, n)


def _fmt_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=8192)
def _inverse(x: CycNum) -> CycNum:
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero in a cyclotomic field")
    if x.conductor == 1:
        return CycNum.rational(1 / Fraction(x.num[0], x.den))
    # x^-1 = (product of the other conjugates) / norm
    n = x.conductor
    cofactor = ONE
    for k in range(2, n):
        if gcd(k, n) == 1:
            cofactor = cofactor * x.galois(k)
    norm = (cofactor * x).to_fraction()
    return cofactor * CycNum.rational(1 / norm)


ZERO = CycNum((0,), 1, 1, _canonical=True)
ONE = CycNum((1,), 1, 1, _canonical=True)


@lru_cache(maxsize=None)
def zeta(n: int) -> CycNum:
    """The primitive n-th root of unity represented by x in Q[x]/Phi_n."""
    if n < 1:
        raise ValueError("zeta needs a positive order")
    if n == 1:
        return ONE
    return CycNum.from_exponents({1: 1}, n)


def root_of_unity(n: int, k: int) -> CycNum:
    """zeta_n^k."""
    if n == 1:
        return ONE
    return CycNum.from_exponents({k % n: 1}, n)


I_UNIT = zeta(4)
SQRT2 = zeta(8) + zeta(8) ** 7
SQRT3 = zeta(12) + zeta(12) ** 11


def arith(op: str, x: Scalar, y: Scalar | None = None) -> CycNum:
    """Dispatch helper: op in {add, sub, mul, neg, inv}."""
    x = CycNum.coerce(x)
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if y is None:
        raise ValueError(f"{op} needs two operands")
    y = CycNum.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def conj(x: Scalar) -> CycNum:
    return CycNum.coerce(x).conj()


def canonical_key(x: Scalar) -> tuple:
    return CycNum.coerce(x).canonical_key()


def is_root_of_unity_of_order_dividing(x: CycNum, n: int) -> bool:
    return x ** n == ONE


# Sign of a real element.  The field is embedded in C by zeta_N -> exp(2 pi i / N),
# the embedding under which conj is complex conjugation.  The value is enclosed
# by rational intervals of shrinking width until the enclosure excludes 0.

def _arctan_inv(m: int, eps: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of arctan(1/m) for an integer m > 1."""
    total, k, x2 = Fraction(0), 0, Fraction(1, m * m)
    term = Fraction(1, m)
    while True:
        total += term / (2 * k + 1) * (-1) ** k
        k += 1
        term *= x2
        nxt = term / (2 * k + 1)
        if nxt < eps:
            return (total - nxt, total + nxt)


def _pi_enclosure(eps: Fraction) -> tuple[Fraction, Fraction]:
    a_lo, a_hi = _arctan_inv(5, eps / 32)
    b_lo, b_hi = _arctan_inv(239, eps / 32)
    return 16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo


def _cos_point(theta: Fraction, eps: Fraction) -> tuple[Fraction, Fraction]:
    """cos(theta) to within eps (value, error bound), |theta| <= 7."""
    total, term, k = Fraction(0), Fraction(1), 0
    t2 = theta * theta
    while True:
        total += term
        k += 1
        term = -term * t2 / ((2 * k - 1) * (2 * k))
        if abs(term) < eps and k > 4:
            return total, abs(term)


def real_sign(x: CycNum) -> int:
    """-1, 0 or 1 for a real element (x == conj(x))."""
    if x.is_zero():
        return 0
    if x.conductor == 1:
        return 1 if x.num[0] > 0 else -1
    if x.conj() != x:
        raise ValueError(f"{x} is not real")
    n = x.conductor
    eps = Fraction(1, 2 ** 20)
    while True:
        p_lo, p_hi = _pi_enclosure(eps)
        mid = (p_lo + p_hi) / 2
        val, err = Fraction(0), Fraction(0)
        for k, c in enumerate(x.coeffs):
            if not c:
                continue
            theta = 2 * mid * k / n
            cval, cerr = _cos_point(theta, eps)
            # |cos(a) - cos(b)| <= |a - b|
            cerr += 2 * (p_hi - p_lo) * k / n
            val += c * cval
            err += abs(c) * cerr
        if abs(val) > err:
            return 1 if val > 0 else -1
        eps = eps * eps
