"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Values are kept in a canonical form: the minimal conductor n (never
congruent to 2 mod 4) together with coefficients over the power basis
zeta_n^0, ..., zeta_n^{phi(n)-1}, reduced modulo the n-th cyclotomic
polynomial.  Equality, hashing and the text-token round trip all work
off that canonical form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    if n == 1:
        return (-1, 1)
    # divide x^n - 1 by the product of Phi_d for proper divisors d
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_poly_div(poly, cyclotomic_polynomial(d))
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _exact_poly_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact cyclotomic division")
        q = c // den[-1]
        out[k] = q
        if q:
            for i, dc in enumerate(den):
                num[k + i] -= q * dc
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-zero remainder in cyclotomic division")
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            out *= p - 1
            m //= p
            while m % p == 0:
                out *= p
                m //= p
        p += 1
    if m > 1:
        out *= m - 1
    return out


def _reduce_mod_phi(n: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    """Reduce an exponent->coefficient dict modulo Phi_n."""
    phi = euler_phi(n)
    if all(k < phi for k in coeffs):
        return {k: c for k, c in coeffs.items() if c}
    dense = [Fraction(0)] * n
    for k, c in coeffs.items():
        dense[k % n] += c
    phi_poly = cyclotomic_polynomial(n)
    for k in range(n - 1, phi - 1, -1):
        c = dense[k]
        if c:
            dense[k] = Fraction(0)
            for i in range(len(phi_poly) - 1):
                dense[k - phi + i] -= c * phi_poly[i]
    return {k: dense[k] for k in range(phi) if dense[k]}


@lru_cache(maxsize=None)
def _descent_matrix(n: int, p: int) -> tuple[tuple[tuple[Fraction, ...], ...], int]:
    """Row-reduced system expressing Q(zeta_{n/p}) inside Q(zeta_n).

    Returns an augmented echelon form for solving coefficient vectors; the
    rows span the reduced representations of zeta_n^{p*j}, j < phi(n/p).
    """
    m = n // p
    phi_n, phi_m = euler_phi(n), euler_phi(m)
    rows = []
    for j in range(phi_m):
        red = _reduce_mod_phi(n, {(p * j) % n: Fraction(1)})
        rows.append([red.get(k, Fraction(0)) for k in range(phi_n)])
    return tuple(tuple(r) for r in rows), phi_m


def _solve_descent(n: int, p: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction] | None:
    """Express coeffs (reduced mod Phi_n) over powers of zeta_{n/p}, or None."""
    rows, phi_m = _descent_matrix(n, p)
    phi_n = euler_phi(n)
    # Gaussian elimination: solve sum_j x_j rows[j] = coeffs
    aug = [list(r) + [Fraction(1 if i == j else 0) for i in range(phi_m)]
           for j, r in enumerate(rows)]
    target = [coeffs.get(k, Fraction(0)) for k in range(phi_n)]
    sol = [Fraction(0)] * phi_m
    pivots = []
    r = 0
    for col in range(phi_n):
        piv = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    resid = list(target)
    for i, col in enumerate(pivots):
        f = resid[col]
        if f:
            for k in range(phi_n):
                resid[k] -= f * aug[i][k]
            for j in range(phi_m):
                sol[j] += f * aug[i][phi_n + j]
    if any(resid):
        return None
    return {j: c for j, c in enumerate(sol) if c}


def _canonical(n: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Bring (n, coeffs) to minimal conductor with reduced coefficients."""
    merged: dict[int, Fraction] = {}
    for k, c in coeffs.items():
        if c:
            kk = k % n
            merged[kk] = merged.get(kk, Fraction(0)) + c
    coeffs = {k: c for k, c in merged.items() if c}
    if not coeffs:
        return 1, {}
    g = n
    for k in coeffs:
        g = gcd(g, k)
        if g == 1:
            break
    if g > 1:
        n //= g
        coeffs = {k // g: c for k, c in coeffs.items()}
    while True:
        if n % 4 == 2:
            # zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
            m = n // 2
            shift = (m + 1) // 2
            nxt: dict[int, Fraction] = {}
            for k, c in coeffs.items():
                kk = (k * shift) % m
                cc = -c if k % 2 else c
                nxt[kk] = nxt.get(kk, Fraction(0)) + cc
            n, coeffs = m, {k: c for k, c in nxt.items() if c}
            continue
        coeffs = _reduce_mod_phi(n, coeffs)
        if not coeffs:
            return 1, {}
        if n == 1:
            return 1, coeffs
        descended = False
        for p in _prime_divisors(n):
            m = n // p
            if _is_galois_fixed(n, m, coeffs):
                sol = _solve_descent(n, p, coeffs)
                if sol is None:
                    raise ArithmeticError(
                        f"galois-fixed value failed descent from {n} to {m}")
                n, coeffs = m, sol
                descended = True
                break
        if not descended:
            return n, coeffs


def _prime_divisors(n: int) -> list[int]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _is_galois_fixed(n: int, m: int, coeffs: dict[int, Fraction]) -> bool:
    """True if the element is fixed by every sigma_a with a = 1 mod m."""
    for a in range(1 + m, n, m):
        if gcd(a, n) != 1:
            continue
        mapped = {(a * k) % n: c for k, c in coeffs.items()}
        if _reduce_mod_phi(n, mapped) != coeffs:
            return False
    return True


class Cyclotomic:
    """Immutable element of a cyclotomic field, in canonical form."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int = 1, coeffs: dict[int, Fraction] | None = None):
        cn, cc = _canonical(n, coeffs or {})
        object.__setattr__(self, "n", cn)
        object.__setattr__(self, "coeffs", tuple(sorted(cc.items())))
        object.__setattr__(self, "_hash", hash((cn, self.coeffs)))

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "Cyclotomic":
        return _ZERO

    @staticmethod
    def one() -> "Cyclotomic":
        return _ONE

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        q = Fraction(q)
        return Cyclotomic(1, {0: q}) if q else _ZERO

    @staticmethod
    def root_of_unity(n: int, k: int = 1) -> "Cyclotomic":
        return Cyclotomic(n, {k % n: Fraction(1)})

    @staticmethod
    def from_root_sum(n: int, terms: dict[int, Fraction | int]) -> "Cyclotomic":
        return Cyclotomic(n, {k: Fraction(c) for k, c in terms.items()})

    # -- ring operations ----------------------------------------------
    def _dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def __add__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == other.n:
            out = self._dict()
            for k, c in other.coeffs:
                out[k] = out.get(k, Fraction(0)) + c
            return Cyclotomic(self.n, out)
        nn = self.n * other.n // gcd(self.n, other.n)
        sa, sb = nn // self.n, nn // other.n
        out = {k * sa: c for k, c in self.coeffs}
        for k, c in other.coeffs:
            kk = k * sb
            out[kk] = out.get(kk, Fraction(0)) + c
        return Cyclotomic(nn, out)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.n, {k: -c for k, c in self.coeffs})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == 1 or other.n == 1:
            if self.n == 1:
                scal, val = self.rational(), other
            else:
                scal, val = other.rational(), self
            if not scal:
                return _ZERO
            return Cyclotomic(val.n, {k: c * scal for k, c in val.coeffs})
        nn = self.n * other.n // gcd(self.n, other.n)
        sa, sb = nn // self.n, nn // other.n
        out: dict[int, Fraction] = {}
        for ka, ca in self.coeffs:
            for kb, cb in other.coeffs:
                kk = (ka * sa + kb * sb) % nn
                out[kk] = out.get(kk, Fraction(0)) + ca * cb
        return Cyclotomic(nn, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyclotomic":
        q = Fraction(other)
        return Cyclotomic(self.n, {k: c / q for k, c in self.coeffs})

    def conjugate(self) -> "Cyclotomic":
        return Cyclotomic(self.n, {(self.n - k) % self.n: c for k, c in self.coeffs})

    def galois(self, a: int) -> "Cyclotomic":
        if gcd(a, self.n) != 1:
            raise ValueError(f"galois exponent {a} not coprime to conductor {self.n}")
        return Cyclotomic(self.n, {(a * k) % self.n: c for k, c in self.coeffs})

    def abs_squared(self) -> "Cyclotomic":
        return self * self.conjugate()

    # -- predicates and extraction ------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.n == 1

    def is_real(self) -> bool:
        return self == self.conjugate()

    def rational(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"not a rational value: {self}")
        return self.coeffs[0][1] if self.coeffs else Fraction(0)

    def integer(self) -> int:
        q = self.rational()
        if q.denominator != 1:
            raise ValueError(f"not an integer: {self}")
        return q.numerator

    def sort_key(self):
        return (self.n, tuple((k, c.numerator, c.denominator) for k, c in self.coeffs))

    # -- text form ------------------------------------------------------
    def token(self) -> str:
        """Compact text token, invertible by parse_token."""
        if self.n == 1:
            q = self.rational()
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        parts = []
        for k, c in self.coeffs:
            cs = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            parts.append(f"{k}={cs}")
        return f"{self.n}:" + ",".join(parts)

    @staticmethod
    def parse_token(tok: str) -> "Cyclotomic":
        if ":" not in tok:
            return Cyclotomic.from_rational(Fraction(tok))
        head, body = tok.split(":", 1)
        n = int(head)
        coeffs: dict[int, Fraction] = {}
        if body:
            for item in body.split(","):
                k, c = item.split("=")
                coeffs[int(k)] = Fraction(c)
        return Cyclotomic(n, coeffs)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if self.n == 1:
            return str(self.rational())
        terms = []
        for k, c in self.coeffs:
            base = f"E({self.n})" if k == 1 else f"E({self.n})^{k}"
            if c == 1:
                t = base
            elif c == -1:
                t = f"-{base}"
            else:
                t = f"{c}*{base}" if k else str(c)
            terms.append(t)
        s = "+".join(terms).replace("+-", "-")
        return s


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(x)
    return NotImplemented


_ZERO = Cyclotomic(1, {})
_ONE = Cyclotomic(1, {0: Fraction(1)})
