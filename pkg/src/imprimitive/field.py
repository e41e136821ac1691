"""Exact coefficient fields: F_p, F_{p^k} and the rationals.

Elements of a finite field are stored as an integer index ``c0 + c1*p + ... +
c_{k-1}*p^(k-1)`` whose base-p digits are the coefficients of the residue
class modulo the field's defining polynomial.  Characteristic 0 uses
:class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence


class FieldError(ValueError):
    code = "FieldError"


class InvalidCharacteristic(FieldError):
    code = "InvalidCharacteristic"


class InvalidExtension(FieldError):
    code = "InvalidExtension"


class DivisionByZero(ZeroDivisionError):
    code = "DivisionByZero"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_power_of(n: int, p: int) -> bool:
    """True iff ``n == p**j`` for some j >= 0."""
    if n < 1 or p < 2:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def p_adic_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# -- dense univariate polynomials over F_p (lists, low degree first) ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic ``m``."""
    r = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            for j in range(dm + 1):
                r[i - dm + j] = (r[i - dm + j] - c * m[j]) % p
    return _trim(r[:dm])


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    k = len(m) - 1
    if k <= 1:
        return True
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(reversed(tail)) + [1]
            if not _polymod(m, divisor, p):
                return False
    return True


def find_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k, coefficients enumerated from the
    top (c_{k-1}) down in lexicographic order."""
    if k == 1:
        return (0, 1)
    for top_down in itertools.product(range(p), repeat=k):
        m = list(reversed(top_down)) + [1]
        if m[0] == 0:
            continue
        if _is_irreducible(m, p):
            return tuple(m)
    raise InvalidExtension(f"no irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True)
class FieldCtx:
    characteristic: int
    extension_degree: int = 1
    modulus: tuple[int, ...] = (0, 1)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    # -- descriptors --------------------------------------------------------
    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def k(self) -> int:
        return self.extension_degree

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise FieldError("characteristic-0 field has no finite order")
        return self.characteristic ** self.extension_degree

    @property
    def q(self) -> int:
        return self.order

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __str__(self) -> str:
        if not self.is_finite:
            return "QQ"
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.q}"

    # -- raw arithmetic on stored values ------------------------------------
    def coerce(self, x) -> int | Fraction:
        """Raw value of an int / Fraction / coefficient sequence / FieldElem."""
        if isinstance(x, FieldElem):
            if x.ctx != self:
                raise FieldError(f"element of {x.ctx} used in {self}")
            return x.val
        if not self.is_finite:
            return Fraction(x)
        p = self.p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise DivisionByZero(f"{x} has no image in {self}")
            return (x.numerator * pow(x.denominator, -1, p)) % p
        if isinstance(x, (tuple, list)):
            if len(x) > self.k:
                raise FieldError("coefficient vector longer than the extension degree")
            return sum((c % p) * p**i for i, c in enumerate(x))
        return int(x) % p

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, d: Sequence[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def add(self, a, b):
        if not self.is_finite or self.k == 1:
            return a + b if not self.is_finite else (a + b) % self.p
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        if not self.is_finite:
            return -a
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits([(-x) % self.p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not self.is_finite:
            return a * b
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        key = (a, b) if a <= b else (b, a)
        cache = self._cache.setdefault("mul", {})
        r = cache.get(key)
        if r is None:
            p = self.p
            da, db = self.digits(a), self.digits(b)
            prod = [0] * (2 * self.k - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] += x * y
            r = self.from_digits(_polymod(prod, self.modulus, p))
            cache[key] = r
        return r

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if not self.is_finite:
            return 1 / a
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a, n: int):
        if n == 0:
            return self.one_raw
        if a == 0:
            if n < 0:
                raise DivisionByZero("0 raised to a negative power")
            return self.zero_raw
        if not self.is_finite:
            return a**n
        n %= self.q - 1
        if self.k == 1:
            return pow(a, n, self.p)
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a, times: int = 1):
        """a -> a^(p^times); the identity on the prime field."""
        if not self.is_finite or self.k == 1 or a == 0:
            return a
        return self.pow(a, self.p ** (times % self.k))

    @property
    def zero_raw(self):
        return Fraction(0) if not self.is_finite else 0

    @property
    def one_raw(self):
        return Fraction(1) if not self.is_finite else 1

    # -- element constructors -------------------------------------------------
    def __call__(self, x) -> FieldElem:
        return FieldElem(self, self.coerce(x))

    def at(self, index: int) -> FieldElem:
        """Element with the given index (base-p digits = coefficients)."""
        if self.is_finite and not 0 <= index < self.order:
            raise FieldError(f"index {index} outside 0..{self.order - 1}")
        return FieldElem(self, int(index)) if self.is_finite else self(index)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, self.zero_raw)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, self.one_raw)

    def elements(self) -> Iterator[FieldElem]:
        """All elements in index order (finite fields only)."""
        for a in range(self.order):
            yield FieldElem(self, a)

    def nonzero(self) -> Iterator[FieldElem]:
        for a in range(1, self.order):
            yield FieldElem(self, a)

    def generator(self) -> FieldElem:
        """Least-index primitive element of the multiplicative group."""
        cache = self._cache
        if "gen" not in cache:
            n = self.order - 1
            prime_factors = [d for d in range(2, n + 1) if n % d == 0 and is_prime(d)]
            for a in range(1, self.order):
                if all(self.pow(a, n // d) != 1 for d in prime_factors):
                    cache["gen"] = a
                    break
        return FieldElem(self, cache["gen"])


def field_make(p: int, k: int = 1) -> FieldCtx:
    """Build F_{p^k} (p prime) or the rationals (p = 0, k = 1)."""
    if k < 1:
        raise InvalidExtension(f"extension degree must be positive, got {k}")
    if p == 0:
        if k != 1:
            raise InvalidExtension("characteristic 0 admits only k = 1")
        return FieldCtx(0, 1, (0, 1))
    if not is_prime(p):
        raise InvalidCharacteristic(f"{p} is not 0 or a prime")
    return FieldCtx(p, k, find_modulus(p, k))


def field_of_order(q: int) -> FieldCtx:
    """F_q for a prime power q."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_power_of(q, p):
                raise InvalidCharacteristic(f"{q} is not a prime power")
            return field_make(p, p_adic_valuation(q, p))
    raise InvalidCharacteristic(f"{q} is not a prime power")


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    val: int | Fraction

    # coercion helper for mixed int/FieldElem arithmetic
    def _v(self, other):
        return self.ctx.coerce(other)

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.val, self._v(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.val, self._v(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._v(other), self.val))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.val))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.val, self._v(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.val, self.ctx.inv(self._v(other))))

    def __rtruediv__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self._v(other), self.ctx.inv(self.val)))

    def __pow__(self, n: int):
        return elem_pow(self, n)

    def inverse(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.inv(self.val))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.val == other.val
        if isinstance(other, (int, Fraction)):
            try:
                return self.val == self.ctx.coerce(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.characteristic, self.ctx.extension_degree, self.val))

    def __bool__(self):
        return self.val != 0

    def __int__(self):
        if self.ctx.is_finite:
            return int(self.val)
        if self.val.denominator != 1:
            raise ValueError(f"{self.val} is not an integer")
        return int(self.val)

    @property
    def index(self) -> int:
        """Integer code used by the enumeration kernels."""
        return int(self.val)

    @property
    def coeffs(self) -> tuple[int, ...]:
        if not self.ctx.is_finite:
            raise FieldError("rational elements have no coefficient vector")
        return tuple(self.ctx.digits(self.val))

    def __repr__(self):
        return f"{self.ctx}({self})"

    def __str__(self):
        ctx = self.ctx
        if not ctx.is_finite or ctx.k == 1:
            return str(self.val)
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if not mono:
                    terms.append(str(c))
                else:
                    terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"


def elem_pow(x: FieldElem, n: int) -> FieldElem:
    """Exact power; negative exponents invert.  ``0**0 == 1``."""
    return FieldElem(x.ctx, x.ctx.pow(x.val, n))


def power_map_gcd(e: int, q: int) -> int:
    """gcd(e, q-1): the kernel size of a -> a^e on F_q*."""
    return gcd(e, q - 1)
