"""Exact arithmetic in GF(p) and GF(p^m).

Elements are handled internally as integer codes ``sum(c_i * p**i)`` where
``c_i`` is the coefficient of ``x**i`` in the polynomial representation.
:class:`FieldSpec` exposes arithmetic on those codes (fast path used by the
matrix code); :class:`FieldElement` wraps a code together with its field for
the public value-level API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    NonPrimeP,
    ParseError,
    ReducibleModulus,
    SpecMismatch,
)

# desk-scale cap, see module docstring of linalg
MAX_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**m``; raises :class:`NonPrimeP` if ``q`` is not a prime power."""
    if q < 2:
        raise NonPrimeP(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NonPrimeP(f"{q} is not a prime power")
    return p, m


# --- polynomials over GF(p), coefficient lists low degree first -------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _monic_polys(p: int, deg: int) -> Iterator[list[int]]:
    # ordered by integer encoding of the lower coefficients
    for low in itertools.product(range(p), repeat=deg):
        yield list(reversed(low)) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m, in increasing integer-encoding order."""
    for cand in _monic_polys(p, m):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m) defined by a monic irreducible ``modulus``.

    ``modulus`` lists m+1 coefficients, lowest degree first; it is empty for
    prime fields. Equality is by ``(p, m, modulus)``.
    """

    p: int
    m: int = 1
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrimeP(f"p={self.p} is not prime")
        if self.m < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {self.m}")
        if self.p ** self.m > MAX_ORDER:
            raise DegreeMismatch(f"GF({self.p}^{self.m}) exceeds the supported order {MAX_ORDER}")
        mod = tuple(int(c) for c in self.modulus)
        if self.m == 1:
            if mod and (len(mod) != 2 or mod[1] % self.p != 1):
                raise DegreeMismatch("prime fields take no modulus (or a monic linear one)")
            mod = ()
        else:
            if len(mod) != self.m + 1:
                raise DegreeMismatch(f"modulus must have {self.m + 1} coefficients, got {len(mod)}")
            if any(not 0 <= c < self.p for c in mod):
                raise DegreeMismatch(f"modulus coefficients must lie in [0, {self.p})")
            if mod[-1] != 1:
                raise DegreeMismatch("modulus must be monic")
            if not is_irreducible(mod, self.p):
                raise ReducibleModulus(f"{mod} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    # -- code <-> coefficient conversion ---------------------------------

    def coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m:
            raise DegreeMismatch(f"expected {self.m} coefficients, got {len(coeffs)}")
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + (int(c) % self.p)
        return v

    def from_int(self, value: int) -> int:
        """Code for an integer literal: reduced mod p (so -1 means p-1)."""
        return int(value) % self.p

    # -- tables for extension fields --------------------------------------

    def _poly_mulmod(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, self.modulus, p)
        rem += [0] * (m - len(rem))
        return self.code(rem)

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._poly_mulmod(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log
        # GF(2^1) / GF(3) never get here; m > 1 guarantees q >= 4
        raise AssertionError("no primitive element found")  # pragma: no cover

    # -- arithmetic on codes ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        v, mult = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            v += ((x + y) % p) * mult
            mult *= p
        return v

    def neg(self, a: int) -> int:
        p = self.p
        if self.m == 1:
            return -a % p
        if p == 2:
            return a
        v, mult = 0, 1
        while a:
            a, x = divmod(a, p)
            v += (-x % p) * mult
            mult *= p
        return v

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._tables
        return exp[-log[a] % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.m == 1:
            return pow(a, e, self.p)
        exp, log = self._tables
        return exp[log[a] * e % (self.q - 1)]

    # -- element-level API ------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Build an element from an int code (m == 1: any integer) or a coefficient list."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatch(f"element of {value.spec} used with {self}")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, tuple(int(c) % self.p for c in value))
        value = int(value)
        if self.m == 1:
            value %= self.p
        elif not 0 <= value < self.q:
            raise DegreeMismatch(f"code {value} out of range for {self}")
        return FieldElement(self, self.coeffs(value))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def enumerate(self) -> list["FieldElement"]:
        return [self.element(c) for c in range(self.q)]

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        try:
            return field_new(int(obj["p"]), int(obj.get("m", 1)), obj.get("modulus") or None)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad field spec {obj!r}: {exc}") from exc

    def encode_entry(self, code: int):
        """JSON value for a code: bare int for prime fields, coefficient list otherwise."""
        return code if self.m == 1 else list(self.coeffs(code))

    def decode_entry(self, value) -> int:
        if isinstance(value, list):
            return self.code(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"bad field entry {value!r}")
        if self.m == 1:
            return value % self.p
        if not 0 <= value < self.q:
            raise ParseError(f"entry {value} out of range for {self}")
        return value


def field_new(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    if not is_prime(p):
        raise NonPrimeP(f"p={p} is not prime")
    if m < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
    if m > 1 and not modulus:
        modulus = default_modulus(p, m)
    return FieldSpec(p, m, tuple(modulus or ()))


def gf(q: int) -> FieldSpec:
    """Default field of order q."""
    p, m = prime_power(q)
    return field_new(p, m)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.m:
            raise DegreeMismatch(f"element needs {self.spec.m} coefficients")
        if any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise DegreeMismatch("coefficients must be reduced mod p")

    @property
    def value(self) -> int:
        return self.spec.code(self.coeffs)

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            if isinstance(other, int) and self.spec.m == 1:
                return self.spec.element(other)
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        return other

    def _wrap(self, code: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.coeffs(code))

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.spec.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.spec.sub(self.value, other.value))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.spec.mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.spec.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.spec.inv(self.value))

    def __bool__(self):
        return any(self.coeffs)

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.spec.m == 1:
            return f"{self.value}"
        return f"{list(self.coeffs)}"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    return spec.enumerate()
