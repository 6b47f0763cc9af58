"""Exact arithmetic for Laurent polynomials in ``a`` and ``q`` and their quotients.

Link invariant values live in the fraction field: the loop values carry a
``(q - q^-1)`` denominator.  Denominators are kept reduced to a power of
``z = q - q^-1`` whenever that is possible, which keeps long state sums compact.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "BivariateLaurent",
    "RationalFunction",
    "ONE",
    "ZERO",
    "A",
    "Q",
    "Z",
    "add",
    "mul",
    "equals",
    "substitute_a",
    "invert",
    "parse_laurent",
    "parse_rational",
]

Exponent = tuple[int, int]


class BivariateLaurent:
    """Sparse Laurent polynomial with integer coefficients in ``a`` and ``q``.

    Terms are stored as ``{(e_a, e_q): coefficient}`` with no zero coefficient.
    Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for (ea, eq), c in items:
            key = (int(ea), int(eq))
            acc[key] = acc.get(key, 0) + int(c)
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int]) -> BivariateLaurent:
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, ea: int = 0, eq: int = 0, coeff: int = 1) -> BivariateLaurent:
        return cls._raw({(ea, eq): coeff} if coeff else {})

    @classmethod
    def constant(cls, c: int) -> BivariateLaurent:
        return cls.monomial(0, 0, c)

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0, 0): 1}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for ``±a^i q^j``, the units of the Laurent ring."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def is_univariate_q(self) -> bool:
        return all(ea == 0 for ea, _ in self._terms)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other: BivariateLaurent | int) -> BivariateLaurent:
        if isinstance(other, int):
            other = BivariateLaurent.constant(other)
        if not isinstance(other, BivariateLaurent):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BivariateLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self) -> BivariateLaurent:
        return BivariateLaurent._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: BivariateLaurent | int) -> BivariateLaurent:
        if isinstance(other, int):
            other = BivariateLaurent.constant(other)
        return self + (-other)

    def __rsub__(self, other: int) -> BivariateLaurent:
        return BivariateLaurent.constant(other) - self

    def __mul__(self, other: BivariateLaurent | int) -> BivariateLaurent:
        if isinstance(other, int):
            if other == 0:
                return BivariateLaurent._raw({})
            return BivariateLaurent._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, BivariateLaurent):
            return NotImplemented
        out: dict[Exponent, int] = {}
        for (a1, q1), c1 in self._terms.items():
            for (a2, q2), c2 in other._terms.items():
                k = (a1 + a2, q1 + q2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivariateLaurent._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BivariateLaurent:
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (ea, eq), c = next(iter(self._terms.items()))
            if abs(c) != 1:
                raise ValueError("negative power of a non-unit monomial")
            return BivariateLaurent.monomial(ea * n, eq * n, c ** (-n))
        result = ONE_POLY
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, da: int, dq: int, coeff: int = 1) -> BivariateLaurent:
        """Multiply by the monomial ``coeff * a^da * q^dq``."""
        return BivariateLaurent._raw({(ea + da, eq + dq): c * coeff for (ea, eq), c in self._terms.items()})

    def invert_variables(self) -> BivariateLaurent:
        """The involution ``(a, q) -> (a^-1, q^-1)``."""
        return BivariateLaurent._raw({(-ea, -eq): c for (ea, eq), c in self._terms.items()})

    def substitute_a(self, n: int) -> BivariateLaurent:
        """Replace ``a`` by ``q^n``."""
        return BivariateLaurent(((0, eq + n * ea), c) for (ea, eq), c in self._terms.items())

    def substitute_a2(self) -> BivariateLaurent:
        """Replace ``a^2`` by ``a^2 q``; every ``a``-exponent must be even."""
        if any(ea % 2 for ea, _ in self._terms):
            raise ValueError("a^2 -> a^2 q needs even powers of a")
        return BivariateLaurent._raw({(ea, eq + ea // 2): c for (ea, eq), c in self._terms.items()})

    def min_exponents(self) -> Exponent:
        return (min(ea for ea, _ in self._terms), min(eq for _, eq in self._terms))

    def divide_exact(self, divisor: BivariateLaurent) -> BivariateLaurent | None:
        """Exact quotient ``self / divisor`` or ``None`` if it does not divide.

        The divisor must be a monomial or univariate in ``q``.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if divisor.is_monomial():
            (da, dq), dc = next(iter(divisor._terms.items()))
            if any(c % dc for c in self._terms.values()):
                return None
            return BivariateLaurent._raw({(ea - da, eq - dq): c // dc for (ea, eq), c in self._terms.items()})
        if not divisor.is_univariate_q():
            raise ValueError("exact division is only supported by univariate-in-q divisors")
        dterms = sorted((eq, c) for (_, eq), c in divisor._terms.items())
        dlow, dhigh = dterms[0][0], dterms[-1][0]
        lead = dterms[-1][1]
        slices: dict[int, dict[int, int]] = {}
        for (ea, eq), c in self._terms.items():
            slices.setdefault(ea, {})[eq] = c
        out: dict[Exponent, int] = {}
        for ea, rem in slices.items():
            rem = dict(rem)
            while rem:
                top = max(rem)
                if top - dhigh < min(rem) - dlow:
                    return None
                c = rem[top]
                if c % lead:
                    return None
                f = c // lead
                shift = top - dhigh
                out[(ea, shift)] = f
                for deq, dc in dterms:
                    k = deq + shift
                    v = rem.get(k, 0) - f * dc
                    if v:
                        rem[k] = v
                    else:
                        rem.pop(k, None)
        return BivariateLaurent._raw(out)

    # comparison, hashing, formatting ----------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = BivariateLaurent.constant(other)
        if not isinstance(other, BivariateLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in descending lexicographic order of ``(e_a, e_q)``."""
        return sorted(self._terms.items(), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, ((ea, eq), c) in enumerate(self.sorted_terms()):
            factors = []
            if ea:
                factors.append("a" if ea == 1 else f"a^{ea}")
            if eq:
                factors.append("q" if eq == 1 else f"q^{eq}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"BivariateLaurent('{self}')"

    def to_triples(self) -> list[list[int]]:
        return [[c, ea, eq] for (ea, eq), c in self.sorted_terms()]

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable[int]]) -> BivariateLaurent:
        return cls(((ea, eq), c) for c, ea, eq in triples)


ONE_POLY = BivariateLaurent.constant(1)
ZERO_POLY = BivariateLaurent()
Z_POLY = BivariateLaurent({(0, 1): 1, (0, -1): -1})


_SPLIT_TERMS = re.compile(r"(?<!\^)(?=[+-])")
_FACTOR = re.compile(r"^(?:(\d+)|([aq])(?:\^([+-]?\d+))?)$")


def parse_laurent(text: str) -> BivariateLaurent:
    """Parse the signed monomial list format, e.g. ``"a^2*q^-1 - a^-2*q"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    terms: dict[Exponent, int] = {}
    for chunk in _SPLIT_TERMS.split(s):
        if not chunk:
            continue
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coeff, ea, eq = sign, 0, 0
        for factor in chunk.split("*"):
            m = _FACTOR.match(factor)
            if m is None:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            num, var, exp = m.groups()
            if num is not None:
                coeff *= int(num)
            elif var == "a":
                ea += int(exp) if exp is not None else 1
            else:
                eq += int(exp) if exp is not None else 1
        terms[(ea, eq)] = terms.get((ea, eq), 0) + coeff
    return BivariateLaurent(terms)


@lru_cache(maxsize=None)
def _z_power(k: int) -> BivariateLaurent:
    return Z_POLY ** k


def _strip_z(p: BivariateLaurent, limit: int) -> tuple[BivariateLaurent, int]:
    """Divide ``p`` by ``z`` as often as possible, at most ``limit`` times."""
    count = 0
    while count < limit:
        nxt = p.divide_exact(Z_POLY)
        if nxt is None:
            break
        p = nxt
        count += 1
    return p, count


class RationalFunction:
    """Quotient ``numerator / denominator`` of two Laurent polynomials.

    Equality is decided by cross-multiplication, so it holds regardless of how
    far either side has been reduced.
    """

    __slots__ = ("numerator", "denominator", "_zpow")

    def __init__(self, numerator: BivariateLaurent | int = 0, denominator: BivariateLaurent | int = 1,
                 *, reduce: bool = True):
        if isinstance(numerator, int):
            numerator = BivariateLaurent.constant(numerator)
        if isinstance(denominator, int):
            denominator = BivariateLaurent.constant(denominator)
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.numerator = numerator
        self.denominator = denominator
        self._zpow: int | None = None
        if reduce:
            self._reduce()

    @classmethod
    def _from_zpow(cls, numerator: BivariateLaurent, k: int) -> RationalFunction:
        obj = cls.__new__(cls)
        if numerator.is_zero():
            k = 0
        elif k:
            numerator, removed = _strip_z(numerator, k)
            k -= removed
        obj.numerator = numerator
        obj.denominator = _z_power(k)
        obj._zpow = k
        return obj

    def _reduce(self) -> None:
        num, den = self.numerator, self.denominator
        if num.is_zero():
            self.numerator, self.denominator, self._zpow = num, ONE_POLY, 0
            return
        if den.is_unit():
            self.numerator, self.denominator, self._zpow = num.divide_exact(den), ONE_POLY, 0
            return
        # cancel monomial content of the denominator, then powers of z
        da, dq = den.min_exponents()
        den = den.shift(-da, -dq)
        num = num.shift(-da, -dq)
        if den.is_univariate_q():
            rest, k = _strip_z(den, len(den))
            if rest.is_unit():
                self.numerator, self.denominator, self._zpow = num.divide_exact(rest), _z_power(k), k
                num, removed = _strip_z(self.numerator, k)
                self.numerator, self.denominator, self._zpow = num, _z_power(k - removed), k - removed
                return
            if num.is_univariate_q():
                quotient = num.divide_exact(den)
                if quotient is not None:
                    self.numerator, self.denominator, self._zpow = quotient, ONE_POLY, 0
                    return
        self.numerator, self.denominator = num, den

    # constructors -----------------------------------------------------------

    @classmethod
    def from_poly(cls, p: BivariateLaurent) -> RationalFunction:
        return cls._from_zpow(p, 0)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other: RationalFunction | BivariateLaurent | int) -> RationalFunction:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._zpow is not None and other._zpow is not None:
            k = max(self._zpow, other._zpow)
            n1 = self.numerator if k == self._zpow else self.numerator * _z_power(k - self._zpow)
            n2 = other.numerator if k == other._zpow else other.numerator * _z_power(k - other._zpow)
            return RationalFunction._from_zpow(n1 + n2, k)
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(self.numerator * other.denominator + other.numerator * self.denominator,
                                self.denominator * other.denominator)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        obj = RationalFunction.__new__(RationalFunction)
        obj.numerator, obj.denominator, obj._zpow = -self.numerator, self.denominator, self._zpow
        return obj

    def __sub__(self, other: RationalFunction | BivariateLaurent | int) -> RationalFunction:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: BivariateLaurent | int) -> RationalFunction:
        return _coerce(other) - self

    def __mul__(self, other: RationalFunction | BivariateLaurent | int) -> RationalFunction:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._zpow is not None and other._zpow is not None:
            return RationalFunction._from_zpow(self.numerator * other.numerator, self._zpow + other._zpow)
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RationalFunction:
        if n < 0:
            return RationalFunction(self.denominator, self.numerator) ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other: RationalFunction | BivariateLaurent | int) -> RationalFunction:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None  # type: ignore[assignment]

    # maps -------------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def invert_variables(self) -> RationalFunction:
        """Apply ``(a, q) -> (a^-1, q^-1)`` to numerator and denominator."""
        return RationalFunction(self.numerator.invert_variables(), self.denominator.invert_variables())

    def substitute_a(self, n: int) -> RationalFunction:
        return RationalFunction(self.numerator.substitute_a(n), self.denominator.substitute_a(n))

    def substitute_a2(self) -> RationalFunction:
        return RationalFunction(self.numerator.substitute_a2(), self.denominator.substitute_a2())

    def is_laurent(self) -> bool:
        return self.denominator.is_one()

    # formatting -------------------------------------------------------------

    def __str__(self) -> str:
        if self.denominator.is_one():
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"

    def __repr__(self) -> str:
        return f"RationalFunction('{self}')"

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_triples(), "denominator": self.denominator.to_triples()}

    @classmethod
    def from_json(cls, obj: dict | str) -> RationalFunction:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(BivariateLaurent.from_triples(obj["numerator"]),
                   BivariateLaurent.from_triples(obj["denominator"]))


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, BivariateLaurent):
        return RationalFunction._from_zpow(x, 0)
    if isinstance(x, int):
        return RationalFunction._from_zpow(BivariateLaurent.constant(x), 0)
    return NotImplemented


_RATIO = re.compile(r"^\((.*)\)\s*/\s*\((.*)\)$", re.S)


def parse_rational(text: str) -> RationalFunction:
    """Parse ``"(num)/(den)"`` or a bare polynomial."""
    s = text.strip()
    m = _RATIO.match(s)
    if m and "(" not in m.group(1) and "(" not in m.group(2):
        return RationalFunction(parse_laurent(m.group(1)), parse_laurent(m.group(2)))
    if s.startswith("(") and s.endswith(")") and "(" not in s[1:-1]:
        s = s[1:-1]
    return RationalFunction(parse_laurent(s))


ONE = RationalFunction._from_zpow(ONE_POLY, 0)
ZERO = RationalFunction._from_zpow(ZERO_POLY, 0)
A = RationalFunction.from_poly(BivariateLaurent.monomial(1, 0))
Q = RationalFunction.from_poly(BivariateLaurent.monomial(0, 1))
Z = RationalFunction.from_poly(Z_POLY)


def add(x: RationalFunction, y: RationalFunction) -> RationalFunction:
    return x + y


def mul(x: RationalFunction, y: RationalFunction) -> RationalFunction:
    return x * y


def equals(x: RationalFunction, y: RationalFunction) -> bool:
    return x == y


def substitute_a(x: RationalFunction, n: int) -> RationalFunction:
    """Specialize ``a = q^n``; the result has no ``a`` left."""
    return x.substitute_a(n)


def invert(x: RationalFunction) -> RationalFunction:
    return x.invert_variables()


def monomial(ea: int = 0, eq: int = 0, coeff: int = 1) -> RationalFunction:
    return RationalFunction.from_poly(BivariateLaurent.monomial(ea, eq, coeff))
