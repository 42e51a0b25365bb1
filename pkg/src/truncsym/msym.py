"""Symmetric polynomials in n variables, stored in the monomial basis m_lambda."""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

from .field import Field, Scalar
from .partition import (
    Partition,
    distinct_permutations,
    graded_lex_key,
    orbit_size,
    parse_partition,
)

__all__ = [
    "MSymPoly",
    "PolyParseError",
    "basis_product",
    "msym_add",
    "msym_mul",
    "msym_pow",
    "expand_to_monomials",
    "from_monomial_expansion",
    "verify_newton_identity",
    "parse_poly",
]


class PolyParseError(ValueError):
    """Raised for malformed polynomial literals; ``token`` is the offending piece."""

    def __init__(self, token: str, reason: str = "cannot parse term"):
        super().__init__(f"{reason}: {token!r}")
        self.token = token


def _canon(seq: Iterable[int]) -> Partition:
    return Partition._trusted(tuple(sorted((x for x in seq if x), reverse=True)))


@lru_cache(maxsize=1 << 16)
def basis_product(lam: tuple, mu: tuple, n: int) -> tuple[tuple[Partition, int], ...]:
    """Integer structure constants of ``m_lam * m_mu`` in ``n`` variables.

    Returns ``((nu, c_nu), ...)`` in graded-lex order, where ``c_nu`` counts the
    ways to write a fixed arrangement of ``nu`` as ``alpha + beta`` with ``alpha`` a
    rearrangement of ``lam`` and ``beta`` one of ``mu``.

    Only the operand with the smaller orbit is permuted. With the other operand
    held at one arrangement, each ``nu`` is hit ``N_nu`` times, and summing over
    the diagonal S_n action gives ``c_nu * |orbit(nu)| = |orbit(mu)| * N_nu``.
    """
    if len(lam) > n or len(mu) > n:
        return ()
    if orbit_size(lam, n) > orbit_size(mu, n):
        lam, mu = mu, lam
    fixed = tuple(mu) + (0,) * (n - len(mu))
    hits: Counter = Counter()
    for alpha in distinct_permutations(lam, n):
        hits[_canon(a + b for a, b in zip(alpha, fixed))] += 1
    om = orbit_size(mu, n)
    out = []
    for nu, k in hits.items():
        c, rem = divmod(om * k, orbit_size(nu, n))
        if rem:
            raise ArithmeticError(f"non-integral structure constant for {lam} * {mu} at {nu}")
        out.append((nu, c))
    out.sort(key=lambda t: graded_lex_key(t[0]))
    return tuple(out)


class MSymPoly:
    """An element of F[x_1..x_n]^{S_n} as a finite sum of ``c * m_lambda``.

    Terms with more than ``n`` parts are dropped on construction (those m_lambda
    vanish), as are zero coefficients. Instances are treated as immutable.
    """

    __slots__ = ("n", "field", "_terms")

    def __init__(self, n: int, field: Field, terms: Mapping | Iterable = ()):
        if n < 0:
            raise ValueError(f"variable count must be nonnegative, got {n}")
        self.n = n
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Partition, Scalar] = {}
        for lam, c in items:
            lam = lam if type(lam) is Partition else Partition(lam)
            if len(lam) > n:
                continue
            c = field(c)
            acc[lam] = field.add(acc[lam], c) if lam in acc else c
        self._terms = _sorted_nonzero(acc)

    @classmethod
    def _raw(cls, n: int, field: Field, acc: dict) -> "MSymPoly":
        # acc: Partition -> value already in the field or an int/Fraction to reduce
        self = object.__new__(cls)
        self.n = n
        self.field = field
        if field.characteristic:
            p = field.characteristic
            acc = {k: v % p for k, v in acc.items()}
        self._terms = _sorted_nonzero(acc)
        return self

    # constructors

    @classmethod
    def zero(cls, n: int, field: Field) -> "MSymPoly":
        return cls(n, field)

    @classmethod
    def one(cls, n: int, field: Field) -> "MSymPoly":
        return cls(n, field, {Partition(): 1})

    @classmethod
    def monomial(cls, lam, n: int, field: Field, coeff=1) -> "MSymPoly":
        """``coeff * m_lam``; zero when ``lam`` has more than ``n`` parts."""
        return cls(n, field, {Partition(lam): coeff})

    @classmethod
    def elementary(cls, i: int, n: int, field: Field) -> "MSymPoly":
        return cls.monomial(Partition.power(1, i), n, field)

    @classmethod
    def power_sum(cls, i: int, n: int, field: Field) -> "MSymPoly":
        return cls.monomial(Partition.power(i, 1), n, field)

    # access

    @property
    def terms(self) -> Mapping[Partition, Scalar]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def support(self) -> tuple[Partition, ...]:
        return tuple(self._terms)

    def coeff(self, lam) -> Scalar:
        return self._terms.get(Partition(lam), self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Largest weight in the support; -1 for the zero polynomial."""
        return max((lam.weight for lam in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({lam.weight for lam in self._terms}) <= 1

    # arithmetic

    def _check(self, other: "MSymPoly") -> None:
        if not isinstance(other, MSymPoly):
            raise TypeError(f"expected MSymPoly, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"variable counts differ: {self.n} vs {other.n}")
        if other.field != self.field:
            raise ValueError(f"coefficient fields differ: {self.field} vs {other.field}")

    def __add__(self, other):
        if not isinstance(other, MSymPoly):
            return NotImplemented
        return msym_add(self, other)

    def __neg__(self):
        f = self.field
        return MSymPoly._raw(self.n, f, {k: f.neg(v) for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MSymPoly):
            return NotImplemented
        return msym_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, MSymPoly):
            return msym_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        return msym_pow(self, k)

    def scale(self, c) -> "MSymPoly":
        f = self.field
        c = f(c)
        return MSymPoly._raw(self.n, f, {k: f.mul(c, v) for k, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MSymPoly):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.field, tuple(self._terms.items())))

    # conversions

    def expand(self) -> dict[tuple[int, ...], Scalar]:
        return expand_to_monomials(self)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.field.characteristic,
            "terms": [
                {"partition": list(lam), "coeff": self.field.format(c)}
                for lam, c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "MSymPoly":
        field = Field(int(obj["p"]))
        terms = []
        for t in obj["terms"]:
            parts = [int(x) for x in t["partition"]]
            terms.append((Partition(parts), field.parse(str(t["coeff"]))))
        return cls(int(obj["n"]), field, terms)

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"MSymPoly(n={self.n}, field={self.field}, {render_poly(self)!r})"


def _sorted_nonzero(acc: dict) -> dict:
    return {k: acc[k] for k in sorted(acc, key=graded_lex_key) if acc[k] != 0}


def msym_add(f: MSymPoly, g: MSymPoly) -> MSymPoly:
    f._check(g)
    acc = dict(f._terms)
    fld = f.field
    for lam, c in g._terms.items():
        acc[lam] = fld.add(acc[lam], c) if lam in acc else c
    return MSymPoly._raw(f.n, fld, acc)


def msym_mul(f: MSymPoly, g: MSymPoly) -> MSymPoly:
    """Product via exact integer structure constants, reduced into the field once."""
    f._check(g)
    n = f.n
    acc: dict[Partition, Scalar] = {}
    for lam, a in f._terms.items():
        for mu, b in g._terms.items():
            ab = a * b
            for nu, c in basis_product(lam, mu, n):
                acc[nu] = acc.get(nu, 0) + ab * c
    return MSymPoly._raw(n, f.field, acc)


def msym_pow(f: MSymPoly, k: int) -> MSymPoly:
    if k < 0:
        raise ValueError(f"exponent must be nonnegative, got {k}")
    result = MSymPoly.one(f.n, f.field)
    base = f
    while k:
        if k & 1:
            result = msym_mul(result, base)
        k >>= 1
        if k:
            base = msym_mul(base, base)
    return result


def expand_to_monomials(f: MSymPoly) -> dict[tuple[int, ...], Scalar]:
    """Write ``f`` out in the monomials x^alpha of x_1..x_n, keyed by exponent vector."""
    out: dict[tuple[int, ...], Scalar] = {}
    for lam, c in f.items():
        for alpha in distinct_permutations(lam, f.n):
            out[alpha] = c
    return out


def from_monomial_expansion(expansion: Mapping, n: int, field: Field) -> MSymPoly:
    """Recover m-basis coordinates from a symmetric monomial expansion.

    Raises ``ValueError`` naming the first orbit whose coefficients are not constant.
    """
    coeffs: dict[tuple[int, ...], Scalar] = {}
    for alpha, c in expansion.items():
        alpha = tuple(int(x) for x in alpha)
        if len(alpha) != n or any(x < 0 for x in alpha):
            raise ValueError(f"exponent vector {alpha} is not a length-{n} composition")
        c = field(c)
        if c != 0:
            coeffs[alpha] = c
    seen: set[Partition] = set()
    terms: dict[Partition, Scalar] = {}
    for alpha in sorted(coeffs):
        lam = _canon(alpha)
        if lam in seen:
            continue
        seen.add(lam)
        c = coeffs[alpha]
        for beta in distinct_permutations(lam, n):
            cb = coeffs.get(beta, field.zero)
            if cb != c:
                raise ValueError(
                    f"expansion is not symmetric: orbit of m[{lam.comma_form()}] has "
                    f"coefficient {field.format(c)} at {alpha} but {field.format(cb)} at {beta}"
                )
        terms[lam] = c
    return MSymPoly(n, field, terms)


def verify_newton_identity(n: int, s: int, field: Field) -> bool:
    """Check m_(s) = sum_{j=1..n} (-1)^(j-1) m_(1^j) m_(s-j) in n variables."""
    if n < 1 or s <= n:
        raise ValueError(f"need s > n >= 1, got n={n}, s={s}")
    rhs = MSymPoly.zero(n, field)
    for j in range(1, n + 1):
        term = msym_mul(MSymPoly.elementary(j, n, field), MSymPoly.power_sum(s - j, n, field))
        rhs = rhs + term if j % 2 else rhs - term
    return (MSymPoly.power_sum(s, n, field) - rhs).is_zero()


def render_poly(f: MSymPoly) -> str:
    """Text form like ``m[3,2] + 2*m[3,1,1] - 1/2*m[2,2,1]``."""
    if f.is_zero():
        return "0"
    fld = f.field
    pieces = []
    for lam, c in f.items():
        negative = fld.characteristic == 0 and c < 0
        mag = -c if negative else c
        body = f"m[{lam.comma_form()}]"
        if mag != 1:
            body = f"{fld.format(mag)}*{body}"
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*)?m\[([0-9,^]*)\]$")
_CONST = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str, n: int, field: Field) -> MSymPoly:
    """Parse a literal such as ``"m[3^2,1] + 2*m[2,2,2] - 1/2*m[]"``.

    A bare number is a multiple of ``m[]`` (the constant 1). Whitespace is ignored.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolyParseError(text, "empty polynomial")
    if s == "0":
        return MSymPoly.zero(n, field)
    chunks: list[tuple[int, str]] = []
    sign, start, depth = 1, 0, 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = 1
    for i in range(start, len(s)):
        ch = s[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch in "+-" and depth == 0:
            chunks.append((sign, s[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
    chunks.append((sign, s[start:]))
    terms = []
    for sgn, tok in chunks:
        if _CONST.match(tok):
            coeff, lam = Fraction(tok), Partition()
        else:
            m = _TERM.match(tok)
            if not m:
                raise PolyParseError(tok)
            try:
                lam = parse_partition(m.group(2))
            except ValueError:
                raise PolyParseError(tok, "bad partition in term") from None
            coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        try:
            terms.append((lam, field.coerce(sgn * coeff)))
        except ZeroDivisionError:
            raise PolyParseError(tok, f"coefficient not invertible in {field}") from None
    return MSymPoly(n, field, terms)
