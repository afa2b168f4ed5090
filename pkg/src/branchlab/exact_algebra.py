"""Exact scalars, polynomials in ``t`` and rational-function series.

Field elements are plain Python values: :class:`fractions.Fraction` over the
rationals and ``int`` residues in ``range(p)`` over GF(p).  A
:class:`FieldSpec` carries the arithmetic for its elements.

:class:`UniPoly` is a dense polynomial in ``t`` with coefficients low to high
and no trailing zeros.  :class:`RatSeries` stores ``t**val * num / den`` with
``num(0) != 0``, ``den(0) == 1`` and ``gcd(num, den) == 1``; this canonical form
makes equality decidable and keeps every quantity of the tableau recursion
exact.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DivisionByZero,
    FieldSyntax,
    NotInValuationRing,
    PolySyntax,
    PrimeRequired,
    ResultantUndefined,
)

INF = math.inf

RATIONALS = "Rationals"
PRIME_FIELD = "PrimeField"


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


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    characteristic: int

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == PRIME_FIELD:
            if not is_prime(self.characteristic):
                raise PrimeRequired(f"{self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONALS

    def __str__(self):
        return "Q" if self.is_rational else f"GF({self.characteristic})"

    # element handling -------------------------------------------------
    def __call__(self, value):
        """Coerce an int, Fraction or element string into the field."""
        if isinstance(value, str):
            return self.parse_element(value)
        if self.is_rational:
            return Fraction(value)
        p = self.characteristic
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes in {self}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def reduce(self, value):
        return value if self.is_rational else value % self.characteristic

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.is_rational:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def format(self, a) -> str:
        if self.is_rational:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(int(a))

    def parse_element(self, text: str):
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?", text)
        if not m:
            raise FieldSyntax(f"not a field literal: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise FieldSyntax(f"zero denominator in {text!r}")
        try:
            return self(Fraction(num, den))
        except DivisionByZero as exc:
            raise FieldSyntax(str(exc)) from None

    def elements(self) -> Iterable:
        """Nonzero elements in a deterministic order (finite fields only enumerate all)."""
        if self.is_rational:
            n = 1
            while True:
                yield Fraction(n)
                yield Fraction(-n)
                n += 1
        else:
            yield from range(1, self.characteristic)


QQ = FieldSpec(RATIONALS, 0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(PRIME_FIELD, p)


def parse_field(text: str) -> FieldSpec:
    """Parse ``"Q"`` or ``"GF(p)"``."""
    s = text.strip()
    if s == "Q":
        return QQ
    m = re.fullmatch(r"GF\(\s*(\d+)\s*\)", s)
    if not m:
        raise FieldSyntax(f"unknown field {text!r}; expected Q or GF(p)")
    p = int(m.group(1))
    if not is_prime(p):
        raise PrimeRequired(f"GF({p}): {p} is not prime")
    return GF(p)


# ----------------------------------------------------------------------
# polynomials in t
# ----------------------------------------------------------------------
class UniPoly:
    """Immutable dense polynomial in ``t`` over a :class:`FieldSpec`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Sequence = ()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def _raw(cls, field, coeffs):
        # coeffs already reduced; only trailing zeros are stripped
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    @classmethod
    def monomial(cls, field, exponent, coeff=1):
        return cls(field, [0] * exponent + [field(coeff)])

    @classmethod
    def from_terms(cls, field, terms: dict):
        if not terms:
            return cls(field)
        cs = [0] * (max(terms) + 1)
        for e, c in terms.items():
            cs[e] = field(c)
        return cls(field, cs)

    # basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def ord(self):
        """Lowest exponent with nonzero coefficient (``INF`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return INF

    def __getitem__(self, e: int):
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else self.field.zero

    @property
    def terms(self) -> dict:
        return {e: c for e, c in enumerate(self.coeffs) if c != 0}

    def exponents(self):
        return [e for e, c in enumerate(self.coeffs) if c != 0]

    @property
    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.field}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # arithmetic -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        return UniPoly(self.field, [self.field(other)])

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        red = self.field.reduce
        out = list(a)
        for i, c in enumerate(b):
            out[i] = red(out[i] + c)
        return UniPoly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.reduce
        return UniPoly._raw(self.field, [red(-c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(self.field, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        red = self.field.reduce
        return UniPoly._raw(self.field, [red(c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly(self.field, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        c = self.field(c) if not isinstance(c, (Fraction, int)) else c
        red = self.field.reduce
        return UniPoly._raw(self.field, [red(x * c) for x in self.coeffs])

    def shift(self, k: int):
        """Multiply by ``t**k`` (``k >= 0``) or divide by ``t**-k`` when exact."""
        if not self.coeffs:
            return self
        if k >= 0:
            return UniPoly._raw(self.field, (0,) * k + self.coeffs)
        if any(c != 0 for c in self.coeffs[:-k]):
            raise ValueError("t-power division is not exact")
        return UniPoly._raw(self.field, self.coeffs[-k:])

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = f.inv(other.leading_coefficient)
        if len(rem) - 1 < db:
            return UniPoly._raw(f, ()), self
        quo = [0] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = f.reduce(rem[k + db] * inv_lc)
            quo[k] = c
            if c != 0:
                for j in range(db + 1):
                    rem[k + j] = f.reduce(rem[k + j] - c * bc[j])
        return UniPoly._raw(f, quo), UniPoly._raw(f, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading_coefficient))

    def __call__(self, value):
        """Evaluate at a field element (Horner)."""
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = self.field.reduce(acc * value + c)
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Substitute ``t := inner``."""
        acc = UniPoly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    if a.field.is_rational and _coprime_mod_prime(a, b):
        return UniPoly._raw(a.field, [Fraction(1)])
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


_CHECK_PRIME = (1 << 61) - 1


def _mod_image(f: UniPoly, q: int):
    out = []
    for c in f.coeffs:
        if c.denominator % q == 0:
            return None
        out.append(c.numerator * pow(c.denominator, -1, q) % q)
    return out


def _coprime_mod_prime(a: UniPoly, b: UniPoly) -> bool:
    """Sufficient test for ``gcd(a, b) = 1`` over Q.

    Reduction modulo a prime that keeps both degrees can only raise the
    degree of the gcd, so a constant gcd modulo ``q`` proves coprimality.
    Returns False when the test is inconclusive.
    """
    if a.is_zero() or b.is_zero():
        return False
    q = _CHECK_PRIME
    fa, fb = _mod_image(a, q), _mod_image(b, q)
    if fa is None or fb is None or fa[-1] == 0 or fb[-1] == 0:
        return False
    while fb:
        inv = pow(fb[-1], -1, q)
        r = fa[:]
        while len(r) >= len(fb):
            k = r[-1] * inv % q
            shift = len(r) - len(fb)
            if k:
                for i, c in enumerate(fb):
                    r[shift + i] = (r[shift + i] - k * c) % q
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        fa, fb = fb, r
    return len(fa) == 1


# ----------------------------------------------------------------------
# polynomial text grammar
# ----------------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<op>[-+*/^])|(?P<var>t))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise PolySyntax(f"unexpected character {text[col - 1]!r}", column=col)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


def parse_poly(text: str, field: FieldSpec) -> UniPoly:
    """Parse ``term (('+'|'-') term)*`` where ``term := [coef '*'] 't' ['^' nat] | coef``."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind, value=None):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise PolySyntax(f"expected {want!r}, found {got!r}", column=tok[2])
        i += 1
        return tok

    def coef():
        num = int(take("num")[1])
        if peek()[:2] == ("op", "/"):
            slash = take("op", "/")
            den = int(take("num")[1])
            if den == 0:
                raise FieldSyntax("zero denominator in coefficient", column=slash[2])
            try:
                return field(Fraction(num, den))
            except DivisionByZero as exc:
                raise FieldSyntax(str(exc), column=slash[2]) from None
        return field(num)

    def power():
        take("var")
        if peek()[:2] == ("op", "^"):
            take("op", "^")
            return int(take("num")[1])
        return 1

    def term():
        if peek()[0] == "var":
            return field.one, power()
        c = coef()
        if peek()[:2] == ("op", "*"):
            take("op", "*")
            return c, power()
        return c, 0

    if peek()[0] == "end":
        raise PolySyntax("empty polynomial", column=1)
    acc: dict = {}
    sign = 1
    if peek()[:2] in (("op", "-"), ("op", "+")):
        sign = -1 if take("op")[1] == "-" else 1
    while True:
        c, e = term()
        acc[e] = field.reduce(acc.get(e, field.zero) + (c if sign > 0 else -c))
        tok = peek()
        if tok[0] == "end":
            break
        if tok[:2] not in (("op", "+"), ("op", "-")):
            raise PolySyntax(f"expected '+' or '-', found {tok[1]!r}", column=tok[2])
        sign = -1 if take("op")[1] == "-" else 1
    return UniPoly.from_terms(field, {e: c for e, c in acc.items()})


def format_poly(f: UniPoly, var: str = "t") -> str:
    if f.is_zero():
        return "0"
    out = []
    for e, c in f.terms.items():
        neg = f.field.is_rational and c < 0
        mag = -c if neg else c
        s = f.field.format(mag)
        if e == 0:
            body = s
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if s == "1" else f"{s}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


# ----------------------------------------------------------------------
# rational-function series
# ----------------------------------------------------------------------
class RatSeries:
    """Exact element ``t**val * num / den`` of the fraction field of ``k[[t]]``."""

    __slots__ = ("field", "val", "num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None, val: int = 0):
        field = num.field
        if den is None:
            den = UniPoly(field, [1])
        if den.is_zero():
            raise DivisionByZero("series with zero denominator")
        if num.is_zero():
            self._set(field, 0, UniPoly(field), UniPoly(field, [1]))
            return
        k = num.ord()
        num = num.shift(-k)
        val += k
        k = den.ord()
        den = den.shift(-k)
        val -= k
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        c = field.inv(den.coeffs[0])
        if c != 1:
            num = num.scale(c)
            den = den.scale(c)
        self._set(field, val, num, den)

    def _set(self, field, val, num, den):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatSeries is immutable")

    @classmethod
    def of(cls, p: UniPoly) -> "RatSeries":
        return cls(p)

    @classmethod
    def const(cls, field, c) -> "RatSeries":
        return cls(UniPoly(field, [field(c)]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatSeries):
            return NotImplemented
        return (self.field, self.val, self.num, self.den) == (
            other.field, other.val, other.num, other.den)

    def __hash__(self):
        return hash((self.field, self.val, self.num, self.den))

    def __repr__(self):
        head = "" if self.val == 0 else f"t^{self.val} * "
        return f"RatSeries({head}({self.num}) / ({self.den}))"

    def as_fraction(self):
        """Return ``(numerator, denominator)`` polynomials with t-powers restored."""
        if self.val >= 0:
            return self.num.shift(self.val), self.den
        return self.num, self.den.shift(-self.val)

    def _parts(self, other):
        if isinstance(other, RatSeries):
            return other
        if isinstance(other, UniPoly):
            return RatSeries(other)
        return RatSeries.const(self.field, other)

    def __add__(self, other):
        other = self._parts(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        v = min(self.val, other.val)
        n1 = self.num.shift(self.val - v) * other.den
        n2 = other.num.shift(other.val - v) * self.den
        return RatSeries(n1 + n2, self.den * other.den, v)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        out = object.__new__(RatSeries)
        out._set(self.field, self.val, -self.num, self.den)
        return out

    def __sub__(self, other):
        return self + (-self._parts(other))

    def __rsub__(self, other):
        return self._parts(other) - self

    def __mul__(self, other):
        other = self._parts(other)
        if self.is_zero() or other.is_zero():
            return RatSeries(UniPoly(self.field))
        return RatSeries(self.num * other.num, self.den * other.den, self.val + other.val)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._parts(other)
        if other.is_zero():
            raise DivisionByZero("series division by zero")
        if self.is_zero():
            return self
        return RatSeries(self.num * other.den, self.den * other.num, self.val - other.val)

    def __rtruediv__(self, other):
        return self._parts(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatSeries.const(self.field, 1) / (self ** (-n))
        if self.is_zero():
            return RatSeries.const(self.field, 1) if n == 0 else self
        out = object.__new__(RatSeries)
        out._set(self.field, self.val * n, self.num ** n, self.den ** n)
        return out


def ord_t(s: RatSeries):
    """t-adic valuation; ``INF`` for zero, error if negative."""
    if s.is_zero():
        return INF
    if s.val < 0:
        raise NotInValuationRing(f"valuation {s.val} < 0")
    return s.val


def series_arith(a: RatSeries, b: RatSeries | None, op: str, n: int | None = None) -> RatSeries:
    """Dispatch ``add``, ``sub``, ``mul``, ``div`` or ``pow`` (with exponent ``n``)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** n
    raise ValueError(f"unknown series operation {op!r}")


def coeff_at(s: RatSeries, e: int):
    """Coefficient of ``t**e`` in the Laurent expansion of ``s``."""
    f = s.field
    k = e - s.val
    if s.is_zero() or k < 0:
        return f.zero
    num, den = s.num.coeffs, s.den.coeffs
    # den[0] == 1 by normalization
    out = []
    for i in range(k + 1):
        acc = num[i] if i < len(num) else 0
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append(f.reduce(acc))
    return out[k]


def leading_coefficient(s: RatSeries):
    return coeff_at(s, s.val) if not s.is_zero() else s.field.zero


# ----------------------------------------------------------------------
# resultants
# ----------------------------------------------------------------------
def _strip(p: Sequence[UniPoly]) -> list:
    out = list(p)
    while out and out[-1].is_zero():
        out.pop()
    return out


def sylvester_matrix(p: Sequence[UniPoly], q: Sequence[UniPoly]) -> list:
    """Sylvester matrix in ``s``; the ``deg q`` rows of ``p`` come first."""
    p, q = _strip(p), _strip(q)
    m, n = len(p) - 1, len(q) - 1
    field = (p or q)[0].field
    zero = UniPoly(field)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return rows


def _bareiss_det(rows: list, field: FieldSpec) -> UniPoly:
    n = len(rows)
    if n == 0:
        return UniPoly(field, [1])
    M = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return UniPoly(field)
        piv = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                val = M[i][j] * piv - mik * M[k][j]
                M[i][j] = val if prev is None else val.exact_div(prev)
            M[i][k] = UniPoly(field)
        prev = piv
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(p: Sequence[UniPoly], q: Sequence[UniPoly]) -> UniPoly:
    """Resultant in ``s`` of two polynomials with ``k[t]`` coefficients.

    ``p[i]`` is the coefficient of ``s**i``.  Computed as the Sylvester
    determinant (``p`` rows first) by fraction-free elimination.
    """
    p, q = _strip(p), _strip(q)
    if not p or not q:
        field = (list(p) + list(q) or [None])[0]
        if field is None:
            raise ResultantUndefined("both operands are zero")
        return UniPoly(field.field)
    if len(p) == 1 and len(q) == 1:
        raise ResultantUndefined("both operands have degree 0 in s")
    field = p[0].field
    return _bareiss_det(sylvester_matrix(p, q), field)
