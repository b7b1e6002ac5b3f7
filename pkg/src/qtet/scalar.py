"""Exact scalars: rational functions over Q in q, t, a, b, c.

A :class:`Scalar` is ``num / den`` with integer-coefficient Laurent
polynomials.  The canonical form has ``den`` shifted so every variable's
minimal exponent is zero, a positive leading coefficient in ``den``, no common
integer content, and common polynomial factors removed by a heuristic gcd.
Equality always falls back to cross-multiplication, so a gcd that fails to
cancel something never produces a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
import re

from .laurent import (
    VARS,
    LaurentPoly,
    format_terms,
    p_add,
    p_content,
    p_divide_exact,
    p_min_exps,
    p_mul,
    pack,
    poly_gcd,
    unpack,
    monomial_key,
)


class DegenerateError(ValueError):
    """A specialization hits a vanishing denominator or a guarded locus."""


def _neg(f: dict) -> dict:
    return {k: -c for k, c in f.items()}


def _shift(f: dict, s: int) -> dict:
    return {k + s: c for k, c in f.items()} if s else f


def _divq(f: dict, g: int) -> dict:
    return {k: c // g for k, c in f.items()} if g != 1 else f


def _is_const(f: dict) -> bool:
    return len(f) == 1 and 0 in f


def _normalize(num: dict, den: dict, reduce: bool = True):
    """Bring an integer-coefficient pair into canonical form."""
    if not den:
        raise ZeroDivisionError("zero divisor")
    if not num:
        return {}, {0: 1}
    if len(den) == 1:
        (kd, cd), = den.items()
        num = _shift(num, -kd)
        cn = p_content(num)
        g = gcd(cn, cd)
        if cd < 0:
            g = -g
        return _divq(num, g), {0: cd // g}
    # monomial normalization of den
    mins = p_min_exps(den)
    s = pack(mins)
    if s:
        den = _shift(den, -s)
        num = _shift(num, -s)
    if reduce:
        nmins = p_min_exps(num)
        ns = pack(nmins)
        npoly = _shift(num, -ns)
        g = poly_gcd(npoly, den)
        if len(g) > 1 or 0 not in g:
            qn = p_divide_exact(npoly, g)
            qd = p_divide_exact(den, g)
            if qn is not None and qd is not None:
                num = _shift(qn, ns)
                den = qd
                mins = p_min_exps(den)
                s = pack(mins)
                if s:
                    den = _shift(den, -s)
                    num = _shift(num, -s)
        else:
            c = g[0]
            if c != 1:
                num = _divq(num, c)
                den = _divq(den, c)
    cn = p_content(num)
    cd = p_content(den)
    c = gcd(cn, cd)
    if den[max(den)] < 0:
        c = -c
    if c != 1:
        num = _divq(num, c)
        den = _divq(den, c)
    return num, den


class Scalar:
    """Immutable element of Q(q, t, a, b, c)."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, value=0, den=None):
        if isinstance(value, Scalar) and den is None:
            self.num, self.den, self._h = value.num, value.den, None
            return
        n = _coerce_dict(value)
        d = {0: 1} if den is None else _coerce_dict(den)
        n, d = _clear_fractions(n, d)
        self.num, self.den = _normalize(n, d)
        self._h = None

    @classmethod
    def _raw(cls, num: dict, den: dict) -> "Scalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._h = None
        return obj

    @classmethod
    def _make(cls, num: dict, den: dict, reduce: bool = True) -> "Scalar":
        n, d = _normalize(num, den, reduce)
        return cls._raw(n, d)

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Scalar":
        if name not in VARS:
            raise KeyError(f"unknown indeterminate {name!r}")
        exps = {name: power}
        return cls._raw({monomial_key(**exps): 1}, {0: 1}) if power >= 0 else cls._make(
            {monomial_key(**exps): 1}, {0: 1})

    @classmethod
    def monomial(cls, coeff=1, **exps) -> "Scalar":
        return cls(LaurentPoly({monomial_key(**exps): Fraction(coeff)}))

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return (not self.num or _is_const(self.num)) and _is_const(self.den)

    def is_laurent(self) -> bool:
        """True when the denominator is a constant (a Laurent polynomial)."""
        return _is_const(self.den)

    def numerator(self) -> LaurentPoly:
        return LaurentPoly._raw(dict(self.num))

    def denominator(self) -> LaurentPoly:
        return LaurentPoly._raw(dict(self.den))

    def variables(self) -> set:
        return self.numerator().variables() | self.denominator().variables()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self.num.get(0, 0), self.den[0])

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return _add(self, o, 1)

    def __radd__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return _add(o, self, 1)

    def __sub__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return _add(self, o, -1)

    def __rsub__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return _add(o, self, -1)

    def __neg__(self):
        return Scalar._raw(_neg(self.num), self.den)

    def __mul__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return _mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return _mul(self, o.inv())

    def __rtruediv__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return _mul(o, self.inv())

    def inv(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("zero divisor")
        return Scalar._make(self.den, self.num, reduce=False)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inv()
        n = abs(n)
        if len(base.num) == 1 and _is_const(base.den):
            (k, c), = base.num.items()
            return Scalar._make({k * n: c ** n}, {0: base.den[0] ** n}, reduce=False)
        out = ONE
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        if self.num == o.num and self.den == o.den:
            return True
        if not self.num or not o.num:
            return False
        return p_add(p_mul(self.num, o.den), p_mul(o.num, self.den), -1) == {}

    def __hash__(self):
        if self._h is None:
            self._h = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._h

    def __bool__(self):
        return bool(self.num)

    # -- substitution ------------------------------------------------------------

    def monomial_map(self, images: dict) -> "Scalar":
        """Apply the monomial substitution ``v -> prod(w**images[v][w])``."""
        mat = []
        for v in VARS:
            img = images.get(v, {v: 1})
            mat.append([img.get(w, 0) for w in VARS])

        def conv(f):
            out = {}
            for k, c in f.items():
                e = unpack(k)
                new = [0] * len(VARS)
                for i, ei in enumerate(e):
                    if ei:
                        row = mat[i]
                        for j in range(len(VARS)):
                            new[j] += ei * row[j]
                kk = pack(new)
                out[kk] = out.get(kk, 0) + c
            return {k: c for k, c in out.items() if c}

        return Scalar._make(conv(self.num), conv(self.den))

    def invert_vars(self, *names) -> "Scalar":
        return self.monomial_map({v: {v: -1} for v in names})

    def subs(self, values: dict) -> "Scalar":
        """Substitute exact rationals for some indeterminates."""
        vals = {v: Fraction(x) for v, x in values.items()}
        n = _partial_eval(self.num, vals)
        d = _partial_eval(self.den, vals)
        if not d:
            raise DegenerateError(
                f"denominator {format_terms(self.den)} vanishes at {_fmt_point(vals)}")
        n, d = _clear_fractions(n, d)
        return Scalar._make(n, d)

    def evaluate(self, values: dict) -> Fraction:
        s = self.subs(values)
        if not s.is_constant():
            missing = sorted(s.variables())
            raise KeyError(f"no value for {', '.join(missing)}")
        return s.to_fraction()

    # -- text ------------------------------------------------------------------

    def canonical(self) -> str:
        return f"{format_terms(self.num)} / {format_terms(self.den)}"

    def __str__(self):
        if _is_const(self.den) and self.den[0] == 1:
            return format_terms(self.num)
        return f"({format_terms(self.num)}) / ({format_terms(self.den)})"

    def __repr__(self):
        return f"Scalar({self.canonical()!r})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse canonical ``num / den`` text or a bare polynomial/rational."""
        text = text.strip()
        parts = _split_top_slash(text)
        if len(parts) == 2:
            return cls(_parse_poly(parts[0]), _parse_poly(parts[1]))
        return cls(_parse_poly(text))


# ---------------------------------------------------------------------------


def _coerce_dict(x) -> dict:
    if isinstance(x, LaurentPoly):
        return x.terms
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return {0: x} if x else {}
    if isinstance(x, Scalar):
        raise TypeError("use Scalar division for Scalar arguments")
    if isinstance(x, str):
        return _parse_poly(x).terms
    raise TypeError(f"cannot build a Scalar from {type(x).__name__}")


def _clear_fractions(n: dict, d: dict):
    """Scale a pair of rational-coefficient dicts to integer coefficients."""
    lcm = 1
    for f in (n, d):
        for c in f.values():
            if isinstance(c, Fraction):
                den = c.denominator
                lcm = lcm * den // gcd(lcm, den)
    if lcm == 1:
        return ({k: int(c) for k, c in n.items()}, {k: int(c) for k, c in d.items()})
    return ({k: int(c * lcm) for k, c in n.items()}, {k: int(c * lcm) for k, c in d.items()})


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return Scalar._raw({0: x} if x else {}, {0: 1})
    if isinstance(x, Fraction):
        if not x:
            return ZERO
        return Scalar._raw({0: x.numerator}, {0: x.denominator})
    if isinstance(x, LaurentPoly):
        return Scalar(x)
    return None


def _add(x: Scalar, y: Scalar, sign: int) -> Scalar:
    if not y.num:
        return x
    if not x.num:
        return y if sign == 1 else -y
    xd, yd = x.den, y.den
    if _is_const(xd) and _is_const(yd):
        a, b = xd[0], yd[0]
        if a == b:
            num = p_add(x.num, y.num, sign)
            if not num:
                return ZERO
            c = gcd(p_content(num), a)
            return Scalar._raw(_divq(num, c), {0: a // c})
        g = gcd(a, b)
        num = p_add({k: c * (b // g) for k, c in x.num.items()},
                    {k: c * (a // g) for k, c in y.num.items()}, sign)
        if not num:
            return ZERO
        den = a // g * b
        c = gcd(p_content(num), den)
        return Scalar._raw(_divq(num, c), {0: den // c})
    if xd == yd:
        return Scalar._make(p_add(x.num, y.num, sign), xd)
    if _is_const(yd):
        b = yd[0]
        num = p_add({k: c * b for k, c in x.num.items()}, p_mul(y.num, xd), sign)
        return Scalar._make(num, {k: c * b for k, c in xd.items()})
    if _is_const(xd):
        a = xd[0]
        num = p_add(p_mul(x.num, yd), {k: c * a for k, c in y.num.items()}, sign)
        return Scalar._make(num, {k: c * a for k, c in yd.items()})
    g = poly_gcd(xd, yd)
    if len(g) > 1:
        xd1 = p_divide_exact(xd, g)
        yd1 = p_divide_exact(yd, g)
        if xd1 is not None and yd1 is not None:
            num = p_add(p_mul(x.num, yd1), p_mul(y.num, xd1), sign)
            return Scalar._make(num, p_mul(xd1, yd))
    num = p_add(p_mul(x.num, yd), p_mul(y.num, xd), sign)
    return Scalar._make(num, p_mul(xd, yd))


def _mul(x: Scalar, y: Scalar) -> Scalar:
    if not x.num or not y.num:
        return ZERO
    xd, yd = x.den, y.den
    if _is_const(xd) and _is_const(yd):
        num = p_mul(x.num, y.num)
        den = xd[0] * yd[0]
        c = gcd(p_content(num), den)
        return Scalar._raw(_divq(num, c), {0: den // c})
    return Scalar._make(p_mul(x.num, y.num), p_mul(xd, yd))


def _partial_eval(f: dict, vals: dict) -> dict:
    out: dict = {}
    cache: dict = {}
    for k, c in f.items():
        e = unpack(k)
        coeff = Fraction(c)
        rest = [0] * len(VARS)
        for i, v in enumerate(VARS):
            ei = e[i]
            if not ei:
                continue
            if v in vals:
                key = (v, ei)
                p = cache.get(key)
                if p is None:
                    if vals[v] == 0 and ei < 0:
                        raise DegenerateError(f"{v} = 0 in a negative power")
                    p = vals[v] ** ei
                    cache[key] = p
                coeff *= p
            else:
                rest[i] = ei
        kk = pack(rest)
        out[kk] = out.get(kk, 0) + coeff
    return {k: c for k, c in out.items() if c}


def _fmt_point(vals: dict) -> str:
    return ", ".join(f"{v}={x}" for v, x in sorted(vals.items()))


# -- parsing -----------------------------------------------------------------

_TERM_RE = re.compile(
    r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*((?:\*?\s*[qtabc](?:\^-?\d+)?\s*)*)")
_FACTOR_RE = re.compile(r"([qtabc])(?:\^(-?\d+))?")


def _split_top_slash(text: str):
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            left, right = text[:i], text[i + 1:]
            # a slash glued to digits on both sides is a rational coefficient
            if left and right and left[-1].isdigit() and right[:1].isdigit():
                continue
            return [left.strip().strip("()"), right.strip().strip("()")]
    return [text]


def _parse_poly(text: str) -> LaurentPoly:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if text in ("", "0"):
        return LaurentPoly()
    pos = 0
    acc: dict = {}
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
        sign, coeff, mono = m.groups()
        if coeff is None and not mono.strip():
            raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        exps: dict = {}
        for v, e in _FACTOR_RE.findall(mono):
            exps[v] = exps.get(v, 0) + (int(e) if e else 1)
        k = monomial_key(**exps)
        acc[k] = acc.get(k, 0) + c
        pos = m.end()
    return LaurentPoly(acc)


ZERO = Scalar._raw({}, {0: 1})
ONE = Scalar._raw({0: 1}, {0: 1})
Q = Scalar.var("q")
T = Scalar.var("t")
A = Scalar.var("a")
B = Scalar.var("b")
C = Scalar.var("c")


def as_scalar(x) -> Scalar:
    s = _as_scalar(x)
    if s is None:
        if isinstance(x, str):
            return Scalar.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")
    return s


# -- q-combinatorics -----------------------------------------------------------


def q_bracket(n: int, q: Scalar = Q) -> Scalar:
    """[n]_q = (q^n - q^-n)/(q - q^-1) as the closed Laurent sum."""
    if n == 0:
        return ZERO
    if n < 0:
        return -q_bracket(-n, q)
    total = ZERO
    for k in range(n):
        total = total + q ** (n - 1 - 2 * k)
    return total


def q_factorial(n: int, q: Scalar = Q) -> Scalar:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * q_bracket(k, q)
    return out


def q_binomial(n: int, i: int, q: Scalar = Q) -> Scalar:
    if not 0 <= i <= n:
        raise ValueError(f"q_binomial needs 0 <= i <= n, got n={n}, i={i}")
    return q_factorial(n, q) / (q_factorial(i, q) * q_factorial(n - i, q))


def q_pochhammer(base, step, n: int) -> Scalar:
    """(base; step)_n = (1 - base)(1 - base*step)...(1 - base*step^(n-1))."""
    if n < 0:
        raise ValueError("q_pochhammer needs n >= 0")
    base = as_scalar(base)
    step = as_scalar(step)
    out = ONE
    cur = base
    for _ in range(n):
        out = out * (ONE - cur)
        cur = cur * step
    return out


def binom2(d: int) -> int:
    return d * (d - 1) // 2


# -- specialization points -------------------------------------------------------


@dataclass(frozen=True)
class SpecPoint:
    """Exact rational values for some of the indeterminates."""

    values: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = {k: Fraction(v) for k, v in self.values.items()}
        for k in vals:
            if k not in VARS:
                raise KeyError(f"unknown indeterminate {k!r}")
        object.__setattr__(self, "values", vals)
        q = vals.get("q")
        if q is not None and q in (0, 1, -1):
            raise DegenerateError(f"q = {q} is excluded (q must avoid 0, 1, -1)")
        for v in ("t", "a", "b", "c"):
            if v in vals and vals[v] == 0:
                raise DegenerateError(f"{v} must be nonzero")

    def check_t(self, d: int, t=None) -> None:
        """Guard t against 0 and the locus {q^(d-2n+1) : n = 1..d}."""
        q = self.values.get("q")
        t = self.values.get("t") if t is None else Fraction(t)
        if t is None or q is None:
            return
        if t == 0:
            raise DegenerateError("t must be nonzero")
        for n in range(1, d + 1):
            if t == q ** (d - 2 * n + 1):
                raise DegenerateError(
                    f"t = {t} equals q^{d - 2 * n + 1} (n={n}) for d={d}")

    def __getitem__(self, key):
        return self.values[key]

    def get(self, key, default=None):
        return self.values.get(key, default)


DEFAULT_POINT = SpecPoint({"q": Fraction(3, 2), "t": Fraction(5, 7),
                           "a": Fraction(2, 3), "b": Fraction(5, 2), "c": Fraction(7, 4)})


def specialize(s: Scalar, p: SpecPoint) -> Fraction:
    """Exact value of s at p; every indeterminate of s must be assigned."""
    return s.evaluate(p.values)


def scalar_arith(lhs: Scalar, rhs: Scalar, op: str) -> Scalar:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        if as_scalar(rhs).is_zero():
            raise ZeroDivisionError("zero divisor")
        return lhs / rhs
    raise ValueError(f"unknown operation {op!r}")
