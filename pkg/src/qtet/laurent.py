"""Sparse Laurent polynomials in the fixed indeterminates q, t, a, b, c.

A monomial q^e0 t^e1 a^e2 b^e3 c^e4 is packed into one Python integer
``sum(e_v * BASE**pos_v)`` with balanced digits, so multiplying monomials is
integer addition and comparing packed keys is lexicographic comparison with
q most significant.  Coefficients are ``int`` or ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

VARS = ("q", "t", "a", "b", "c")
NVARS = len(VARS)
_BITS = 20
BASE = 1 << _BITS
HALF = BASE >> 1
_MASK = BASE - 1
# q is the most significant digit
_POS = {v: NVARS - 1 - i for i, v in enumerate(VARS)}
_UNIT = {v: 1 << (_BITS * _POS[v]) for v in VARS}


def pack(exps) -> int:
    """Pack an exponent vector (ordered as VARS) into a key."""
    key = 0
    for v, e in zip(VARS, exps):
        if not -HALF < e < HALF:
            raise OverflowError(f"exponent {e} of {v} out of range")
        key += e * _UNIT[v]
    return key


@lru_cache(maxsize=1 << 16)
def unpack(key: int) -> tuple:
    """Inverse of :func:`pack`; returns exponents ordered as VARS."""
    digits = [0] * NVARS
    for pos in range(NVARS):
        r = key & _MASK
        if r >= HALF:
            r -= BASE
        digits[pos] = r
        key = (key - r) >> _BITS
    return tuple(digits[_POS[v]] for v in VARS)


def monomial_key(**exps) -> int:
    return pack([exps.get(v, 0) for v in VARS])


# ---------------------------------------------------------------------------
# dict-level kernels; a polynomial here is dict[key] -> nonzero coefficient


def p_add(f: dict, g: dict, sign: int = 1) -> dict:
    if len(f) < len(g) and sign == 1:
        f, g = g, f
    r = dict(f)
    for k, c in g.items():
        v = r.get(k, 0) + sign * c
        if v:
            r[k] = v
        else:
            r.pop(k, None)
    return r


def p_mul(f: dict, g: dict) -> dict:
    if not f or not g:
        return {}
    if len(f) > len(g):
        f, g = g, f
    r: dict = {}
    get = r.get
    gi = list(g.items())
    for k1, c1 in f.items():
        for k2, c2 in gi:
            k = k1 + k2
            r[k] = get(k, 0) + c1 * c2
    return {k: c for k, c in r.items() if c}


def p_scale(f: dict, c, shift: int = 0) -> dict:
    if not c:
        return {}
    return {k + shift: v * c for k, v in f.items()}


def p_min_exps(f: dict) -> tuple:
    """Componentwise minimum exponent vector over the terms of f."""
    it = iter(f)
    mins = list(unpack(next(it)))
    for k in it:
        e = unpack(k)
        for i in range(NVARS):
            if e[i] < mins[i]:
                mins[i] = e[i]
    return tuple(mins)


def p_max_exps(f: dict) -> tuple:
    it = iter(f)
    maxs = list(unpack(next(it)))
    for k in it:
        e = unpack(k)
        for i in range(NVARS):
            if e[i] > maxs[i]:
                maxs[i] = e[i]
    return tuple(maxs)


def p_content(f: dict) -> int:
    """gcd of the integer coefficients of f."""
    g = 0
    for c in f.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def p_divide_exact(f: dict, g: dict):
    """Quotient f/g over Z when it exists, else None.

    Both arguments must be genuine polynomials (nonnegative exponents) with
    integer coefficients.
    """
    if not g:
        raise ZeroDivisionError("zero divisor")
    if not f:
        return {}
    if len(g) == 1:
        (kg, cg), = g.items()
        out = {}
        for k, c in f.items():
            if c % cg:
                return None
            out[k - kg] = c // cg
        for k in out:
            if any(e < 0 for e in unpack(k)):
                return None
        return out
    fmax = p_max_exps(f)
    gmax = p_max_exps(g)
    bound = [fm - gm for fm, gm in zip(fmax, gmax)]
    if any(b < 0 for b in bound):
        return None
    ltg = max(g)
    lcg = g[ltg]
    gitems = list(g.items())
    r = dict(f)
    quo = {}
    while r:
        k = max(r)
        c = r[k]
        diff = k - ltg
        e = unpack(diff)
        for i in range(NVARS):
            if e[i] < 0 or e[i] > bound[i]:
                return None
        if c % lcg:
            return None
        m = c // lcg
        quo[diff] = m
        for kg, cg in gitems:
            kk = kg + diff
            v = r.get(kk, 0) - m * cg
            if v:
                r[kk] = v
            else:
                del r[kk]
    return quo


# ---------------------------------------------------------------------------
# heuristic multivariate gcd over Z


class HeuristicGCDFailed(Exception):
    pass


def _maxnorm(f: dict) -> int:
    return max(abs(c) for c in f.values())


def _top_var_pos(f: dict, g: dict):
    """Highest packed position whose variable occurs in f or g, else None."""
    best = None
    for poly in (f, g):
        for k in poly:
            for i, e in enumerate(unpack(k)):
                if e and (best is None or _POS[VARS[i]] > best):
                    best = _POS[VARS[i]]
    return best


def _evaluate_pos(f: dict, pos: int, x: int) -> dict:
    unit = 1 << (_BITS * pos)
    vi = VARS.index(_var_at(pos))
    out: dict = {}
    for k, c in f.items():
        e = unpack(k)[vi]
        kk = k - e * unit
        out[kk] = out.get(kk, 0) + c * x ** e
    return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def _var_at(pos: int) -> str:
    for v, p in _POS.items():
        if p == pos:
            return v
    raise KeyError(pos)


def _interpolate(h: dict, pos: int, x: int) -> dict:
    """Recover a polynomial from its image at var=x using symmetric digits."""
    unit = 1 << (_BITS * pos)
    out: dict = {}
    half = x // 2
    for k, c in h.items():
        i = 0
        while c:
            r = c % x
            if r > half:
                r -= x
            if r:
                out[k + i * unit] = r
            c = (c - r) // x
            i += 1
    return out


def _heu_gcd(f: dict, g: dict, depth: int = 0) -> dict:
    """gcd of integer polynomials with nonnegative exponents (lc sign free)."""
    cf = p_content(f)
    cg = p_content(g)
    gc = gcd(cf, cg)
    pos = _top_var_pos(f, g)
    if pos is None:
        return {0: gc}
    f = {k: c // cf for k, c in f.items()}
    g = {k: c // cg for k, c in g.items()}
    nf, ng = _maxnorm(f), _maxnorm(g)
    b = 2 * min(nf, ng) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(nf // abs(f[max(f)]), ng // abs(g[max(g)])) + 2)
    for _ in range(6):
        ff = _evaluate_pos(f, pos, x)
        gg = _evaluate_pos(g, pos, x)
        if ff and gg:
            try:
                hh = _heu_gcd(ff, gg, depth + 1)
            except HeuristicGCDFailed:
                hh = None
            if hh is not None:
                h = _interpolate(hh, pos, x)
                if h:
                    ch = p_content(h)
                    h = {k: c // ch for k, c in h.items()}
                    if h[max(h)] < 0:
                        h = {k: -c for k, c in h.items()}
                    if p_divide_exact(f, h) is not None and p_divide_exact(g, h) is not None:
                        return {k: c * gc for k, c in h.items()}
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed()


def poly_gcd(f: dict, g: dict) -> dict:
    """gcd of two nonzero integer polynomials with nonnegative exponents.

    Returns ``{0: 1}``-like trivial results quickly for monomial inputs.  If the
    heuristic cannot certify a divisor the integer content gcd is returned,
    which is always a valid (if not greatest) common divisor.
    """
    if len(f) == 1 or len(g) == 1:
        # a monomial divides only monomials; the exponent part is handled by
        # the caller's shift, so only the integer content matters here
        mins = p_min_exps(f) if len(f) == 1 else p_min_exps(g)
        other = g if len(f) == 1 else f
        omins = p_min_exps(other)
        common = pack([min(x, y) for x, y in zip(mins, omins)])
        return {common: gcd(p_content(f), p_content(g))}
    try:
        return _heu_gcd(f, g)
    except HeuristicGCDFailed:
        return {0: gcd(p_content(f), p_content(g))}


# ---------------------------------------------------------------------------


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    return str(c)


def format_terms(f: dict) -> str:
    """Canonical text: terms by descending key, e.g. ``3*q^-2*t^1 - 1``."""
    if not f:
        return "0"
    parts = []
    for k in sorted(f, reverse=True):
        c = f[k]
        e = unpack(k)
        mono = "*".join(f"{v}^{x}" for v, x in zip(VARS, e) if x)
        neg = c < 0
        a = -c if neg else c
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class LaurentPoly:
    """Immutable sparse Laurent polynomial over Q in q, t, a, b, c."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for k, c in dict(terms).items():
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                if c:
                    t[k] = c
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._t = terms
        obj._h = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        return cls({_UNIT[name] * power: 1})

    @classmethod
    def from_terms(cls, pairs) -> "LaurentPoly":
        """Build from ``(coefficient, {var: exp})`` pairs."""
        acc: dict = {}
        for c, exps in pairs:
            k = monomial_key(**exps)
            acc[k] = acc.get(k, 0) + c
        return cls(acc)

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        """(exponent dict, coefficient) pairs in canonical order."""
        for k in sorted(self._t, reverse=True):
            yield dict(zip(VARS, unpack(k))), self._t[k]

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def variables(self) -> set:
        used = set()
        for k in self._t:
            for v, e in zip(VARS, unpack(k)):
                if e:
                    used.add(v)
        return used

    def leading(self):
        k = max(self._t)
        return k, self._t[k]

    def __len__(self):
        return len(self._t)

    def __add__(self, other):
        other = _as_poly(other)
        return LaurentPoly._raw(p_add(self._t, other._t))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        return LaurentPoly._raw(p_add(self._t, _as_poly(other)._t, -1))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        return LaurentPoly._raw(p_mul(self._t, _as_poly(other)._t))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._t) != 1:
                raise ValueError("negative power of a non-monomial")
            (k, c), = self._t.items()
            return LaurentPoly({k * n: Fraction(1) / Fraction(c) ** (-n)})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    def evaluate(self, values: dict):
        """Exact value at a full assignment var -> Fraction."""
        total = Fraction(0)
        for k, c in self._t.items():
            term = Fraction(c)
            for v, e in zip(VARS, unpack(k)):
                if e:
                    term *= Fraction(values[v]) ** e
            total += term
        return total

    def __str__(self):
        return format_terms(self._t)

    def __repr__(self):
        return f"LaurentPoly({self})"


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")
