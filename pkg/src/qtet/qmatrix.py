"""Dense square matrices over :class:`Scalar` and the named matrix families.

Rows and columns are indexed ``0..d``.  Every family builder takes the
deformation parameter already oriented: ``build(..., qdir=-1)`` passes
``q^-1`` to the builder, so no substitution happens after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .laurent import p_add, p_divide_exact, p_min_exps, p_mul, pack, poly_gcd
from .scalar import (
    ONE,
    Q,
    T,
    ZERO,
    DegenerateError,
    Scalar,
    as_scalar,
    q_binomial,
    q_pochhammer,
)


def _poly_content(polys) -> dict:
    """A common polynomial divisor of the nonzero entries (the gcd when the
    heuristic gcd succeeds)."""
    g = None
    for f in polys:
        if not f:
            continue
        g = f if g is None else poly_gcd(g, f)
        if g == {0: 1}:
            break
    if g is None:
        return {0: 1}
    if g[max(g)] < 0:
        g = {k: -c for k, c in g.items()}
    return g


def _primitive_row(row):
    """Integer polynomials P and a Scalar f with row = f * P, P primitive."""
    m = {0: 1}
    for x in row:
        d = x.den
        if d == {0: 1} or d == m:
            continue
        q = p_divide_exact(d, poly_gcd(m, d))
        m = p_mul(m, q if q is not None else d)
    polys = [p_mul(x.num, p_divide_exact(m, x.den)) if x.num else {} for x in row]
    mins = None
    for f in polys:
        if f:
            e = p_min_exps(f)
            mins = e if mins is None else tuple(min(u, v) for u, v in zip(mins, e))
    shift = pack(mins) if mins is not None else 0
    if shift:
        polys = [{k - shift: c for k, c in f.items()} for f in polys]
    g = _poly_content(polys)
    if g != {0: 1}:
        polys = [p_divide_exact(f, g) if f else {} for f in polys]
    factor = Scalar._make({k + shift: c for k, c in g.items()}, m)
    return polys, factor


class SingularMatrixError(ZeroDivisionError):
    """Raised when elimination finds no nonzero pivot."""


class SqMatrix:
    """Immutable square matrix of Scalars."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        rows = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        self.rows = rows
        self.n = n

    @classmethod
    def _raw(cls, rows) -> "SqMatrix":
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.n = len(rows)
        return obj

    @classmethod
    def zero(cls, n: int) -> "SqMatrix":
        return cls._raw(tuple((ZERO,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n: int, value=ONE) -> "SqMatrix":
        v = as_scalar(value)
        return cls._raw(tuple(tuple(v if i == j else ZERO for j in range(n))
                              for i in range(n)))

    @classmethod
    def diag(cls, values) -> "SqMatrix":
        vals = [as_scalar(v) for v in values]
        n = len(vals)
        return cls._raw(tuple(tuple(vals[i] if i == j else ZERO for j in range(n))
                              for i in range(n)))

    @classmethod
    def from_function(cls, n: int, f) -> "SqMatrix":
        return cls._raw(tuple(tuple(as_scalar(f(i, j)) for j in range(n))
                              for i in range(n)))

    @property
    def d(self) -> int:
        return self.n - 1

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.n))

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "SqMatrix"):
        if not isinstance(other, SqMatrix):
            raise TypeError("expected SqMatrix")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, SqMatrix):
            return NotImplemented
        self._check(other)
        return SqMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                   for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        if not isinstance(other, SqMatrix):
            return NotImplemented
        self._check(other)
        return SqMatrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                   for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return SqMatrix._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, s) -> "SqMatrix":
        s = as_scalar(s)
        if s == ONE:
            return self
        return SqMatrix._raw(tuple(tuple(a * s if a else ZERO for a in r)
                                   for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, SqMatrix):
            return self.matmul(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        s = as_scalar(other)
        if s.is_zero():
            raise ZeroDivisionError("zero divisor")
        return self.scale(s.inv())

    def matmul(self, other: "SqMatrix") -> "SqMatrix":
        self._check(other)
        n = self.n
        cols = [[other.rows[k][j] for k in range(n)] for j in range(n)]
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for j in range(n):
                col = cols[j]
                acc = ZERO
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return SqMatrix._raw(tuple(out))

    def __matmul__(self, other):
        return self.matmul(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = SqMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out.matmul(base)
            base = base.matmul(base)
            k >>= 1
        return out

    def transpose(self) -> "SqMatrix":
        return SqMatrix._raw(tuple(zip(*self.rows)))

    @property
    def T(self) -> "SqMatrix":
        return self.transpose()

    def inverse(self) -> "SqMatrix":
        """Fraction-free Gauss-Jordan elimination.

        A is first split as diag(r) A' diag(c) with A' a primitive integer
        polynomial matrix (row and column contents removed).  On [A' | I]
        the Jordan form of Bareiss' recurrence divides exactly by the
        previous pivot, so entries stay polynomial; the left block ends as
        det*I and A'^-1 is the right block over det.
        """
        n = self.n
        a, row_f = [], []
        for r in self.rows:
            polys, f = _primitive_row(r)
            a.append(polys)
            row_f.append(f)
        col_f = []
        for j in range(n):
            g = _poly_content([a[i][j] for i in range(n)])
            if g != {0: 1}:
                for i in range(n):
                    if a[i][j]:
                        a[i][j] = p_divide_exact(a[i][j], g)
            col_f.append(Scalar._make(g, {0: 1}))
        for i in range(n):
            a[i] += [{0: 1} if i == j else {} for j in range(n)]
        prev = {0: 1}
        for col in range(n):
            piv = None
            for r in range(col, n):
                f = a[r][col]
                if f and (piv is None or len(f) < len(a[piv][col])):
                    piv = r
            if piv is None:
                raise SingularMatrixError(f"singular matrix: no nonzero pivot in column {col}")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
            prow = a[col]
            p = prow[col]
            exact = prev != {0: 1}
            for r in range(n):
                if r == col:
                    continue
                row = a[r]
                f = row[col]
                out = []
                for x, y in zip(row, prow):
                    v = p_mul(p, x) if x else {}
                    if f and y:
                        v = p_add(v, p_mul(f, y), -1)
                    if v and exact:
                        v = p_divide_exact(v, prev)
                        assert v is not None, "inexact division in fraction-free elimination"
                    out.append(v)
                a[r] = out
            prev = p
        det = prev
        inv_r = [f.inv() for f in row_f]
        inv_c = [f.inv() for f in col_f]
        return SqMatrix._raw(tuple(
            tuple(Scalar._make(f, det) * inv_c[i] * inv_r[j] if f else ZERO
                  for j, f in enumerate(a[i][n:]))
            for i in range(n)))

    def commutator(self, other: "SqMatrix") -> "SqMatrix":
        return self.matmul(other) - other.matmul(self)

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SqMatrix):
            return NotImplemented
        if other.n != self.n:
            return False
        return all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.rows)

    def first_difference(self, other: "SqMatrix"):
        """Return (i, j, lhs, rhs) for the first unequal entry, or None."""
        for i in range(self.n):
            for j in range(self.n):
                if self.rows[i][j] != other.rows[i][j]:
                    return (i, j, self.rows[i][j], other.rows[i][j])
        return None

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def is_scalar_multiple_of_identity(self):
        """Return the scalar s when self = s*I, else None."""
        s = self.rows[0][0]
        for i in range(self.n):
            for j in range(self.n):
                x = self.rows[i][j]
                if i == j:
                    if x != s:
                        return None
                elif x:
                    return None
        return s

    # -- entrywise maps --------------------------------------------------------

    def map(self, f) -> "SqMatrix":
        return SqMatrix._raw(tuple(tuple(f(x) for x in r) for r in self.rows))

    def subs(self, values: dict) -> "SqMatrix":
        return self.map(lambda x: x.subs(values))

    def row_sums(self) -> tuple:
        out = []
        for r in self.rows:
            acc = ZERO
            for x in r:
                acc = acc + x
            out.append(acc)
        return tuple(out)

    def apply(self, vec) -> tuple:
        out = []
        for r in self.rows:
            acc = ZERO
            for a, v in zip(r, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    # -- text ------------------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"dim": self.n,
                "entries": [[x.canonical() for x in r] for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SqMatrix":
        n = obj.get("dim")
        entries = obj.get("entries")
        if not isinstance(n, int) or not isinstance(entries, list) or len(entries) != n:
            raise ValueError("matrix JSON needs integer 'dim' and 'entries' with dim rows")
        rows = []
        for i, r in enumerate(entries):
            if len(r) != n:
                raise ValueError(f"row {i} has {len(r)} entries, expected {n}")
            row = []
            for j, text in enumerate(r):
                s = Scalar.parse(text)
                if s.canonical() != text:
                    raise ValueError(
                        f"entry ({i},{j}) is not canonical: {text!r} != {s.canonical()!r}")
                row.append(s)
            rows.append(tuple(row))
        return cls._raw(tuple(rows))

    @classmethod
    def from_json(cls, text: str) -> "SqMatrix":
        return cls.from_json_obj(json.loads(text))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)

    def __repr__(self):
        return f"SqMatrix(dim={self.n})"


def commutator(a: SqMatrix, b: SqMatrix) -> SqMatrix:
    return a.commutator(b)


def mat_inverse(a: SqMatrix) -> SqMatrix:
    return a.inverse()


def transpose(a: SqMatrix) -> SqMatrix:
    return a.transpose()


def mat_arith(a: SqMatrix, b: SqMatrix, op: str) -> SqMatrix:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a.matmul(b)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# shape classification


@dataclass(frozen=True)
class ShapeReport:
    kind: str
    irreducible: bool | None
    diagonal: tuple

    def __str__(self):
        extra = "" if self.irreducible is None else (
            ", irreducible" if self.irreducible else ", reducible")
        return f"{self.kind}{extra}"


def support(m: SqMatrix) -> set:
    return {(i, j) for i in range(m.n) for j in range(m.n) if m.rows[i][j]}


def _within(sup, pred) -> bool:
    return all(pred(i, j) for i, j in sup)


PATTERNS = {
    "diagonal": lambda i, j: i == j,
    "upper bidiagonal": lambda i, j: j - i in (0, 1),
    "lower bidiagonal": lambda i, j: i - j in (0, 1),
    "tridiagonal": lambda i, j: abs(i - j) <= 1,
    "upper triangular": lambda i, j: j >= i,
    "lower triangular": lambda i, j: i >= j,
    "upper Hessenberg": lambda i, j: i <= j + 1,
    "lower Hessenberg": lambda i, j: j <= i + 1,
}


def has_pattern(m: SqMatrix, kind: str) -> bool:
    return _within(support(m), PATTERNS[kind])


def is_irreducible_tridiagonal(m: SqMatrix) -> bool:
    if not has_pattern(m, "tridiagonal"):
        return False
    return all(m.rows[i][i - 1] and m.rows[i - 1][i] for i in range(1, m.n))


def band_shape(m: SqMatrix) -> ShapeReport:
    """Most specific band class; entries count as nonzero when generically so."""
    sup = support(m)
    diag = m.diagonal()
    n = m.n
    if _within(sup, PATTERNS["diagonal"]):
        return ShapeReport("diagonal", None, diag)
    if _within(sup, lambda i, j: i + j == n - 1):
        return ShapeReport("anti-diagonal", None, diag)
    for kind in ("upper bidiagonal", "lower bidiagonal"):
        if _within(sup, PATTERNS[kind]):
            return ShapeReport(kind, None, diag)
    if _within(sup, PATTERNS["tridiagonal"]):
        return ShapeReport("tridiagonal", is_irreducible_tridiagonal(m), diag)
    for kind in ("upper triangular", "lower triangular",
                 "upper Hessenberg", "lower Hessenberg"):
        if _within(sup, PATTERNS[kind]):
            return ShapeReport(kind, None, diag)
    return ShapeReport("dense", None, diag)


# ---------------------------------------------------------------------------
# the named families; q is passed already oriented


def _zmat(d):
    n = d + 1
    return SqMatrix._raw(tuple(tuple(ONE if i + j == d else ZERO for j in range(n))
                               for i in range(n)))


def _kmat(d, q):
    return SqMatrix.diag([q ** (d - 2 * i) for i in range(d + 1)])


def _bidiag(d, q, upper):
    n = d + 1

    def f(i, j):
        if i == j:
            return q ** (2 * i - d)
        if j == i + 1:
            return upper(j)
        return ZERO
    return SqMatrix.from_function(n, f)


def _emat(d, q):
    return _bidiag(d, q, lambda i: q ** d - q ** (2 * i - 2 - d))


def _einv(d, q):
    q2 = q * q

    def f(i, j):
        if j < i:
            return ZERO
        return q_pochhammer(q ** (2 * (d - j + 1)), q2, j - i) * q ** (d - 2 * j)
    return SqMatrix.from_function(d + 1, f)


def _fmat(d, q, t):
    return _bidiag(d, q, lambda i: (q ** d - q ** (2 * i - 2 - d)) * q ** (1 - d) * t)


def _gmat(d, q, t):
    return _bidiag(d, q, lambda i: (q ** d - q ** (2 * i - 2 - d)) * (ONE - t * q ** (d - 2 * i + 1)))


def _lmat(d, q, t):
    return _bidiag(d, q, lambda i: (q ** d - q ** (2 * i - 2 - d)) / (ONE - t * q ** (d - 2 * i + 1)))


def _linv(d, q, t):
    q2 = q * q

    def f(i, j):
        if j < i:
            return ZERO
        return (q_pochhammer(q ** (2 * (d - j + 1)), q2, j - i)
                / q_pochhammer(t * q ** (d - 2 * j + 1), q2, j - i) * q ** (d - 2 * j))
    return SqMatrix.from_function(d + 1, f)


def _smat(d, q, t):
    def f(i, j):
        if j == i + 1:
            k = j
            return (q ** d - q ** (2 * k - d - 2)) * (ONE - t * q ** (2 * k - d - 1))
        if j == i - 1:
            k = i
            return (q ** (2 * k - d) - q ** (-d)) * q ** (2 * k - d - 1) * t
        if i == j:
            k = i
            return (q ** d - (q ** (2 * k - d) - q ** (-d)) * q ** (2 * k - d - 1) * t
                    - (q ** d - q ** (2 * k - d)) * (ONE - t * q ** (2 * k - d + 1)))
        return ZERO
    return SqMatrix.from_function(d + 1, f)


def _mmat(d, q, t):
    q2 = q * q
    qi = q.inv()

    def poch(base, n):
        return q_pochhammer(base, q2, n)

    def f(i, j):
        if i - j > 1:
            return ZERO
        if i - j == 1:
            return (qi - q ** (2 * i - 1)) / (t.inv() - q ** (2 * i - d - 1))
        if i != 0 and j != d:
            return ((ONE - t * q ** (d + 1)) / (ONE - t * q ** (2 * j - d + 1))
                    * (ONE - t * q ** (-d - 1)) / (ONE - t * q ** (2 * i - d - 1))
                    * poch(q ** (2 * i - 2 * d), j - i) / poch(t * q ** (2 * i - d + 1), j - i)
                    * q ** (2 * j - d))
        if i == 0 and j != d:
            return ((ONE - t * q ** (d + 1)) / (ONE - t * q ** (2 * j - d + 1))
                    * poch(q ** (-2 * d), j) / poch(t * q ** (1 - d), j) * q ** (2 * j - d))
        if i != 0 and j == d:
            return ((ONE - t * q ** (-d - 1)) / (ONE - t * q ** (2 * i - d - 1))
                    * poch(q ** (2 * i - 2 * d), d - i) / poch(t * q ** (2 * i - d + 1), d - i)
                    * q ** d)
        return poch(q ** (-2 * d), d) / poch(t * q ** (1 - d), d) * q ** d
    return SqMatrix.from_function(d + 1, f)


def _dmat(d, q, t):
    return SqMatrix.diag([q_pochhammer(t * q ** (d - 2 * i + 1), q * q, i) for i in range(d + 1)])


def _caldmat(d, q, t):
    return SqMatrix.diag([t ** i * q ** (i * (d - 1)) for i in range(d + 1)])


def _tmat(d, q):
    def f(i, j):
        if j > i:
            return ZERO
        sign = -1 if j % 2 else 1
        return q_binomial(i, j, q) * q ** (j * (1 - i)) * sign
    return SqMatrix.from_function(d + 1, f)


_BUILDERS = {
    "Z": (_zmat, False, False),
    "K": (_kmat, True, False),
    "E": (_emat, True, False),
    "Einv": (_einv, True, False),
    "F": (_fmat, True, True),
    "G": (_gmat, True, True),
    "L": (_lmat, True, True),
    "Linv": (_linv, True, True),
    "S": (_smat, True, True),
    "M": (_mmat, True, True),
    "D": (_dmat, True, True),
    "CalD": (_caldmat, True, True),
    "T": (_tmat, True, False),
}

TAGS = tuple(_BUILDERS)
T_TAGS = tuple(k for k, v in _BUILDERS.items() if v[2])


@dataclass(frozen=True)
class MatrixName:
    """A family tag with q orientation (+1 or -1) and an optional t argument."""

    tag: str
    qdir: int = 1
    t: Scalar | None = None

    def __post_init__(self):
        if self.tag not in _BUILDERS:
            raise ValueError(f"unknown matrix family {self.tag!r}; expected one of {', '.join(TAGS)}")
        if self.qdir not in (1, -1):
            raise ValueError("qdir must be +1 or -1")


def build(name, d: int, *, qdir: int = 1, t=None, q=None) -> SqMatrix:
    """Build a named matrix at diameter d.

    ``name`` is a tag string or a :class:`MatrixName`.  ``t`` defaults to the
    indeterminate t and ``q`` to the indeterminate q; numeric values are
    accepted for both.
    """
    if isinstance(name, MatrixName):
        tag, qdir = name.tag, name.qdir
        t = name.t if name.t is not None else t
    else:
        tag = name
        MatrixName(tag, qdir)
    if not isinstance(d, int) or d < 0:
        raise ValueError(f"diameter must be a nonnegative integer, got {d!r}")
    fn, takes_q, takes_t = _BUILDERS[tag]
    qs = Q if q is None else as_scalar(q)
    if qdir == -1:
        qs = qs.inv()
    ts = T if t is None else as_scalar(t)
    if takes_t and ts.is_zero():
        raise DegenerateError("t must be nonzero")
    args = [d]
    if takes_q:
        args.append(qs)
    if takes_t:
        args.append(ts)
    try:
        return fn(*args)
    except ZeroDivisionError as exc:
        raise DegenerateError(
            f"{tag} at d={d} hits a vanishing factor (1 - t q^k) for t={ts}") from exc


def qcomm(a: SqMatrix, b: SqMatrix, q=Q) -> SqMatrix:
    """[a, b]/(q - q^-1)."""
    q = as_scalar(q)
    return a.commutator(b) / (q - q.inv())


def qweyl(u: SqMatrix, v: SqMatrix, q=Q) -> SqMatrix:
    """(q u v - q^-1 v u)/(q - q^-1)."""
    q = as_scalar(q)
    qi = q.inv()
    return (u.matmul(v).scale(q) - v.matmul(u).scale(qi)) / (q - qi)


def zconj(m: SqMatrix) -> SqMatrix:
    """Z m Z, computed by index reversal."""
    n = m.n
    return SqMatrix._raw(tuple(tuple(m.rows[n - 1 - i][n - 1 - j] for j in range(n))
                               for i in range(n)))


def all_family_matrices(d: int, t=None, q=None) -> dict:
    """Every family at orientation q, keyed by tag."""
    return {tag: build(tag, d, t=t, q=q) for tag in TAGS}


def nullspace(equations, nvars: int) -> list:
    """Basis of the solution space of a homogeneous linear system.

    ``equations`` is a sequence of coefficient rows (length ``nvars``).
    Returns a list of solution vectors (tuples of Scalars), one per free
    variable, with the free variable set to 1.
    """
    rows = [[as_scalar(x) for x in eq] for eq in equations]
    rows = [r for r in rows if any(r)]
    pivots = []
    rank = 0
    for col in range(nvars):
        piv = None
        best = None
        for i in range(rank, len(rows)):
            x = rows[i][col]
            if x:
                size = len(x.num) + len(x.den)
                if best is None or size < best:
                    piv, best = i, size
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pinv = rows[rank][col].inv()
        rows[rank] = [x * pinv if x else ZERO for x in rows[rank]]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank:
                f = rows[i][col]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    free = [c for c in range(nvars) if c not in set(pivots)]
    basis = []
    for fcol in free:
        vec = [ZERO] * nvars
        vec[fcol] = ONE
        for i, pcol in enumerate(pivots):
            vec[pcol] = -rows[i][fcol]
        basis.append(tuple(vec))
    return basis


def commuting_solutions(pairs, n: int) -> list:
    """Matrices X with X·A = B·X for every (A, B) in ``pairs``.

    Returns a basis of the solution space as SqMatrix objects.
    """
    eqs = []
    for a, b in pairs:
        for i in range(n):
            for j in range(n):
                # (XA)_ij - (BX)_ij with X_kl at index k*n + l
                row = [ZERO] * (n * n)
                for k in range(n):
                    if a[k, j]:
                        row[i * n + k] = row[i * n + k] + a[k, j]
                    if b[i, k]:
                        row[k * n + j] = row[k * n + j] - b[i, k]
                eqs.append(row)
    sols = nullspace(eqs, n * n)
    return [SqMatrix._raw(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))) for v in sols]


__all__ = [
    "SqMatrix", "SingularMatrixError", "ShapeReport", "MatrixName", "TAGS", "T_TAGS",
    "band_shape", "build", "commutator", "has_pattern", "is_irreducible_tridiagonal",
    "commuting_solutions", "mat_arith", "mat_inverse", "nullspace", "qcomm", "qweyl",
    "transpose", "zconj",
]
