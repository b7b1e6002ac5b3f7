"""The evaluation module V_d(t) in its 24 normalized bases.

Bases are labelled by permutations (i, j, k, l) of Z_4.  Each basis falls in
one of six patterns relative to some r in Z_4; the generator matrices are
read from a table for even r, with t replaced by t^-1 for odd r.  Transition
matrices use the convention that basis v is related to basis u by
v_n = sum_r S[r, n] u_r, so a matrix M for u becomes S^-1 M S for v.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .algebra import (
    GENERATORS,
    GeneratorAssignment,
    NotAModuleError,
    VerifyReport,
    apply_rho,
    aw_relations,
    dual_assignment,
    eval_identities,
    extract_t,
    gen_name,
    parse_gen,
    shift,
    teq_identities,
    twopair_forms,
    upsilon_forms,
    verify_boxtimes,
)
from .qmatrix import (
    PATTERNS,
    SqMatrix,
    build,
    commuting_solutions,
    qcomm,
    qweyl,
    support,
    zconj,
)
from .scalar import ONE, Q, T, DegenerateError, Scalar, SpecPoint, as_scalar, binom2, q_pochhammer

# ---------------------------------------------------------------------------
# basis labels

ALL_BASES = tuple(itertools.permutations(range(4)))

# the six patterns, as offsets from r
PATTERN_OFFSETS = (
    (0, 1, 2, 3),
    (1, 0, 2, 3),
    (0, 1, 3, 2),
    (1, 0, 3, 2),
    (0, 2, 1, 3),
    (2, 0, 1, 3),
)


def _resolve_table():
    out = {}
    for p, offs in enumerate(PATTERN_OFFSETS):
        for r in range(4):
            lab = tuple((r + o) % 4 for o in offs)
            assert lab not in out
            out[lab] = (p, r)
    assert len(out) == 24
    return out


RESOLVE = _resolve_table()


def parse_basis(text) -> tuple:
    if isinstance(text, (tuple, list)):
        lab = tuple(int(x) % 4 for x in text)
    else:
        s = str(text).replace(",", "").replace(" ", "").strip("[]")
        if len(s) != 4 or not s.isdigit():
            raise ValueError(f"bad basis label {text!r}")
        lab = tuple(int(c) % 4 for c in s)
    if sorted(lab) != [0, 1, 2, 3]:
        raise ValueError(f"basis label {text!r} is not a permutation of 0..3")
    return lab


def basis_name(b) -> str:
    return "[" + ",".join(str(x) for x in b) + "]"


def basis_shift(b, k: int) -> tuple:
    return tuple((x + k) % 4 for x in b)


# ---------------------------------------------------------------------------
# generator tables: (tag, qdir, t exponent, Z-conjugated) for r even
# columns: x_{r,r+1}, x_{r+1,r+2}, x_{r+2,r+3}, x_{r+3,r},
#          x_{r,r+2}, x_{r+1,r+3}, x_{r+2,r}, x_{r+3,r+1}

COLUMNS = ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (2, 0), (3, 1))

REP_TABLE = (
    (("S", -1, -1, True), ("E", 1, 0, False), ("K", 1, 0, False), ("G", -1, 1, True),
     ("L", 1, 1, False), ("Einv", -1, 0, True), ("Linv", 1, 1, False), ("E", -1, 0, True)),
    (("S", 1, -1, False), ("G", 1, 1, False), ("K", 1, 0, False), ("E", -1, 0, True),
     ("E", 1, 0, False), ("Linv", -1, 1, True), ("Einv", 1, 0, False), ("L", -1, 1, True)),
    (("S", -1, -1, False), ("E", 1, 0, True), ("K", -1, 0, False), ("G", -1, 1, False),
     ("L", 1, 1, True), ("Einv", -1, 0, False), ("Linv", 1, 1, True), ("E", -1, 0, False)),
    (("S", 1, -1, True), ("G", 1, 1, True), ("K", -1, 0, False), ("E", -1, 0, False),
     ("E", 1, 0, True), ("Linv", -1, 1, False), ("Einv", 1, 0, True), ("L", -1, 1, False)),
    (("F", 1, -1, False), ("E", -1, 0, False), ("E", 1, 0, True), ("F", -1, 1, True),
     ("M", -1, -1, True), ("K", 1, 0, False), ("M", 1, 1, False), ("K", -1, 0, False)),
    (("E", 1, 0, False), ("F", -1, 1, False), ("F", 1, -1, True), ("E", -1, 0, True),
     ("M", 1, 1, True), ("K", 1, 0, False), ("M", -1, -1, False), ("K", -1, 0, False)),
)


def spec_text(spec, r: int = 0) -> str:
    """Human-readable name such as 'Z S_{q^-1}(t^-1) Z'."""
    tag, qdir, te, z = spec
    if r % 2:
        te = -te
    inv = tag.endswith("inv")
    base = tag[:-3] if inv else tag
    qs = "q" if qdir == 1 else "q^-1"
    s = f"{base}_{{{qs}}}"
    if te:
        s += "(t)" if te == 1 else "(t^-1)"
    if z:
        s = f"Z {s} Z"
    if inv:
        s = f"({s})^-1"
    return s


# ---------------------------------------------------------------------------
# pairing scalars


def _poch_t(d: int, t: Scalar, q: Scalar) -> Scalar:
    """(1 - t q^(d-1))(1 - t q^(d-3))...(1 - t q^(1-d))."""
    return q_pochhammer(t * q ** (1 - d), q * q, d)


FREE7 = ((0, 1), (0, 2), (0, 3), (1, 2), (2, 1), (3, 0), (3, 1))


@dataclass(frozen=True)
class PairingTable:
    """The twelve pairings p[i, j] = (eta_i, eta*_j), i != j."""

    values: dict
    d: int
    t: Scalar
    q: Scalar = Q

    def __getitem__(self, ij) -> Scalar:
        return self.values[ij]

    def ratio(self, a: int, b: int, c: int) -> Scalar:
        """p[a, b] / p[c, b]."""
        if a == c:
            return ONE
        return self.values[(a % 4, b % 4)] / self.values[(c % 4, b % 4)]

    @property
    def free7(self) -> tuple:
        return tuple(self.values[k] for k in FREE7)

    def relations(self) -> list:
        """(name, lhs, rhs) for all ten multiplicative relations."""
        p = self.values
        d, t, q = self.d, self.t, self.q
        pt, pti = _poch_t(d, t, q), _poch_t(d, t.inv(), q)
        sign = -1 if d % 2 else 1
        noT = q ** (d * (d - 1)) * sign
        return [
            ("p01 p23 / (p21 p03) = t^d q^(d(d-1))",
             p[0, 1] * p[2, 3] / (p[2, 1] * p[0, 3]), t ** d * q ** (d * (d - 1))),
            ("p12 p30 / (p32 p10) = t^-d q^(d(d-1))",
             p[1, 2] * p[3, 0] / (p[3, 2] * p[1, 0]), t ** (-d) * q ** (d * (d - 1))),
            ("p02 p13 / (p12 p03) = P(t)",
             p[0, 2] * p[1, 3] / (p[1, 2] * p[0, 3]), pt),
            ("p13 p20 / (p23 p10) = P(t^-1)",
             p[1, 3] * p[2, 0] / (p[2, 3] * p[1, 0]), pti),
            ("p20 p31 / (p30 p21) = P(t)",
             p[2, 0] * p[3, 1] / (p[3, 0] * p[2, 1]), pt),
            ("p31 p02 / (p01 p32) = P(t^-1)",
             p[3, 1] * p[0, 2] / (p[0, 1] * p[3, 2]), pti),
            ("p01 p12 p20 / (p10 p21 p02) = (-1)^d q^(d(d-1))",
             p[0, 1] * p[1, 2] * p[2, 0] / (p[1, 0] * p[2, 1] * p[0, 2]), noT),
            ("p12 p23 p31 / (p21 p32 p13) = (-1)^d q^(d(d-1))",
             p[1, 2] * p[2, 3] * p[3, 1] / (p[2, 1] * p[3, 2] * p[1, 3]), noT),
            ("p23 p30 p02 / (p32 p03 p20) = (-1)^d q^(d(d-1))",
             p[2, 3] * p[3, 0] * p[0, 2] / (p[3, 2] * p[0, 3] * p[2, 0]), noT),
            ("p30 p01 p13 / (p03 p10 p31) = (-1)^d q^(d(d-1))",
             p[3, 0] * p[0, 1] * p[1, 3] / (p[0, 3] * p[1, 0] * p[3, 1]), noT),
        ]

    def verify(self) -> VerifyReport:
        r = VerifyReport("pairing relations")
        for name, lhs, rhs in self.relations():
            ok = lhs == rhs
            r.add(name, name, ok, None if ok else f"{lhs.canonical()} != {rhs.canonical()}")
        return r

    def to_obj(self) -> dict:
        return {f"p{i}{j}": self.values[(i, j)].canonical()
                for i in range(4) for j in range(4) if i != j}


def derive_pairing(free7=None, d: int = 1, t=None, q=None) -> PairingTable:
    """Complete seven free pairings to all twelve.

    Solved forms, with P(t) = (t q^(1-d); q^2)_d:
      p23 = t^d q^(d(d-1)) p21 p03 / p01
      p13 = P(t) p12 p03 / p02
      p20 = P(t) p30 p21 / p31
      p32 = p31 p02 / (p01 P(t^-1))
      p10 = t^d q^(-d(d-1)) p12 p30 / p32
    """
    t = T if t is None else as_scalar(t)
    q = Q if q is None else as_scalar(q)
    vals = [ONE] * 7 if free7 is None else [as_scalar(v) for v in free7]
    if len(vals) != 7:
        raise ValueError("need exactly seven free pairings")
    for k, v in zip(FREE7, vals):
        if v.is_zero():
            raise ValueError(f"free pairing p{k[0]}{k[1]} must be nonzero")
    p = dict(zip(FREE7, vals))
    pt, pti = _poch_t(d, t, q), _poch_t(d, t.inv(), q)
    if pt.is_zero() or pti.is_zero():
        raise DegenerateError(f"t={t} makes (t q^(1-d); q^2)_d vanish for d={d}")
    qq = q ** (d * (d - 1))
    p[2, 3] = t ** d * qq * p[2, 1] * p[0, 3] / p[0, 1]
    p[1, 3] = pt * p[1, 2] * p[0, 3] / p[0, 2]
    p[2, 0] = pt * p[3, 0] * p[2, 1] / p[3, 1]
    p[3, 2] = p[3, 1] * p[0, 2] / (p[0, 1] * pti)
    p[1, 0] = p[1, 2] * p[3, 0] * t ** d / (qq * p[3, 2])
    table = PairingTable(p, d, t, q)
    bad = table.verify().failures()
    assert not bad, f"pairing solve inconsistent: {bad[0].name}"
    return table


# ---------------------------------------------------------------------------
# shape tables: (pattern, eigenvalue exponent rule) keyed by the offsets of
# the decomposition [k, l] relative to r

SHAPE_NEIGHBOR = {
    (0, 1): ("diagonal", "d-2n"), (1, 0): ("diagonal", "2n-d"),
    (1, 2): ("upper bidiagonal", "2n-d"), (2, 1): ("lower bidiagonal", "d-2n"),
    (2, 3): ("tridiagonal", None), (3, 2): ("tridiagonal", None),
    (3, 0): ("lower bidiagonal", "2n-d"), (0, 3): ("upper bidiagonal", "d-2n"),
    (0, 2): ("upper bidiagonal", "d-2n"), (2, 0): ("lower bidiagonal", "2n-d"),
    (1, 3): ("upper bidiagonal", "2n-d"), (3, 1): ("lower bidiagonal", "d-2n"),
}

SHAPE_OPPOSITE = {
    (0, 1): ("upper triangular", "d-2n"), (1, 0): ("lower triangular", "2n-d"),
    (1, 2): ("lower triangular", "d-2n"), (2, 1): ("upper triangular", "2n-d"),
    (2, 3): ("upper bidiagonal", "2n-d"), (3, 2): ("lower bidiagonal", "d-2n"),
    (3, 0): ("lower bidiagonal", "2n-d"), (0, 3): ("upper bidiagonal", "d-2n"),
    (0, 2): ("diagonal", "d-2n"), (2, 0): ("diagonal", "2n-d"),
    (1, 3): ("lower Hessenberg", None), (3, 1): ("upper Hessenberg", None),
}


# ---------------------------------------------------------------------------
# exchanger


def _exchanger_entry_table():
    """basis -> (sign power, t exponent rule, q exponent sign) for the
    anti-diagonal (i, d-i) entry."""
    # t rule: "i" or "d-i"; q rule +1 means q^(i(d-1) - C), -1 means q^(C - i(d-1))
    return {
        (0, 2, 1, 3): (0, "i", 1), (0, 2, 3, 1): (0, "d-i", -1),
        (2, 0, 3, 1): (0, "i", 1), (2, 0, 1, 3): (0, "d-i", -1),
        (1, 3, 2, 0): (1, "d-i", 1), (1, 3, 0, 2): (1, "i", -1),
        (3, 1, 0, 2): (1, "d-i", 1), (3, 1, 2, 0): (1, "i", -1),
    }


EXCHANGER_TABLE = _exchanger_entry_table()


class EvalModule:
    """V_d(t) with a pairing table.

    ``t`` and ``q`` default to the indeterminates; rational values give an
    exact specialization.  ``free7`` overrides the seven free pairings.
    """

    def __init__(self, d: int, t=None, q=None, free7=None):
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"diameter must be an integer >= 1, got {d!r}")
        self.d = d
        self.q = Q if q is None else as_scalar(q)
        self.t = T if t is None else as_scalar(t)
        if self.t.is_zero():
            raise DegenerateError("t must be nonzero")
        if self.q.is_constant():
            qv = self.q.to_fraction()
            vals = {"q": qv}
            if self.t.is_constant():
                vals["t"] = self.t.to_fraction()
            SpecPoint(vals).check_t(d)
        self.pairing = derive_pairing(free7, d, self.t, self.q)
        self._fam = {}
        self._trans = {}

    @property
    def n(self) -> int:
        return self.d + 1

    @property
    def symbolic(self) -> bool:
        return not (self.q.is_constant() and self.t.is_constant())

    # -- named matrices ------------------------------------------------------

    def fam(self, tag: str, qdir: int = 1, texp: int = 0, z: bool = False) -> SqMatrix:
        """Family matrix with q^qdir and t^texp, optionally Z-conjugated."""
        key = (tag, qdir, texp, z)
        m = self._fam.get(key)
        if m is None:
            if z:
                m = zconj(self.fam(tag, qdir, texp))
            else:
                t = self.t ** texp if texp else self.t
                m = build(tag, self.d, qdir=qdir, t=t, q=self.q)
            self._fam[key] = m
        return m

    def _spec(self, spec, r: int) -> SqMatrix:
        tag, qdir, te, z = spec
        if r % 2:
            te = -te
        return self.fam(tag, qdir, te, z)

    # -- representations -----------------------------------------------------

    def rep_matrix(self, basis, gen) -> SqMatrix:
        b = parse_basis(basis)
        g = parse_gen(gen)
        p, r = RESOLVE[b]
        col = COLUMNS.index(((g[0] - r) % 4, (g[1] - r) % 4))
        return self._spec(REP_TABLE[p][col], r)

    def rep_name(self, basis, gen) -> str:
        b = parse_basis(basis)
        g = parse_gen(gen)
        p, r = RESOLVE[b]
        col = COLUMNS.index(((g[0] - r) % 4, (g[1] - r) % 4))
        return spec_text(REP_TABLE[p][col], r)

    def full_representation(self, basis=(0, 1, 2, 3)) -> GeneratorAssignment:
        b = parse_basis(basis)
        return GeneratorAssignment({g: self.rep_matrix(b, g) for g in GENERATORS}, 1, self.q)

    # -- transitions -----------------------------------------------------------

    def elementary(self, src, dst):
        """Tabulated transition matrix for an elementary move, or None."""
        a = parse_basis(src)
        b = parse_basis(dst)
        i, j, k, l = a
        pr = self.pairing
        if b == (i, j, l, k):
            return self.fam("Z")
        if b == (j, i, k, l):
            p, r = RESOLVE[a]
            sgn = -1 if r % 2 else 1
            # p[new j, l] / p[old j, l]; the new second entry is i
            ratio = pr.ratio(i, l, j)
            mats = {
                0: lambda: self.fam("D", 1, sgn),
                1: lambda: self.fam("D", 1, sgn).inverse(),
                2: lambda: self.fam("D", -1, sgn).inverse(),
                3: lambda: self.fam("D", -1, sgn),
                4: lambda: self.fam("CalD", 1, sgn),
                5: lambda: self.fam("CalD", 1, sgn).inverse(),
            }
            return mats[p]().scale(ratio)
        if b == (i, k, j, l):
            ratio = pr.ratio(k, l, j)
            p, r = RESOLVE[a]
            # rows of the lower-triangular table by source pattern
            qdir = {0: 1, 1: 1, 2: -1, 3: -1, 4: -1, 5: 1}[p]
            return self.fam("T", qdir).scale(ratio)
        return None

    def neighbors(self, b) -> list:
        i, j, k, l = b
        return sorted([(j, i, k, l), (i, k, j, l), (i, j, l, k)])

    def path(self, src, dst) -> list:
        """Deterministic shortest path in the move graph (BFS, sorted neighbors)."""
        a = parse_basis(src)
        b = parse_basis(dst)
        if a == b:
            return [a]
        parent = {a: None}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            for v in self.neighbors(u):
                if v not in parent:
                    parent[v] = u
                    if v == b:
                        out = [b]
                        while parent[out[-1]] is not None:
                            out.append(parent[out[-1]])
                        return out[::-1]
                    queue.append(v)
        raise AssertionError("move graph is connected")

    def transition(self, src, dst) -> SqMatrix:
        a = parse_basis(src)
        b = parse_basis(dst)
        key = (a, b)
        m = self._trans.get(key)
        if m is not None:
            return m
        if a == b:
            m = SqMatrix.identity(self.n)
        else:
            m = self.elementary(a, b)
            if m is None:
                rev = self.elementary(b, a)
                if rev is not None:
                    m = rev.inverse()
            if m is None:
                pth = self.path(a, b)
                m = self.transition(pth[0], pth[1])
                for u, v in zip(pth[1:], pth[2:]):
                    m = m.matmul(self.transition(u, v))
        self._trans[key] = m
        return m

    # -- distinguished vectors -------------------------------------------------

    def eta(self, j: int, basis) -> tuple:
        """Coordinates of eta_j in the given basis."""
        b = parse_basis(basis)
        j %= 4
        if b[1] == j:
            return (ONE,) * self.n
        targets = [c for c in ALL_BASES if c[1] == j]
        dest = min(targets, key=lambda c: (len(self.path(b, c)), c))
        return self.transition(b, dest).row_sums()

    # -- exchanger --------------------------------------------------------------

    def exchanger_tabulated(self, basis) -> SqMatrix:
        b = parse_basis(basis)
        sp, trule, qs = EXCHANGER_TABLE[b]
        d, t, q = self.d, self.t, self.q
        c = binom2(d)
        sign = -1 if (sp and d % 2) else 1

        def entry(i, j):
            if i + j != d:
                return 0
            te = i if trule == "i" else d - i
            qe = qs * (i * (d - 1) - c)
            return t ** te * q ** qe * sign
        return SqMatrix.from_function(self.n, entry)

    def exchanger_matrix(self, basis) -> SqMatrix:
        b = parse_basis(basis)
        if b in EXCHANGER_TABLE:
            return self.exchanger_tabulated(b)
        src = min(EXCHANGER_TABLE, key=lambda c: (len(self.path(c, b)), c))
        s = self.transition(src, b)
        return s.inverse().matmul(self.exchanger_tabulated(src)).matmul(s)

    def exchanger_scalar(self, basis) -> Scalar:
        """Scalar s with X(basis) = s * (basis shifted by 2); depends on j only."""
        j = parse_basis(basis)[1]
        d, q, pr = self.d, self.q, self.pairing
        c = binom2(d)
        sign = -1 if d % 2 else 1
        if j == 0:
            return q ** (-c) * pr.ratio(0, 1, 2)
        if j == 2:
            return q ** (-c) * pr.ratio(2, 3, 0)
        if j == 1:
            return q ** c * pr.ratio(1, 0, 3) * sign
        return q ** c * pr.ratio(3, 2, 1) * sign

    def eta_image_scalar(self, j: int) -> Scalar:
        """Scalar s with X eta_j = s eta_(j+2)."""
        j %= 4
        return self.exchanger_scalar(next(c for c in ALL_BASES if c[1] == j))


# ---------------------------------------------------------------------------
# verification suites


def verify_transition_consistency(m: EvalModule, bases=None) -> VerifyReport:
    """Every elementary transition intertwines the two representations, plus
    the two loop identities."""
    r = VerifyReport(f"transitions d={m.d}")
    bases = ALL_BASES if bases is None else [parse_basis(b) for b in bases]
    reps = {}

    def rep(b):
        if b not in reps:
            reps[b] = m.full_representation(b)
        return reps[b]
    for a in bases:
        for b in m.neighbors(a):
            s = m.transition(a, b)
            ra, rb = rep(a), rep(b)
            for g in GENERATORS:
                r.equal(f"{basis_name(a)}->{basis_name(b)} {gen_name(g)}",
                        "rep(B1) S = S rep(B2)", ra[g].matmul(s), s.matmul(rb[g]))
            back = m.transition(b, a)
            r.equal(f"{basis_name(a)}<->{basis_name(b)} inverse",
                    "S(B1->B2) S(B2->B1) = I", s.matmul(back), SqMatrix.identity(m.n))
    r.extend(loop_identities(m))
    return r


def loop_identities(m: EvalModule) -> VerifyReport:
    r = VerifyReport("loop identities")
    d, q = m.d, m.q
    Tq, Tqi, Z = m.fam("T", 1), m.fam("T", -1), m.fam("Z")
    lhs = Tq.matmul(Z).matmul(Tq).matmul(Z).matmul(Tq).matmul(Z)
    sign = -1 if d % 2 else 1
    r.equal("TZTZTZ", "T_q Z T_q Z T_q Z = (-1)^d q^(-d(d-1)) I",
            lhs, SqMatrix.identity(m.n, q ** (-d * (d - 1)) * sign))
    lhs = (Tq.matmul(m.fam("CalD", 1, 1)).matmul(Tq).matmul(m.fam("D", -1, -1))
           .matmul(Tqi).matmul(m.fam("D", 1, 1).inverse()))
    r.equal("T CalD T D T D^-1", "T_q CalD_q(t) T_q D_q^-1(t^-1) T_q^-1 D_q(t)^-1 = I",
            lhs, SqMatrix.identity(m.n))
    return r


def verify_path_independence(m: EvalModule) -> VerifyReport:
    """Going through any neighbour first gives the same transition."""
    r = VerifyReport(f"path independence d={m.d}")
    for a in ALL_BASES:
        for b in ALL_BASES:
            if a == b:
                continue
            direct = m.transition(a, b)
            for nb in m.neighbors(a):
                via = m.transition(a, nb).matmul(m.transition(nb, b))
                r.equal(f"{basis_name(a)}->{basis_name(b)} via {basis_name(nb)}",
                        "S(A->N) S(N->B) = S(A->B)", via, direct)
    return r


def verify_eta(m: EvalModule, basis=(0, 1, 2, 3)) -> VerifyReport:
    """Eigenvector properties of eta_j and the component 0/d formulas."""
    r = VerifyReport("eta vectors")
    d, q = m.d, m.q
    b0 = parse_basis(basis)
    rep = m.full_representation(b0)
    for j in range(4):
        v = m.eta(j, b0)
        for g, lam in (((j, j + 1), q ** d), ((j, j + 2), q ** d),
                       ((j - 1, j), q ** (-d)), ((j + 2, j), q ** (-d))):
            g = (g[0] % 4, g[1] % 4)
            lhs = rep[g].apply(v)
            ok = all(x == lam * y for x, y in zip(lhs, v))
            r.add(f"eta{j} eigen {gen_name(g)}", "x eta_j = lambda eta_j", ok)
    pr = m.pairing
    for b in ALL_BASES:
        i, j, k, l = b
        e0 = (ONE,) + (Scalar(0),) * d
        ed = (Scalar(0),) * d + (ONE,)
        s0 = pr.ratio(j, l, k)
        sd = pr.ratio(j, k, l)
        ek = m.eta(k, b)
        el = m.eta(l, b)
        r.add(f"{basis_name(b)} component 0", "u_0 = p[j,l]/p[k,l] eta_k",
              all(x == s0 * y for x, y in zip(e0, ek)))
        r.add(f"{basis_name(b)} component d", "u_d = p[j,k]/p[l,k] eta_l",
              all(x == sd * y for x, y in zip(ed, el)))
    return r


def verify_exchanger(m: EvalModule, basis=(0, 1, 2, 3), uniqueness: bool | None = None) -> VerifyReport:
    r = VerifyReport(f"exchanger d={m.d}")
    b0 = parse_basis(basis)
    d, t = m.d, m.t
    n = m.n
    # table consistency: all eight tabulated matrices describe one map
    ref = (0, 2, 1, 3)
    xref = m.exchanger_tabulated(ref)
    for b in EXCHANGER_TABLE:
        if b == ref:
            continue
        s = m.transition(ref, b)
        r.equal(f"table {basis_name(b)}", "X(B) = S^-1 X([0,2,1,3]) S",
                xref.matmul(s), s.matmul(m.exchanger_tabulated(b)))
    x = m.exchanger_matrix(b0)
    r.equal("X^2", "X^2 = t^d I", x.matmul(x), SqMatrix.identity(n, t ** d))
    rep = m.full_representation(b0)
    for g in GENERATORS:
        g2 = shift(g, 2)
        r.equal(f"conj {gen_name(g)}", "X x_ij X^-1 = x_(i+2,j+2)",
                x.matmul(rep[g]), rep[g2].matmul(x))
    for j in range(4):
        s = m.eta_image_scalar(j)
        lhs = x.apply(m.eta(j, b0))
        rhs = m.eta(j + 2, b0)
        r.add(f"X eta{j}", "X eta_j = s_j eta_(j+2)",
              all(a == s * c for a, c in zip(lhs, rhs)))
    for b in ALL_BASES:
        s = m.exchanger_scalar(b)
        xb = m.exchanger_matrix(b)
        r.equal(f"scalar {basis_name(b)}", "X(B) = s S(B -> B+2)",
                xb, m.transition(b, basis_shift(b, 2)).scale(s))
    if uniqueness is None:
        uniqueness = d <= 2
    if uniqueness:
        pairs = [(rep[g], rep[shift(g, 2)]) for g in GENERATORS]
        sols = commuting_solutions(pairs, n)
        r.add("uniqueness", "solutions of X x_ij = x_(i+2,j+2) X form a line",
              len(sols) == 1, f"dimension {len(sols)}")
    return r


def shape_check(m: EvalModule, basis) -> VerifyReport:
    b = parse_basis(basis)
    r = VerifyReport(f"shapes {basis_name(b)}")
    d, q = m.d, m.q
    k, l = b[2], b[3]
    for g in GENERATORS:
        rr = g[0]
        kind = (g[1] - g[0]) % 4
        table = SHAPE_NEIGHBOR if kind == 1 else SHAPE_OPPOSITE
        pattern, rule = table[((k - rr) % 4, (l - rr) % 4)]
        mat = m.rep_matrix(b, g)
        pred = PATTERNS[pattern]
        sup = support(mat)
        ok = all(pred(i, j) for i, j in sup)
        witness = None
        if not ok:
            bad = sorted(ij for ij in sup if not pred(*ij))
            witness = f"entry {bad[0]} outside {pattern}"
        if ok and rule is not None:
            for n_ in range(m.n):
                lam = q ** (d - 2 * n_) if rule == "d-2n" else q ** (2 * n_ - d)
                if mat[n_, n_] != lam:
                    ok = False
                    witness = f"diagonal entry {n_} = {mat[n_, n_].canonical()}"
                    break
        rel = pattern + ("" if rule is None else f", diagonal q^({rule})")
        r.add(f"{gen_name(g)} on [{k},{l}]", rel, ok, witness)
    return r


def family_identities(m: EvalModule) -> VerifyReport:
    """Miscellaneous matrix identities among the named families."""
    r = VerifyReport(f"family identities d={m.d}")
    f = m.fam
    q, t = m.q, m.t
    ti = t.inv()
    one = SqMatrix.identity(m.n)
    Z = f("Z")

    def E(qd=1, z=False):
        return f("E", qd, 0, z)

    def K(qd=1):
        return f("K", qd)

    def F(qd, te, z=False):
        return f("F", qd, te, z)

    def G(qd, te, z=False):
        return f("G", qd, te, z)

    def L(qd, te, z=False):
        return f("L", qd, te, z)

    def S(qd, te, z=False):
        return f("S", qd, te, z)

    def M(qd, te, z=False):
        return f("M", qd, te, z)

    def Tm(qd):
        return f("T", qd)

    def c(a, b):
        return qcomm(a, b, q)

    Einv = f("Einv", 1)
    Linv = f("Linv", 1, 1)
    ident = [
        ("t(ZE_qZ - F_q(t^-1)) = [E_q^-1, ZF_q^-1(t)Z]/(q-q^-1)",
         (E(1, True) - F(1, -1)).scale(t), c(E(-1), F(-1, 1, True))),
        ("t(G_q(t^-1) - ZE_q^-1Z) = [S_q(t), K_q]/(q-q^-1)",
         (G(1, -1) - E(-1, True)).scale(t), c(S(1, 1), K())),
        ("t(K_q - S_q(t^-1)) = [G_q(t), ZE_q^-1Z]/(q-q^-1)",
         (K() - S(1, -1)).scale(t), c(G(1, 1), E(-1, True))),
        ("t(ZE_qZ - M_q(t)) = [E_q^-1, M_q(t)]/(q-q^-1)",
         (E(1, True) - M(1, 1)).scale(t), c(E(-1), M(1, 1))),
        ("t^-1(F_q^-1(t) - K_q) = [E_q, K_q]/(q-q^-1)",
         (F(-1, 1) - K()).scale(ti), c(E(), K())),
        ("t(E_q^-1 - K_q) = [F_q(t), K_q]/(q-q^-1)",
         (E(-1) - K()).scale(t), c(F(1, 1), K())),
        ("t^-1(ZG_q^-1(t)Z - L_q(t)^-1) = [L_q(t)^-1, ZS_q^-1(t^-1)Z]/(q-q^-1)",
         (G(-1, 1, True) - Linv).scale(ti), c(Linv, S(-1, -1, True))),
        ("t(K_q - E_q^-1) = [G_q(t), E_q^-1]/(q-q^-1)",
         (K() - Einv).scale(t), c(G(1, 1), Einv)),
        ("t^-1(S_q(t) - E_q) = [ZE_q^-1Z, E_q]/(q-q^-1)",
         (S(1, 1) - E()).scale(ti), c(E(-1, True), E())),
        ("t(S_q(t^-1) - ZL_q^-1(t)Z) = [ZL_q^-1(t)Z, G_q(t)]/(q-q^-1)",
         (S(1, -1) - L(-1, 1, True)).scale(t), c(L(-1, 1, True), G(1, 1))),
        ("t(G_q(t^-1) - E_q) = [E_q, K_q]/(q-q^-1)",
         (G(1, -1) - E()).scale(t), c(E(), K())),
        ("t(ZE_q^-1Z - E_q^-1) = [E_q^-1, S_q(t)]/(q-q^-1)",
         (E(-1, True) - Einv).scale(t), c(Einv, S(1, 1))),
        ("t(K_q - L_q(t)^-1) = [E_q, L_q(t)^-1]/(q-q^-1)",
         (K() - Linv).scale(t), c(E(), Linv)),
        ("t^-1(E_q - L_q(t)) = [L_q(t), K_q]/(q-q^-1)",
         (E() - L(1, 1)).scale(ti), c(L(1, 1), K())),
        ("t^-1(ZF_q^-1(t)Z - M_q(t)) = [M_q(t), F_q(t^-1)]/(q-q^-1)",
         (F(-1, 1, True) - M(1, 1)).scale(ti), c(M(1, 1), F(1, -1))),
        ("ZT_qZ G_q(t) = F_q(t) ZT_qZ",
         zconj(Tm(1)).matmul(G(1, 1)), F(1, 1).matmul(zconj(Tm(1)))),
        ("E_q^-1 = T_q^-1 E_q T_q",
         E(-1), Tm(-1).matmul(E()).matmul(Tm(1))),
        ("L_q(t) ZT_q^-1Z L_q^-1(t^-1) ZT_qZ = I",
         L(1, 1).matmul(zconj(Tm(-1))).matmul(L(-1, -1)).matmul(zconj(Tm(1))), one),
        ("S_q(t) = ZT_q^-1 F_q^-1(t) T_qZ",
         S(1, 1), Z.matmul(Tm(-1)).matmul(F(-1, 1)).matmul(Tm(1)).matmul(Z)),
        ("D_q(t^-1) S_q(t) D_q(t^-1)^-1 = ZS_q^-1(t)Z",
         f("D", 1, -1).matmul(S(1, 1)).matmul(f("D", 1, -1).inverse()), S(-1, 1, True)),
        ("M_q(t) = ZT_q L_q^-1(t^-1) T_q^-1Z",
         M(1, 1), Z.matmul(Tm(1)).matmul(L(-1, -1)).matmul(Tm(-1)).matmul(Z)),
        ("M_q^-1(t^-1) = CalD_q(t)^-1 M_q(t) CalD_q(t)",
         M(-1, -1), f("CalD", 1, 1).inverse().matmul(M(1, 1)).matmul(f("CalD", 1, 1))),
        ("M_q(t) Z M_q^-1(t^-1) Z = I",
         M(1, 1).matmul(M(-1, -1, True)), one),
    ]
    for name, lhs, rhs in ident:
        r.equal(name, name, lhs, rhs)
    triples = [
        ("E_q, K_q, ZE_q^-1Z", E(), K(), E(-1, True)),
        ("L_q(t), K_q, ZG_q^-1(t)Z", L(1, 1), K(), G(-1, 1, True)),
        ("S_q^-1(t), E_q^-1^-1, G_q^-1(t^-1)", S(-1, 1), f("Einv", -1), G(-1, -1)),
        ("E_q, L_q(t^-1)^-1, ZS_q^-1(t)Z", E(), f("Linv", 1, -1), S(-1, 1, True)),
        ("ZG_q(t)Z, K_q^-1, L_q^-1(t)", G(1, 1, True), K(-1), L(-1, 1)),
        ("G_q(t^-1), E_q^-1, S_q(t)", G(1, -1), Einv, S(1, 1)),
        ("ZS_q(t)Z, L_q^-1(t^-1)^-1, E_q^-1", S(1, 1, True), f("Linv", -1, -1), E(-1)),
        ("F_q(t^-1), E_q^-1, M_q(t)", F(1, -1), E(-1), M(1, 1)),
        ("M_q^-1(t), E_q, F_q^-1(t^-1)", M(-1, 1), E(), F(-1, -1)),
        ("F_q(t^-1), K_q, ZF_q^-1(t)Z", F(1, -1), K(), F(-1, 1, True)),
    ]
    for name, u, v, w in triples:
        for a, b, lab in ((u, v, "uv"), (v, w, "vw"), (w, u, "wu")):
            rel = f"(q{lab} - q^-1{lab[::-1]})/(q-q^-1) = I for ({name})"
            r.equal(rel, rel, qweyl(a, b, q), one)
    r.extend(loop_identities(m))
    return r


def verify_eval_identities(m: EvalModule, basis=(0, 1, 2, 3)) -> VerifyReport:
    """The t-commutator, Upsilon, two-pair and Askey-Wilson families."""
    g = m.full_representation(basis)
    q, t, d = m.q, m.t, m.d
    r = VerifyReport(f"evaluation identities d={d}")
    r.extend(eval_identities(g, t))
    r.extend(teq_identities(g, t))
    ups = q ** (d + 1) + q ** (-d - 1)
    target = SqMatrix.identity(m.n, ups)
    for name, mat in upsilon_forms(g, t):
        r.equal(f"Upsilon = {name}", f"Upsilon = {name}", mat, target)
    for name, mat in twopair_forms(g, t):
        r.equal(f"Upsilon = {name}", f"Upsilon = {name}", mat, target)
    r.extend(aw_relations(g, t, ups))
    return r


def verify_basis_coherence(m: EvalModule) -> VerifyReport:
    """For every ordered pair of bases, the transition conjugates one
    representation into the other."""
    r = VerifyReport(f"basis coherence d={m.d}")
    reps = {b: m.full_representation(b) for b in ALL_BASES}
    for a in ALL_BASES:
        for b in ALL_BASES:
            if a == b:
                continue
            s = m.transition(a, b)
            for g in GENERATORS:
                r.equal(f"{basis_name(a)}->{basis_name(b)} {gen_name(g)}",
                        "rep(B1) S = S rep(B2)", reps[a][g].matmul(s), s.matmul(reps[b][g]))
    return r


def verify_all_bases(m: EvalModule) -> VerifyReport:
    """Every basis gives a module for the algebra with parameter t."""
    r = VerifyReport(f"all bases d={m.d}")
    for b in ALL_BASES:
        g = m.full_representation(b)
        r.extend(verify_boxtimes(g), prefix=f"{basis_name(b)} ")
        try:
            ok = extract_t(g) == m.t
            wit = None
        except NotAModuleError as exc:
            ok, wit = False, str(exc)
        r.add(f"{basis_name(b)} t", "extract_t = t", ok, wit)
    return r


def verify_twists(m: EvalModule, basis=(0, 1, 2, 3)) -> VerifyReport:
    """Parameter changes under rho, rho^2, the dual and the relabeling theta."""
    g = m.full_representation(basis)
    t = m.t
    r = VerifyReport(f"twists d={m.d}")
    cases = (
        ("rho", apply_rho(g), t.inv(), "extract_t(rho V) = t^-1"),
        ("rho^2", apply_rho(g, 2), t, "extract_t(rho^2 V) = t"),
        ("rho^3", apply_rho(g, 3), t.inv(), "extract_t(rho^3 V) = t^-1"),
        ("dual", dual_assignment(g), t, "dual module has parameter t over q^-1"),
    )
    for name, h, want, rel in cases:
        rep = verify_boxtimes(h)
        r.extend(rep, prefix=f"{name} ")
        try:
            got = extract_t(h)
            r.add(f"{name} t", rel, got == want, None if got == want else got.canonical())
        except NotAModuleError as exc:
            r.add(f"{name} t", rel, False, str(exc))
    r.add("dual orientation", "dual module uses q^-1", dual_assignment(g).qdir == -g.qdir)
    return r


__all__ = [
    "ALL_BASES", "EvalModule", "PairingTable", "REP_TABLE", "RESOLVE", "family_identities",
    "basis_name", "basis_shift", "derive_pairing", "loop_identities",
    "parse_basis", "shape_check", "spec_text", "verify_eta", "verify_eval_identities",
    "verify_all_bases", "verify_basis_coherence", "verify_exchanger", "verify_path_independence",
    "verify_transition_consistency", "verify_twists",
]
