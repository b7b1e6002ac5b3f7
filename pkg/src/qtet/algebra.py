"""Relation checking for U_q(sl2) in the equitable presentation and for the
q-tetrahedron algebra, at the level of matrix representations.

Twists, the relabeling isomorphism to the q^-1 algebra and the dual module
are all realized on generator assignments: relabel, negate or transpose.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .qmatrix import SingularMatrixError, SqMatrix, qcomm, qweyl
from .scalar import ONE, Q, Scalar, as_scalar, q_bracket

# the eight standard generators, in the conventional order
GENERATORS = ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (2, 0), (3, 1))


def gen_name(g) -> str:
    return f"x{g[0]}{g[1]}"


def parse_gen(text) -> tuple:
    """Accept (i, j), 'x02', '02' or '0,2'."""
    if isinstance(text, tuple):
        g = (text[0] % 4, text[1] % 4)
    else:
        s = str(text).strip().lstrip("x").replace(",", "").replace(" ", "")
        if len(s) != 2 or not s.isdigit():
            raise ValueError(f"bad generator label {text!r}")
        g = (int(s[0]) % 4, int(s[1]) % 4)
    if (g[1] - g[0]) % 4 not in (1, 2):
        raise ValueError(f"x{g[0]}{g[1]} is not a standard generator")
    return g


def shift(g, k: int) -> tuple:
    return ((g[0] + k) % 4, (g[1] + k) % 4)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Check:
    name: str
    relation: str
    passed: bool
    witness: str | None = None

    def to_obj(self) -> dict:
        out = {"name": self.name, "relation": self.relation, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerifyReport:
    """Ordered list of named checks; passes when every check does."""

    title: str = ""
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def add(self, name: str, relation: str, passed: bool, witness=None) -> bool:
        self.checks.append(Check(name, relation, bool(passed), witness))
        return bool(passed)

    def equal(self, name: str, relation: str, lhs: SqMatrix, rhs: SqMatrix) -> bool:
        diff = lhs.first_difference(rhs)
        witness = None
        if diff is not None:
            i, j, a, b = diff
            witness = f"entry ({i},{j}): {a.canonical()} != {b.canonical()}"
        return self.add(name, relation, diff is None, witness)

    def extend(self, other: "VerifyReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.relation, c.passed, c.witness))

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_obj(self) -> dict:
        return {"title": self.title, "passed": self.passed,
                "checks": [c.to_obj() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=1)

    def summary(self) -> str:
        n = len(self.checks)
        bad = len(self.failures())
        state = "PASS" if not bad else "FAIL"
        return f"{state} {self.title}: {n - bad}/{n} checks"


# ---------------------------------------------------------------------------
# U_q(sl2)


@dataclass(frozen=True)
class UqTriple:
    x: SqMatrix
    y: SqMatrix
    y_inv: SqMatrix
    z: SqMatrix

    @classmethod
    def from_xyz(cls, x, y, z) -> "UqTriple":
        return cls(x, y, y.inverse(), z)

    @property
    def n(self) -> int:
        return self.x.n


def verify_equitable(t: UqTriple, q=Q) -> VerifyReport:
    q = as_scalar(q)
    r = VerifyReport("equitable relations")
    one = SqMatrix.identity(t.n)
    r.equal("yy^-1", "y y^-1 = 1", t.y.matmul(t.y_inv), one)
    r.equal("y^-1y", "y^-1 y = 1", t.y_inv.matmul(t.y), one)
    r.equal("xy", "(qxy - q^-1yx)/(q - q^-1) = 1", qweyl(t.x, t.y, q), one)
    r.equal("yz", "(qyz - q^-1zy)/(q - q^-1) = 1", qweyl(t.y, t.z, q), one)
    r.equal("zx", "(qzx - q^-1xz)/(q - q^-1) = 1", qweyl(t.z, t.x, q), one)
    return r


def casimir_forms(t: UqTriple, q=Q) -> list:
    """The six equivalent expressions for the Casimir element."""
    q = as_scalar(q)
    qi = q.inv()
    x, y, z = t.x, t.y, t.z

    def lin(a, b, c, cubic, s):
        return a.scale(s) + b.scale(s.inv()) + c.scale(s) - cubic.scale(s)
    return [
        ("qx+q^-1y+qz-qxyz", lin(x, y, z, x.matmul(y).matmul(z), q)),
        ("q^-1x+qy+q^-1z-q^-1zyx", lin(x, y, z, z.matmul(y).matmul(x), qi)),
        ("qy+q^-1z+qx-qyzx", lin(y, z, x, y.matmul(z).matmul(x), q)),
        ("q^-1y+qz+q^-1x-q^-1xzy", lin(y, z, x, x.matmul(z).matmul(y), qi)),
        ("qz+q^-1x+qy-qzxy", lin(z, x, y, z.matmul(x).matmul(y), q)),
        ("q^-1z+qx+q^-1y-q^-1yxz", lin(z, x, y, y.matmul(x).matmul(z), qi)),
    ]


class NotAModuleError(ValueError):
    pass


def casimir(t: UqTriple, q=Q) -> SqMatrix:
    """Matrix of qx + q^-1y + qz - qxyz; all six forms must agree."""
    forms = casimir_forms(t, q)
    first = forms[0][1]
    for name, m in forms[1:]:
        if m != first:
            raise NotAModuleError(f"Casimir form {name} disagrees with {forms[0][0]}")
    return first


def weyl_consequences(u: SqMatrix, v: SqMatrix, w: SqMatrix | None = None,
                      q=Q) -> VerifyReport:
    q = as_scalar(q)
    qi = q.inv()
    dq = q - qi
    n = u.n
    one = SqMatrix.identity(n)
    r = VerifyReport("q-Weyl consequences")
    if qweyl(u, v, q) != one:
        r.add("hypothesis(u,v)", "(quv - q^-1vu)/(q - q^-1) = 1", False,
              "hypothesis not satisfied")
        return r
    r.add("hypothesis(u,v)", "(quv - q^-1vu)/(q - q^-1) = 1", True)
    cuv = qcomm(u, v, q)
    r.equal("q(1-uv)", "q(1-uv) = [u,v]/(q-q^-1)", (one - u.matmul(v)).scale(q), cuv)
    r.equal("q^-1(1-vu)", "q^-1(1-vu) = [u,v]/(q-q^-1)", (one - v.matmul(u)).scale(qi), cuv)
    uv = u.commutator(v)
    dq2 = dq * dq
    ui = _try_inverse(u)
    if ui is not None:
        r.equal("[u^-1,[u,v]]", "[u^-1,[u,v]] = (q-q^-1)^2(u^-1-v)",
                ui.commutator(uv), (ui - v).scale(dq2))
    vi = _try_inverse(v)
    if vi is not None:
        r.equal("[[u,v],v^-1]", "[[u,v],v^-1] = (q-q^-1)^2(v^-1-u)",
                uv.commutator(vi), (vi - u).scale(dq2))
    if w is None:
        return r
    if qweyl(v, w, q) != one:
        r.add("hypothesis(v,w)", "(qvw - q^-1wv)/(q - q^-1) = 1", False,
              "hypothesis not satisfied")
        return r
    r.add("hypothesis(v,w)", "(qvw - q^-1wv)/(q - q^-1) = 1", True)
    r.equal("[v,uw]", "[v,uw] = q(q-q^-1)(u-w)", v.commutator(u.matmul(w)), (u - w).scale(q * dq))
    r.equal("[v,wu]", "[v,wu] = q^-1(q-q^-1)(u-w)", v.commutator(w.matmul(u)), (u - w).scale(qi * dq))
    r.equal("[v,[u,w]]", "[v,[u,w]] = (q-q^-1)^2(u-w)", v.commutator(u.commutator(w)), (u - w).scale(dq2))
    return r


def _try_inverse(m: SqMatrix):
    try:
        return m.inverse()
    except SingularMatrixError:
        return None


# ---------------------------------------------------------------------------
# the q-tetrahedron algebra


@dataclass(frozen=True)
class GeneratorAssignment:
    """Matrices for the eight standard generators.

    ``qdir`` is +1 for a module over the q algebra and -1 for the q^-1 one;
    ``q`` is the base value of q (the indeterminate or a rational).
    """

    mats: dict
    qdir: int = 1
    q: Scalar = Q

    def __post_init__(self):
        mats = {parse_gen(k): v for k, v in self.mats.items()}
        missing = [gen_name(g) for g in GENERATORS if g not in mats]
        if missing:
            raise ValueError(f"missing generators: {', '.join(missing)}")
        dims = {m.n for m in mats.values()}
        if len(dims) != 1:
            raise ValueError(f"generator matrices have different sizes {sorted(dims)}")
        object.__setattr__(self, "mats", {g: mats[g] for g in GENERATORS})
        object.__setattr__(self, "q", as_scalar(self.q))

    def __getitem__(self, g) -> SqMatrix:
        return self.mats[parse_gen(g)]

    @property
    def n(self) -> int:
        return self.mats[(0, 1)].n

    @property
    def q_eff(self) -> Scalar:
        return self.q if self.qdir == 1 else self.q.inv()

    def replace(self, mats=None, qdir=None) -> "GeneratorAssignment":
        return GeneratorAssignment(self.mats if mats is None else mats,
                                   self.qdir if qdir is None else qdir, self.q)

    def map(self, f) -> "GeneratorAssignment":
        return self.replace({g: f(m) for g, m in self.mats.items()})

    @classmethod
    def trivial(cls, n: int = 1, q=Q) -> "GeneratorAssignment":
        one = SqMatrix.identity(n)
        return cls({g: one for g in GENERATORS}, 1, q)

    def to_obj(self) -> dict:
        return {"qdir": "q" if self.qdir == 1 else "q^-1",
                "generators": {gen_name(g): m.to_json_obj() for g, m in self.mats.items()}}


def verify_boxtimes(g: GeneratorAssignment) -> VerifyReport:
    q = g.q_eff
    r = VerifyReport("q-tetrahedron relations")
    one = SqMatrix.identity(g.n)
    for i in range(4):
        a, b = (i, (i + 2) % 4), ((i + 2) % 4, i)
        r.equal(f"inv {gen_name(a)}{gen_name(b)}", "x_ij x_ji = 1",
                g[a].matmul(g[b]), one)
    for i in range(4):
        for s1, s2 in ((1, 1), (1, 2), (2, 1)):
            j, k = (i + s1) % 4, (i + s1 + s2) % 4
            a, b = (i, j), (j, k)
            r.equal(f"weyl {gen_name(a)},{gen_name(b)}",
                    "(q x_ij x_jk - q^-1 x_jk x_ij)/(q - q^-1) = 1",
                    qweyl(g[a], g[b], q), one)
    q3 = q_bracket(3, q)
    for i in range(4):
        a = (i, (i + 1) % 4)
        b = ((i + 2) % 4, (i + 3) % 4)
        x, y = g[a], g[b]
        x2 = x.matmul(x)
        x3 = x2.matmul(x)
        lhs = (x3.matmul(y) - x2.matmul(y).matmul(x).scale(q3)
               + x.matmul(y).matmul(x2).scale(q3) - y.matmul(x3))
        r.equal(f"serre {gen_name(a)},{gen_name(b)}",
                "x^3 y - [3] x^2 y x + [3] x y x^2 - y x^3 = 0", lhs, SqMatrix.zero(g.n))
    return r


def kappa_pullback(g: GeneratorAssignment, i: int) -> UqTriple:
    i %= 4
    return UqTriple(x=g[(i + 2, i + 3)], y=g[(i + 3, i + 1)],
                    y_inv=g[(i + 1, i + 3)], z=g[(i + 1, i + 2)])


def upsilon(g: GeneratorAssignment, i: int) -> SqMatrix:
    return casimir(kappa_pullback(g, i), g.q_eff)


def verify_upsilon(g: GeneratorAssignment, d: int | None = None) -> VerifyReport:
    """Each Upsilon_i commutes with its four generators and equals the
    expected scalar (q^(d+1) + q^(-d-1))I when d is given."""
    r = VerifyReport("Upsilon")
    q = g.q_eff
    for i in range(4):
        tr = kappa_pullback(g, i)
        r.extend(verify_equitable(tr, q), prefix=f"kappa{i} ")
        try:
            u = casimir(tr, q)
        except NotAModuleError as exc:
            r.add(f"Upsilon{i} forms", "six Casimir forms agree", False, str(exc))
            continue
        r.add(f"Upsilon{i} forms", "six Casimir forms agree", True)
        for m, nm in ((tr.x, "x"), (tr.y, "y"), (tr.y_inv, "y^-1"), (tr.z, "z")):
            r.equal(f"Upsilon{i} commutes {nm}", "[Upsilon_i, generator] = 0",
                    u.commutator(m), SqMatrix.zero(g.n))
        if d is not None:
            r.equal(f"Upsilon{i} value", "Upsilon_i = (q^(d+1) + q^(-d-1)) I",
                    u, SqMatrix.identity(g.n, q ** (d + 1) + q ** (-d - 1)))
    return r


def apply_rho(g: GeneratorAssignment, k: int = 1) -> GeneratorAssignment:
    """Twist by rho^k: the new x_ij acts as the old x_{i-k,j-k}."""
    return g.replace({gg: g[shift(gg, -k)] for gg in GENERATORS})


def apply_sigma(g: GeneratorAssignment) -> GeneratorAssignment:
    return g.map(lambda m: -m)


THETA = {(0, 1): (0, 1), (1, 2): (3, 0), (2, 3): (2, 3), (3, 0): (1, 2),
         (0, 2): (3, 1), (1, 3): (2, 0), (2, 0): (1, 3), (3, 1): (0, 2)}


def apply_theta(g: GeneratorAssignment) -> GeneratorAssignment:
    """Relabel through the isomorphism to the q^-1 algebra (an involution)."""
    return g.replace({gg: g[THETA[gg]] for gg in GENERATORS}, qdir=-g.qdir)


def dual_assignment(g: GeneratorAssignment) -> GeneratorAssignment:
    """Transpose every matrix and flip the orientation of q."""
    return g.replace({gg: m.transpose() for gg, m in g.mats.items()}, qdir=-g.qdir)


def extract_t(g: GeneratorAssignment) -> Scalar:
    """Solve t(x01 - x23) = [x30, x12]/(q - q^-1) and cross-check."""
    q = g.q_eff
    lhs = g[(0, 1)] - g[(2, 3)]
    if lhs.is_zero():
        raise NotAModuleError("generators not distinct: x01 = x23")
    rhs = qcomm(g[(3, 0)], g[(1, 2)], q)
    t = None
    for i in range(g.n):
        for j in range(g.n):
            if lhs[i, j]:
                t = rhs[i, j] / lhs[i, j]
                break
        if t is not None:
            break
    if t.is_zero() or lhs.scale(t) != rhs:
        raise NotAModuleError("not an evaluation module")
    second = qcomm(g[(0, 1)], g[(2, 3)], q)
    if (g[(1, 2)] - g[(3, 0)]).scale(t.inv()) != second:
        raise NotAModuleError("not an evaluation module")
    return t


# ---------------------------------------------------------------------------
# identity families on evaluation modules


def eval_identities(g: GeneratorAssignment, t) -> VerifyReport:
    t = as_scalar(t)
    q = g.q_eff
    r = VerifyReport("evaluation identities")
    x = g.__getitem__
    r.equal("t(x01-x23)", "t(x01-x23) = [x30,x12]/(q-q^-1)",
            (x("01") - x("23")).scale(t), qcomm(x("30"), x("12"), q))
    r.equal("t^-1(x12-x30)", "t^-1(x12-x30) = [x01,x23]/(q-q^-1)",
            (x("12") - x("30")).scale(t.inv()), qcomm(x("01"), x("23"), q))
    return r


# (power of t, a, b, c, d) meaning t^p (x_a - x_b) = [x_c, x_d]/(q-q^-1)
TEQ_TABLE = (
    (1, "01", "02", "30", "02"),
    (-1, "12", "13", "01", "13"),
    (1, "23", "20", "12", "20"),
    (-1, "30", "31", "23", "31"),
    (-1, "30", "20", "20", "01"),
    (1, "01", "31", "31", "12"),
    (-1, "12", "02", "02", "23"),
    (1, "23", "13", "13", "30"),
)


def teq_identities(g: GeneratorAssignment, t) -> VerifyReport:
    t = as_scalar(t)
    q = g.q_eff
    r = VerifyReport("t-commutator identities")
    for p, a, b, c, d in TEQ_TABLE:
        tp = "t" if p == 1 else "t^-1"
        rel = f"{tp}(x{a}-x{b}) = [x{c},x{d}]/(q-q^-1)"
        r.equal(rel, rel, (g[a] - g[b]).scale(t ** p), qcomm(g[c], g[d], q))
    return r


def upsilon_forms(g: GeneratorAssignment, t) -> list:
    """The four linear-in-products expressions that equal Upsilon."""
    t = as_scalar(t)
    q = g.q_eff
    qi = q.inv()
    one = SqMatrix.identity(g.n)
    out = []
    for p, a, b, c, e in ((1, "01", "23", "30", "12"), (-1, "12", "30", "01", "23"),
                          (1, "23", "01", "12", "30"), (-1, "30", "12", "23", "01")):
        m = (g[a].matmul(g[b]) - one).scale(t ** p) + g[c].scale(q) + g[e].scale(qi)
        tp = "t" if p == 1 else "t^-1"
        out.append((f"{tp}(x{a}x{b}-1)+qx{c}+q^-1x{e}", m))
    return out


def twopair_forms(g: GeneratorAssignment, t) -> list:
    t = as_scalar(t)
    q = g.q_eff
    qi = q.inv()
    one = SqMatrix.identity(g.n)
    out = []
    for p, lead, a, b in ((1, "30", "01", "23"), (-1, "01", "12", "30"),
                          (1, "12", "23", "01"), (-1, "23", "30", "12")):
        m = g[lead].scale(q + qi) + (qweyl(g[a], g[b], q) - one).scale(t ** p)
        tp = "t" if p == 1 else "t^-1"
        out.append((f"(q+q^-1)x{lead}+{tp}((qx{a}x{b}-q^-1x{b}x{a})/(q-q^-1)-1)", m))
    return out


def aw_relations(g: GeneratorAssignment, t, ups) -> VerifyReport:
    """The four Askey-Wilson relations with Upsilon replaced by ``ups``."""
    t = as_scalar(t)
    ups = as_scalar(ups)
    q = g.q_eff
    qi = q.inv()
    dq = q - qi
    q22 = q * q + qi * qi
    r = VerifyReport("Askey-Wilson relations")
    for p, u, v in ((-1, "01", "23"), (-1, "23", "01"), (1, "12", "30"), (1, "30", "12")):
        x, y = g[u], g[v]
        tp = t ** p
        lhs = (x.matmul(x).matmul(y) - x.matmul(y).matmul(x).scale(q22)
               + y.matmul(x).matmul(x))
        rhs = (x.scale(-dq * dq * (ONE + tp * ups))
               + SqMatrix.identity(g.n, dq * (q * q - qi * qi) * tp))
        ts = "t" if p == 1 else "t^-1"
        r.equal(f"aw x{u},x{v}",
                f"x{u}^2x{v} - (q^2+q^-2)x{u}x{v}x{u} + x{v}x{u}^2 = "
                f"-(q-q^-1)^2(1+{ts}Upsilon)x{u} + (q-q^-1)(q^2-q^-2){ts}",
                lhs, rhs)
    return r


__all__ = [
    "GENERATORS", "Check", "GeneratorAssignment", "NotAModuleError", "THETA", "UqTriple",
    "VerifyReport", "apply_rho", "apply_sigma", "apply_theta", "aw_relations", "casimir",
    "casimir_forms", "dual_assignment", "eval_identities", "extract_t", "gen_name",
    "kappa_pullback", "parse_gen", "shift", "teq_identities", "twopair_forms", "upsilon",
    "upsilon_forms", "verify_boxtimes", "verify_equitable", "verify_upsilon",
    "weyl_consequences",
]
