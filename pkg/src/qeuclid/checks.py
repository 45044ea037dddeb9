"""Named verification checks, grouped into suites, with text/JSON reports.

Every check returns ``(ok, detail)``.  A check that hits a vanishing
denominator (numeric mode at s = 1) is reported as failed with a ``pole``
detail instead of aborting the run.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

from . import algebra as alg
from . import calculus as calc_mod
from . import connection as conn
from . import linalg, rmatrix
from .algebra import AlgElem
from .calculus import FormElem, build_calculus, d, inner_derivation, pair, star_form, wedge
from .scalars import QS, PoleError, Scalar, numeric_field

SUITES = ("scalars", "rmatrix", "algebra", "calculus", "connection")
EVAL_POINTS = (Fraction(3, 2), Fraction(2), Fraction(5, 3))

_REGISTRY: dict[str, list] = {name: [] for name in SUITES}


def check(suite):
    def deco(fn):
        _REGISTRY[suite].append((fn.__name__, fn))
        return fn
    return deco


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str
    ms: float


@dataclass
class CheckReport:
    suite: str
    mode: str
    checks: list = dc_field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c.status == "fail")

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def status_map(self):
        return {c.name: c.status for c in self.checks}

    def to_dict(self):
        return {
            "suite": self.suite,
            "mode": self.mode,
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail, "ms": round(c.ms, 3)}
                       for c in self.checks],
            "summary": {"total": len(self.checks), "failed": self.failed},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = [f"suite {self.suite} ({self.mode})"]
        for c in self.checks:
            lines.append(f"  {c.status.upper():4}  {c.name:<{width}}  {c.detail}  [{c.ms:.1f} ms]")
        lines.append(f"{len(self.checks)} checks, {self.failed} failed")
        return "\n".join(lines)


class Context:
    """What a check sees: the field, the (possibly corrupted) model, a seeded RNG."""

    def __init__(self, field=QS, rhat=None, lambdas=None, seed=0):
        self.field = field
        self._rhat = rhat
        self._lambdas = lambdas
        self.seed = seed

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    @cached_property
    def rdata(self):
        if self._rhat is None:
            return rmatrix.rmatrix_data(self.field)
        return rmatrix.RMatrixData(self.field, self._rhat, validate=False)

    @cached_property
    def calc(self):
        if self._rhat is None and self._lambdas is None:
            return calc_mod.calculus(self.field)
        return build_calculus(self.field, rhat=self._rhat, lambdas=self._lambdas)

    def fmt(self, x):
        return self.field.fmt(x) if not isinstance(x, AlgElem) else str(x)


# --- random elements ----------------------------------------------------------

_DENOMS = ([1], [0, 1], [1, 0, 1], [2, 0, 1], [1, 0, 1, 0, 1], [0, 0, 1])


def random_scalar(rng: random.Random) -> Scalar:
    """A random element of Q(s) whose denominator has no zero at s in Q \\ {0}."""
    num = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
    if not any(num):
        num[0] = 1
    return Scalar(num, rng.choice(_DENOMS))


def random_laurent(rng: random.Random, field) -> object:
    acc = field.zero
    for _ in range(rng.randint(1, 2)):
        acc = acc + field.coerce(rng.choice([-2, -1, 1, 2, 3])) * field.s_pow(rng.randint(-2, 2))
    return acc if acc else field.one


def random_poly(rng: random.Random, field, terms=3, maxdeg=2) -> AlgElem:
    """Random polynomial in x-, x0, x+."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = (0, 0, rng.randint(0, maxdeg), rng.randint(0, maxdeg), rng.randint(0, maxdeg))
        out[m] = out.get(m, field.zero) + random_laurent(rng, field)
    return AlgElem(out, field)


def random_ext(rng: random.Random, field, terms=2) -> AlgElem:
    """Random element of the extended algebra (L^(+-1), r^(+-1), x0^-1 allowed)."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = (rng.randint(-1, 1), rng.randint(-1, 1), rng.randint(0, 2), rng.randint(-1, 2), rng.randint(0, 2))
        out[m] = out.get(m, field.zero) + random_laurent(rng, field)
    return AlgElem(out, field)


def _gens(field):
    return [AlgElem.gen(n, field) for n in ("x-", "x0", "x+")]


NAMES = ("-", "0", "+")


# --- scalars -------------------------------------------------------------------


@check("scalars")
def field_axioms(ctx):
    rng = ctx.rng("axioms")
    F = ctx.field
    for k in range(30):
        a, b, c = (F.coerce(random_scalar(rng)) for _ in range(3))
        if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            return False, f"axiom violated on sample {k}"
        if a and a * (F.one / a) != F.one:
            return False, f"inverse violated on sample {k}"
    return True, "30 random triples: associativity, distributivity, inverses"


@check("scalars")
def normalize_canonical(ctx):
    cases = [(([-1, 0, 1], [-1, 1]), "s+1"), (([0, 2], [4]), "s/2"), (([1], [0, -1]), "-1/s")]
    for (n, dd), want in cases:
        got = Scalar(n, dd)
        if str(got) != want or Scalar(got.num, got.den) != got:
            return False, f"normalize({n}, {dd}) -> {got}, expected {want}"
    return True, "gcd, content and sign normalization; idempotent"


@check("scalars")
def h_value(ctx):
    F = ctx.field
    h = F.s - F.one / F.s
    want = F.coerce(Scalar([-1, 0, 1], [0, 1]))
    return h == want and F.h == h, f"h = {F.fmt(h)}"


@check("scalars")
def trace_norm_value(ctx):
    F = ctx.field
    got = F.q + (F.one + F.one / F.q)
    want = F.coerce(Scalar([1, 0, 1, 0, 1], [0, 0, 1]))
    return got == want, f"q + 1 + q^-1 = {F.fmt(got)}"


@check("scalars")
def eval_commutes(ctx):
    rng = ctx.rng("eval")
    points = EVAL_POINTS if ctx.field.symbolic else (ctx.field.s0,)
    for s0 in points:
        for k in range(20):
            a, b = random_scalar(rng), random_scalar(rng)
            ea, eb = a.evaluate(s0), b.evaluate(s0)
            if (a + b).evaluate(s0) != ea + eb or (a * b).evaluate(s0) != ea * eb:
                return False, f"evaluation at s={s0} does not commute (sample {k})"
            if eb and (a / b).evaluate(s0) != ea / eb:
                return False, f"division at s={s0} does not commute (sample {k})"
    return True, f"at s in {{{', '.join(map(str, points))}}}"


@check("scalars")
def pole_detection(ctx):
    hinv = QS.one / QS.h
    try:
        hinv.evaluate(1)
    except PoleError as exc:
        return True, f"h^-1 at s=1: {exc}"
    return False, "h^-1 evaluated at s=1 without a pole"


# --- rmatrix -------------------------------------------------------------------


def _anchor(ctx, name):
    hit = ctx.__dict__.get("_anchors")
    if hit is None:
        hit = ctx.__dict__["_anchors"] = {n: (ok, dtl) for n, ok, dtl in rmatrix.anchor_report(ctx.rdata.rhat, ctx.field)}
    return hit[name]


@check("rmatrix")
def braid_equation(ctx):
    return _anchor(ctx, "braid_equation")


@check("rmatrix")
def cubic_identity(ctx):
    return _anchor(ctx, "cubic_identity")


@check("rmatrix")
def spectral_decomposition(ctx):
    return _anchor(ctx, "spectral_decomposition")


@check("rmatrix")
def antisymmetrizer_relations(ctx):
    return _anchor(ctx, "antisymmetrizer_relations")


@check("rmatrix")
def trace_projector(ctx):
    return _anchor(ctx, "trace_projector")


@check("rmatrix")
def projector_orthogonality(ctx):
    F = ctx.field
    P = (ctx.rdata.ps, ctx.rdata.pa, ctx.rdata.pt)
    I = linalg.eye(9, F)
    for a in range(3):
        for b in range(3):
            prod = linalg.matmul(P[a], P[b], F)
            want = P[a] if a == b else linalg.zeros(9, 9, F)
            if prod != want:
                return False, f"P{'sat'[a]} P{'sat'[b]} wrong"
    total = linalg.add(linalg.add(P[0], P[1]), P[2])
    traces = tuple(sum((M[i][i] for i in range(9)), F.zero) for M in P)
    ok = total == I and traces == (F.coerce(5), F.coerce(3), F.coerce(1))
    return ok, f"idempotent, orthogonal, complete; traces {tuple(F.fmt(t) for t in traces)}"


@check("rmatrix")
def torsion_split(ctx):
    F = ctx.field
    q = F.q
    lhs = linalg.add(linalg.scale(q, ctx.rdata.rhat), linalg.eye(9, F))
    rhs = linalg.add(linalg.scale(q * q + F.one, ctx.rdata.ps), linalg.scale(F.one / q + F.one, ctx.rdata.pt))
    return lhs == rhs, "q Rhat + 1 = (q^2+1) P_s + (q^-1+1) P_t"


@check("rmatrix")
def braid_scalar_multiple(ctx):
    ok = rmatrix.check_braid(linalg.scale(ctx.field.q, ctx.rdata.rhat), ctx.field)
    return ok, "q Rhat satisfies the braid equation"


@check("rmatrix")
def braid_fails_for_pa(ctx):
    bad = not rmatrix.check_braid(ctx.rdata.pa, ctx.field)
    return bad, "P_a violates the braid equation (control)"


@check("rmatrix")
def metric_inverse(ctx):
    F = ctx.field
    g = ctx.rdata.metric
    return linalg.matmul(g, g, F) == linalg.eye(3, F), "g^ik g_kj = delta"


def _compat(ctx, variant):
    S = ctx.rdata.sigma_matrix(variant)
    return rmatrix.compat_defect(S, ctx.field, ctx.rdata.metric)


@check("rmatrix")
def compat_defect_plus(ctx):
    c = _compat(ctx, "plus")
    return c == ctx.field.q ** 2, f"S = q Rhat: factor {ctx.fmt(c)}"


@check("rmatrix")
def compat_defect_minus(ctx):
    c = _compat(ctx, "minus")
    return c == ctx.field.one / ctx.field.q ** 2, f"S = (q Rhat)^-1: factor {ctx.fmt(c)}"


@check("rmatrix")
def sigma_braid_plus(ctx):
    return rmatrix.check_braid(ctx.rdata.s_plus, ctx.field), "S = q Rhat"


@check("rmatrix")
def sigma_braid_minus(ctx):
    return rmatrix.check_braid(ctx.rdata.s_minus, ctx.field), "S = (q Rhat)^-1"


# --- algebra -------------------------------------------------------------------


@check("algebra")
def critical_pairs_confluent(ctx):
    F = ctx.field
    words = alg.critical_pairs(F)
    for w in words:
        left, right, prod = alg.resolve_critical_pair(w, F)
        if not (left == right and right == prod):
            return False, f"overlap {' '.join(w)} does not resolve"
    return True, f"{len(words)} overlaps resolve"


@check("algebra")
def associativity_random(ctx):
    rng = ctx.rng("assoc")
    F = ctx.field
    for k in range(200):
        u, v, w = (random_ext(rng, F) for _ in range(3))
        if not alg.alg_equal((u * v) * w, u * (v * w)):
            return False, f"triple {k}: ({u})({v})({w})"
    return True, "200 random triples"


@check("algebra")
def star_involution(ctx):
    rng = ctx.rng("star")
    F = ctx.field
    gens = [AlgElem.gen(n, F) for n in ("x-", "x0", "x+", "L", "r")]
    samples = gens + [random_ext(rng, F) for _ in range(50)]
    for u in samples:
        if not alg.alg_equal(u.star().star(), u):
            return False, f"star(star({u})) != {u}"
    return True, f"{len(samples)} elements"


@check("algebra")
def star_antihomomorphism(ctx):
    rng = ctx.rng("star-anti")
    F = ctx.field
    for k in range(50):
        u, v = random_ext(rng, F), random_ext(rng, F)
        if not alg.alg_equal((u * v).star(), v.star() * u.star()):
            return False, f"pair {k}: star(uv) != star(v) star(u)"
    return True, "50 random pairs"


@check("algebra")
def star_values(ctx):
    F = ctx.field
    xm, x0, xp = _gens(F)
    ok = xm.star() == xp.scale(F.s) and x0.star() == x0 and xp.star() == xm.scale(F.one / F.s)
    return ok, "(x-)* = s x+, (x0)* = x0, (x+)* = s^-1 x-"


@check("algebra")
def star_relations(ctx):
    F = ctx.field
    xm, x0, xp = _gens(F)
    L = AlgElem.gen("L", F)
    rels = {
        "x- x0 = q x0 x-": (xm * x0, (x0 * xm).scale(F.q)),
        "x+ x0 = q^-1 x0 x+": (xp * x0, (x0 * xp).scale(F.one / F.q)),
        "[x+, x-] = h x0^2": (xp * xm - xm * xp, (x0 * x0).scale(F.h)),
        "x L = q L x": (xm * L, (L * xm).scale(F.q)),
    }
    for name, (lhs, rhs) in rels.items():
        if not alg.alg_equal(lhs, rhs):
            return False, f"relation {name} fails"
        if not alg.alg_equal(lhs.star(), rhs.star()):
            return False, f"star of relation {name} fails"
    return True, "defining relations are star-stable"


@check("algebra")
def r_squared_central(ctx):
    F = ctx.field
    r2 = AlgElem.mono(e=2, field=F)
    for name, x in zip(NAMES, _gens(F)):
        if not (r2 * x - x * r2).is_zero():
            return False, f"[r^2, x{name}] != 0"
    L = AlgElem.gen("L", F)
    ok = alg.alg_equal(L * r2, (r2 * L).scale(F.one / F.q ** 2))
    return ok, "r^2 central over x; L r^2 = q^-2 r^2 L"


@check("algebra")
def pbw_examples(ctx):
    F = ctx.field
    xm, x0, xp = _gens(F)
    r = AlgElem.gen("r", F)
    want1 = xm * xp + (x0 * x0).scale(F.h)
    want2 = (xm * xp).scale(F.s + F.one / F.s) + (x0 * x0).scale(F.q)
    if (xp * xm).terms != want1.terms:
        return False, f"x+ x- -> {xp * xm}"
    if (r * r).terms != want2.terms:
        return False, f"r r -> {r * r}"
    x0i = x0 ** -1
    ok = alg.alg_equal(x0i * xm, (xm * x0i).scale(F.q)) and alg.alg_equal(xp * x0i, (x0i * xp).scale(F.q))
    return ok, f"x+ x- = {xp * xm}; r r = {r * r}"


@check("algebra")
def r_clearing_equality(ctx):
    F = ctx.field
    r = AlgElem.gen("r", F)
    w = (r ** -2) * (r * r)
    return alg.alg_equal(w, AlgElem.const(1, F)) and w.terms != {alg.ONE_MONO: F.one}, \
        f"r^-2 (r r) = {w} equals 1"


# --- calculus ------------------------------------------------------------------


@check("calculus")
def r_xi_scalar(ctx):
    C = ctx.calc
    c = C.field.one / C.r_scalar
    return c == C.field.q ** 2, f"r^2 xi = {ctx.fmt(c)} xi r^2 (single scalar); xi r = {ctx.fmt(C.r_factor)} r xi"


@check("calculus")
def frame_inverse(ctx):
    C = ctx.calc
    F = C.field
    T, E = C.frame.theta_mat, C.frame.e_mat
    for i in range(3):
        for j in range(3):
            want = AlgElem.const(1 if i == j else 0, F)
            et = sum((E[i][a] * T[a][j] for a in range(3)), AlgElem({}, F))
            te = sum((T[i][a] * E[a][j] for a in range(3)), AlgElem({}, F))
            if not (alg.alg_equal(et, want) and alg.alg_equal(te, want)):
                return False, f"entry ({i},{j}) of e theta or theta e"
    return True, f"e^-_- = {E[0][0]}"


@check("calculus")
def frame_centrality_x(ctx):
    C = ctx.calc
    for a in range(3):
        for i, x in enumerate(C.X):
            if not calc_mod.frame_commutator_xi(C, a, x).is_zero():
                return False, f"[theta^{NAMES[a]}, x^{NAMES[i]}] != 0"
    return True, "all 9 pairs commute (xi exchange rules)"


@check("calculus")
def frame_centrality_L_r(ctx):
    C = ctx.calc
    for name in ("L", "r"):
        g = AlgElem.gen(name, C.field)
        for a in range(3):
            if not calc_mod.frame_commutator_xi(C, a, g).is_zero():
                return False, f"[theta^{NAMES[a]}, {name}] != 0"
    return True, "[theta^a, L] = [theta^a, r] = 0"


@check("calculus")
def dx_via_dirac_commutator(ctx):
    C = ctx.calc
    th = C.dirac_theta_xi()
    for k, x in enumerate(C.X):
        dx = th.rmul(x) - th.lmul(x)
        dx = calc_mod.XiForm([-c for c in dx.coeffs], C)
        if not (dx - calc_mod.XiForm.basis(k, C)).is_zero():
            return False, f"-[theta, x^{NAMES[k]}] = {dx}"
    return True, "-[theta, x^i] = xi^i for i = -, 0, +"


@check("calculus")
def dx_in_frame(ctx):
    C = ctx.calc
    for k, x in enumerate(C.X):
        if not (d(FormElem.function(x, C)) - C.xi_in_frame(k)).is_zero():
            return False, f"d x^{NAMES[k]} != xi^{NAMES[k]} in the frame basis"
    return True, "d x^i = q L e^i_a theta^a"


@check("calculus")
def dirac_equals_minus_lambda_theta(ctx):
    C = ctx.calc
    th = calc_mod.dirac_theta(C).component(1)
    for a in range(3):
        if not (th[a] + C.frame.lambdas[a]).is_zero():
            return False, f"theta component {NAMES[a]}: {th[a]} vs -lambda_{NAMES[a]} = {-C.frame.lambdas[a]}"
    return True, "(q-1)^-1 q^2 r^-2 x^i g_ij xi^j = -lambda_a theta^a"


@check("calculus")
def lambda_derivations(ctx):
    C = ctx.calc
    F = C.field
    qL = AlgElem.mono(k=1, coef=F.q, field=F)
    for a in range(3):
        for i, x in enumerate(C.X):
            got = inner_derivation(C, a, x)
            want = qL * C.frame.e_mat[i][a]
            if not alg.alg_equal(got, want):
                return False, f"[lambda_{NAMES[a]}, x^{NAMES[i]}] = {got}, expected q L e^{NAMES[i]}_{NAMES[a]} = {want}"
    return True, "[lambda_a, x^i] = q L e^i_a for all 9 pairs"


@check("calculus")
def duality(ctx):
    C = ctx.calc
    for a in range(3):
        for b in range(3):
            v = pair(FormElem.frame(b, C), a).constant_value()
            if v != (C.field.one if a == b else C.field.zero):
                return False, f"theta^{NAMES[b]}(e_{NAMES[a]}) = {v}"
    return True, "theta^a(e_b) = delta^a_b"


@check("calculus")
def d_lambda_zero(ctx):
    C = ctx.calc
    return d(FormElem.function(AlgElem.gen("L", C.field), C)).is_zero(), "d L = 0"


@check("calculus")
def dirac_square(ctx):
    C = ctx.calc
    t2 = wedge(C.theta_form(), C.theta_form())
    return t2.is_zero(), f"theta theta = {t2}"


@check("calculus")
def d_squared_generators(ctx):
    C = ctx.calc
    xs = C.X
    samples = list(xs) + [xs[i] * xs[j] for i in range(3) for j in range(3)]
    for f in samples:
        if not d(d(FormElem.function(f, C))).is_zero():
            return False, f"d d ({f}) != 0"
    return True, f"{len(samples)} generators and quadratic monomials"


@check("calculus")
def d_squared_random(ctx):
    C = ctx.calc
    rng = ctx.rng("dd")
    for k in range(50):
        f = random_ext(rng, C.field)
        if not d(d(FormElem.function(f, C))).is_zero():
            return False, f"sample {k}: d d ({f}) != 0"
    w = FormElem.one_form([random_ext(rng, C.field) for _ in range(3)], C)
    if not d(d(w)).is_zero():
        return False, "d d on a random one-form != 0"
    return True, "50 random functions and a random one-form"


@check("calculus")
def graded_leibniz(ctx):
    C = ctx.calc
    rng = ctx.rng("leibniz")
    for k in range(20):
        f = FormElem.function(random_ext(rng, C.field), C)
        g = FormElem.function(random_ext(rng, C.field), C)
        if not (d(f * g) - (d(f) * g + f * d(g))).is_zero():
            return False, f"sample {k}: d(fg) != (df) g + f dg"
    w = FormElem.one_form([random_poly(rng, C.field) for _ in range(3)], C)
    f = FormElem.function(random_poly(rng, C.field), C)
    if not (d(w * f) - (d(w) * f - w * d(f))).is_zero():
        return False, "d(w f) != (dw) f - w df for a one-form w"
    return True, "20 random pairs plus a one-form"


@check("calculus")
def df_from_inner_derivations(ctx):
    C = ctx.calc
    rng = ctx.rng("df")
    for k in range(20):
        f = random_poly(rng, C.field)
        df = d(FormElem.function(f, C))
        for a in range(3):
            if not alg.alg_equal(pair(df, a), inner_derivation(C, a, f)):
                return False, f"sample {k}: df != (e_a f) theta^a at a={NAMES[a]}"
    return True, "df = (e_a f) theta^a on 20 random polynomials"


@check("calculus")
def inner_derivation_leibniz(ctx):
    C = ctx.calc
    xs = C.X
    for i in range(3):
        for j in range(3):
            f = xs[i] * xs[j]
            df = d(FormElem.function(f, C))
            for a in range(3):
                leib = inner_derivation(C, a, xs[i]) * xs[j] + xs[i] * inner_derivation(C, a, xs[j])
                if not (alg.alg_equal(pair(df, a), inner_derivation(C, a, f)) and alg.alg_equal(leib, pair(df, a))):
                    return False, f"e_{NAMES[a]}(x^{NAMES[i]} x^{NAMES[j]}) inconsistent"
    return True, "e_a(x^i x^j) agrees with pair(d(x^i x^j), a) and the Leibniz rule"


def _ee(C, i, j, a, b):
    E = C.frame.e_mat
    return E[i][a] * E[j][b]


@check("calculus")
def rtt_relations(ctx):
    C = ctx.calc
    F = C.field
    R = C.rdata.rhat
    for ij in range(9):
        i, j = divmod(ij, 3)
        for ab in range(9):
            a, b = divmod(ab, 3)
            lhs = AlgElem({}, F)
            rhs = AlgElem({}, F)
            for kl in range(9):
                if R[ij][kl]:
                    lhs = lhs + _ee(C, kl // 3, kl % 3, a, b).scale(R[ij][kl])
            for cd in range(9):
                if R[cd][ab]:
                    rhs = rhs + _ee(C, i, j, cd // 3, cd % 3).scale(R[cd][ab])
            if not alg.alg_equal(lhs, rhs):
                return False, f"RTT fails at (ij, ab) = ({NAMES[i]}{NAMES[j]}, {NAMES[a]}{NAMES[b]})"
    return True, "Rhat e e = e e Rhat (81 entries)"


@check("calculus")
def gtt_upper(ctx):
    C = ctx.calc
    F = C.field
    g = C.metric
    r2 = AlgElem.mono(e=2, field=F)
    for i in range(3):
        for j in range(3):
            acc = AlgElem({}, F)
            for a in range(3):
                for b in range(3):
                    if g[a][b]:
                        acc = acc + _ee(C, i, j, a, b).scale(g[a][b])
            if not alg.alg_equal(acc, r2.scale(g[i][j])):
                return False, f"g^ab e^{NAMES[i]}_a e^{NAMES[j]}_b = {acc}"
    return True, "g^ab e^i_a e^j_b = r^2 g^ij"


@check("calculus")
def gtt_lower(ctx):
    C = ctx.calc
    F = C.field
    g = C.metric
    r2 = AlgElem.mono(e=2, field=F)
    for a in range(3):
        for b in range(3):
            acc = AlgElem({}, F)
            for i in range(3):
                for j in range(3):
                    if g[i][j]:
                        acc = acc + _ee(C, i, j, a, b).scale(g[i][j])
            if not alg.alg_equal(acc, r2.scale(g[a][b])):
                return False, f"g_ij e^i_{NAMES[a]} e^j_{NAMES[b]} = {acc}"
    return True, "g_ij e^i_a e^j_b = r^2 g_ab"


@check("calculus")
def theta_wedge_relations(ctx):
    C = ctx.calc
    F = C.field
    for label, P in (("P_s", C.rdata.ps), ("P_t", C.rdata.pt)):
        for ab in range(9):
            acc = [F.zero] * 3
            for cd in range(9):
                if P[ab][cd]:
                    for k, v in enumerate(C.wedge2[divmod(cd, 3)]):
                        acc[k] = acc[k] + P[ab][cd] * v
            if any(acc):
                return False, f"{label} theta theta row {ab} nonzero"
    return True, "P_s theta theta = P_t theta theta = 0; Omega^2 has rank 3, Omega^3 rank 1"


@check("calculus")
def xi_wedge_relations(ctx):
    C = ctx.calc
    for label, P in (("P_s", C.rdata.ps), ("P_t", C.rdata.pt)):
        for kl, form in enumerate(calc_mod.projected_xi_relations(C, P)):
            if not form.is_zero():
                return False, f"({label} xi xi)^{NAMES[kl // 3]}{NAMES[kl % 3]} = {form}"
    pa = calc_mod.projected_xi_relations(C, C.rdata.pa)
    if all(f.is_zero() for f in pa):
        return False, "P_a xi xi vanishes too: Omega^2 collapsed"
    return True, "P_s xi xi = P_t xi xi = 0 via the frame; P_a xi xi != 0"


@check("calculus")
def basis_round_trip(ctx):
    C = ctx.calc
    rng = ctx.rng("round")
    for i in range(3):
        xi = calc_mod.XiForm.basis(i, C)
        if not (C.to_xi(C.to_frame(xi)) - xi).is_zero():
            return False, f"xi^{NAMES[i]} round trip"
    w = FormElem.one_form([random_ext(rng, C.field) for _ in range(3)], C)
    if not (C.to_frame(C.to_xi(w)) - w).is_zero():
        return False, "frame -> xi -> frame round trip"
    t0 = C.theta_in_xi(0)
    want = AlgElem.mono(k=-1, b=-1, field=C.field)
    ok = alg.alg_equal(t0.coeffs[0], want) and t0.coeffs[1].is_zero() and t0.coeffs[2].is_zero()
    return ok, "theta^- = L^-1 x0^-1 xi^-; round trips are the identity"


@check("calculus")
def star_frame(ctx):
    C = ctx.calc
    th0 = FormElem.frame(1, C)
    if not (star_form(th0) - th0).is_zero():
        return False, "(theta^0)* != theta^0"
    for a in range(3):
        t = FormElem.frame(a, C)
        if not (star_form(star_form(t)) - t).is_zero():
            return False, f"(theta^{NAMES[a]})** != theta^{NAMES[a]}"
    for i, x in enumerate(C.X):
        if not alg.alg_equal(x.star().star(), x):
            return False, f"(x^{NAMES[i]})** != x^{NAMES[i]}"
    return True, "star squares to the identity on x^i and theta^a"


@check("calculus")
def star_wedge_closure(ctx):
    C = ctx.calc
    F = C.field
    g = C.metric
    for row in C.relations2:
        acc = [F.zero] * 3
        for ab, coef in enumerate(row):
            if not coef:
                continue
            a, b = divmod(ab, 3)
            for dd in range(3):
                for c in range(3):
                    gg = g[dd][b] * g[c][a]
                    if gg:
                        for k, v in enumerate(C.wedge2[dd, c]):
                            acc[k] = acc[k] + coef * gg * v
        if any(acc):
            return False, "star of a 2-form relation is not a relation"
    return True, "star maps the theta theta relations into themselves"


@check("calculus")
def xi_star_closure(ctx):
    C = ctx.calc
    c = calc_mod.xi_star_matrix(C)
    for i in range(3):
        for j in range(3):
            if not calc_mod.in_lambda_free_part(c[j][i]):
                return False, f"c_{NAMES[j]}{NAMES[i]} involves L: {c[j][i]}"
        rebuilt = calc_mod.xi_star_from_matrix(C, c, i)
        if not (rebuilt - star_form(C.xi_in_frame(i))).is_zero():
            return False, f"L^-2 xi^j c_j{NAMES[i]} != (xi^{NAMES[i]})*"
    poly = all(c[j][i].in_polynomial_subalgebra() for i in range(3) for j in range(3))
    return True, ("(xi^i)* = L^-2 xi^j c_ji with all c_ji free of L"
                  + ("; all polynomial in x" if poly else "; entries involve r^-2 and x0^-1"))


# --- connection ----------------------------------------------------------------


def _sup(ctx):
    return conn.support(ctx.calc)


def _sigma_frame(ctx, variant):
    S = _sup(ctx).frame_sigma(variant)
    same = S == ctx.calc.rdata.sigma_matrix(variant)
    return True, "frame matrix is scalar" + (" and equals S" if same else " (differs from S)")


@check("connection")
def sigma_frame_scalar_plus(ctx):
    return _sigma_frame(ctx, "plus")


@check("connection")
def sigma_frame_scalar_minus(ctx):
    return _sigma_frame(ctx, "minus")


@check("connection")
def sigma_braid_frame_plus(ctx):
    return rmatrix.check_braid(_sup(ctx).frame_sigma("plus"), ctx.field), "on the 27-dim tensor cube"


@check("connection")
def sigma_braid_frame_minus(ctx):
    return rmatrix.check_braid(_sup(ctx).frame_sigma("minus"), ctx.field), "on the 27-dim tensor cube"


@check("connection")
def torsion_free_plus(ctx):
    bad = conn.torsion_defect(ctx.calc, ctx.calc.rdata.sigma_matrix("plus"))
    return not bad, "pi (sigma + 1) = 0" if not bad else f"nonzero at pair {bad[0][0]}"


@check("connection")
def torsion_free_minus(ctx):
    bad = conn.torsion_defect(ctx.calc, ctx.calc.rdata.sigma_matrix("minus"))
    return not bad, "pi (sigma + 1) = 0" if not bad else f"nonzero at pair {bad[0][0]}"


@check("connection")
def torsion_controls(ctx):
    F = ctx.field
    minus_one = linalg.scale(-F.one, linalg.eye(9, F))
    ok1 = not conn.torsion_defect(ctx.calc, minus_one)
    ok2 = bool(conn.torsion_defect(ctx.calc, linalg.eye(9, F)))
    return ok1 and ok2, "sigma = -1 is torsion-free; sigma = +1 is not"


@check("connection")
def compat_factors(ctx):
    cp, cm = _compat(ctx, "plus"), _compat(ctx, "minus")
    q = ctx.field.q
    ok = {cp, cm} == {q ** 2, ctx.field.one / q ** 2} and cp != cm
    return ok, f"plus -> {ctx.fmt(cp)}, minus -> {ctx.fmt(cm)}"


def _curv(ctx, variant):
    C = ctx.calc
    for i in range(3):
        grid = conn.curvature(C.xi_in_frame(i), variant)
        if not conn.curvature_is_zero(grid):
            nz = next((k, e, c) for k, row in enumerate(grid) for e, c in enumerate(row) if not c.is_zero())
            return False, f"Curv(xi^{NAMES[i]}) component [{nz[0]}][{nz[1]}] = {nz[2]}"
    return True, "Curv(xi^i) = 0 for i = -, 0, +"


@check("connection")
def curvature_vanishes_plus(ctx):
    return _curv(ctx, "plus")


@check("connection")
def curvature_vanishes_minus(ctx):
    return _curv(ctx, "minus")


def _curv_left(ctx, variant):
    C = ctx.calc
    rng = ctx.rng("curv-left" + variant)
    f = random_ext(rng, C.field)
    for i in range(3):
        lhs = conn.curvature(C.xi_in_frame(i).lmul(f), variant)
        rhs = conn.curvature(C.xi_in_frame(i), variant)
        for k in range(3):
            for e in range(3):
                if not (lhs[k][e] - f * rhs[k][e]).is_zero():
                    return False, f"Curv(f xi^{NAMES[i]}) != f Curv(xi^{NAMES[i]})"
    return True, "Curv(f xi^i) = f Curv(xi^i) for a random f"


@check("connection")
def curvature_left_linear_plus(ctx):
    return _curv_left(ctx, "plus")


@check("connection")
def curvature_left_linear_minus(ctx):
    return _curv_left(ctx, "minus")


def _leibniz(ctx, variant):
    C = ctx.calc
    rng = ctx.rng("leib" + variant)
    for i in range(3):
        xi = C.xi_in_frame(i)
        D = conn.D0(xi, variant)
        if not (D - conn.D0_formula(xi, variant)).is_zero():
            return False, f"D(xi^{NAMES[i]}) != -theta (x) xi + sigma(xi (x) theta)"
        for _ in range(3):
            f = random_ext(rng, C.field)
            ff = FormElem.function(f, C)
            left = conn.D0(xi.lmul(f), variant) - (conn.tensor(d(ff), xi) + D.lmul(f))
            if not left.is_zero():
                return False, f"left Leibniz fails for xi^{NAMES[i]}"
            right = conn.D0(xi.rmul(f), variant) - (conn.sigma0(conn.tensor(xi, d(ff)), variant) + D.rmul(f))
            if not right.is_zero():
                return False, f"right Leibniz fails for xi^{NAMES[i]}"
    return True, "D(f xi) = df (x) xi + f D xi and D(xi f) = sigma(xi (x) df) + (D xi) f"


@check("connection")
def leibniz_rules_plus(ctx):
    return _leibniz(ctx, "plus")


@check("connection")
def leibniz_rules_minus(ctx):
    return _leibniz(ctx, "minus")


@check("connection")
def g0_values(ctx):
    C = ctx.calc
    F = C.field
    want = AlgElem.mono(e=2, field=F).scale(F.one / F.s) * AlgElem.mono(k=2, field=F)
    ok = alg.alg_equal(conn.g0_xi(C, 0, 2), want) and conn.g0_xi(C, 0, 0).is_zero()
    return ok, f"g0(xi- (x) xi+) = {conn.g0_xi(C, 0, 2)}; g0(xi- (x) xi-) = 0"


@check("connection")
def g0_bilinear(ctx):
    C = ctx.calc
    rng = ctx.rng("g0")
    samples = list(C.X) + [random_poly(rng, C.field) for _ in range(5)] + [AlgElem.gen("L", C.field)]
    for f in samples:
        for i in range(3):
            for j in range(3):
                if not conn.g0_right_defect(C, i, j, f).is_zero():
                    return False, f"g0(xi^{NAMES[i]} (x) xi^{NAMES[j]} f) != g0(...) f for f = {f}"
    t = conn.TensorElem([random_ext(rng, C.field) for _ in range(9)], C)
    f = random_ext(rng, C.field)
    if not alg.alg_equal(conn.metric_g0(t.lmul(f)), f * conn.metric_g0(t)):
        return False, "g0(f t) != f g0(t)"
    if not alg.alg_equal(conn.metric_g0(t.rmul(f)), conn.metric_g0(t) * f):
        return False, "g0(t f) != g0(t) f"
    return True, f"right linearity in the xi basis on {len(samples)} elements; frame bilinearity"


@check("connection")
def g0_frame_normalization(ctx):
    kappa = conn.g0_normalization(ctx.calc)
    return True, f"g0(theta^a (x) theta^b) = kappa g^ab with kappa = {ctx.fmt(kappa)}"


def _star_tensor(ctx, variant):
    inv = conn.star_tensor_involutive(variant, ctx.calc)
    return True, f"square of (xi (x) eta)* = sigma(eta* (x) xi*) is {'' if inv else 'not '}the identity (reported)"


@check("connection")
def star_tensor_square_plus(ctx):
    return _star_tensor(ctx, "plus")


@check("connection")
def star_tensor_square_minus(ctx):
    return _star_tensor(ctx, "minus")


# --- runner ---------------------------------------------------------------------


def _run_one(fn, ctx):
    t0 = time.perf_counter()
    try:
        ok, detail = fn(ctx)
        status = "pass" if ok else "fail"
    except ZeroDivisionError:
        status, detail = "fail", f"pole at {ctx.field.describe()}: division by zero"
    except Exception as exc:  # a broken model must show up as a failed check
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    return status, str(detail), (time.perf_counter() - t0) * 1000


def run_suite(name="all", s0=None, rhat=None, lambdas=None, seed=0) -> CheckReport:
    """Run one suite (or ``"all"``) symbolically, or numerically at s = s0."""
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in _REGISTRY:
            raise ValueError(f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")
    if s0 is None:
        fld = QS
    else:
        fld = numeric_field(s0)
        if rhat is not None and not isinstance(rhat[0][0], Fraction):
            rhat = [[fld.coerce(x) for x in row] for row in rhat]
    if lambdas is not None and lambdas[0].field is not fld:
        lambdas = [alg.alg_eval(l, fld.s0) for l in lambdas]
    ctx = Context(fld, rhat=rhat, lambdas=lambdas, seed=seed)
    report = CheckReport(name, fld.describe())
    for n in names:
        for cname, fn in _REGISTRY[n]:
            status, detail, ms = _run_one(fn, ctx)
            label = cname if name != "all" else f"{n}.{cname}"
            report.checks.append(CheckResult(label, status, detail, ms))
    report.checks.sort(key=lambda c: c.name)
    return report


def check_names(suite: str):
    return [n for n, _ in _REGISTRY[suite]]
