"""The covariant differential calculus over the extended algebra.

Forms are stored in the frame basis theta^a, whose elements commute with
every algebra element; a p-form is a list of left coefficients over

    degree 1: theta^-, theta^0, theta^+
    degree 2: theta^- theta^0, theta^- theta^+, theta^0 theta^+
    degree 3: theta^- theta^0 theta^+

One-forms in the coordinate basis xi^i = dx^i are handled by
:class:`XiForm`, whose right multiplication by polynomials uses only the
x-xi exchange relations x^i xi^j = q Rhat^{ij}_{kl} xi^k x^l.
"""
from __future__ import annotations

import threading
from functools import cached_property

from . import linalg
from .algebra import AlgElem, basis_term, join_terms
from .rmatrix import RMatrixData, rmatrix_data
from .scalars import QS

MINUS, ZERO, PLUS = 0, 1, 2
BASIS2 = ((0, 1), (0, 2), (1, 2))
DIMS = {0: 1, 1: 3, 2: 3, 3: 1}


def _zero(field):
    return AlgElem({}, field)


def _one(field):
    return AlgElem.const(1, field)


def _matmul_alg(A, B, field):
    n, k, m = len(A), len(B), len(B[0])
    out = [[_zero(field) for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if not A[i][t].terms:
                continue
            for j in range(m):
                if B[t][j].terms:
                    out[i][j] = out[i][j] + A[i][t] * B[t][j]
    return out


class FrameData:
    """theta^a_i, its two-sided inverse e^i_a, and the lambda_a.

    ``lambdas`` may be given as a zero-argument callable; it is then built on
    first access (the lambda_a carry h^-1 and have a pole at s = 1).
    """

    def __init__(self, theta_mat, e_mat, lambdas):
        self.theta_mat = theta_mat
        self.e_mat = e_mat
        self._lambdas = lambdas

    @property
    def lambdas(self):
        if callable(self._lambdas):
            self._lambdas = self._lambdas()
        return self._lambdas


def standard_theta_matrix(field=QS):
    s, q, one = field.s, field.q, field.one
    x0i = AlgElem.mono(b=-1, field=field)
    z = _zero(field)
    return [
        [x0i, z, z],
        [AlgElem.mono(e=-1, b=-1, c=1, coef=s * (q + one), field=field), AlgElem.mono(e=-1, field=field), z],
        [AlgElem.mono(e=-2, b=-1, c=2, coef=-s * q * (q + one), field=field),
         AlgElem.mono(e=-2, c=1, coef=-(q + one), field=field),
         AlgElem.mono(e=-2, b=1, field=field)],
    ]


def standard_lambdas(field=QS):
    """lambda_- = q h^-1 L x0^-1 x+, lambda_0 = -s h^-1 L x0^-1 r, lambda_+ = -h^-1 L x0^-1 x-."""
    hi = field.one / field.h
    L = AlgElem.gen("L", field)
    x0i = AlgElem.mono(b=-1, field=field)
    return [
        (L * x0i * AlgElem.gen("x+", field)).scale(field.q * hi),
        (L * x0i * AlgElem.gen("r", field)).scale(-field.s * hi),
        (L * x0i * AlgElem.gen("x-", field)).scale(-hi),
    ]


def invert_lower_triangular(T, field):
    """Two-sided inverse of a lower-triangular matrix with invertible monomial diagonal."""
    n = len(T)
    E = [[_zero(field) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        E[i][i] = T[i][i].inverse()
    for i in range(n):
        for j in range(i - 1, -1, -1):
            acc = _zero(field)
            for a in range(j + 1, i + 1):
                acc = acc + E[i][a] * T[a][j]
            E[i][j] = -(acc * E[j][j])
    return E


class XiForm:
    """sum_i coeffs[i] xi^i with coefficients on the left."""

    __slots__ = ("coeffs", "calc")

    def __init__(self, coeffs, calc):
        self.coeffs = list(coeffs)
        self.calc = calc

    @classmethod
    def basis(cls, i, calc):
        z = [_zero(calc.field) for _ in range(3)]
        z[i] = _one(calc.field)
        return cls(z, calc)

    def __add__(self, other):
        return XiForm([a + b for a, b in zip(self.coeffs, other.coeffs)], self.calc)

    def __sub__(self, other):
        return XiForm([a - b for a, b in zip(self.coeffs, other.coeffs)], self.calc)

    def lmul(self, f):
        return XiForm([f * c for c in self.coeffs], self.calc)

    def rmul(self, f):
        """(sum c_i xi^i) f with f in the subalgebra generated by x, L^(+-1) and r."""
        M = self.calc.transport(f)
        out = [_zero(self.calc.field) for _ in range(3)]
        for i, c in enumerate(self.coeffs):
            if not c.terms:
                continue
            for m in range(3):
                if M[i][m].terms:
                    out[m] = out[m] + c * M[i][m]
        return XiForm(out, self.calc)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        return join_terms([basis_term(c, f"xi{'-0+'[i]}") for i, c in enumerate(self.coeffs) if c.terms])


class FormElem:
    """A (possibly inhomogeneous) form in the frame basis."""

    __slots__ = ("parts", "calc")

    def __init__(self, parts, calc):
        self.calc = calc
        self.parts = {p: list(v) for p, v in parts.items() if any(c.terms for c in v)}

    @classmethod
    def function(cls, f, calc):
        return cls({0: [f]}, calc)

    @classmethod
    def frame(cls, a, calc):
        v = [_zero(calc.field) for _ in range(3)]
        v[a] = _one(calc.field)
        return cls({1: v}, calc)

    @classmethod
    def one_form(cls, coeffs, calc):
        return cls({1: list(coeffs)}, calc)

    def degrees(self):
        return sorted(self.parts)

    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("inhomogeneous form")
        return ds[0] if ds else None

    def component(self, p):
        field = self.calc.field
        return self.parts.get(p, [_zero(field) for _ in range(DIMS[p])])

    def __add__(self, other):
        if not isinstance(other, FormElem):
            other = FormElem.function(AlgElem.const(other, self.calc.field) if not isinstance(other, AlgElem) else other, self.calc)
        out = {p: list(v) for p, v in self.parts.items()}
        for p, v in other.parts.items():
            if p in out:
                out[p] = [a + b for a, b in zip(out[p], v)]
            else:
                out[p] = list(v)
        return FormElem(out, self.calc)

    def __neg__(self):
        return FormElem({p: [-c for c in v] for p, v in self.parts.items()}, self.calc)

    def __sub__(self, other):
        return self + (-other)

    def lmul(self, f):
        return FormElem({p: [f * c for c in v] for p, v in self.parts.items()}, self.calc)

    def rmul(self, f):
        # frame elements commute with A, so f passes to the coefficients
        return FormElem({p: [c * f for c in v] for p, v in self.parts.items()}, self.calc)

    def __mul__(self, other):
        if isinstance(other, FormElem):
            return wedge(self, other)
        if isinstance(other, AlgElem):
            return self.rmul(other)
        return FormElem({p: [c * other for c in v] for p, v in self.parts.items()}, self.calc)

    def __rmul__(self, other):
        if isinstance(other, AlgElem):
            return self.lmul(other)
        return FormElem({p: [other * c for c in v] for p, v in self.parts.items()}, self.calc)

    def is_zero(self) -> bool:
        return all(c.is_zero() for v in self.parts.values() for c in v)

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        names = {0: [""], 1: ["th-", "th0", "th+"], 2: ["th-*th0", "th-*th+", "th0*th+"], 3: ["th-*th0*th+"]}
        parts = []
        for p in sorted(self.parts):
            for c, name in zip(self.parts[p], names[p]):
                if not c.terms:
                    continue
                parts.append(basis_term(c, name))
        return join_terms(parts)

    __repr__ = __str__


class Calculus:
    """All frame-level data over one coefficient field."""

    def __init__(self, rdata: RMatrixData, lambdas=None, theta_mat=None):
        self.rdata = rdata
        self.field = field = rdata.field
        self.metric = rdata.metric
        X = [AlgElem.gen(n, field) for n in ("x-", "x0", "x+")]
        self.X = X
        self._phi_gen = [self._phi_generator(l) for l in range(3)]
        self._phi_cache = {}
        self.cache = {}
        self._lambdas = lambdas
        self._theta_mat = theta_mat

    @cached_property
    def frame(self) -> FrameData:
        field = self.field
        T = standard_theta_matrix(field) if self._theta_mat is None else self._theta_mat
        E = invert_lower_triangular(T, field)
        lambdas = (lambda: standard_lambdas(field)) if self._lambdas is None else self._lambdas
        return FrameData(T, E, lambdas)

    @cached_property
    def r_scalar(self):
        return self.r_squared_scalar()

    @cached_property
    def r_factor(self):
        """rho with xi r = rho r xi, the positive root of the r^2 exchange scalar."""
        return self.field.sqrt(self.r_scalar)

    # x-xi exchange -----------------------------------------------------
    def _phi_generator(self, l):
        """Phi(x^l)[k][j] with xi^k x^l = sum_j Phi[k][j] xi^j."""
        field = self.field
        Ri = self.rdata.rhat_inv
        qi = field.one / field.q
        M = [[_zero(field) for _ in range(3)] for _ in range(3)]
        for k in range(3):
            for j in range(3):
                acc = _zero(field)
                for i in range(3):
                    c = Ri[3 * k + l][3 * i + j]
                    if c:
                        acc = acc + self.X[i].scale(c * qi)
                M[k][j] = acc
        return M

    def _phi_monomial(self, m):
        hit = self._phi_cache.get(m)
        if hit is not None:
            return hit
        field = self.field
        k, e, a, b, c = m
        if e < 0 or b < 0 or e > 1:
            raise ValueError("xi can only be moved past x, L^(+-1) and r by the exchange rules")
        M = [[_one(field) if i == j else _zero(field) for j in range(3)] for i in range(3)]
        for l, p in ((0, a), (1, b), (2, c)):
            for _ in range(p):
                M = _matmul_alg(M, self._phi_gen[l], field)
        # xi L^k r^e = q^k rho^e L^k r^e xi
        pre = AlgElem.mono(k=k, e=e, coef=field.q_pow(k) * (self.r_factor if e else field.one), field=field)
        M = [[pre * M[i][j] for j in range(3)] for i in range(3)]
        self._phi_cache[m] = M
        return M

    def transport(self, f: AlgElem):
        """3x3 matrix Phi(f) with xi^k f = sum_j Phi(f)[k][j] xi^j."""
        field = self.field
        out = [[_zero(field) for _ in range(3)] for _ in range(3)]
        for m, c in f.terms.items():
            M = self._phi_monomial(m)
            for i in range(3):
                for j in range(3):
                    if M[i][j].terms:
                        out[i][j] = out[i][j] + M[i][j].scale(c)
        return out

    def xi_commute(self, i, f: AlgElem) -> XiForm:
        """xi^i f with coefficients moved to the left; f must be a polynomial in x."""
        if not f.in_polynomial_subalgebra():
            raise ValueError("xi_commute needs a polynomial in x-, x0, x+; use the frame basis otherwise")
        return XiForm.basis(i, self).rmul(f)

    def r_squared_scalar(self):
        """The scalar c with xi^i r^2 = c r^2 xi^i for every i (expected q^-2)."""
        field = self.field
        r2 = AlgElem.mono(e=2, field=field)
        M = self.transport(r2)
        c = None
        for i in range(3):
            for j in range(3):
                if i != j and not M[i][j].is_zero():
                    raise ValueError(f"xi r^2 is not diagonal (entry {i},{j})")
            ratio = (M[i][i] * r2.__class__.mono(e=-2, field=field)).constant_value()
            if ratio is None:
                raise ValueError("xi r^2 is not proportional to r^2 xi")
            if c is None:
                c = ratio
            elif c != ratio:
                raise ValueError("xi r^2 scalar differs between components")
        return c

    # frame <-> xi -------------------------------------------------------
    def xi_in_frame(self, i) -> FormElem:
        """xi^i = q L e^i_a theta^a."""
        field = self.field
        qL = AlgElem.mono(k=1, coef=field.q, field=field)
        return FormElem.one_form([qL * self.frame.e_mat[i][a] for a in range(3)], self)

    def theta_in_xi(self, a) -> XiForm:
        Li = AlgElem.mono(k=-1, field=self.field)
        return XiForm([Li * self.frame.theta_mat[a][i] for i in range(3)], self)

    def to_frame(self, w: XiForm) -> FormElem:
        out = FormElem({}, self)
        for i, c in enumerate(w.coeffs):
            if c.terms:
                out = out + self.xi_in_frame(i).lmul(c)
        return out

    def to_xi(self, w: FormElem) -> XiForm:
        coeffs = w.component(1)
        out = XiForm([_zero(self.field)] * 3, self)
        for a, c in enumerate(coeffs):
            if c.terms:
                out = out + self.theta_in_xi(a).lmul(c)
        return out

    # wedge --------------------------------------------------------------
    @cached_property
    def wedge2(self):
        return self._wedge_tables()[0]

    @cached_property
    def wedge3(self):
        return self._wedge_tables()[1]

    @cached_property
    def relations2(self):
        return self._wedge_tables()[2]

    def _wedge_tables(self):
        hit = self.cache.get("wedge")
        if hit is not None:
            return hit
        field = self.field
        rel = [list(row) for row in self.rdata.ps] + [list(row) for row in self.rdata.pt]
        basis_cols = [3 * a + b for a, b in BASIS2]
        order = [c for c in range(9) if c not in basis_cols] + basis_cols
        red, piv = linalg.rref(rel, field, column_order=order)
        if sorted(piv) != sorted(order[:6]):
            raise RuntimeError("wedge relations do not reduce onto the chosen 2-form basis")
        table = {}
        for ab in range(9):
            v = [field.zero] * 3
            if ab in basis_cols:
                v[basis_cols.index(ab)] = field.one
            else:
                row = red[piv.index(ab)]
                v = [-row[c] for c in basis_cols]
            table[divmod(ab, 3)] = v
        # degree 3: functional on T^3 vanishing on R(x)V + V(x)R
        rows = []
        for rrow in red:
            for c in range(3):
                v = [field.zero] * 27
                for ab in range(9):
                    v[ab * 3 + c] = rrow[ab]
                rows.append(v)
                w = [field.zero] * 27
                for bc in range(9):
                    w[c * 9 + bc] = rrow[bc]
                rows.append(w)
        null = linalg.nullspace(rows, field, 27)
        if len(null) != 1:
            raise RuntimeError(f"top form space has dimension {len(null)}, expected 1")
        phi = null[0]
        norm = phi[0 * 9 + 1 * 3 + 2]
        top = {(i // 9, (i // 3) % 3, i % 3): phi[i] / norm for i in range(27)}
        self.cache["wedge"] = (table, top, red)
        return self.cache["wedge"]

    def reduce2(self, a, b):
        return self.wedge2[a, b]

    # Dirac element, d --------------------------------------------------
    def theta_form(self) -> FormElem:
        """theta = -lambda_a theta^a."""
        return FormElem.one_form([-l for l in self.frame.lambdas], self)

    def dirac_theta_xi(self) -> XiForm:
        """(q-1)^-1 q^2 r^-2 x^i g_ij xi^j."""
        field = self.field
        c0 = field.q * field.q / (field.q - field.one)
        r2i = AlgElem.mono(e=-2, coef=c0, field=field)
        g = self.metric
        coeffs = []
        for j in range(3):
            acc = _zero(field)
            for i in range(3):
                if g[i][j]:
                    acc = acc + self.X[i].scale(g[i][j])
            coeffs.append(r2i * acc)
        return XiForm(coeffs, self)


def wedge(u: FormElem, v: FormElem) -> FormElem:
    calc = u.calc
    field = calc.field
    out = {}

    def acc(p, idx, val):
        if p not in out:
            out[p] = [_zero(field) for _ in range(DIMS[p])]
        out[p][idx] = out[p][idx] + val

    for p, cu in u.parts.items():
        for r, cv in v.parts.items():
            if p + r > 3:
                continue
            for i, a in enumerate(cu):
                if not a.terms:
                    continue
                for j, b in enumerate(cv):
                    if not b.terms:
                        continue
                    ab = a * b
                    if p == 0 or r == 0:
                        acc(p + r, i if r == 0 else j, ab)
                    elif p == 1 and r == 1:
                        for k, c in enumerate(calc.wedge2[i, j]):
                            if c:
                                acc(2, k, ab.scale(c))
                    elif p == 1 and r == 2:
                        b1, b2 = BASIS2[j]
                        c = calc.wedge3[i, b1, b2]
                        if c:
                            acc(3, 0, ab.scale(c))
                    elif p == 2 and r == 1:
                        a1, a2 = BASIS2[i]
                        c = calc.wedge3[a1, a2, j]
                        if c:
                            acc(3, 0, ab.scale(c))
    return FormElem(out, calc)


def d(w: FormElem) -> FormElem:
    """Graded commutator with the Dirac element: d w = -(theta w - (-1)^p w theta)."""
    calc = w.calc
    theta = calc.theta_form()
    out = FormElem({}, calc)
    for p in w.degrees():
        part = FormElem({p: w.parts[p]}, calc)
        sign = 1 if p % 2 == 0 else -1
        comm = wedge(theta, part) - (wedge(part, theta) if sign == 1 else -wedge(part, theta))
        out = out - comm
    return out


def pair(w: FormElem, a: int) -> AlgElem:
    """Contraction of a one-form with the dual derivation e_a: its frame coefficient."""
    return w.component(1)[a]


def inner_derivation(calc, a: int, f: AlgElem) -> AlgElem:
    lam = calc.frame.lambdas[a]
    return lam * f - f * lam


def star_form(w: FormElem) -> FormElem:
    """Anti-linear, order-reversing involution with (theta^a)* = theta^b g_ba."""
    calc = w.calc
    field = calc.field
    g = calc.metric
    out = {}
    for p, coeffs in w.parts.items():
        if p == 0:
            out[0] = [coeffs[0].star()]
        elif p == 1:
            new = [_zero(field) for _ in range(3)]
            for a, c in enumerate(coeffs):
                if not c.terms:
                    continue
                cs = c.star()
                for b in range(3):
                    if g[b][a]:
                        new[b] = new[b] + cs.scale(g[b][a])
            out[1] = new
        elif p == 2:
            new = [_zero(field) for _ in range(3)]
            for k, c in enumerate(coeffs):
                if not c.terms:
                    continue
                a, cc = BASIS2[k]
                cs = c.star()
                # (f theta^a theta^c)* = f* g_dc g_ba theta^d theta^b
                for dd in range(3):
                    for b in range(3):
                        coef = g[dd][cc] * g[b][a]
                        if not coef:
                            continue
                        for m, v in enumerate(calc.wedge2[dd, b]):
                            if v:
                                new[m] = new[m] + cs.scale(coef * v)
            out[2] = new
        else:
            c = coeffs[0]
            total = field.zero
            for a1 in range(3):
                for a2 in range(3):
                    for a3 in range(3):
                        coef = g[a1][2] * g[a2][1] * g[a3][0]
                        if coef:
                            total = total + coef * calc.wedge3[a1, a2, a3]
            out[3] = [c.star().scale(total)]
    return FormElem(out, calc)


def basis_convert(w, target: str):
    """Re-express a one-form in the ``"xi"`` or ``"frame"`` basis."""
    if target == "frame":
        return w.calc.to_frame(w) if isinstance(w, XiForm) else w
    if target == "xi":
        return w.calc.to_xi(w) if isinstance(w, FormElem) else w
    raise ValueError(f"target must be 'xi' or 'frame', not {target!r}")


def dirac_theta(calc) -> FormElem:
    """(q-1)^-1 q^2 r^-2 x^i g_ij xi^j, in the frame basis."""
    return calc.to_frame(calc.dirac_theta_xi())


def frame_commutator_xi(calc, a: int, f: AlgElem) -> XiForm:
    """theta^a f - f theta^a computed in the xi basis from the exchange rules alone."""
    th = calc.theta_in_xi(a)
    return th.rmul(f) - th.lmul(f)


def xi_star_matrix(calc):
    """c[j][i] with (xi^i)* = L^-2 xi^j c_ji.

    Solves e^j_b c_ji = q^-1 L [(xi^i)*]_b by back substitution over the
    lower-triangular e^j_b.
    """
    field = calc.field
    E, T = calc.frame.e_mat, calc.frame.theta_mat
    L = AlgElem.gen("L", field)
    qi = field.one / field.q
    c = [[None] * 3 for _ in range(3)]
    for i in range(3):
        G = star_form(calc.xi_in_frame(i)).component(1)
        for b in (2, 1, 0):
            acc = (L * G[b]).scale(qi)
            for j in range(b + 1, 3):
                acc = acc - E[j][b] * c[j][i]
            c[b][i] = T[b][b] * acc
    return c


def xi_star_from_matrix(calc, c, i) -> FormElem:
    """L^-2 xi^j c_ji as a frame one-form."""
    Li2 = AlgElem.mono(k=-2, field=calc.field)
    out = FormElem({}, calc)
    for j in range(3):
        out = out + calc.xi_in_frame(j).rmul(c[j][i]).lmul(Li2)
    return out


def in_lambda_free_part(f: AlgElem) -> bool:
    """f involves no power of L (generated by x-, x0^(+-1), x+, r^(+-1))."""
    return all(m[0] == 0 for m in f.terms)


def projected_xi_relations(calc, P):
    """The 2-forms P^{kl}_{ij} xi^i xi^j for all kl, computed in the frame basis."""
    xi = [calc.xi_in_frame(i) for i in range(3)]
    prods = {(i, j): wedge(xi[i], xi[j]) for i in range(3) for j in range(3)}
    out = []
    for kl in range(9):
        acc = FormElem({}, calc)
        for ij in range(9):
            if P[kl][ij]:
                acc = acc + prods[divmod(ij, 3)] * P[kl][ij]
        out.append(acc)
    return out


_calc_lock = threading.Lock()


def calculus(field=QS) -> Calculus:
    """The calculus over ``field`` (symbolic by default), built once per field."""
    with _calc_lock:
        c = field.cache.get("calculus")
        if c is None:
            c = field.cache["calculus"] = Calculus(rmatrix_data(field))
        return c


def build_calculus(field=QS, rhat=None, lambdas=None) -> Calculus:
    """A fresh calculus, optionally from a substitute R-hat or lambda_a (no validation)."""
    if rhat is None and lambdas is None:
        return calculus(field)
    rdata = rmatrix_data(field) if rhat is None else RMatrixData(field, rhat, validate=False)
    return Calculus(rdata, lambdas=lambdas)


def frame_data(field=QS) -> FrameData:
    return calculus(field).frame
