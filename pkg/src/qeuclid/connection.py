"""Tensor square of one-forms, the flips sigma_0, the connections D_(0),
curvature, the metric g_0 and the tensor involution.

A tensor in Omega^1 (x)_A Omega^1 is stored as 9 left coefficients over
theta^a (x) theta^b (index 3a+b); a triple tensor as 27 (index 9a+3b+c).
"""
from __future__ import annotations

import threading

from .algebra import AlgElem, basis_term, join_terms
from .calculus import Calculus, FormElem, calculus, d, wedge
from .scalars import QS

VARIANTS = ("plus", "minus")


def _zero(field):
    return AlgElem({}, field)


class TensorElem:
    """sum coeffs[3a+b] theta^a (x) theta^b."""

    __slots__ = ("coeffs", "calc")

    def __init__(self, coeffs, calc):
        self.coeffs = list(coeffs)
        self.calc = calc

    @classmethod
    def zero(cls, calc, n=9):
        return cls([_zero(calc.field) for _ in range(n)], calc)

    @classmethod
    def basis(cls, a, b, calc):
        t = cls.zero(calc)
        t.coeffs[3 * a + b] = AlgElem.const(1, calc.field)
        return t

    def __add__(self, other):
        return TensorElem([x + y for x, y in zip(self.coeffs, other.coeffs)], self.calc)

    def __sub__(self, other):
        return TensorElem([x - y for x, y in zip(self.coeffs, other.coeffs)], self.calc)

    def __neg__(self):
        return TensorElem([-x for x in self.coeffs], self.calc)

    def lmul(self, f):
        return TensorElem([f * x for x in self.coeffs], self.calc)

    def rmul(self, f):
        return TensorElem([x * f for x in self.coeffs], self.calc)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        names = ["-", "0", "+"]
        parts = []
        for idx, c in enumerate(self.coeffs):
            if c.terms:
                k = len(self.coeffs)
                if k == 9:
                    label = f"th{names[idx // 3]} ox th{names[idx % 3]}"
                else:
                    label = " ox ".join(f"th{names[(idx // 3 ** p) % 3]}" for p in (2, 1, 0))
                parts.append(basis_term(c, label))
        return join_terms(parts)


def tensor(u: FormElem, v: FormElem) -> TensorElem:
    """u (x) v for one-forms in the frame basis."""
    calc = u.calc
    cu, cv = u.component(1), v.component(1)
    out = TensorElem.zero(calc)
    for a in range(3):
        if not cu[a].terms:
            continue
        for b in range(3):
            if cv[b].terms:
                out.coeffs[3 * a + b] = cu[a] * cv[b]
    return out


def tensor3(t: TensorElem, w: FormElem) -> TensorElem:
    """t (x) w, a triple tensor."""
    calc = t.calc
    cw = w.component(1)
    out = TensorElem.zero(calc, 27)
    for ab, c in enumerate(t.coeffs):
        if not c.terms:
            continue
        for e in range(3):
            if cw[e].terms:
                out.coeffs[3 * ab + e] = out.coeffs[3 * ab + e] + c * cw[e]
    return out


class TensorSupport:
    """Change of basis between xi (x) xi and theta (x) theta, and the frame flips."""

    def __init__(self, calc: Calculus):
        self.calc = calc
        field = self.field = calc.field
        T, E = calc.frame.theta_mat, calc.frame.e_mat
        L = AlgElem.gen("L", field)
        Li2 = AlgElem.mono(k=-2, field=field)
        q = field.q
        # xi^h (x) xi^k = sum V[hk][cd] theta^c (x) theta^d
        self.V = [[(L * E[hk // 3][cd // 3] * L * E[hk % 3][cd % 3]).scale(q * q) for cd in range(9)]
                  for hk in range(9)]
        # theta^a (x) theta^b = sum U[ab][ij] xi^i (x) xi^j
        self.U = [[(T[ab % 3][ij % 3] * T[ab // 3][ij // 3] * Li2).scale(field.one / (q * q * q))
                   for ij in range(9)] for ab in range(9)]
        self._sigma = {}
        self._lock = threading.Lock()

    def uv_is_identity(self) -> bool:
        for ab in range(9):
            for cd in range(9):
                acc = _zero(self.field)
                for ij in range(9):
                    if self.U[ab][ij].terms and self.V[ij][cd].terms:
                        acc = acc + self.U[ab][ij] * self.V[ij][cd]
                if acc.constant_value() != (self.field.one if ab == cd else self.field.zero):
                    return False
        return True

    def conjugate(self, S):
        """Frame-basis matrix U S V of a flip given on xi (x) xi; AlgElem entries."""
        field = self.field
        SV = []
        for ij in range(9):
            row = []
            for cd in range(9):
                acc = _zero(field)
                for hk in range(9):
                    c = S[ij][hk]
                    if c and self.V[hk][cd].terms:
                        acc = acc + self.V[hk][cd].scale(c)
                row.append(acc)
            SV.append(row)
        out = []
        for ab in range(9):
            row = []
            for cd in range(9):
                acc = _zero(field)
                for ij in range(9):
                    if self.U[ab][ij].terms and SV[ij][cd].terms:
                        acc = acc + self.U[ab][ij] * SV[ij][cd]
                row.append(acc)
            out.append(row)
        return out

    def frame_sigma(self, variant):
        """sigma_0 on theta (x) theta as a 9x9 scalar matrix."""
        with self._lock:
            hit = self._sigma.get(variant)
            if hit is not None:
                return hit
            S = self.calc.rdata.sigma_matrix(variant)
            raw = self.conjugate(S)
            out = []
            for ab in range(9):
                row = []
                for cd in range(9):
                    c = raw[ab][cd].constant_value()
                    if c is None:
                        raise ValueError(f"sigma_0({variant}) frame entry [{ab}][{cd}] is not a scalar: {raw[ab][cd]}")
                    row.append(c)
                out.append(row)
            self._sigma[variant] = out
            return out


_support_lock = threading.Lock()


def support(calc: Calculus) -> TensorSupport:
    with _support_lock:
        s = calc.cache.get("tensor_support")
        if s is None:
            s = calc.cache["tensor_support"] = TensorSupport(calc)
        return s


def _calc(calc):
    return calculus(QS) if calc is None else calc


def sigma0(t: TensorElem, variant: str) -> TensorElem:
    S = support(t.calc).frame_sigma(variant)
    return apply_frame_matrix(t, S)


def apply_frame_matrix(t: TensorElem, S) -> TensorElem:
    out = TensorElem.zero(t.calc)
    for ab, c in enumerate(t.coeffs):
        if not c.terms:
            continue
        for cd in range(9):
            if S[ab][cd]:
                out.coeffs[cd] = out.coeffs[cd] + c.scale(S[ab][cd])
    return out


def D0_formula(w: FormElem, variant: str) -> TensorElem:
    """-theta (x) w + sigma_0(w (x) theta), valid for any one-form w."""
    theta = w.calc.theta_form()
    return sigma0(tensor(w, theta), variant) - tensor(theta, w)


def D0(w: FormElem, variant: str) -> TensorElem:
    """The connection on w = f_i xi^i via D(f xi) = df (x) xi + f D xi."""
    calc = w.calc
    xi = calc.to_xi(w)
    out = TensorElem.zero(calc)
    for i, f in enumerate(xi.coeffs):
        if not f.terms:
            continue
        xi_i = calc.xi_in_frame(i)
        out = out + tensor(d(FormElem.function(f, calc)), xi_i) + D0_xi(calc, i, variant).lmul(f)
    return out


def D0_xi(calc, i, variant) -> TensorElem:
    key = ("D0_xi", i, variant)
    hit = calc.cache.get(key)
    if hit is None:
        hit = calc.cache[key] = D0_formula(calc.xi_in_frame(i), variant)
    return hit


def D2(t: TensorElem, variant: str) -> TensorElem:
    """D2(xi (x) eta) = D xi (x) eta + sigma_12(xi (x) D eta), as a triple tensor."""
    calc = t.calc
    S = support(calc).frame_sigma(variant)
    out = TensorElem.zero(calc, 27)
    frames = [FormElem.frame(a, calc) for a in range(3)]
    Dtheta = [D0(frames[b], variant) for b in range(3)]
    for ab, c in enumerate(t.coeffs):
        if not c.terms:
            continue
        a, b = divmod(ab, 3)
        first = D0(frames[a].lmul(c), variant)
        out = out + tensor3(first, frames[b])
        # sigma_12 (c theta^a (x) u_ef theta^e (x) theta^f)
        for ef, u in enumerate(Dtheta[b].coeffs):
            if not u.terms:
                continue
            e, f = divmod(ef, 3)
            cu = c * u
            for gh in range(9):
                sv = S[3 * a + e][gh]
                if sv:
                    out.coeffs[3 * gh + f] = out.coeffs[3 * gh + f] + cu.scale(sv)
    return out


def project12(t3: TensorElem):
    """Wedge the first two slots: Omega^2 (x) Omega^1 as a 3x3 coefficient grid [basis2][slot3]."""
    calc = t3.calc
    out = [[_zero(calc.field) for _ in range(3)] for _ in range(3)]
    for idx, c in enumerate(t3.coeffs):
        if not c.terms:
            continue
        a, b, e = idx // 9, (idx // 3) % 3, idx % 3
        for k, v in enumerate(calc.wedge2[a, b]):
            if v:
                out[k][e] = out[k][e] + c.scale(v)
    return out


def curvature(w: FormElem, variant: str):
    return project12(D2(D0(w, variant), variant))


def curvature_is_zero(grid) -> bool:
    return all(c.is_zero() for row in grid for c in row)


def torsion_defect(calc, S):
    """pi((S + 1)(xi^i (x) xi^j)) for all i, j, as 2-forms; empty list means torsion-free."""
    field = calc.field
    xi = [calc.xi_in_frame(i) for i in range(3)]
    bad = []
    for ij in range(9):
        acc = FormElem({}, calc)
        for hk in range(9):
            c = S[ij][hk] + (field.one if hk == ij else field.zero)
            if c:
                acc = acc + wedge(xi[hk // 3], xi[hk % 3]) * c
        if not acc.is_zero():
            bad.append((ij, acc))
    return bad


def torsion_check(variant, calc=None) -> bool:
    calc = _calc(calc)
    S = calc.rdata.sigma_matrix(variant) if isinstance(variant, str) else variant
    return not torsion_defect(calc, S)


def g0_xi(calc, i, j) -> AlgElem:
    """g_0(xi^i (x) xi^j) = g^ij r^2 L^2."""
    g = calc.metric[i][j]
    return AlgElem.mono(k=0, e=2, field=calc.field).scale(g) * AlgElem.mono(k=2, field=calc.field) if g \
        else _zero(calc.field)


def g0_frame_table(calc):
    """g_0(theta^a (x) theta^b) for all a, b."""
    sup = support(calc)
    out = []
    for ab in range(9):
        acc = _zero(calc.field)
        for ij in range(9):
            if sup.U[ab][ij].terms:
                val = g0_xi(calc, ij // 3, ij % 3)
                if val.terms:
                    acc = acc + sup.U[ab][ij] * val
        out.append(acc)
    return out


def g0_normalization(calc=None):
    """kappa with g_0(theta^a (x) theta^b) = kappa g^ab; ValueError if no such scalar."""
    calc = _calc(calc)
    table = g0_frame_table(calc)
    g = calc.metric
    kappa = None
    for ab, val in enumerate(table):
        gab = g[ab // 3][ab % 3]
        if gab:
            c = val.constant_value()
            if c is None:
                raise ValueError(f"g_0(theta (x) theta)[{ab}] is not a scalar: {val}")
            c = c / gab
            if kappa is None:
                kappa = c
            elif c != kappa:
                raise ValueError("g_0 in the frame basis is not proportional to g")
        elif not val.is_zero():
            raise ValueError(f"g_0(theta (x) theta)[{ab}] should vanish, got {val}")
    return kappa


def metric_g0(t: TensorElem) -> AlgElem:
    """A-bilinear evaluation of g_0 on a frame tensor."""
    calc = t.calc
    table = g0_frame_table_cached(calc)
    acc = _zero(calc.field)
    for c, v in zip(t.coeffs, table):
        if c.terms and v.terms:
            acc = acc + c * v
    return acc


def g0_frame_table_cached(calc):
    hit = calc.cache.get("g0_frame")
    if hit is None:
        hit = calc.cache["g0_frame"] = g0_frame_table(calc)
    return hit


def g0_right_defect(calc, i, j, f: AlgElem) -> AlgElem:
    """g_0(xi^i (x) xi^j f) - g_0(xi^i (x) xi^j) f, computed in the xi basis."""
    field = calc.field
    out = _zero(field)
    row = calc.transport(f)[j]  # xi^j f = sum_m row[m] xi^m
    for m, p in enumerate(row):
        if not p.terms:
            continue
        inner = calc.transport(p)[i]  # xi^i p = sum_n inner[n] xi^n
        for n, c in enumerate(inner):
            if c.terms:
                val = g0_xi(calc, n, m)
                if val.terms:
                    out = out + c * val
    return out - g0_xi(calc, i, j) * f


def star_tensor(t: TensorElem, variant: str) -> TensorElem:
    """(xi (x) eta)* = sigma_0(eta* (x) xi*) with (theta^a)* = theta^b g_ba."""
    calc = t.calc
    g = calc.metric
    pre = TensorElem.zero(calc)
    for ab, c in enumerate(t.coeffs):
        if not c.terms:
            continue
        a, b = divmod(ab, 3)
        cs = c.star()
        for dd in range(3):
            for cc in range(3):
                coef = g[dd][b] * g[cc][a]
                if coef:
                    pre.coeffs[3 * dd + cc] = pre.coeffs[3 * dd + cc] + cs.scale(coef)
    return sigma0(pre, variant)


def star_tensor_involutive(variant: str, calc=None) -> bool:
    calc = _calc(calc)
    for a in range(3):
        for b in range(3):
            t = TensorElem.basis(a, b, calc)
            if not (star_tensor(star_tensor(t, variant), variant) - t).is_zero():
                return False
    return True
