"""The SO_q(3) braid matrix, its covariant metric and spectral projectors.

Index order is (-, 0, +) -> (0, 1, 2); a 9x9 matrix M^{ij}_{kl} is stored
as ``M[3*i + j][3*k + l]``.
"""
from __future__ import annotations

import threading
from functools import cached_property

from . import linalg
from .scalars import QS, PoleError

MINUS, ZERO, PLUS = 0, 1, 2
INDEX_NAMES = ("-", "0", "+")


class AnchorError(RuntimeError):
    """A braid-matrix candidate violates one of its defining properties."""


def pair(i: int, j: int) -> int:
    return 3 * i + j


def build_metric(field=QS):
    """g_{ij} (= g^{ij}) read off from r^2 = sqrt(q) x+x- + (x0)^2 + x-x+/sqrt(q)."""
    g = linalg.zeros(3, 3, field)
    g[MINUS][PLUS] = field.one / field.s
    g[ZERO][ZERO] = field.one
    g[PLUS][MINUS] = field.s
    return g


def flip(field=QS):
    p = linalg.zeros(9, 9, field)
    for i in range(3):
        for j in range(3):
            p[pair(i, j)][pair(j, i)] = field.one
    return p


def frt_rhat(field=QS):
    """R-hat = P R with R the FRT orthogonal R-matrix for N = 3.

    R = q sum_{i != i'} e_ii (x) e_ii + e_00 (x) e_00 + sum_{j != i, i'} e_ii (x) e_jj
        + q^-1 sum_{i != i'} e_{i'i'} (x) e_ii + (q - q^-1) sum_{i > j} e_ij (x) e_ji
        - (q - q^-1) sum_{i > j} q^(rho_i - rho_j) e_ij (x) e_{i'j'},
    with i' = 2 - i and rho = (1/2, 0, -1/2).
    """
    q, one = field.q, field.one
    lam = q - one / q
    rho2 = (1, 0, -1)  # 2*rho
    R = linalg.zeros(9, 9, field)

    def add(i, j, k, l, v):
        # (e_ik (x) e_jl) contributes to R^{ij}_{kl}
        R[pair(i, j)][pair(k, l)] = R[pair(i, j)][pair(k, l)] + v

    for i in range(3):
        ip = 2 - i
        for j in range(3):
            if i == j:
                add(i, i, i, i, q if i != ip else one)
            elif j != ip:
                add(i, j, i, j, one)
            else:
                add(i, j, i, j, one / q)
    for i in range(3):
        for j in range(i):
            add(i, j, j, i, lam)
            add(i, 2 - i, j, 2 - j, -lam * field.s_pow(rho2[i] - rho2[j]))
    return linalg.matmul(flip(field), R, field)


def _relations_matrix(field):
    """The three quadratic relations among x^-, x^0, x^+ as rows over x^k x^l."""
    q, h = field.q, field.h
    rows = linalg.zeros(3, 9, field)
    rows[0][pair(MINUS, ZERO)] = field.one
    rows[0][pair(ZERO, MINUS)] = -q
    rows[1][pair(PLUS, ZERO)] = field.one
    rows[1][pair(ZERO, PLUS)] = -field.one / q
    rows[2][pair(PLUS, MINUS)] = field.one
    rows[2][pair(MINUS, PLUS)] = -field.one
    rows[2][pair(ZERO, ZERO)] = -h
    return rows


def eigenvalues(field=QS):
    """(symmetric, antisymmetric, trace) eigenvalues q, -q^-1, q^-2."""
    q = field.q
    return q, -field.one / q, field.one / (q * q)


def cubic_defect(rhat, field=QS):
    I = linalg.eye(9, field)
    out = I
    for e in eigenvalues(field):
        out = linalg.matmul(out, linalg.add(rhat, linalg.scale(-e, I)), field)
    return out


def projectors(rhat, field=QS, check=True):
    """(P_s, P_a, P_t) as Lagrange interpolation polynomials in R-hat."""
    if check and not linalg.is_zero_matrix(cubic_defect(rhat, field)):
        raise AnchorError("R-hat does not satisfy (R-q)(R+q^-1)(R-q^-2) = 0")
    I = linalg.eye(9, field)
    ev = eigenvalues(field)
    out = []
    for e in ev:
        P = I
        for f in ev:
            if f is e:
                continue
            factor = linalg.scale(field.one / (e - f), linalg.add(rhat, linalg.scale(-f, I)))
            P = linalg.matmul(P, factor, field)
        out.append(P)
    return tuple(out)


def leg_products(m, field=QS):
    """(m_12, m_23) as 27x27 matrices."""
    I3 = linalg.eye(3, field)
    return linalg.kron(m, I3, field), linalg.kron(I3, m, field)


def braid_defect(m, field=QS):
    a, b = leg_products(m, field)
    lhs = linalg.matmul(linalg.matmul(a, b, field), a, field)
    rhs = linalg.matmul(linalg.matmul(b, a, field), b, field)
    return linalg.add(lhs, linalg.scale(-field.one, rhs))


def check_braid(m, field=QS) -> bool:
    return linalg.is_zero_matrix(braid_defect(m, field))


def compat_defect(S, field=QS, g=None):
    """The scalar c with S^{ij}_{hk} g^{kl} S^{mn}_{jl} = c g^{im} delta^n_h.

    Raises ValueError naming an offending entry if no such c exists.
    """
    g = build_metric(field) if g is None else g
    c = None
    vals = {}
    for i in range(3):
        for h in range(3):
            for m in range(3):
                for n in range(3):
                    acc = field.zero
                    for j in range(3):
                        for k in range(3):
                            a = S[pair(i, j)][pair(h, k)]
                            if not a:
                                continue
                            for l in range(3):
                                if g[k][l]:
                                    b = S[pair(m, n)][pair(j, l)]
                                    if b:
                                        acc = acc + a * g[k][l] * b
                    vals[i, h, m, n] = acc
                    target = g[i][m] if h == n else field.zero
                    if target and c is None:
                        c = acc / target
    if c is None:
        raise ValueError("contraction vanishes identically")
    for (i, h, m, n), acc in vals.items():
        target = g[i][m] if h == n else field.zero
        if acc != c * target:
            raise ValueError(
                f"entry (i,h,m,n)=({INDEX_NAMES[i]},{INDEX_NAMES[h]},{INDEX_NAMES[m]},{INDEX_NAMES[n]}) "
                f"= {field.fmt(acc)} is not {field.fmt(c)} * g^im delta^n_h"
            )
    return c


def anchor_report(rhat, field=QS):
    """Evaluate the four defining properties of R-hat; list of (name, ok, detail)."""
    out = []
    ok = check_braid(rhat, field)
    out.append(("braid_equation", ok, "R12 R23 R12 = R23 R12 R23" if ok else _braid_detail(rhat, field)))
    cub = cubic_defect(rhat, field)
    nz = linalg.first_nonzero(cub)
    out.append(("cubic_identity", nz is None,
                "(R-q)(R+q^-1)(R-q^-2) = 0" if nz is None
                else f"cubic defect nonzero at [{nz[0]}][{nz[1]}] = {field.fmt(nz[2])}"))
    if nz is not None:
        out.append(("spectral_decomposition", False, "skipped: cubic identity fails"))
        out.append(("antisymmetrizer_relations", False, "skipped: cubic identity fails"))
        out.append(("trace_projector", False, "skipped: cubic identity fails"))
        return out
    try:
        out.extend(_projector_anchors(rhat, field))
    except ZeroDivisionError:
        where = field.describe()
        out.extend((n, False, f"pole at {where}: projectors undefined")
                   for n in ("spectral_decomposition", "antisymmetrizer_relations", "trace_projector"))
    return out


def _projector_anchors(rhat, field):
    out = []
    Ps, Pa, Pt = projectors(rhat, field, check=False)
    ranks = tuple(linalg.rank(P, field) for P in (Ps, Pa, Pt))
    q = field.q
    recomposed = linalg.add(linalg.add(linalg.scale(q, Ps), linalg.scale(-field.one / q, Pa)),
                            linalg.scale(field.one / (q * q), Pt))
    same = recomposed == rhat
    ok = ranks == (5, 3, 1) and same
    out.append(("spectral_decomposition", ok, f"ranks (P_s, P_a, P_t) = {ranks}" + ("" if same else "; recomposition differs")))
    rel = _relations_matrix(field)
    red_pa, _ = linalg.rref(Pa, field)
    red_rel, _ = linalg.rref(rel, field)
    ok = red_pa == red_rel
    out.append(("antisymmetrizer_relations", ok,
                "row space of P_a = span of the x x relations" if ok
                else f"P_a row space (rank {len(red_pa)}) differs from the relation span"))
    g = build_metric(field)
    norm = q + field.one + field.one / q
    bad = None
    for ij in range(9):
        for kl in range(9):
            want = g[ij // 3][ij % 3] * g[kl // 3][kl % 3] / norm
            if Pt[ij][kl] != want:
                bad = (ij, kl, Pt[ij][kl], want)
                break
        if bad:
            break
    out.append(("trace_projector", bad is None,
                "P_t = g (x) g / (q + 1 + q^-1)" if bad is None
                else f"P_t[{bad[0]}][{bad[1]}] = {field.fmt(bad[2])}, expected {field.fmt(bad[3])}"))
    return out


def _braid_detail(m, field):
    nz = linalg.first_nonzero(braid_defect(m, field))
    i, j, v = nz
    return f"braid defect at 27x27 entry [{i}][{j}] = {field.fmt(v)}"


class RMatrixData:
    """R-hat, metric and the derived matrices over one coefficient field.

    Derived matrices are computed on first use, so an evaluation point where
    some of them have poles (s = 1) still yields the pole-free ones.
    """

    def __init__(self, field=QS, rhat=None, validate=True):
        self.field = field
        self.metric = build_metric(field)
        self.rhat = frt_rhat(field) if rhat is None else rhat
        if validate:
            failed = [(n, d) for n, ok, d in anchor_report(self.rhat, field) if not ok]
            poles = [n for n, d in failed if d.startswith("pole")]
            if poles and len(poles) == len(failed):
                raise PoleError(f"{', '.join(poles)}: pole at {field.describe()}")
            if failed:
                raise AnchorError("; ".join(f"{n}: {d}" for n, d in failed))

    @cached_property
    def projector_triple(self):
        return projectors(self.rhat, self.field, check=False)

    @property
    def ps(self):
        return self.projector_triple[0]

    @property
    def pa(self):
        return self.projector_triple[1]

    @property
    def pt(self):
        return self.projector_triple[2]

    @cached_property
    def rhat_inv(self):
        return linalg.inverse(self.rhat, self.field)

    @cached_property
    def s_plus(self):
        return linalg.scale(self.field.q, self.rhat)

    @cached_property
    def s_minus(self):
        return linalg.scale(self.field.one / self.field.q, self.rhat_inv)

    def sigma_matrix(self, variant: str):
        if variant == "plus":
            return self.s_plus
        if variant == "minus":
            return self.s_minus
        raise ValueError(f"variant must be 'plus' or 'minus', not {variant!r}")


_cache_lock = threading.Lock()


def rmatrix_data(field=QS) -> RMatrixData:
    """Data for ``field``, built once per field.

    Symbolic data is validated against the anchors up front.  Numeric data is
    not: the verification suite reports the anchors there, and at a pole
    (s = 1) only the pole-bearing matrices should fail.
    """
    with _cache_lock:
        data = field.cache.get("rmatrix")
        if data is None:
            data = field.cache["rmatrix"] = RMatrixData(field, validate=field.symbolic)
        return data


def build_rhat(field=QS):
    return rmatrix_data(field).rhat
