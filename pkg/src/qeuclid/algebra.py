"""The extended quantum Euclidean algebra in PBW normal form.

Generators x-, x0, x+ with

    x0 x- = q^-1 x- x0,   x+ x0 = q^-1 x0 x+,   x+ x- = x- x+ + h (x0)^2,

extended by the dilatation L (x L = q L x, L^* = L^-1), r with
r^2 = s x+ x- + (x0)^2 + s^-1 x- x+ (central over x, L r = q^-1 r L),
and the inverses L^-1, r^-1, (x0)^-1.  A monomial is stored as the tuple
``(k, e, a, b, c)`` meaning L^k r^e (x-)^a (x0)^b (x+)^c, with e <= 1.
"""
from __future__ import annotations

from .scalars import QS, PoleError, numeric_field

__all__ = ["AlgElem", "alg_mul", "alg_equal", "star", "alg_eval", "grade", "GENERATORS", "PoleError"]

ONE_MONO = (0, 0, 0, 0, 0)

# generator name -> monomial
GENERATORS = {
    "x-": (0, 0, 1, 0, 0),
    "x0": (0, 0, 0, 1, 0),
    "x+": (0, 0, 0, 0, 1),
    "L": (1, 0, 0, 0, 0),
    "r": (0, 1, 0, 0, 0),
}


def _cache(field, name):
    table = field.cache.get(name)
    if table is None:
        table = field.cache[name] = {}
    return table


def _raise_plus(terms, field):
    """x+ * sum coef (x-)^a (x0)^b (x+)^c, with b >= 0, in PBW order."""
    out = {}
    h = field.h
    for (a, b, c), coef in terms.items():
        key = (a, b, c + 1)
        out[key] = out.get(key, field.zero) + coef * field.q_pow(-b)
        if a:
            key = (a - 1, b + 2, c)
            out[key] = out.get(key, field.zero) + coef * h * field.qint(a)
    return {k: v for k, v in out.items() if v}


def _plus_minus(c, a, field):
    """(x+)^c (x-)^a in PBW order, memoized per field."""
    table = _cache(field, "plus_minus")
    key = (c, a)
    hit = table.get(key)
    if hit is not None:
        return hit
    if c == 0:
        res = {(a, 0, 0): field.one}
    else:
        res = _raise_plus(_plus_minus(c - 1, a, field), field)
    table[key] = res
    return res


def _xmul(x1, x2, field):
    """Product of two PBW x-monomials (x0 exponent may be negative)."""
    table = _cache(field, "xmul")
    key = (x1, x2)
    hit = table.get(key)
    if hit is not None:
        return hit
    a1, b1, c1 = x1
    a2, b2, c2 = x2
    out = {}
    for (al, be, ga), coef in _plus_minus(c1, a2, field).items():
        k = (a1 + al, b1 + be + b2, ga + c2)
        v = coef * field.q_pow(-b1 * al - ga * b2)
        out[k] = out.get(k, field.zero) + v
    out = {k: v for k, v in out.items() if v}
    table[key] = out
    return out


def _r_squared_x(field):
    table = _cache(field, "r2")
    hit = table.get("r2")
    if hit is None:
        hit = table["r2"] = {(1, 0, 1): field.s + field.one / field.s, (0, 2, 0): field.q}
    return hit


def _mono_mul(m1, m2, field):
    table = _cache(field, "mono")
    key = (m1, m2)
    hit = table.get(key)
    if hit is not None:
        return hit
    k1, e1, a1, b1, c1 = m1
    k2, e2, a2, b2, c2 = m2
    factor = field.q_pow(k2 * (e1 + a1 + b1 + c1))
    e = e1 + e2
    xs = _xmul((a1, b1, c1), (a2, b2, c2), field)
    while e >= 2:
        nxt = {}
        for x, cx in xs.items():
            for y, cy in _r_squared_x(field).items():
                for z, cz in _xmul(x, y, field).items():
                    nxt[z] = nxt.get(z, field.zero) + cx * cy * cz
        xs = {z: v for z, v in nxt.items() if v}
        e -= 2
    res = {(k1 + k2, e) + x: factor * cx for x, cx in xs.items()}
    table[key] = res
    return res


class AlgElem:
    """A finite linear combination of PBW monomials with field coefficients."""

    __slots__ = ("terms", "field")

    def __init__(self, terms=None, field=QS):
        self.field = field
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c, field=QS):
        return cls({ONE_MONO: field.coerce(c)}, field)

    @classmethod
    def mono(cls, k=0, e=0, a=0, b=0, c=0, coef=None, field=QS):
        if a < 0 or c < 0:
            raise ValueError("x- and x+ are not invertible")
        coef = field.one if coef is None else field.coerce(coef)
        m = (k, e, a, b, c)
        if e >= 2:
            return AlgElem({mm: coef * v for mm, v in _mono_mul(ONE_MONO, m, field).items()}, field)
        return cls({m: coef}, field)

    @classmethod
    def gen(cls, name: str, field=QS):
        try:
            return cls({GENERATORS[name]: field.one}, field)
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def _wrap(self, other):
        if isinstance(other, AlgElem):
            return other
        try:
            return AlgElem.const(other, self.field)
        except TypeError:
            return NotImplemented

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        zero = self.field.zero
        for m, c in other.terms.items():
            out[m] = out.get(m, zero) + c
        return AlgElem(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem({m: -c for m, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = self.field.coerce(c)
        if not c:
            return AlgElem({}, self.field)
        return AlgElem({m: c * v for m, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if not isinstance(other, AlgElem):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        return alg_mul(self, other)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = AlgElem.const(1, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        """Inverse of a scalar multiple of an invertible monomial L^k r^e (x0)^b."""
        if len(self.terms) != 1:
            raise ValueError("only single monomials are invertible here")
        (m, c), = self.terms.items()
        k, e, a, b, cc = m
        if a or cc:
            raise ValueError("x- and x+ are not invertible")
        # (L^k r^e x0^b)^-1 = x0^-b r^-e L^-k = q^(k(e+b)) L^-k r^-e x0^-b
        return AlgElem({(-k, -e, 0, -b, 0): self.field.q_pow(k * (e + b)) / c}, self.field)

    def commutator(self, other):
        other = self._wrap(other)
        return self * other - other * self

    # comparison ---------------------------------------------------------
    def is_zero(self) -> bool:
        """Semantic zero test (clears negative r powers first)."""
        return _cleared(self).terms == {}

    def __eq__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return alg_equal(self, other)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def constant_value(self):
        """The scalar c if this element equals c * 1, else None."""
        if not self.terms:
            return self.field.zero
        if set(self.terms) == {ONE_MONO}:
            return self.terms[ONE_MONO]
        n = _clearing_power(self)
        if n == 0:
            return None
        cleared = _cleared(self, n)
        unit = AlgElem.mono(e=2 * n, field=self.field)
        m, c = next(iter(unit.terms.items()))
        if m not in cleared.terms:
            return None
        ratio = cleared.terms[m] / c
        return ratio if (cleared - unit.scale(ratio)).terms == {} else None

    # structure ----------------------------------------------------------
    def star(self):
        return star(self)

    def grade(self):
        return grade(self)

    def evaluate(self, s0):
        return alg_eval(self, s0)

    def min_r_power(self) -> int:
        return min((m[1] for m in self.terms), default=0)

    def in_polynomial_subalgebra(self) -> bool:
        """True if only nonnegative powers of x-, x0, x+ occur."""
        return all(m[0] == 0 and m[1] == 0 and m[3] >= 0 for m in self.terms)

    # display ------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        field = self.field
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = _mono_str(m)
            cs = field.fmt(c)
            if mono == "1":
                parts.append(cs if _simple(cs) else f"({cs})")
            elif c == field.one:
                parts.append(mono)
            elif c == -field.one:
                parts.append(f"-{mono}")
            elif _simple(cs):
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return join_terms(parts)

    def __repr__(self):
        return f"AlgElem({self})"


def _simple(cs: str) -> bool:
    return " " not in cs


def join_terms(parts) -> str:
    """Join signed terms with `` + `` / `` - ``."""
    if not parts:
        return "0"
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text


def basis_term(c: AlgElem, name: str) -> str:
    """``c*name`` with the coefficient parenthesized only when needed."""
    if not name:
        return str(c) if len(c.terms) == 1 else f"({c})"
    if set(c.terms) == {ONE_MONO}:
        v = c.terms[ONE_MONO]
        if v == c.field.one:
            return name
        if v == -c.field.one:
            return f"-{name}"
    cs = str(c)
    return f"{cs}*{name}" if len(c.terms) == 1 else f"({cs})*{name}"


def _mono_str(m) -> str:
    k, e, a, b, c = m
    out = []
    for name, p in (("L", k), ("r", e), ("x-", a), ("x0", b), ("x+", c)):
        if p == 1:
            out.append(name)
        elif p:
            out.append(f"{name}^{p}")
    return "*".join(out) if out else "1"


def alg_mul(u: AlgElem, v: AlgElem) -> AlgElem:
    """Normal-ordered product."""
    field = u.field
    out = {}
    zero = field.zero
    for m1, c1 in u.terms.items():
        for m2, c2 in v.terms.items():
            c12 = c1 * c2
            for m, c in _mono_mul(m1, m2, field).items():
                out[m] = out.get(m, zero) + c12 * c
    return AlgElem(out, field)


def _clearing_power(w: AlgElem) -> int:
    lo = w.min_r_power()
    return max(0, -(lo // 2))  # ceil(-lo / 2)


def _cleared(w: AlgElem, n=None) -> AlgElem:
    """r^(2n) * w computed with the raw monomial r^(2n), so exponents cancel before reduction."""
    n = _clearing_power(w) if n is None else n
    if n == 0:
        return w
    field = w.field
    left = (0, 2 * n, 0, 0, 0)
    out = {}
    for m, c in w.terms.items():
        for mm, v in _mono_mul(left, m, field).items():
            out[mm] = out.get(mm, field.zero) + c * v
    return AlgElem(out, field)


def alg_equal(u: AlgElem, v: AlgElem) -> bool:
    """Decide u = v: multiply the difference by r^(2N) until no negative r power remains."""
    return _cleared(u - v).terms == {}


def star(u: AlgElem) -> AlgElem:
    """Anti-linear anti-automorphism with (x^i)^* = x^j g_ji, r^* = r, L^* = L^-1."""
    field = u.field
    out = {}
    for (k, e, a, b, c), coef in u.terms.items():
        d = e + a + b + c
        m = (-k, e, c, b, a)
        out[m] = out.get(m, field.zero) + coef * field.s_pow(a - c) * field.q_pow(-k * d)
    return AlgElem(out, field)


def alg_eval(u: AlgElem, s0) -> AlgElem:
    """Same monomials, coefficients evaluated at s = s0 (exact rationals)."""
    target = numeric_field(s0)
    out = {}
    for m, c in u.terms.items():
        if u.field.symbolic:
            out[m] = c.evaluate(s0)
        elif u.field.s0 == target.s0:
            out[m] = c
        else:
            raise ValueError("element is already numeric at a different s")
    return AlgElem(out, target)


def grade(u: AlgElem):
    """[(x-degree, L-degree)] per term, in display order."""
    return [(e + a + b + c, k) for (k, e, a, b, c) in sorted(u.terms)]


# --- literal rewriting system (for the diamond-lemma check) -------------------

LETTERS = {
    "L": (1, 0, 0, 0, 0),
    "Li": (-1, 0, 0, 0, 0),
    "r": (0, 1, 0, 0, 0),
    "ri": (0, -1, 0, 0, 0),
    "x-": (0, 0, 1, 0, 0),
    "x0": (0, 0, 0, 1, 0),
    "x0i": (0, 0, 0, -1, 0),
    "x+": (0, 0, 0, 0, 1),
}
_RANK = {"L": 0, "Li": 0, "r": 1, "ri": 1, "x-": 2, "x0": 3, "x0i": 3, "x+": 4}
_INVERSE = {"L": "Li", "Li": "L", "r": "ri", "ri": "r", "x0": "x0i", "x0i": "x0"}
_XDEG = {"r": 1, "ri": -1, "x-": 1, "x0": 1, "x0i": -1, "x+": 1}


def rewrite_rules(field=QS):
    """Map from reducible letter pairs to their replacement (list of (coef, word))."""
    q, h, one = field.q, field.h, field.one
    rules = {}
    for u, v in _INVERSE.items():
        rules[u, v] = [(one, ())]
    rules["r", "r"] = [(field.s + one / field.s, ("x-", "x+")), (q, ("x0", "x0"))]
    for u, deg in _XDEG.items():
        rules[u, "L"] = [(field.q_pow(deg), ("L", u))]
        rules[u, "Li"] = [(field.q_pow(-deg), ("Li", u))]
    for u in ("x-", "x0", "x0i", "x+"):
        rules[u, "r"] = [(one, ("r", u))]
        rules[u, "ri"] = [(one, ("ri", u))]
    rules["x0", "x-"] = [(one / q, ("x-", "x0"))]
    rules["x0i", "x-"] = [(q, ("x-", "x0i"))]
    rules["x+", "x-"] = [(one, ("x-", "x+")), (h, ("x0", "x0"))]
    rules["x+", "x0"] = [(one / q, ("x0", "x+"))]
    rules["x+", "x0i"] = [(q, ("x0i", "x+"))]
    return rules


def _redexes(word, rules):
    return [i for i in range(len(word) - 1) if (word[i], word[i + 1]) in rules]


def _apply(word, pos, rules):
    head, tail = word[:pos], word[pos + 2:]
    return [(c, head + w + tail) for c, w in rules[word[pos], word[pos + 1]]]


def reduce_words(combo, rules, field, leftmost=True):
    """Fully reduce a {word: coef} combination, choosing the leftmost or rightmost redex."""
    todo = dict(combo)
    done = {}
    while todo:
        word, coef = todo.popitem()
        red = _redexes(word, rules)
        if not red:
            done[word] = done.get(word, field.zero) + coef
            continue
        pos = red[0] if leftmost else red[-1]
        for c, w in _apply(word, pos, rules):
            todo[w] = todo.get(w, field.zero) + coef * c
            if not todo[w]:
                del todo[w]
    return {w: c for w, c in done.items() if c}


def word_to_elem(combo, field=QS) -> AlgElem:
    out = {}
    for word, coef in combo.items():
        m = [0, 0, 0, 0, 0]
        for letter in word:
            for t, x in enumerate(LETTERS[letter]):
                m[t] += x
        m = tuple(m)
        out[m] = out.get(m, field.zero) + coef
    return AlgElem(out, field)


def critical_pairs(field=QS):
    """Overlap words (a, b, c) where both ab and bc are reducible."""
    rules = rewrite_rules(field)
    return [(a, b, c) for (a, b) in rules for c in LETTERS if (b, c) in rules]


def resolve_critical_pair(word, field=QS):
    """Normal forms of ``word`` after rewriting the left or the right overlap first,
    plus the closed-form product of its letters."""
    rules = rewrite_rules(field)
    one = field.one
    left = reduce_words({w: c for c, w in _apply(word, 0, rules)}, rules, field)
    right = reduce_words({w: c for c, w in _apply(word, 1, rules)}, rules, field, leftmost=False)
    prod = AlgElem.const(one, field)
    for letter in word:
        prod = prod * AlgElem({LETTERS[letter]: one}, field)
    return word_to_elem(left, field), word_to_elem(right, field), prod
