"""Sparse weighted-graded multivariate polynomials over Q, Buchberger
Groebner bases, and zero-dimensional quotient linear algebra.

Monomials are exponent tuples ordered by weighted degree-reverse-lex with a
declared variable precedence.  All arithmetic is exact; intermediate
polynomials are content-stripped to keep integer coefficients small.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import gcd

from .linalg import (charpoly_rational, nullspace_exact, poly_is_squarefree,
                     rank_exact)


class PolyRing:
    """Variable names with positive integer weights; optional leading
    elimination block (variables whose exponents compare first)."""

    def __init__(self, names, weights=None, elim=0):
        self.names = tuple(names)
        self.weights = tuple(weights) if weights else tuple([1] * len(names))
        if len(self.weights) != len(self.names):
            raise ValueError("weights/names length mismatch")
        self.elim = elim
        self.index = {n: i for i, n in enumerate(self.names)}

    def __eq__(self, other):
        return (self.names, self.weights, self.elim) == (other.names, other.weights, other.elim)

    def __hash__(self):
        return hash((self.names, self.weights, self.elim))

    def nvars(self):
        return len(self.names)

    def wdeg(self, expo):
        return sum(e * w for e, w in zip(expo, self.weights))

    def mono_key(self, expo):
        """Sort key: bigger key = bigger monomial (weighted degrevlex, with
        an optional elimination block compared first by total degree)."""
        if self.elim:
            head = sum(expo[:self.elim])
            return (head, tuple(-e for e in reversed(expo[:self.elim])),
                    self.wdeg(expo), tuple(-e for e in reversed(expo)))
        return (self.wdeg(expo), tuple(-e for e in reversed(expo)))

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.nvars(): Fraction(1)})

    def var(self, name, power=1):
        e = [0] * self.nvars()
        e[self.index[name]] = power
        return Poly(self, {tuple(e): Fraction(1)})

    def monomial(self, expo, coeff=1):
        return Poly(self, {tuple(expo): Fraction(coeff)})

    def from_text(self, text):
        return parse_poly(self, text)


class Poly:
    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: Fraction(c) for e, c in terms.items() if c}
        self._lm = None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.ring, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_term(self, expo, coeff):
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, expo)): c * coeff
                                for e, c in self.terms.items()})

    def lm(self):
        if self._lm is None and self.terms:
            self._lm = max(self.terms, key=self.ring.mono_key)
        return self._lm

    def lc(self):
        return self.terms[self.lm()]

    def monic(self):
        if not self.terms:
            return self
        inv = 1 / self.lc()
        return Poly(self.ring, {e: c * inv for e, c in self.terms.items()})

    def primitive(self):
        """Integer content stripped, positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        factor = Fraction(den, num)
        if self.lc() < 0:
            factor = -factor
        return Poly(self.ring, {e: c * factor for e, c in self.terms.items()})

    def wdeg(self):
        if not self.terms:
            return None
        return max(self.ring.wdeg(e) for e in self.terms)

    def is_homogeneous(self, weights=None):
        """Weighted homogeneity; negative weights allowed for the check."""
        if not self.terms:
            return True
        if weights is None:
            weights = self.ring.weights
        degs = {sum(e * w for e, w in zip(expo, weights)) for expo in self.terms}
        return len(degs) == 1

    def substitute(self, values):
        """Specialize some variables to rationals: {name: value}."""
        ring = self.ring
        out = {}
        idx = {ring.index[n]: Fraction(v) for n, v in values.items()}
        for e, c in self.terms.items():
            for i, v in idx.items():
                c = c * v ** e[i]
            e2 = tuple(0 if i in idx else x for i, x in enumerate(e))
            val = out.get(e2, 0) + c
            if val:
                out[e2] = val
            else:
                out.pop(e2, None)
        return Poly(ring, out)

    def partial(self, name):
        i = self.ring.index[name]
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = tuple(x - 1 if j == i else x for j, x in enumerate(e))
            out[e2] = out.get(e2, 0) + c * e[i]
        return Poly(self.ring, out)

    def evaluate(self, point):
        """Full evaluation at {name: rational}."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for name, x in point.items():
                v *= Fraction(x) ** e[self.ring.index[name]]
            total += v
        return total

    def map_ring(self, ring, var_map=None):
        """Reinterpret in another ring: var_map maps old name -> new name."""
        var_map = var_map or {}
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * ring.nvars()
            for i, x in enumerate(e):
                if x:
                    name = self.ring.names[i]
                    e2[ring.index[var_map.get(name, name)]] += x
            key = tuple(e2)
            out[key] = out.get(key, 0) + c
        return Poly(ring, out)

    def __repr__(self):
        return format_poly(self)


def _divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def _reduce(f: Poly, basis):
    """Full normal form of f modulo basis (deterministic, content kept)."""
    ring = f.ring
    rem = {}
    work = dict(f.terms)
    key = ring.mono_key
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        if not c:
            continue
        red = None
        for g in basis:
            if _divides(g.lm(), e):
                red = g
                break
        if red is None:
            rem[e] = rem.get(e, 0) + c
            continue
        shift = tuple(a - b for a, b in zip(e, red.lm()))
        factor = c / red.lc()
        for ge, gc in red.terms.items():
            e2 = tuple(a + b for a, b in zip(ge, shift))
            v = work.get(e2, 0) - factor * gc
            if e2 == e:
                continue
            if v:
                work[e2] = v
            else:
                work.pop(e2, None)
    return Poly(ring, rem)


class Ideal:
    def __init__(self, ring: PolyRing, generators):
        self.ring = ring
        self.generators = [g for g in generators if g]

    def __repr__(self):
        return f"Ideal({len(self.generators)} gens in {self.ring.names})"


def _spoly(f, g):
    lf, lg = f.lm(), g.lm()
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    return f.mul_term(mf, 1 / f.lc()) - g.mul_term(mg, 1 / g.lc())


def groebner_basis(ideal: Ideal):
    """Reduced Groebner basis by Buchberger with the product and chain
    criteria and normal pair selection."""
    ring = ideal.ring
    basis = [g.primitive() for g in ideal.generators if g]
    basis.sort(key=lambda g: ring.mono_key(g.lm()))
    pairs = {(i, j) for i, j in combinations(range(len(basis)), 2)}

    def lcm_exp(i, j):
        return tuple(max(a, b) for a, b in zip(basis[i].lm(), basis[j].lm()))

    while pairs:
        i, j = min(pairs, key=lambda ij: ring.mono_key(lcm_exp(*ij)))
        pairs.remove((i, j))
        li, lj = basis[i].lm(), basis[j].lm()
        lcm = lcm_exp(i, j)
        # product criterion
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k].lm(), lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        r = _reduce(_spoly(basis[i], basis[j]), basis)
        if r:
            r = r.primitive()
            k = len(basis)
            basis.append(r)
            pairs.update((m, k) for m in range(k))
    # interreduce
    basis = [g for g in basis
             if not any(h is not g and _divides(h.lm(), g.lm()) for h in basis)]
    reduced = []
    for g in sorted(basis, key=lambda g: ring.mono_key(g.lm())):
        others = [h for h in basis if h is not g]
        r = _reduce(g, others)
        if r:
            reduced.append(r.monic())
    reduced.sort(key=lambda g: ring.mono_key(g.lm()))
    return reduced


class QuotientRing:
    """R/I with a reduced Groebner basis; finite-dimensional data when the
    ideal is zero-dimensional (std_monomials is None otherwise)."""

    def __init__(self, ideal: Ideal):
        self.ring = ideal.ring
        self.ideal = ideal
        self.groebner = groebner_basis(ideal)
        self.std_monomials = self._standard_monomials()
        self.dim = len(self.std_monomials) if self.std_monomials is not None else None
        self._mono_pos = ({m: i for i, m in enumerate(self.std_monomials)}
                          if self.std_monomials is not None else None)

    def _standard_monomials(self):
        n = self.ring.nvars()
        lts = [g.lm() for g in self.groebner]
        if any(all(e == 0 for e in lt) for lt in lts):
            return []
        # zero-dimensional iff each variable has a pure-power leading term
        for i in range(n):
            if not any(all(e == 0 for j, e in enumerate(lt) if j != i) and lt[i] > 0
                       for lt in lts):
                return None
        out = []
        frontier = [(0,) * n]
        seen = {frontier[0]}
        while frontier:
            nxt = []
            for e in frontier:
                if any(_divides(lt, e) for lt in lts):
                    continue
                out.append(e)
                for i in range(n):
                    e2 = tuple(x + 1 if j == i else x for j, x in enumerate(e))
                    if e2 not in seen:
                        seen.add(e2)
                        nxt.append(e2)
            frontier = nxt
        out.sort(key=self.ring.mono_key)
        return out

    def is_finite(self):
        return self.std_monomials is not None

    def normal_form(self, f: Poly) -> Poly:
        return _reduce(f, self.groebner)

    def to_vector(self, f: Poly):
        nf = self.normal_form(f)
        vec = [Fraction(0)] * self.dim
        for e, c in nf.terms.items():
            vec[self._mono_pos[e]] = c
        return vec

    def mult_matrix(self, f: Poly):
        """Matrix of multiplication by f on the standard monomial basis;
        column j is f * m_j."""
        if not self.is_finite():
            raise ValueError("infinite quotient has no multiplication matrix")
        cols = []
        for m in self.std_monomials:
            cols.append(self.to_vector(f.mul_term(m, 1)))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def char_poly(self, f: Poly):
        return charpoly_rational(self.mult_matrix(f))

    def hilbert_function(self):
        """Weighted-degree histogram of the standard monomials (graded case)."""
        hist = {}
        for m in self.std_monomials:
            d = self.ring.wdeg(m)
            hist[d] = hist.get(d, 0) + 1
        return [hist.get(d, 0) for d in range(max(hist) + 1)] if hist else []


def normal_form(q: QuotientRing, f: Poly) -> Poly:
    return q.normal_form(f)


def saturate(ideal: Ideal, f: Poly) -> Ideal:
    """(I : f^infinity).  For zero-dimensional quotients this is linear
    algebra on the multiplication operator of f (the Artinian splitting);
    for a unit f it is I itself, and the general case falls back to the
    Rabinowitsch elimination trick."""
    ring = ideal.ring
    if not f:
        raise ValueError("cannot saturate by the zero polynomial")
    if set(f.terms) == {(0,) * ring.nvars()}:
        return Ideal(ring, list(ideal.generators))
    q = QuotientRing(ideal)
    if q.is_finite():
        if q.dim == 0:
            return Ideal(ring, [ring.one()])
        # the Artinian splitting: (I : f^inf)/I = ker of multiplication by
        # f^N for N >= dim; one reduction pass builds that matrix directly
        power = q.mult_matrix(_nf_power(q, f, q.dim))
        kernel = nullspace_exact(power, q.dim)
        gens = list(ideal.generators)
        for v in kernel:
            gens.append(Poly(ring, {m: c for m, c in zip(q.std_monomials, v) if c}))
        return Ideal(ring, gens)
    return _saturate_rabinowitsch(ideal, f)


def _nf_power(q, f, n):
    """NF(f^n), reducing at every squaring step."""
    out = q.ring.one()
    base = q.normal_form(f)
    while n:
        if n & 1:
            out = q.normal_form(out * base)
        base = q.normal_form(base * base)
        n >>= 1
    return out


def _mat_mul(a, b):
    n = len(a)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        row = out[i]
        for k in range(n):
            c = ai[k]
            if c:
                bk = b[k]
                for j in range(n):
                    if bk[j]:
                        row[j] += c * bk[j]
    return out

def _mat_rank_stable(power, mf):
    return rank_exact(power) == rank_exact(_mat_mul(power, mf))


def _saturate_rabinowitsch(ideal, f):
    ring = ideal.ring
    ext = PolyRing(("Z_sat",) + ring.names, (1,) + ring.weights, elim=1)
    gens = [g.map_ring(ext) for g in ideal.generators]
    zf = ext.var("Z_sat") * f.map_ring(ext) - ext.one()
    gens.append(zf)
    gb = groebner_basis(Ideal(ext, gens))
    out = []
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            out.append(g.map_ring(ring))
    return Ideal(ring, out)


def local_algebra_invariants(q: QuotientRing):
    """(dimension, m-adic Hilbert function, socle dimension) of a finite
    local algebra presented as a quotient whose variables all lie in the
    maximal ideal (checked: each variable must be nilpotent)."""
    if not q.is_finite():
        raise ValueError("not a finite algebra")
    n = q.dim
    mats = [q.mult_matrix(q.ring.var(name)) for name in q.ring.names]
    for name, m in zip(q.ring.names, mats):
        power = m
        for _ in range(n.bit_length() + 1):
            power = _mat_mul(power, power)
        if any(any(x for x in row) for row in power):
            raise ValueError(f"variable {name} is not nilpotent: algebra not local at the origin")
    # m^k filtration: V_0 = A, V_{k+1} = sum_i x_i V_k
    hf = []
    current = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    while current:
        images = [_mat_vec(m, v) for v in current for m in mats]
        nxt_basis = _column_space(images, n)
        hf.append(len(current) - len(nxt_basis))
        current = nxt_basis
    # socle: intersection of kernels of all variable multiplications
    stacked = []
    for m in mats:
        stacked.extend(m)
    socle = len(nullspace_exact(stacked, n))
    return n, hf, socle


def _mat_vec(m, v):
    return [sum(m[i][j] * v[j] for j in range(len(v)) if v[j]) for i in range(len(m))]


def _column_space(vectors, n):
    """Row-reduce to a basis of the span."""
    rows = [list(v) for v in vectors]
    basis = []
    pivots = []
    for r in rows:
        r = r[:]
        for p, b in zip(pivots, basis):
            if r[p]:
                f = r[p]
                r = [x - f * y for x, y in zip(r, b)]
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is None:
            continue
        inv = 1 / r[piv]
        r = [x * inv for x in r]
        basis.append(r)
        pivots.append(piv)
    return basis


def jacobian_rank_at(relations, point):
    """Rank of the Jacobian matrix of the relations at the point."""
    if not relations:
        return 0
    ring = relations[0].ring
    rows = []
    for f in relations:
        rows.append([f.partial(name).evaluate(point) for name in ring.names])
    return rank_exact(rows)


def squarefree_charpoly_certificate(q: QuotientRing, seed):
    """True iff multiplication by a seeded pseudo-random rational linear form
    has squarefree characteristic polynomial (certifying reducedness)."""
    import random
    rng = random.Random(seed)
    coeffs = {name: Fraction(rng.randint(1, 997), rng.randint(1, 7))
              for name in q.ring.names}
    form = q.ring.zero()
    for name, c in coeffs.items():
        form = form + q.ring.var(name) * c
    cp = q.char_poly(form)
    return poly_is_squarefree(cp)


# ---------------------------------------------------------------------------
# plain-text polynomial format: "2*h^8 - 6*h^4*s + 3*s^2", rational literals
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*([+-]|\d+/\d+|\d+|[A-Za-z_][A-Za-z_0-9']*|\^|\*)")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad polynomial text at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    terms = {}
    i = 0
    n = len(tokens)
    while i < n:
        sign = Fraction(1)
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        coeff = sign
        expo = [0] * ring.nvars()
        expect_factor = True
        while i < n:
            tok = tokens[i]
            if tok in "+-":
                break
            if tok == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ValueError(f"missing operator before {tok!r}")
            if re.fullmatch(r"\d+/\d+|\d+", tok):
                num = Fraction(tok)
                i += 1
                if i < n and tokens[i] == "^":
                    num = num ** int(tokens[i + 1])
                    i += 2
                coeff *= num
            else:
                if tok not in ring.index:
                    raise ValueError(f"unknown variable {tok!r}")
                power = 1
                i += 1
                if i < n and tokens[i] == "^":
                    power = int(tokens[i + 1])
                    i += 2
                expo[ring.index[tok]] += power
            expect_factor = False
        key = tuple(expo)
        val = terms.get(key, 0) + coeff
        if val:
            terms[key] = val
        else:
            terms.pop(key, None)
    return Poly(ring, terms)


def format_poly(f: Poly) -> str:
    """Deterministic printing, sorted descending by the monomial order."""
    if not f.terms:
        return "0"
    ring = f.ring
    bits = []
    for e in sorted(f.terms, key=ring.mono_key, reverse=True):
        c = f.terms[e]
        factors = []
        for name, p in zip(ring.names, e):
            if p == 1:
                factors.append(name)
            elif p > 1:
                factors.append(f"{name}^{p}")
        mono = "*".join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        bits.append(("- " if c < 0 else "+ ") + body)
    out = " ".join(bits)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]
