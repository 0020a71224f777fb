"""Schubert calculus on coadjoint varieties in the short-root basis.

Classes are sparse vectors over Q indexed by pairs (short root, q-exponent);
the hyperplane operators come from the classical and quantum Chevalley
formulas, and hard-Lefschetz inversion is an exact sparse linear solve.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .roots import (DynkinType, ParabolicSubset, build_root_system, compose,
                    identity, in_min_coset_reps, is_negative, is_positive,
                    longest_element, min_coset_reps, weyl_generator)

# Coadjoint variety node per Table 1 (type A is two-step flag, handled in
# presentations; type C gets basis/Chevalley support only).
COADJOINT_NODE = {"B": 1, "C": 2, "D": 2, "F": 4, "G": 2}
COADJOINT_NODE_E = {6: 2, 7: 1, 8: 8}


def coadjoint_node(dt: DynkinType):
    if dt.family == "A":
        raise ValueError("type A coadjoint variety has Picard rank 2; see presentations")
    if dt.family == "E":
        return COADJOINT_NODE_E[dt.rank]
    return COADJOINT_NODE[dt.family]


class CoadjointVariety:
    """Combinatorial model of X^coad: short-root Schubert basis, degrees,
    duality, and the root <-> minimal coset representative dictionary."""

    def __init__(self, dt: DynkinType):
        self.dynkin = dt
        self.rs = build_root_system(dt)
        self.node = coadjoint_node(dt)
        self.parabolic = ParabolicSubset.of(self.node)
        rs = self.rs
        self.r0 = rs.height(rs.theta)
        self.index_r = rs.height(rs.big_theta)
        self.dim_x = 2 * self.r0 - 1
        self.basis = sorted(rs.short_roots(),
                            key=lambda a: (self.degree(a), a))
        self.basis_pos = {a: i for i, a in enumerate(self.basis)}
        self.w0 = longest_element(rs)
        self._weyl_of_root = None
        self._alpha_p = rs.simple_root(self.node)

    def degree(self, alpha):
        """Algebraic degree of sigma_alpha: r0 - |alpha| if alpha > 0,
        r0 + |alpha| - 1 if alpha < 0."""
        h = self.rs.height(alpha)
        return self.r0 - h if is_positive(alpha) else self.r0 + h - 1

    def root_of_weyl(self, w):
        if not in_min_coset_reps(w, self.parabolic):
            raise ValueError("w is not a minimal coset representative")
        alpha = w.act(self.rs.theta)
        assert alpha in self.basis_pos
        return alpha

    def weyl_of_root(self, alpha):
        if self._weyl_of_root is None:
            reps = min_coset_reps(self.rs, self.parabolic)
            table = {}
            for w in reps:
                table[w.act(self.rs.theta)] = w
            assert len(table) == len(self.basis), "w -> w(theta) must be bijective"
            self._weyl_of_root = table
        return self._weyl_of_root[tuple(alpha)]

    def poincare_dual(self, alpha):
        return self.w0.act(alpha)

    def poincare_polynomial(self):
        """Coefficient list: number of basis classes in each degree."""
        counts = [0] * (self.dim_x + 1)
        for a in self.basis:
            counts[self.degree(a)] += 1
        return counts

    # -- named classes -------------------------------------------------
    def fundamental(self):
        return CohClass({(self.rs.theta, 0): Fraction(1)})

    def point_class(self):
        neg_theta = tuple(-c for c in self.rs.theta)
        return CohClass({(neg_theta, 0): Fraction(1)})

    def hyperplane(self):
        s = weyl_generator(self.rs, self.node)
        return self.class_of_weyl(s)

    def class_of_root(self, alpha):
        alpha = tuple(alpha)
        if alpha not in self.basis_pos:
            raise ValueError(f"{alpha} is not a short root of {self.dynkin}")
        return CohClass({(alpha, 0): Fraction(1)})

    def class_of_weyl(self, w):
        return self.class_of_root(self.root_of_weyl(w))


@lru_cache(maxsize=None)
def coadjoint_variety(family, rank):
    return CoadjointVariety(DynkinType(family, rank))


class CohClass:
    """Sparse cohomology class: {(short root, q-exponent): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[k] = c

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return CohClass(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return CohClass({k: v * c for k, v in self.terms.items()})

    def classical_part(self):
        return CohClass({k: v for k, v in self.terms.items() if k[1] == 0})

    def coefficient(self, alpha, q_exp=0):
        return self.terms.get((tuple(alpha), q_exp), Fraction(0))

    def support_roots(self):
        return sorted({root for root, _ in self.terms})

    def homogeneous_degree(self, X):
        """Degree with deg q = index(X); raises if mixed."""
        degs = {X.degree(root) + q * X.index_r for (root, q) in self.terms}
        if len(degs) != 1:
            raise ValueError(f"class is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (root, q), c in sorted(self.terms.items()):
            qs = "" if q == 0 else (f"*q^{q}" if q > 1 else "*q")
            bits.append(f"{c}*s[{','.join(map(str, root))}]{qs}")
        return " + ".join(bits)


def _chevalley_row(X, alpha):
    """Terms of h * sigma_alpha (classical), as [(beta, coeff)]."""
    rs = X.rs
    n = rs.rank
    simple = [rs.simple_root(i + 1) for i in range(n)]
    if sum(abs(c) for c in alpha) == 1 and is_positive(alpha):
        # alpha is a simple (short) root
        out = [(tuple(-c for c in alpha), Fraction(2))]
        for beta in simple:
            if beta == alpha or not rs.is_short(beta):
                continue
            if rs.pairing(alpha, beta) != 0:
                out.append((tuple(-c for c in beta), Fraction(1)))
        return out
    out = []
    for beta in X.basis:
        diff = tuple(a - b for a, b in zip(alpha, beta))
        if sum(abs(c) for c in diff) == 1 and is_positive(diff):
            out.append((beta, Fraction(1)))
    return out


@lru_cache(maxsize=None)
def _chevalley_table(family, rank):
    X = coadjoint_variety(family, rank)
    return {alpha: _chevalley_row(X, alpha) for alpha in X.basis}


def chevalley_classical(X, c: CohClass) -> CohClass:
    """Cup product h UNION c via the classical Chevalley formula."""
    table = _chevalley_table(X.dynkin.family, X.dynkin.rank)
    out = {}
    for (alpha, q), coeff in c.terms.items():
        for beta, m in table[alpha]:
            k = (beta, q)
            v = out.get(k, 0) + coeff * m
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return CohClass(out)


def _quantum_corrections(X, alpha):
    """Quantum part of h *_0 sigma_alpha as [(root, q_exp, coeff)].

    Simply laced: q for simple alpha pairing with Theta; q*sigma_{Theta+alpha}
    for alpha < 0 with <alpha^vee, Theta> = -1; 2q^2 + q*sigma_{-alpha_P} for
    alpha = -Theta.  Non simply laced: q*sigma_{alpha+Theta} iff alpha <= -delta.
    Exactly one guard may fire; two firing at once is a convention error.
    """
    rs = X.rs
    theta_big = rs.big_theta
    fired = []
    if rs.simply_laced:
        neg_big = tuple(-c for c in theta_big)
        if sum(abs(c) for c in alpha) == 1 and is_positive(alpha) \
                and rs.pairing(alpha, theta_big) != 0:
            fired.append([(rs.theta, 1, Fraction(1))])
        if is_negative(alpha) and rs.pairing(alpha, theta_big) == -1:
            target = tuple(a + b for a, b in zip(alpha, theta_big))
            fired.append([(target, 1, Fraction(1))])
        if alpha == neg_big:
            neg_ap = tuple(-c for c in X._alpha_p)
            fired.append([(rs.theta, 2, Fraction(2)), (neg_ap, 1, Fraction(1))])
    else:
        neg_delta = tuple(-c for c in rs.delta)
        if all(a <= b for a, b in zip(alpha, neg_delta)):
            target = tuple(a + b for a, b in zip(alpha, theta_big))
            assert rs.is_root(target) and rs.is_short(target)
            fired.append([(target, 1, Fraction(1))])
    if len(fired) > 1:
        raise AssertionError(
            f"quantum Chevalley guards overlap at {alpha} in {X.dynkin}")
    return fired[0] if fired else []


@lru_cache(maxsize=None)
def _quantum_table(family, rank):
    X = coadjoint_variety(family, rank)
    return {alpha: _quantum_corrections(X, alpha) for alpha in X.basis}


def chevalley_quantum(X, c: CohClass) -> CohClass:
    """h *_0 c with explicit q-exponents."""
    out = chevalley_classical(X, c)
    table = _quantum_table(X.dynkin.family, X.dynkin.rank)
    extra = {}
    for (alpha, q), coeff in c.terms.items():
        for beta, dq, m in table[alpha]:
            k = (beta, q + dq)
            extra[k] = extra.get(k, 0) + coeff * m
    return out + CohClass(extra)


def chevalley_matrix(X, q_value):
    """Matrix of h *_0 in the short-root basis with q specialized; entry
    [i][j] is the sigma_{basis[i]} coefficient of h *_0 sigma_{basis[j]}."""
    q_value = Fraction(q_value)
    n = len(X.basis)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for j, alpha in enumerate(X.basis):
        img = chevalley_quantum(X, X.class_of_root(alpha))
        for (beta, q), coeff in img.terms.items():
            mat[X.basis_pos[beta]][j] += coeff * q_value ** q
    return mat


def lefschetz_solve(X, target: CohClass) -> CohClass:
    """The unique degree-d class sigma with h UNION sigma = target, where
    target is homogeneous of degree d+1 and d < dim X / 2 so that hard
    Lefschetz makes cup-with-h injective."""
    d_target = target.homogeneous_degree(X)
    d = d_target - 1
    if d < 0 or d_target > X.dim_x:
        raise ValueError("target degree out of range")
    if 2 * d >= X.dim_x:
        raise ValueError("hard Lefschetz injectivity requires deg < dim X / 2")
    cols = [a for a in X.basis if X.degree(a) == d]
    rows = [a for a in X.basis if X.degree(a) == d_target]
    row_pos = {a: i for i, a in enumerate(rows)}
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    table = _chevalley_table(X.dynkin.family, X.dynkin.rank)
    for j, a in enumerate(cols):
        for beta, m in table[a]:
            mat[row_pos[beta]][j] = m
    rhs = [target.coefficient(a) for a in rows]
    sol = _solve_exact(mat, rhs)
    if sol is None:
        raise ValueError("target is not in the image of cup-with-h")
    return CohClass({(a, 0): c for a, c in zip(cols, sol) if c})


def _solve_exact(mat, rhs):
    """Solve an overdetermined exact system; None if inconsistent, raises if
    the solution is not unique."""
    m, n = len(mat), len(mat[0]) if mat else 0
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv_p = 1 / aug[r][c]
        aug[r] = [x * inv_p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    if len(pivots) < n:
        raise ValueError("solution is not unique")
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = aug[i][n]
    return sol


def parse_root_label(X, label):
    """Parse 'a(010110)' / 'a(1,2,3,2)' root labels into a basis root."""
    label = label.strip()
    if not (label.startswith("a(") and label.endswith(")")):
        raise ValueError(f"bad root label {label!r}")
    body = label[2:-1]
    if "," in body:
        coeffs = tuple(int(x) for x in body.split(","))
    else:
        coeffs = tuple(int(ch) for ch in body)
    if len(coeffs) != X.rs.rank:
        raise ValueError(f"label {label!r} has wrong rank")
    return coeffs


def root_label(alpha):
    if all(0 <= c <= 9 for c in alpha):
        return "a(" + "".join(str(c) for c in alpha) + ")"
    return "a(" + ",".join(str(c) for c in alpha) + ")"
