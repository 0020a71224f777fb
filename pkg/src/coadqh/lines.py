"""Degree-one Gromov-Witten invariants through the Fano variety of lines.

Everything is the quantum-to-classical reduction: a 4-point invariant with a
point insertion becomes a classical intersection number on the fibre F_x of
lines through a point, computed by the minuscule cup products (or the
Kunneth/quadric law in type D, or after lifting through the E6 -> F4 fold).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import minuscule as mn
from .coadjoint import CohClass, CoadjointVariety, coadjoint_variety
from .folding import folding_for, transfer_down, w_star
from .roots import (DynkinType, ParabolicSubset, bruhat_leq, build_root_system,
                    compose, dynkin_neighbors, identity, longest_elements,
                    reduced_word, weyl_generator, word_to_element)


class BalanceError(ValueError):
    """Degree balance of a GW query is violated: distinct from a zero value."""


@dataclass(frozen=True)
class GWQuery:
    """A degree-1 query: insertion degrees, with or without a point class."""
    degrees: tuple
    include_point: bool = True

    def check_balance(self, dim_x, index_r):
        n = len(self.degrees)
        total = sum(self.degrees)
        if self.include_point:
            expected = n - 2 + index_r
        else:
            expected = n - 3 + index_r + dim_x
        if total != expected:
            raise BalanceError(
                f"degree balance violated: sum {total} != {expected} "
                f"for {n} insertions (point={self.include_point})")


class LineGeometry:
    """The parabolic data of the space of lines on G/P: Q is spanned by the
    neighbors of the crossed node, R = P cap Q, and F_x is read off by
    deleting the crossed node."""

    def __init__(self, dynkin: DynkinType, node: int):
        self.dynkin = dynkin
        self.node = node
        self.rs = build_root_system(dynkin)
        self.q_nodes = tuple(dynkin_neighbors(dynkin, node))
        self.P = ParabolicSubset.of(node)
        self.Q = ParabolicSubset.of(*self.q_nodes)
        self.R = ParabolicSubset.of(node, *self.q_nodes)
        self.s_p = weyl_generator(self.rs, node)
        _, w0P, _, w0P_upper_Q = longest_elements(self.rs, self.P, self.R)
        self.w0P_upper_Q = w0P_upper_Q
        # Lemma: the longest element of W_Q^R is the crossed reflection itself
        _, w0Q, w0R, w0Q_upper_R = longest_elements(self.rs, self.Q, self.R)
        assert w0Q_upper_R == self.s_p, "w_{0,Q}^R = s_P must hold"
        self.fx = mn.fx_of(dynkin, node)

    def fx_poset(self):
        if not isinstance(self.fx, mn.MinusculeSpaceDescriptor):
            raise ValueError("F_x is a product space here; use the Kunneth path")
        return mn.poset_of(self.fx)


@lru_cache(maxsize=None)
def build_line_geometry(family, rank, node=None):
    dt = DynkinType(family, rank)
    if node is None:
        node = coadjoint_variety(family, rank).node
    return LineGeometry(dt, node)


def bar_weyl(geom: LineGeometry, w):
    """i^* q_* p^* sigma^w on F_x: None for zero, else the W_P^Q element
    w s_P (fibre letters)."""
    if w.is_identity():
        return None
    v = compose(w, geom.s_p)
    assert v.length == w.length - 1
    if not bruhat_leq(v, geom.w0P_upper_Q):
        return None
    return v


def bar_minuscule(geom: LineGeometry, w):
    """bar of a Schubert class as a MinusculeClass on the minuscule F_x."""
    poset = geom.fx_poset()
    v = bar_weyl(geom, w)
    if v is None:
        return mn.MinusculeClass.zero(poset)
    word = geom.fx.map_word(reduced_word(v))
    return mn.MinusculeClass.basis(poset, poset.ideal_of_word(word))


def bar_class_minuscule(geom: LineGeometry, X: CoadjointVariety, c: CohClass):
    poset = geom.fx_poset()
    out = mn.MinusculeClass.zero(poset)
    for (root, q), coeff in c.terms.items():
        if q:
            raise ValueError("bar takes classical classes")
        out = out + bar_minuscule(geom, X.weyl_of_root(root)).scale(coeff)
    return out


def bar_kunneth(geom: LineGeometry, w):
    """bar on the type-D fibre P^1 x Q^{2n-6} as a KunnethClass."""
    fx = geom.fx
    M = fx.quadric_middle
    v = bar_weyl(geom, w)
    if v is None:
        return mn.KunnethClass(M)
    word = reduced_word(v)
    zeta = sum(1 for i in word if i == 1)
    assert zeta <= 1
    quad_word = [i for i in word if i >= 3]
    relabel = {i: i - 2 for i in range(3, geom.dynkin.rank + 1)}
    quad = mn.quadric_class_of_word(M, quad_word, relabel)
    return mn.KunnethClass.of(zeta, quad)


def bar_class_kunneth(geom: LineGeometry, X: CoadjointVariety, c: CohClass):
    M = geom.fx.quadric_middle
    out = mn.KunnethClass(M)
    for (root, q), coeff in c.terms.items():
        if q:
            raise ValueError("bar takes classical classes")
        out = out + bar_kunneth(geom, X.weyl_of_root(root)).scale(coeff)
    return out


def _check_point_balance(X, classes, n_expected=None):
    degs = tuple(c.homogeneous_degree(X) for c in classes)
    GWQuery(degs, include_point=True).check_balance(X.dim_x, X.index_r)
    return degs


def gw1_simply_laced(X: CoadjointVariety, classes):
    """<[pt], c_1, ..., c_n>_1 for a simply-laced coadjoint X via classical
    degrees on the minuscule fibre F_x."""
    geom = build_line_geometry(X.dynkin.family, X.dynkin.rank)
    _check_point_balance(X, classes)
    poset = geom.fx_poset()
    prod = mn.MinusculeClass.basis(poset, 0)
    for c in classes:
        prod = mn.cup(prod, bar_class_minuscule(geom, X, c))
        if not prod:
            return Fraction(0)
    return mn.deg(prod)


def gw1_type_d(X: CoadjointVariety, classes):
    """<[pt], c_1, ..., c_n>_1 on OG(2,2n) via the Kunneth fibre."""
    assert X.dynkin.family == "D"
    geom = build_line_geometry("D", X.dynkin.rank)
    _check_point_balance(X, classes)
    M = geom.fx.quadric_middle
    prod = mn.KunnethClass.of(0, mn.QuadricClass.xi(M, 0))
    for c in classes:
        prod = mn.kunneth_cup(prod, bar_class_kunneth(geom, X, c))
        if not prod:
            return Fraction(0)
    return prod.top_coefficient()


def gw1_folded_f4(X: CoadjointVariety, classes):
    """<[pt], c_1, ..., c_n>_1 on F4/P4 by lifting to Y = E6/P1 and cutting
    the fibre F_x(Y) = D5/P4 with a hyperplane."""
    assert (X.dynkin.family, X.dynkin.rank) == ("F", 4)
    fold = folding_for("F", 4)
    geomY = build_line_geometry(fold.source.family, fold.source.rank, fold.node_y)
    degs = _check_point_balance(X, classes)
    if any(d > X.dim_x // 2 for d in degs):
        raise ValueError("insertions must have degree <= dim X / 2 to lift")
    poset = geomY.fx_poset()
    # start from the extra hyperplane factor h_{F_x(Y)} of the reduction
    prod = mn.MinusculeClass.basis(poset, poset.ideal_of_word([geomY.fx.node]))
    for c in classes:
        lifted = mn.MinusculeClass.zero(poset)
        for (root, q), coeff in c.terms.items():
            if q:
                raise ValueError("bar takes classical classes")
            w = X.weyl_of_root(root)
            what = w_star(fold, w)
            lifted = lifted + bar_minuscule(geomY, what).scale(coeff)
        prod = mn.cup(prod, lifted)
        if not prod:
            return Fraction(0)
    return mn.deg(prod)


def gw1(X: CoadjointVariety, classes):
    """Dispatch <[pt], ...>_1 per type."""
    fam = X.dynkin.family
    if fam == "D" :
        return gw1_type_d(X, classes)
    if fam == "E":
        return gw1_simply_laced(X, classes)
    if fam == "F":
        return gw1_folded_f4(X, classes)
    raise ValueError(f"no degree-1 evaluator for type {X.dynkin}")


def gw1_coeff_extract(X: CoadjointVariety, fixed, probe_degree):
    """The linear functional gamma -> <[pt], fixed..., gamma>_1 as a list of
    (short root, weight): the invariant is the weighted sum of the named
    Schubert coefficients of gamma."""
    degs = tuple(c.homogeneous_degree(X) for c in fixed) + (probe_degree,)
    GWQuery(degs, include_point=True).check_balance(X.dim_x, X.index_r)
    fam = X.dynkin.family
    if fam == "E":
        geom = build_line_geometry(X.dynkin.family, X.dynkin.rank)
        poset = geom.fx_poset()
        prod = mn.MinusculeClass.basis(poset, 0)
        for c in fixed:
            prod = mn.cup(prod, bar_class_minuscule(geom, X, c))
        out = []
        for mask, coeff in mn.dual(prod).terms.items():
            v = poset.weyl_of_ideal(mask)
            word = geom.fx.unmap_word(reduced_word(v)) + [geom.node]
            w = word_to_element(geom.rs, word)
            assert w.length == v.length + 1
            out.append((X.root_of_weyl(w), coeff))
        return sorted(out)
    if fam == "F":
        fold = folding_for("F", 4)
        geomY = build_line_geometry(fold.source.family, fold.source.rank, fold.node_y)
        poset = geomY.fx_poset()
        prod = mn.MinusculeClass.basis(poset, poset.ideal_of_word([geomY.fx.node]))
        for c in fixed:
            lifted = mn.MinusculeClass.zero(poset)
            for (root, q), coeff in c.terms.items():
                w = X.weyl_of_root(root)
                lifted = lifted + bar_minuscule(geomY, w_star(fold, w)).scale(coeff)
            prod = mn.cup(prod, lifted)
        out = []
        for mask, coeff in mn.dual(prod).terms.items():
            v = poset.weyl_of_ideal(mask)
            word = geomY.fx.unmap_word(reduced_word(v)) + [fold.node_y]
            what = word_to_element(geomY.rs, word)
            assert what.length == v.length + 1
            w = transfer_down(fold, what)
            out.append((X.root_of_weyl(w), coeff))
        return sorted(out)
    raise ValueError(f"no coefficient functional for type {X.dynkin}")


def apply_functional(functional, gamma: CohClass):
    return sum((w * gamma.coefficient(root) for root, w in functional),
               Fraction(0))
