"""Dynkin diagram foldings and the Weyl-group transfer maps.

A folding identifies W_G with the sigma-invariants of W_Ghat; pi_* embeds,
w -> w_* lifts minimal coset representatives length-preservingly up to half
the dimension, and pi^* / w -> w^* go back down.  The E6 -> F4 instance
drives the non-simply-laced Gromov-Witten evaluation; the other three are
constructed and property-tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .roots import (DynkinType, ParabolicSubset, build_root_system, compose,
                    coset_decompose, identity, in_min_coset_reps, is_positive,
                    reduced_word, weyl_generator, word_to_element)


@dataclass(frozen=True)
class FoldingMap:
    source: DynkinType          # Ghat (simply laced)
    target: DynkinType          # G
    orbit_table: tuple          # pairs (source node, target node)
    sigma_order: int
    # coadjoint pairing: X = G/P_node_x sits in Y = Ghat/P_node_y
    node_x: int
    node_y: int

    def fibre(self, target_node):
        return tuple(s for s, t in self.orbit_table if t == target_node)

    def image(self, source_node):
        return dict(self.orbit_table)[source_node]

    @property
    def source_rs(self):
        return build_root_system(self.source)

    @property
    def target_rs(self):
        return build_root_system(self.target)


def _a_to_c(n):
    table = [(i, min(i, 2 * n - i)) for i in range(1, 2 * n)]
    return FoldingMap(DynkinType("A", 2 * n - 1), DynkinType("C", n),
                      tuple(table), 2, node_x=2, node_y=2)


def _d_to_b(n):
    table = [(i, i) for i in range(1, n + 1)] + [(n + 1, n)]
    return FoldingMap(DynkinType("D", n + 1), DynkinType("B", n),
                      tuple(table), 2, node_x=1, node_y=1)


_FOLDINGS = {
    ("E", 6): FoldingMap(DynkinType("E", 6), DynkinType("F", 4),
                         ((1, 4), (6, 4), (3, 3), (5, 3), (2, 1), (4, 2)),
                         2, node_x=4, node_y=1),
    ("D", 4): FoldingMap(DynkinType("D", 4), DynkinType("G", 2),
                         ((1, 2), (3, 2), (4, 2), (2, 1)),
                         3, node_x=2, node_y=1),
}


@lru_cache(maxsize=None)
def folding_for(family, rank):
    """The folding realizing the non-simply-laced coadjoint type (family,
    rank) as a hyperplane section of a simply-laced Y."""
    if family == "F" and rank == 4:
        return _FOLDINGS[("E", 6)]
    if family == "G" and rank == 2:
        return _FOLDINGS[("D", 4)]
    if family == "C":
        return _a_to_c(rank)
    if family == "B":
        return _d_to_b(rank)
    raise ValueError(f"no folding for type {family}{rank}")


def pi_star(fold: FoldingMap, w):
    """Canonical embedding W_G -> W_Ghat: each letter maps to the product of
    the (pairwise commuting) reflections in its fibre."""
    rs_hat = fold.source_rs
    out = identity(rs_hat)
    for i in reduced_word(w):
        for j in fold.fibre(i):
            out = compose(out, weyl_generator(rs_hat, j))
    return out


def w_star(fold: FoldingMap, w):
    """The lift w_* in W_Ghat^{Phat} of w in W_G^P, built letter by letter
    from the right; each step has a unique valid fibre letter as long as
    len(w) <= dim X / 2."""
    rs_hat = fold.source_rs
    p_hat = ParabolicSubset.of(fold.node_y)
    out = identity(rs_hat)
    for i in reversed(reduced_word(w)):
        choices = []
        for j in fold.fibre(i):
            s = weyl_generator(rs_hat, j)
            cand = compose(s, out)
            if cand.length == out.length + 1 and in_min_coset_reps(cand, p_hat):
                choices.append(cand)
        if len(choices) != 1:
            raise ValueError(
                f"w_star letter choice is not unique ({len(choices)} candidates); "
                "is len(w) <= dim X / 2?")
        out = choices[0]
    return out


def pi_upper_star(fold: FoldingMap, w_hat, word=None):
    """pi^*: map a reduced word letterwise through the fold.

    The value can depend on the commutation class representative when two
    commuting source letters fold onto adjacent target nodes (this happens
    for E6 -> F4), so an explicit `word` may be supplied; by default the
    canonical reduced word of w_hat is used.
    """
    rs = fold.target_rs
    if word is None:
        word = reduced_word(w_hat)
    out = identity(rs)
    for j in word:
        out = compose(out, weyl_generator(rs, fold.image(j)))
    return out


def _reduced_words(w):
    """All reduced words of w, by peeling left descents."""
    rs = w.rs
    if w.is_identity():
        yield []
        return
    for i in range(1, rs.rank + 1):
        s = weyl_generator(rs, i)
        rest = compose(s, w)
        if rest.length == w.length - 1:
            for tail in _reduced_words(rest):
                yield [i] + tail


def hat_star(fold: FoldingMap, w_hat, word=None):
    """w_hat^* := (pi^*(w_hat))^P in W_G^P, from the canonical reduced word
    (or an explicit one)."""
    p = ParabolicSubset.of(fold.node_x)
    rep, _ = coset_decompose(pi_upper_star(fold, w_hat, word), p)
    return rep


def transfer_down(fold: FoldingMap, w_hat):
    """The unique w in W_G^P with w_* = w_hat (requires w_hat in the image of
    the lift, in particular len <= dim X / 2).  Reduced-word choices for
    pi^* are searched until one verifies against the forward lift."""
    for word in _reduced_words(w_hat):
        w = hat_star(fold, w_hat, word)
        if w.length == w_hat.length and w_star(fold, w) == w_hat:
            return w
    raise ValueError("w_hat is not in the image of the coset lift")


def jstar_class(fold: FoldingMap, X, w_hat):
    """Pull back the Y-Schubert class of w_hat to X = G/P: sigma_X^{w_hat^*}.
    Only valid below half the dimension of X, where j^* is an isomorphism."""
    if w_hat.length > X.dim_x // 2:
        raise ValueError("j^* transfer only applies in degree <= dim X / 2")
    return X.class_of_weyl(transfer_down(fold, w_hat))
