"""Cup products in the auxiliary (co)minuscule spaces F_x.

Minuscule homogeneous spaces get the jeu-de-taquin Littlewood-Richardson
rule on their minuscule poset (order ideals <-> Schubert classes, skew
standard fillings rectified by slides).  Even quadrics and P^1 are handled
by closed-form ring laws, combined through the Kunneth formula for the
type-D fibre P^1 x Q^{2n-6}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .roots import (DynkinType, ParabolicSubset, build_root_system, compose,
                    identity, is_negative, is_positive, longest_element,
                    min_coset_reps, reduced_word, weyl_generator,
                    word_to_element, dynkin_neighbors)

# ---------------------------------------------------------------------------
# F_x descriptors
# ---------------------------------------------------------------------------
# Node relabelling tables, pinned against the worked examples: removing the
# parabolic node of the ambient diagram leaves the Levi diagram, whose nodes
# are renamed to Bourbaki labels of the fibre type.  The crossed node of the
# fibre is the image of the ambient node adjacent to the removed one.


@dataclass(frozen=True)
class MinusculeSpaceDescriptor:
    dynkin: DynkinType
    node: int
    # ambient letter -> fibre letter (None for the standalone spaces)
    letter_map: tuple = None

    def map_word(self, word):
        table = dict(self.letter_map)
        return [table[i] for i in word]

    def unmap_word(self, word):
        table = {v: k for k, v in self.letter_map}
        return [table[i] for i in word]


@dataclass(frozen=True)
class ProductSpaceDescriptor:
    """P^1 x Q^{2n-6} for OG(2,2n): letter 1 is the P^1 factor, letters
    3..n the quadric factor."""
    n: int

    @property
    def quadric_middle(self):
        return self.n - 3


_FX_TABLE = {
    ("E", 6, 2): ("A", 5, 3, ((1, 1), (3, 2), (4, 3), (5, 4), (6, 5))),
    ("E", 7, 1): ("D", 6, 6, ((7, 1), (6, 2), (5, 3), (4, 4), (2, 5), (3, 6))),
    ("E", 8, 8): ("E", 7, 7, tuple((i, i) for i in range(1, 8))),
    ("E", 6, 1): ("D", 5, 4, ((6, 1), (5, 2), (4, 3), (3, 4), (2, 5))),
}


def fx_of(dynkin: DynkinType, node: int):
    """Descriptor of F_x for G/P_node (simply-laced ambient types used here)."""
    key = (dynkin.family, dynkin.rank, node)
    if key in _FX_TABLE:
        fam, rank, marked, table = _FX_TABLE[key]
        return MinusculeSpaceDescriptor(DynkinType(fam, rank), marked, table)
    if dynkin.family == "D" and node == 2:
        return ProductSpaceDescriptor(dynkin.rank)
    raise ValueError(f"no F_x table entry for {dynkin}/P{node}")


# ---------------------------------------------------------------------------
# Minuscule posets
# ---------------------------------------------------------------------------

class MinusculePoset:
    """The minuscule poset of G/P: positive roots with coefficient 1 on the
    crossed node, ordered by simple-root steps.  Order ideals (stored as
    bitmasks over a fixed element order) biject with W^P."""

    def __init__(self, dynkin: DynkinType, node: int):
        self.dynkin = dynkin
        self.node = node
        rs = build_root_system(dynkin)
        self.rs = rs
        elements = [r for r in rs.roots
                    if is_positive(r) and r[node - 1] == 1]
        if any(abs(r[node - 1]) > 1 for r in rs.roots):
            raise ValueError(f"{dynkin}/P{node} is not minuscule")
        elements.sort(key=lambda r: (rs.height(r), r))
        self.elements = elements
        self.pos = {r: i for i, r in enumerate(elements)}
        m = len(elements)
        simple = [rs.simple_root(i + 1) for i in range(rs.rank)]
        covers_up = [[] for _ in range(m)]
        covers_down = [[] for _ in range(m)]
        for i, r in enumerate(elements):
            for s in simple:
                up = tuple(a + b for a, b in zip(r, s))
                if up in self.pos:
                    covers_up[i].append(self.pos[up])
                    covers_down[self.pos[up]].append(i)
        self.covers_up = [tuple(c) for c in covers_up]
        self.covers_down = [tuple(c) for c in covers_down]
        self.full = (1 << m) - 1

        self.parabolic = ParabolicSubset.of(node)
        self._reps = min_coset_reps(rs, self.parabolic)
        self._ideal_of = {}
        self._weyl_of = {}
        for w in self._reps:
            mask = 0
            for i, beta in enumerate(elements):
                if is_negative(w.act(beta)):
                    mask |= 1 << i
            assert bin(mask).count("1") == w.length
            assert self._is_ideal(mask)
            self._ideal_of[w] = mask
            self._weyl_of[mask] = w
        assert len(self._weyl_of) == len(self._reps), "w -> ideal must inject"
        self._ideals_by_size = {}
        for mask in self._weyl_of:
            self._ideals_by_size.setdefault(bin(mask).count("1"), []).append(mask)
        self.w0 = longest_element(rs)
        self.w0P = longest_element(rs, self.parabolic.unmarked(rs))
        self._mult_cache = {}

    def __len__(self):
        return len(self.elements)

    @property
    def num_classes(self):
        return len(self._reps)

    def _is_ideal(self, mask):
        for i in range(len(self.elements)):
            if mask >> i & 1:
                for j in self.covers_down[i]:
                    if not mask >> j & 1:
                        return False
        return True

    def ideal_of_weyl(self, w):
        return self._ideal_of[w]

    def weyl_of_ideal(self, mask):
        return self._weyl_of[mask]

    def ideal_of_word(self, word):
        """Ideal of the W^P element with the given reduced word (fibre letters)."""
        return self.ideal_of_weyl(word_to_element(self.rs, word))

    def ideals(self, size=None):
        if size is None:
            return [m for ms in self._ideals_by_size.values() for m in ms]
        return self._ideals_by_size.get(size, [])

    def dual_ideal(self, mask):
        """Poincare dual: w -> w0 * w * w0P."""
        w = self.weyl_of_ideal(mask)
        dual = compose(compose(self.w0, w), self.w0P)
        return self.ideal_of_weyl(dual)

    # -- jeu de taquin --------------------------------------------------
    def _linear_extensions(self, cells):
        """All linear extensions of the skew cell set (tuples of element ids)."""
        down = self.covers_down
        out = []
        cells = frozenset(cells)

        def rec(remaining, acc):
            if not remaining:
                out.append(tuple(acc))
                return
            for c in remaining:
                if all(d not in remaining for d in down[c]):
                    acc.append(c)
                    rec(remaining - {c}, acc)
                    acc.pop()

        rec(cells, [])
        return out

    def _rectify(self, inner_mask, filling):
        """Rectify a standard filling (dict cell -> entry) of the skew shape
        (outer/inner); the slide order is deterministic, and by minuscule
        jeu de taquin the result does not depend on it."""
        inner = [i for i in range(len(self.elements)) if inner_mask >> i & 1]
        filling = dict(filling)
        inner_set = set(inner)
        while inner_set:
            # pick the largest maximal element of the inner shape
            c = max(i for i in inner_set
                    if all(j not in inner_set for j in self.covers_up[i]))
            inner_set.remove(c)
            hole = c
            while True:
                above = [j for j in self.covers_up[hole] if j in filling]
                if not above:
                    break
                j = min(above, key=lambda x: filling[x])
                filling[hole] = filling.pop(j)
                hole = j
        shape = 0
        for cell in filling:
            shape |= 1 << cell
        return shape, tuple(sorted(filling.items()))

    def canonical_filling(self, mask):
        """The fixed standard filling of a straight shape: entries follow the
        element order (a linear extension by construction)."""
        cells = sorted(i for i in range(len(self.elements)) if mask >> i & 1)
        return tuple((c, k + 1) for k, c in enumerate(cells))

    def lr_coefficient(self, u_mask, v_mask, w_mask):
        """c^w_{u,v}: standard fillings of w/u rectifying to the canonical
        filling of v."""
        if u_mask & ~w_mask:
            return 0
        target = self.canonical_filling(v_mask)
        skew = [i for i in range(len(self.elements))
                if (w_mask >> i & 1) and not (u_mask >> i & 1)]
        count = 0
        for ext in self._linear_extensions(skew):
            filling = {c: k + 1 for k, c in enumerate(ext)}
            shape, rect = self._rectify(u_mask, filling)
            if shape == v_mask and rect == target:
                count += 1
        return count

    def cup_basis(self, u_mask, v_mask):
        """sigma_u UNION sigma_v as {ideal: integer coefficient}."""
        key = (u_mask, v_mask) if u_mask <= v_mask else (v_mask, u_mask)
        hit = self._mult_cache.get(key)
        if hit is not None:
            return hit
        nu, nv = bin(u_mask).count("1"), bin(v_mask).count("1")
        # enumerate fillings on the smaller skew
        small, big = (u_mask, v_mask) if nv <= nu else (v_mask, u_mask)
        out = {}
        for w_mask in self.ideals(nu + nv):
            if big & ~w_mask:
                continue
            c = self.lr_coefficient(big, small, w_mask)
            if c:
                out[w_mask] = Fraction(c)
        self._mult_cache[key] = out
        return out


@lru_cache(maxsize=None)
def build_minuscule_poset(family, rank, node):
    return MinusculePoset(DynkinType(family, rank), node)


def poset_of(descriptor: MinusculeSpaceDescriptor):
    return build_minuscule_poset(descriptor.dynkin.family,
                                 descriptor.dynkin.rank, descriptor.node)


class MinusculeClass:
    """Sparse class on a minuscule space: {ideal mask: coefficient}."""

    __slots__ = ("poset", "terms")

    def __init__(self, poset, terms=None):
        self.poset = poset
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def basis(cls, poset, mask, coeff=1):
        return cls(poset, {mask: Fraction(coeff)})

    @classmethod
    def zero(cls, poset):
        return cls(poset, {})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return self.poset is other.poset and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MinusculeClass(self.poset, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return MinusculeClass(self.poset, {k: v * Fraction(c) for k, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mask, c in sorted(self.terms.items()):
            w = self.poset.weyl_of_ideal(mask)
            bits.append(f"{c}*s^[{','.join(map(str, reduced_word(w)))}]")
        return " + ".join(bits)


def cup(a: MinusculeClass, b: MinusculeClass) -> MinusculeClass:
    poset = a.poset
    out = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            for w, m in poset.cup_basis(u, v).items():
                val = out.get(w, 0) + cu * cv * m
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
    return MinusculeClass(poset, out)


def dual(a: MinusculeClass) -> MinusculeClass:
    return MinusculeClass(a.poset, {a.poset.dual_ideal(k): c for k, c in a.terms.items()})


def deg(a: MinusculeClass) -> Fraction:
    """Coefficient of the point class (the full ideal)."""
    return a.terms.get(a.poset.full, Fraction(0))


# ---------------------------------------------------------------------------
# Even quadrics and the type-D Kunneth fibre
# ---------------------------------------------------------------------------

class QuadricClass:
    """Class on an even quadric Q^{2M}: keys 'x0'..'x2M' for the xi_i chain
    and 'y' for the second middle class xi'_M."""

    __slots__ = ("M", "terms")

    def __init__(self, M, terms=None):
        self.M = M
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def xi(cls, M, i, coeff=1):
        return cls(M, {("x", i): Fraction(coeff)})

    @classmethod
    def xi_prime(cls, M, coeff=1):
        return cls(M, {("y", M): Fraction(coeff)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return QuadricClass(self.M, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return QuadricClass(self.M, {k: v * Fraction(c) for k, v in self.terms.items()})

    def __eq__(self, other):
        return self.M == other.M and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def top_coefficient(self):
        return self.terms.get(("x", 2 * self.M), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (kind, i), c in sorted(self.terms.items()):
            name = f"xi{i}" if kind == "x" else f"xi'{i}"
            bits.append(f"{c}*{name}")
        return " + ".join(bits)


def _quadric_basis_product(M, a, b):
    """Product of two quadric basis keys as {key: int}."""
    (ka, ia), (kb, ib) = a, b
    da = ia
    db = ib
    if da + db > 2 * M:
        return {}
    if da == 0:
        return {b: 1}
    if db == 0:
        return {a: 1}
    mid_a = da == M
    mid_b = db == M
    if mid_a and mid_b:
        same = ka == kb
        if (M % 2 == 0) == same:
            return {("x", 2 * M): 1}
        return {}
    if mid_a or mid_b:
        # middle times a chain class xi_i (i < M since i > M overflows)
        return {("x", da + db): 1}
    if da < M and db < M:
        if da + db < M:
            return {("x", da + db): 1}
        if da + db == M:
            return {("x", M): 1, ("y", M): 1}
        return {("x", da + db): 2}
    # one factor above the middle, the other below
    return {("x", da + db): 1}


def quadric_cup(a: QuadricClass, b: QuadricClass) -> QuadricClass:
    if a.M != b.M:
        raise ValueError("quadric dimension mismatch")
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            for k, m in _quadric_basis_product(a.M, ka, kb).items():
                v = out.get(k, 0) + ca * cb * m
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return QuadricClass(a.M, out)


class KunnethClass:
    """Class on P^1 x Q^{2M}: {(zeta_exp, quadric key): coefficient}."""

    __slots__ = ("M", "terms")

    def __init__(self, M, terms=None):
        self.M = M
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def of(cls, zeta_exp, quadric: QuadricClass):
        return cls(quadric.M, {(zeta_exp, k): c for k, c in quadric.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return KunnethClass(self.M, out)

    def __sub__(self, other):
        return self + self.__class__(self.M, {k: -c for k, c in other.terms.items()})

    def scale(self, c):
        return KunnethClass(self.M, {k: v * Fraction(c) for k, v in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return self.M == other.M and self.terms == other.terms

    def top_coefficient(self):
        """Coefficient of the point class zeta (x) xi_{2M}."""
        return self.terms.get((1, ("x", 2 * self.M)), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (z, (kind, i)), c in sorted(self.terms.items()):
            zeta = "zeta*" if z else ""
            name = f"xi{i}" if kind == "x" else f"xi'{i}"
            bits.append(f"{c}*{zeta}{name}")
        return " + ".join(bits)


def kunneth_cup(a: KunnethClass, b: KunnethClass) -> KunnethClass:
    if a.M != b.M:
        raise ValueError("fibre dimension mismatch")
    out = {}
    for (za, ka), ca in a.terms.items():
        for (zb, kb), cb in b.terms.items():
            if za + zb > 1:  # zeta^2 = 0 on P^1
                continue
            for k, m in _quadric_basis_product(a.M, ka, kb).items():
                key = (za + zb, k)
                v = out.get(key, 0) + ca * cb * m
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return KunnethClass(a.M, out)


def quadric_class_of_word(M, word, relabel):
    """Identify a W^{P_1}(D_{M+2}) reduced word (ambient letters, relabelled
    via `relabel` to 1..M+2) as a quadric basis class."""
    letters = [relabel[i] for i in word]
    k = len(letters)
    if k == 0:
        return QuadricClass.xi(M, 0)
    if k == M:
        # middle degree on Q^{2M} = D_{M+1}/P1: the chain class xi_M uses the
        # fork letter M, the primed one xi'_M the fork letter M+1
        if M + 1 in letters:
            return QuadricClass.xi_prime(M)
        return QuadricClass.xi(M, M)
    return QuadricClass.xi(M, k)
