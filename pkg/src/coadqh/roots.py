"""Root systems, Weyl groups and parabolic coset combinatorics.

All simple Dynkin types with Bourbaki numbering.  Roots live in simple-root
coordinates (integer tuples), Weyl group elements act through their integer
matrices on the root lattice, and minimal coset representatives are produced
by breadth-first search on left multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

FAMILIES = "ABCDEFG"

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not _RANK_OK[self.family](self.rank):
            raise ValueError(f"invalid rank {self.rank} for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text):
        """Parse tags like 'E6', 'D5', 'F4'."""
        text = text.strip()
        return cls(text[0].upper(), int(text[1:]))


def dynkin_edges(dt: DynkinType):
    """Unordered diagram edges as pairs of 1-based node indices (no arrows)."""
    n = dt.rank
    fam = dt.family
    if fam in "ABCFG":
        return [(i, i + 1) for i in range(1, n)]
    if fam == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    # E: chain 1-3-4-5-...-n with 2 attached to 4
    edges = [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]
    return edges


def dynkin_neighbors(dt: DynkinType, node):
    return sorted({b for a, b in dynkin_edges(dt) if a == node}
                  | {a for a, b in dynkin_edges(dt) if b == node})


def cartan_matrix(dt: DynkinType):
    """Cartan matrix C[i][j] = <alpha_i^vee, alpha_j>, 0-based indexing."""
    n = dt.rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in dynkin_edges(dt):
        i, j = a - 1, b - 1
        C[i][j] = C[j][i] = -1
    fam = dt.family
    if fam == "B":  # alpha_n short: <alpha_n^vee, alpha_{n-1}> = -2
        C[n - 1][n - 2] = -2
    elif fam == "C":  # alpha_n long
        C[n - 2][n - 1] = -2
    elif fam == "F":  # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        C[2][1] = -2
    elif fam == "G":  # alpha_1 long, alpha_2 short (so that G2/P2 = Q^5)
        C[1][0] = -3
    return tuple(tuple(row) for row in C)


def _symmetrizer(dt: DynkinType):
    """Weights d with d_i * C[i][j] symmetric; d_i = half squared length."""
    n = dt.rank
    if dt.family == "B":
        return tuple([2] * (n - 1) + [1])
    if dt.family == "C":
        return tuple([1] * (n - 1) + [2])
    if dt.family == "F":
        return (2, 2, 1, 1)
    if dt.family == "G":
        return (3, 1)
    return tuple([1] * n)


class RootSystem:
    """The full root system of a simple type, with the distinguished roots
    theta (highest short), Theta (highest root) and delta = Theta - theta."""

    def __init__(self, dynkin: DynkinType):
        self.dynkin = dynkin
        self.rank = dynkin.rank
        self.cartan = cartan_matrix(dynkin)
        self._d = _symmetrizer(dynkin)
        self.roots = self._generate_roots()
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        self.heights = tuple(sum(abs(c) for c in r) for r in self.roots)
        lengths = [self._length_sq(r) for r in self.roots]
        short_len = min(lengths)
        self.short_mask = tuple(l == short_len for l in lengths)
        self.simply_laced = all(self.short_mask)
        self.theta_idx = self._highest(short_only=True)
        self.big_theta_idx = self._highest(short_only=False)
        self.theta = self.roots[self.theta_idx]
        self.big_theta = self.roots[self.big_theta_idx]
        if self.simply_laced:
            self.delta = None
        else:
            self.delta = tuple(a - b for a, b in zip(self.big_theta, self.theta))
            assert self.delta in self.root_index, "delta = Theta - theta must be a root"
            assert self.short_mask[self.root_index[self.delta]]

    def _generate_roots(self):
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(n):
                    pairing = sum(self.cartan[i][j] * r[j] for j in range(n))
                    img = tuple(r[j] - pairing * (1 if j == i else 0) for j in range(n))
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        roots = sorted(seen, key=lambda r: (sum(r), r))
        return roots

    def _length_sq(self, r):
        # (r, r) with (alpha_i, alpha_j) = d_i * C[i][j]
        n = self.rank
        total = 0
        for i in range(n):
            if r[i] == 0:
                continue
            for j in range(n):
                if r[j]:
                    total += r[i] * r[j] * self._d[i] * self.cartan[i][j]
        return total

    def _highest(self, short_only):
        candidates = [i for i, r in enumerate(self.roots)
                      if is_positive(r) and (self.short_mask[i] or not short_only)]
        best = max(candidates, key=lambda i: self.heights[i])
        top = self.roots[best]
        for i in candidates:
            assert all(a >= b for a, b in zip(top, self.roots[i])), \
                "highest root is not a componentwise maximum"
        return best

    def is_root(self, vec):
        return tuple(vec) in self.root_index

    def is_short(self, vec):
        return self.short_mask[self.root_index[tuple(vec)]]

    def short_roots(self):
        return [r for i, r in enumerate(self.roots) if self.short_mask[i]]

    def pairing(self, alpha, beta):
        """<alpha^vee, beta> = 2(alpha,beta)/(alpha,alpha) for any two roots."""
        num = 0
        n = self.rank
        for i in range(n):
            if alpha[i] == 0:
                continue
            for j in range(n):
                if beta[j]:
                    num += alpha[i] * beta[j] * self._d[i] * self.cartan[i][j]
        val = Fraction(2 * num, self._length_sq(alpha))
        assert val.denominator == 1
        return int(val)

    def simple_root(self, i):
        """1-based simple root alpha_i."""
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def height(self, root):
        root = tuple(root)
        if root not in self.root_index:
            raise ValueError(f"{root} is not a root of {self.dynkin}")
        return self.heights[self.root_index[root]]


@lru_cache(maxsize=None)
def build_root_system(family, rank=None):
    if isinstance(family, DynkinType):
        dt = family
    elif rank is None:
        dt = DynkinType.parse(family)
    else:
        dt = DynkinType(family, rank)
    return RootSystem(dt)


def is_positive(vec):
    return any(c > 0 for c in vec)


def is_negative(vec):
    return any(c < 0 for c in vec)


class WeylElement:
    """A Weyl group element, canonically the tuple of images of the simple
    roots.  Equality, hashing and the root action all go through this matrix."""

    __slots__ = ("rs", "cols", "_len")

    def __init__(self, rs, cols, length=None):
        self.rs = rs
        self.cols = cols
        self._len = length

    def __eq__(self, other):
        return self.cols == other.cols

    def __hash__(self):
        return hash(self.cols)

    def __repr__(self):
        return f"W[{','.join('s%d' % i for i in reduced_word(self))}]" if not self.is_identity() else "W[e]"

    def is_identity(self):
        n = self.rs.rank
        return all(self.cols[i] == self.rs.simple_root(i + 1) for i in range(n))

    def act(self, root):
        n = self.rs.rank
        out = [0] * n
        for i, c in enumerate(root):
            if c:
                col = self.cols[i]
                for j in range(n):
                    out[j] += c * col[j]
        return tuple(out)

    @property
    def length(self):
        if self._len is None:
            count = 0
            for r in self.rs.roots:
                if is_positive(r) and is_negative(self.act(r)):
                    count += 1
            self._len = count
        return self._len


def identity(rs):
    cols = tuple(rs.simple_root(i + 1) for i in range(rs.rank))
    return WeylElement(rs, cols, 0)


@lru_cache(maxsize=None)
def weyl_generator(rs, node):
    """Simple reflection s_node (1-based)."""
    if not 1 <= node <= rs.rank:
        raise ValueError(f"node {node} out of range for {rs.dynkin}")
    i = node - 1
    cols = []
    for j in range(rs.rank):
        alpha_j = rs.simple_root(j + 1)
        img = tuple(alpha_j[k] - rs.cartan[i][j] * (1 if k == i else 0)
                    for k in range(rs.rank))
        cols.append(img)
    return WeylElement(rs, tuple(cols), 1)


def compose(a, b):
    """The product a*b (first apply b, then a)."""
    cols = tuple(a.act(col) for col in b.cols)
    return WeylElement(a.rs, cols)


def inverse(a):
    n = a.rs.rank
    # solve M * x = e_i for each simple root: M columns are images of simples
    # invert by acting with the transpose trick: build from permutation of roots
    # cheap route: the inverse matrix sends a(alpha_j) back to alpha_j
    cols = [None] * n
    # a.cols spans: express alpha_i in terms of images; since a permutes roots,
    # invert the integer matrix exactly.
    mat = [[a.cols[j][i] for j in range(n)] for i in range(n)]  # row i, col j
    inv = _invert_int_matrix(mat)
    cols = tuple(tuple(inv[i][j] for i in range(n)) for j in range(n))
    return WeylElement(a.rs, cols, a._len)


def _invert_int_matrix(mat):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] +
           [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


def act(w, root):
    return w.act(root)


def word_to_element(rs, word):
    w = identity(rs)
    for i in word:
        w = compose(w, weyl_generator(rs, i))
    return w


def reduced_word(w):
    """Deterministic reduced word: strip the lexicographically smallest right
    descent at each step.  Empty list for the identity."""
    rs = w.rs
    letters = []
    cur = w
    while True:
        descent = None
        for i in range(1, rs.rank + 1):
            if is_negative(cur.act(rs.simple_root(i))):
                descent = i
                break
        if descent is None:
            break
        letters.append(descent)
        cur = compose(cur, weyl_generator(rs, descent))
    letters.reverse()
    return letters


@dataclass(frozen=True)
class ParabolicSubset:
    """marked_nodes are the crossed nodes: W_P is generated by the others."""

    marked_nodes: frozenset

    @classmethod
    def of(cls, *nodes):
        return cls(frozenset(nodes))

    def unmarked(self, rs):
        return tuple(i for i in range(1, rs.rank + 1) if i not in self.marked_nodes)


def in_min_coset_reps(w, P: ParabolicSubset):
    """w in W^P iff w sends every simple root of W_P to a positive root."""
    rs = w.rs
    return all(is_positive(w.act(rs.simple_root(i))) for i in P.unmarked(rs))


def min_coset_reps(rs, P: ParabolicSubset, max_len=None):
    """All of W^P up to length max_len (unbounded if None), by BFS on left
    multiplication by simple reflections."""
    gens = [weyl_generator(rs, i) for i in range(1, rs.rank + 1)]
    e = identity(rs)
    out = [e]
    layer = {e}
    length = 0
    while layer and (max_len is None or length < max_len):
        nxt = set()
        for w in layer:
            for g in gens:
                cand = compose(g, w)
                cand._len = None
                if cand in nxt:
                    continue
                if cand.length == length + 1 and in_min_coset_reps(cand, P):
                    cand._len = length + 1
                    nxt.add(cand)
        out.extend(sorted(nxt, key=lambda x: x.cols))
        layer = nxt
        length += 1
    return out


def coset_decompose(u, P: ParabolicSubset):
    """The unique factorisation u = u^P * u_P with length additivity."""
    rs = u.rs
    rep = u
    par = identity(rs)
    while True:
        descent = None
        for i in P.unmarked(rs):
            if is_negative(rep.act(rs.simple_root(i))):
                descent = i
                break
        if descent is None:
            break
        s = weyl_generator(rs, descent)
        rep = compose(rep, s)
        par = compose(s, par)
    assert u.length == rep.length + par.length
    return rep, par


def longest_element(rs, letters=None):
    """Longest element of the standard parabolic generated by `letters`
    (default: the full group).  Built greedily from the right."""
    if letters is None:
        letters = tuple(range(1, rs.rank + 1))
    w = identity(rs)
    while True:
        ext = None
        for i in letters:
            if is_positive(w.act(rs.simple_root(i))):
                ext = i
                break
        if ext is None:
            return w
        w = compose(w, weyl_generator(rs, ext))


def longest_elements(rs, P: ParabolicSubset, R: ParabolicSubset):
    """(w_0, w_{0,P}, w_{0,R}, w_{0,P}^R) for nested parabolic data R <= P."""
    unmarked_P = set(P.unmarked(rs))
    unmarked_R = set(R.unmarked(rs))
    if not unmarked_R <= unmarked_P:
        raise ValueError("R is not contained in P")
    w0 = longest_element(rs)
    w0P = longest_element(rs, tuple(sorted(unmarked_P)))
    w0R = longest_element(rs, tuple(sorted(unmarked_R)))
    w0P_upper_R = compose(w0P, w0R)  # w0R is an involution
    assert w0P.length == w0P_upper_R.length + w0R.length
    return w0, w0P, w0R, w0P_upper_R


_BRUHAT_CACHE = {}
_SUFFIX_CACHE = {}


def bruhat_leq(u, v):
    """u <= v in Bruhat order, via the subword property on a fixed reduced
    word of v (memoized across calls)."""
    if u.length > v.length:
        return False
    if u.is_identity():
        return True
    key = (u.cols, v.cols)
    hit = _BRUHAT_CACHE.get(key)
    if hit is not None:
        return hit
    rs = v.rs
    if v.cols not in _SUFFIX_CACHE:
        word = reduced_word(v)
        sufs = [identity(rs)]
        for i in reversed(word):
            nxt = compose(weyl_generator(rs, i), sufs[-1])
            nxt._len = len(sufs)
            sufs.append(nxt)
        sufs.reverse()
        _SUFFIX_CACHE[v.cols] = (word, sufs)
    word, sufs = _SUFFIX_CACHE[v.cols]

    def rec(x, j):
        if x.is_identity():
            return True
        if x.length > len(word) - j:
            return False
        k = (x.cols, sufs[j].cols)
        got = _BRUHAT_CACHE.get(k)
        if got is not None:
            return got
        s = weyl_generator(rs, word[j])
        sx = compose(s, x)
        if sx.length < x.length:
            res = rec(sx, j + 1)
        else:
            res = rec(x, j + 1)
        _BRUHAT_CACHE[k] = res
        return res

    res = rec(u, 0)
    _BRUHAT_CACHE[key] = res
    return res
