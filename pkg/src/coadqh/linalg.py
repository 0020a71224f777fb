"""Exact linear algebra helpers over Q, plus a CRT characteristic polynomial
for integer matrices (Hessenberg mod word-sized primes, reconstructed with a
provable Hadamard-style bound)."""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, isqrt

import numpy as np


def rank_exact(rows):
    """Rank of a matrix given as list of Fraction rows (destructive copy)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv_p = 1 / m[rank][c]
        m[rank] = [x * inv_p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def nullspace_exact(rows, ncols):
    """Basis of the right kernel of the given Fraction matrix."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = {}
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv_p = 1 / m[rank][c]
        m[rank] = [x * inv_p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        pivots[c] = rank
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for c, r in pivots.items():
            v[c] = -m[r][fc]
        basis.append(v)
    return basis


def charpoly_fraction(mat):
    """Characteristic polynomial of a square Fraction matrix, monic,
    coefficients listed from x^n down to x^0.  Hessenberg reduction followed
    by the standard recurrence; fine for small matrices."""
    n = len(mat)
    a = [row[:] for row in mat]
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
        if piv is None:
            continue
        if piv != k + 1:
            a[k + 1], a[piv] = a[piv], a[k + 1]
            for i in range(n):
                a[i][k + 1], a[i][piv] = a[i][piv], a[i][k + 1]
        for i in range(k + 2, n):
            if a[i][k] != 0:
                f = a[i][k] / a[k + 1][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k + 1])]
                for r in range(n):
                    a[r][k + 1] += f * a[r][i]
    # p_m = charpoly of leading m x m block
    polys = [[Fraction(1)]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = _poly_shift_scale(prev, a[m - 1][m - 1])
        beta = Fraction(1)
        for i in range(m - 1, 0, -1):
            beta *= a[i][i - 1]
            if beta == 0:
                break
            coef = beta * a[i - 1][m - 1]
            if coef:
                cur = _poly_sub(cur, [c * coef for c in polys[i - 1]])
        polys.append(cur)
    return polys[n]


def _poly_shift_scale(p, diag):
    # (x - diag) * p, coefficients highest-degree first
    out = p + [Fraction(0)]
    for i, c in enumerate(p):
        out[i + 1] -= diag * c
    return out


def _poly_sub(p, q):
    # p - q with len(p) >= len(q), aligned at the low end
    out = p[:]
    off = len(p) - len(q)
    for i, c in enumerate(q):
        out[off + i] -= c
    return out


def _primes_for(bound):
    """Enough primes just below 2**26 whose product exceeds bound."""
    out = []
    prod = 1
    p = (1 << 26) - 5
    while prod <= bound:
        while not _is_prime(p):
            p -= 2
        out.append(p)
        prod *= p
        p -= 2
    return out


def _is_prime(p):
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _hessenberg_charpoly_mod(a, p):
    """Characteristic polynomial mod p of an int64 numpy matrix (consumed)."""
    n = a.shape[0]
    a %= p
    for k in range(n - 2):
        col = a[k + 1:, k]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = k + 1 + int(nz[0])
        if piv != k + 1:
            a[[k + 1, piv], :] = a[[piv, k + 1], :]
            a[:, [k + 1, piv]] = a[:, [piv, k + 1]]
        inv = pow(int(a[k + 1, k]), p - 2, p)
        f = (a[k + 2:, k] * inv) % p
        a[k + 2:, :] = (a[k + 2:, :] - f[:, None] * a[k + 1, :]) % p
        a[:, k + 1] = (a[:, k + 1] + a[:, k + 2:] @ f) % p
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[:m] += prev
        cur[1:] = (cur[1:] - int(a[m - 1, m - 1]) * prev) % p
        beta = 1
        for i in range(m - 1, 0, -1):
            beta = beta * int(a[i, i - 1]) % p
            if beta == 0:
                break
            coef = beta * int(a[i - 1, m - 1]) % p
            if coef:
                q = polys[i - 1]
                cur[m + 1 - len(q):] = (cur[m + 1 - len(q):] - coef * q) % p
        polys.append(cur % p)
    return [int(c) for c in polys[n]]


def charpoly_int(mat):
    """Exact characteristic polynomial of an integer matrix (list of lists),
    monic, highest-degree coefficient first, via CRT over small primes."""
    n = len(mat)
    if n == 0:
        return [1]
    norms = sorted((sum(x * x for x in row) for row in mat), reverse=True)
    bound = 1
    prod_norm = 1
    for k in range(1, n + 1):
        prod_norm *= max(norms[k - 1], 1)
        bound = max(bound, comb(n, k) * (isqrt(prod_norm) + 1))
    primes = _primes_for(2 * bound + 1)
    residues = []
    for p in primes:
        a = np.array([[x % p for x in row] for row in mat], dtype=np.int64)
        residues.append(_hessenberg_charpoly_mod(a, p))
    # CRT per coefficient, lifted to the symmetric range
    modulus = 1
    for p in primes:
        modulus *= p
    coeffs = []
    for i in range(n + 1):
        x = 0
        m_acc = 1
        for p, res in zip(primes, residues):
            r = res[i]
            # incremental CRT
            diff = (r - x) % p
            inv = pow(m_acc % p, p - 2, p)
            x = x + m_acc * ((diff * inv) % p)
            m_acc *= p
        if x > modulus // 2:
            x -= modulus
        coeffs.append(x)
    return coeffs


def charpoly_rational(mat):
    """Characteristic polynomial of a Fraction matrix, coefficients as
    Fractions (monic, highest first).  Clears denominators and rides on the
    integer CRT path for anything beyond toy sizes."""
    n = len(mat)
    if n == 0:
        return [Fraction(1)]
    if n <= 24:
        return charpoly_fraction([[Fraction(x) for x in row] for row in mat])
    den = 1
    for row in mat:
        for x in row:
            f = Fraction(x)
            den = den * f.denominator // gcd(den, f.denominator)
    imat = [[int(Fraction(x) * den) for x in row] for row in mat]
    ichar = charpoly_int(imat)
    # char_A(x) = den^{-n} char_{den*A}(den*x): coefficient of x^{n-i} picks
    # up den^{-i}
    return [Fraction(c, den ** i) for i, c in enumerate(ichar)]


def poly_derivative(coeffs):
    """Derivative for highest-first coefficient lists."""
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _content(ints):
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return g or 1


def poly_gcd_int(a, b):
    """Exact gcd of integer coefficient lists (highest first), primitive
    part, via the subresultant PRS."""
    a = [c for c in a]
    b = [c for c in b]
    while a and a[0] == 0:
        a.pop(0)
    while b and b[0] == 0:
        b.pop(0)
    if not a:
        return b or [0]
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    ca, cb = _content(a), _content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    g, h = 1, 1
    while True:
        delta = len(a) - len(b)
        # pseudo-remainder of a by b
        r = [c * b[0] ** (delta + 1) for c in a]
        for i in range(delta + 1):
            if len(r) < len(b):
                break
            if r[0] != 0:
                f = r[0] // b[0]
                for j in range(len(b)):
                    r[j] -= f * b[j]
            assert r[0] == 0
            r.pop(0)
        while r and r[0] == 0:
            r.pop(0)
        if not r:
            cont = _content(b)
            return [c // cont for c in b]
        if len(r) == 1:
            return [1]
        divisor = g * h ** delta
        a, b = b, [c // divisor for c in r]
        g = a[0]
        h = h if delta == 0 else (g ** delta) // (h ** (delta - 1)) if delta > 1 else g


def poly_is_squarefree(coeffs):
    """Squarefree test for a rational polynomial (highest-first coeffs)."""
    den = 1
    for c in coeffs:
        f = Fraction(c)
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
    if len(ints) <= 2:
        return True
    deriv = poly_derivative(ints)
    # sound fast path: unit gcd mod one good prime proves squarefreeness
    for p in (2147483629, 2147483587, 2147483579):
        if ints[0] % p == 0 or deriv[0] % p == 0:
            continue
        if _gcd_degree_mod(ints, deriv, p) == 0:
            return True
    g = poly_gcd_int(ints, deriv)
    return len(g) == 1


def _gcd_degree_mod(a, b, p):
    a = [c % p for c in a]
    b = [c % p for c in b]
    while b and all(c == 0 for c in b):
        b = []
    while a and a[0] == 0:
        a.pop(0)
    while b and b[0] == 0:
        b.pop(0)
    while b:
        inv = pow(b[0], p - 2, p)
        while len(a) >= len(b):
            if a[0]:
                f = a[0] * inv % p
                a = [(x - f * y) % p for x, y in zip(a, b + [0] * (len(a) - len(b)))]
            a.pop(0)
            while a and a[0] == 0:
                a.pop(0)
        a, b = b, a
        while b and b[0] == 0:
            b.pop(0)
    return len(a) - 1
