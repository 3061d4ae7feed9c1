"""Reference implementations written independently of the package.

Plain nested loops over Python lists; slow but obviously correct.
"""
from itertools import product


def bool_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    return [[int(any(a[i][t] and b[t][j] for t in range(k))) for j in range(m)] for i in range(n)]


def crr_models(s, r):
    """Every (E, P) with E.P = S and P.E = R, by full enumeration."""
    n, m = len(s), len(r)
    out = []
    for ebits in product((0, 1), repeat=n * m):
        e = [list(ebits[i * m:(i + 1) * m]) for i in range(n)]
        for pbits in product((0, 1), repeat=m * n):
            p = [list(pbits[a * n:(a + 1) * n]) for a in range(m)]
            if bool_mul(e, p) == s and bool_mul(p, e) == r:
                out.append((e, p))
    return out


def crr_sat(s, r):
    n, m = len(s), len(r)
    for ebits in product((0, 1), repeat=n * m):
        e = [list(ebits[i * m:(i + 1) * m]) for i in range(n)]
        for pbits in product((0, 1), repeat=m * n):
            p = [list(pbits[a * n:(a + 1) * n]) for a in range(m)]
            if bool_mul(e, p) == s and bool_mul(p, e) == r:
                return True
    return False


def sb_sat(s, k):
    """Set Basis by enumerating every k x m basis matrix."""
    n = len(s)
    m = len(s[0]) if s else 0
    for bits in product((0, 1), repeat=k * m):
        basis = [bits[t * m:(t + 1) * m] for t in range(k)]
        ok = True
        for row in s:
            cover = [0] * m
            for b in basis:
                if all(b[j] <= row[j] for j in range(m)):
                    cover = [c | x for c, x in zip(cover, b)]
            if cover != list(row):
                ok = False
                break
        if ok:
            return True
    return False
