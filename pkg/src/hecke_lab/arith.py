"""Elementary integer arithmetic shared by the whole package.

Everything here is desk-scale: trial-division factoring, extended gcd,
Tonelli-Shanks, Kronecker symbols, Smith normal form on small matrices.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as a sorted tuple of (p, e) pairs."""
    if n < 1:
        raise ValueError("factorint needs n >= 1")
    out = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    q = 5
    while q * q <= m:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            out.append((q, e))
        q += 2 if q % 6 == 5 else 4
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorint(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorint(n))


def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorint(n):
        out *= p ** (e - 1) * (p - 1)
    return out


def moebius(n: int) -> int:
    fac = factorint(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def radical(n: int) -> int:
    out = 1
    for p, _ in factorint(n):
        out *= p
    return out


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def invmod(a: int, m: int) -> int:
    g, x, _ = xgcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} is not invertible mod {m}")
    return x % m


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Residue mod m1*m2 congruent to r1 (m1) and r2 (m2); moduli coprime."""
    return (r1 + m1 * ((r2 - r1) * invmod(m1, m2) % m2)) % (m1 * m2)


def multiplicative_order(a: int, m: int) -> int:
    if gcd(a, m) != 1:
        raise ValueError("order of a non-unit")
    n = euler_phi(m)
    order = n
    for p, _ in factorint(n):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


@lru_cache(maxsize=None)
def primitive_root(q: int) -> int:
    """Smallest generator of (Z/qZ)^x for q an odd prime power."""
    fac = factorint(q)
    if len(fac) != 1 or fac[0][0] == 2:
        raise ValueError(f"{q} is not an odd prime power")
    p, e = fac[0]
    phi_q = euler_phi(q)
    for g in range(2, q):
        if g % p == 0:
            continue
        if multiplicative_order(g, q) == phi_q:
            return g
    raise AssertionError("no primitive root found")  # unreachable for odd p


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a mod odd prime p, or None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    s, q = 0, p - 1
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_prime_power(a: int, p: int, e: int) -> int | None:
    """Square root of a mod p^e for odd p with p not dividing a (Hensel lift)."""
    r = sqrt_mod_prime(a, p)
    if r is None:
        return None
    pe = p
    while pe < p**e:
        pe *= p
        # Newton step: r <- r - (r^2 - a) / (2r)
        r = (r - (r * r - a) * invmod(2 * r, pe)) % pe
    return r % p**e


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), full generality including n <= 0 and 2."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # pull out factors of 2 from n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi on odd n
    result = sign
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1 or d == 0:
        return False
    if d % 4 == 1:
        return is_squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


def smith_normal_form(mat: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form of a small integer matrix.

    Returns (U, D, V) with U @ mat @ V = D, U and V unimodular, D diagonal
    with d_i | d_{i+1} and d_i >= 0.  Intended for matrices of a handful of
    rows/columns; cubic-time row/column reduction.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    D = [list(r) for r in mat]
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, c):
        D[dst] = [x + c * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def addmul_col(dst, src, c):
        for r in D:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    def diagonalize():
        t = 0
        while t < min(rows, cols):
            piv = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if D[i][j] and (piv is None or abs(D[i][j]) < abs(D[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, rows):
                    if D[i][t]:
                        addmul_row(i, t, -(D[i][t] // D[t][t]))
                        if D[i][t]:  # nonzero remainder becomes the smaller pivot
                            swap_rows(t, i)
                            dirty = True
                for j in range(t + 1, cols):
                    if D[t][j]:
                        addmul_col(j, t, -(D[t][j] // D[t][t]))
                        if D[t][j]:
                            swap_cols(t, j)
                            dirty = True
            t += 1

    diagonalize()
    n = min(rows, cols)
    while True:
        bad = None
        for i in range(n - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a == 0 and b != 0:
                bad = i
                break
            if a != 0 and b % a != 0:
                bad = i
                break
        if bad is None:
            break
        addmul_row(bad, bad + 1, 1)  # puts D[bad+1][bad+1] into row bad; redo
        diagonalize()
    for i in range(n):
        if D[i][i] < 0:
            addmul_row(i, i, -2)  # negate the row in place
    return U, D, V
