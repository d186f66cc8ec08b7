"""Dense univariate polynomial arithmetic over F_q with plain int coefficients.

Polynomials are Python lists of ints in [0, q), ascending degree, with no
trailing zeros (the zero polynomial is the empty list).  This module is the
arithmetic workhorse for extension-field elements and for the curve sweeps,
where object-per-coefficient arithmetic would be too slow.
"""

from __future__ import annotations


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f: list[int]) -> int:
    return len(f) - 1


def padd(f: list[int], g: list[int], q: int) -> list[int]:
    if len(f) < len(g):
        f, g = g, f
    out = f[:]
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % q
    return trim(out)


def psub(f: list[int], g: list[int], q: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out[i] = (a - b) % q
    return trim(out)


def pscale(f: list[int], c: int, q: int) -> list[int]:
    c %= q
    if c == 0:
        return []
    return trim([(a * c) % q for a in f])


def pmul(f: list[int], g: list[int], q: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % q for c in out])


def pdivmod(f: list[int], g: list[int], q: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder; g need not be monic."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = f[:]
    dg = deg(g)
    inv_lc = pow(g[-1], -1, q)
    quot = [0] * max(0, len(f) - dg)
    while len(r) - 1 >= dg and r:
        c = (r[-1] * inv_lc) % q
        k = len(r) - 1 - dg
        quot[k] = c
        for i, b in enumerate(g):
            r[k + i] = (r[k + i] - c * b) % q
        trim(r)
    return trim(quot), r


def pmod(f: list[int], g: list[int], q: int) -> list[int]:
    return pdivmod(f, g, q)[1]


def pmonic(f: list[int], q: int) -> list[int]:
    if not f:
        return []
    if f[-1] == 1:
        return f[:]
    return pscale(f, pow(f[-1], -1, q), q)


def pgcd(f: list[int], g: list[int], q: int) -> list[int]:
    a, b = f[:], g[:]
    while b:
        a, b = b, pmod(a, b, q)
    return pmonic(a, q)


def pxgcd(f: list[int], g: list[int], q: int) -> tuple[list[int], list[int], list[int]]:
    """Returns (d, u, v) with u*f + v*g = d, d monic (or zero)."""
    r0, r1 = f[:], g[:]
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        quot, rem = pdivmod(r0, r1, q)
        r0, r1 = r1, rem
        u0, u1 = u1, psub(u0, pmul(quot, u1, q), q)
        v0, v1 = v1, psub(v0, pmul(quot, v1, q), q)
    if r0:
        c = pow(r0[-1], -1, q)
        r0, u0, v0 = pscale(r0, c, q), pscale(u0, c, q), pscale(v0, c, q)
    return r0, u0, v0


def peval(f: list[int], x: int, q: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % q
    return acc


def pderiv(f: list[int], q: int) -> list[int]:
    return trim([(i * c) % q for i, c in enumerate(f)][1:])


def pfrom_roots(roots: list[int], q: int) -> list[int]:
    out = [1]
    for r in roots:
        out = pmul(out, [(-r) % q, 1], q)
    return out


def ppowmod(base: list[int], e: int, m: list[int], q: int) -> list[int]:
    """base**e mod (m, q) by square and multiply."""
    result = [1]
    b = pmod(base, m, q)
    while e:
        if e & 1:
            result = pmod(pmul(result, b, q), m, q)
        b = pmod(pmul(b, b, q), m, q)
        e >>= 1
    return result


def pcompose_mod(f: list[int], g: list[int], m: list[int], q: int) -> list[int]:
    """f(g) mod (m, q), Horner in g."""
    acc: list[int] = []
    for c in reversed(f):
        acc = pmod(pmul(acc, g, q), m, q)
        if c:
            acc = padd(acc, [c], q)
    return acc


def newton_power_sums(h: list[int], upto: int, q: int) -> list[int]:
    """Power sums p_1..p_upto of the roots of monic h, via Newton's identities."""
    d = deg(h)
    # h = x^d - E1 x^(d-1) + E2 x^(d-2) - ...
    es = [0] * (upto + 1)
    for i in range(1, upto + 1):
        if d - i >= 0:
            es[i] = (h[d - i] * (-1) ** i) % q
    ps = [0] * (upto + 1)
    for k in range(1, upto + 1):
        acc = 0
        for i in range(1, k):
            acc += (-1) ** (i - 1) * es[i] * ps[k - i]
        acc += (-1) ** (k - 1) * k * es[k]
        ps[k] = acc % q
    return ps[1:]


def split_linear(f: list[int], q: int) -> list[int]:
    """All roots of f assuming f is a nonzero product of distinct linear factors."""
    f = pmonic(f, q)
    if deg(f) == 0:
        return []
    if deg(f) == 1:
        return [(-f[0]) % q]
    if deg(f) == 2:
        # quadratic formula, q odd
        b, c = f[1], f[0]
        disc = (b * b - 4 * c) % q
        s = sqrt_mod(disc, q)
        if s is None:
            raise ValueError("quadratic does not split")
        inv2 = pow(2, -1, q)
        return sorted({((-b + s) * inv2) % q, ((-b - s) * inv2) % q})
    half = (q - 1) // 2
    for t in range(q):
        g = ppowmod([t, 1], half, f, q)
        g = pgcd(psub(g, [1], q), f, q)
        if 0 < deg(g) < deg(f):
            rest = pdivmod(f, g, q)[0]
            return sorted(split_linear(g, q) + split_linear(rest, q))
    raise ValueError("failed to split linear-product polynomial")


def roots_in_fq(f: list[int], q: int) -> list[int]:
    """All distinct roots of f in F_q (f nonzero)."""
    if deg(f) <= 0:
        return []
    xq = ppowmod([0, 1], q, f, q)
    lin = pgcd(psub(xq, [0, 1], q), f, q)
    if deg(lin) <= 0:
        return []
    return split_linear(lin, q)


def _trial_polys(q: int):
    """Deterministic stream of small nonconstant polynomials for CZ splits."""
    t = 0
    while True:
        yield [t % q, 1 + (t // q) % (q - 1)]
        yield [t % q, (t * 3 + 1) % q, 1]
        t += 1


def equal_degree_split(f: list[int], d: int, q: int) -> list[list[int]]:
    """Factor f into monic irreducibles, all known to have degree d."""
    f = pmonic(f, q)
    if deg(f) == d:
        return [f]
    half = (q**d - 1) // 2
    for tries, a in enumerate(_trial_polys(q)):
        g = ppowmod(a, half, f, q)
        g = pgcd(psub(g, [1], q), f, q)
        if 0 < deg(g) < deg(f):
            rest = pdivmod(f, g, q)[0]
            return equal_degree_split(g, d, q) + equal_degree_split(rest, d, q)
        if tries > 64 * q:
            raise ValueError("equal-degree splitting failed to converge")
    raise AssertionError("unreachable")


def factors_of_degree(f: list[int], d: int, q: int, xq: list[int] | None = None) -> list[list[int]]:
    """Monic irreducible degree-d factors of squarefree f.

    Assumes all factors of f of degree properly dividing d have already been
    removed when d > 1 is composite; for d in {1,2,3} (our uses) stripping
    degree-1 (and degree-... lower) factors first is enough.
    """
    if xq is None:
        xq = ppowmod([0, 1], q, f, q)
    xqd = ppowmod([0, 1], q**d, f, q)
    prod = pgcd(psub(xqd, [0, 1], q), f, q)
    # remove factors of smaller degree dividing d
    for e in range(1, d):
        if d % e == 0:
            smaller = pgcd(psub(ppowmod([0, 1], q**e, prod, q), [0, 1], q), prod, q)
            if deg(smaller) > 0:
                prod = pdivmod(prod, smaller, q)[0]
    if deg(prod) <= 0:
        return []
    if d == 1:
        return [[(-r) % q, 1] for r in split_linear(prod, q)]
    return equal_degree_split(prod, d, q)


def sqrt_mod(n: int, q: int) -> int | None:
    """A square root of n modulo odd prime q, or None."""
    n %= q
    if n == 0:
        return 0
    if pow(n, (q - 1) // 2, q) != 1:
        return None
    if q % 4 == 3:
        return pow(n, (q + 1) // 4, q)
    # Tonelli-Shanks
    s, m = q - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    z = 2
    while pow(z, (q - 1) // 2, q) != q - 1:
        z += 1
    c = pow(z, s, q)
    t = pow(n, s, q)
    r = pow(n, (s + 1) // 2, q)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = (tt * tt) % q
            i += 1
        b = pow(c, 1 << (m - i - 1), q)
        m = i
        c = (b * b) % q
        t = (t * c) % q
        r = (r * b) % q
    return r


# --- arithmetic in F_q[z]/(f), elements as int lists of length < deg f ---


def emul(a: list[int], b: list[int], f: list[int], q: int) -> list[int]:
    return pmod(pmul(a, b, q), f, q)


def einv(a: list[int], f: list[int], q: int) -> list[int]:
    d, u, _ = pxgcd(a, f, q)
    if deg(d) != 0:
        raise ZeroDivisionError("element not invertible in F_q[z]/(f)")
    return pmod(u, f, q)


def epow(a: list[int], e: int, f: list[int], q: int) -> list[int]:
    return ppowmod(a, e, f, q)


def eval_poly_ext(g: list[int], a: list[int], f: list[int], q: int) -> list[int]:
    """Evaluate g in F_q[x] at the element a of F_q[z]/(f)."""
    acc: list[int] = []
    for c in reversed(g):
        acc = emul(acc, a, f, q) if acc else []
        if c:
            acc = padd(acc, [c], q)
    return acc


def is_irreducible(f: list[int], q: int) -> bool:
    """Rabin irreducibility test for monic f over F_q."""
    k = deg(f)
    if k <= 0:
        return False
    if k == 1:
        return True
    xqk = ppowmod([0, 1], q**k, f, q)
    if psub(xqk, [0, 1], q):
        return False
    primes = set()
    kk = k
    d = 2
    while d * d <= kk:
        while kk % d == 0:
            primes.add(d)
            kk //= d
        d += 1
    if kk > 1:
        primes.add(kk)
    for r in primes:
        xqe = ppowmod([0, 1], q ** (k // r), f, q)
        if deg(pgcd(psub(xqe, [0, 1], q), f, q)) != 0:
            return False
    return True
