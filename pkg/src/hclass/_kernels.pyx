# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Semantics match ``_kernels_py`` exactly."""

from libc.math cimport cos, sin, pow, M_PI

ctypedef long long i64


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline i64 _inv(i64 a, i64 m) nogil:
    cdef i64 g = m, x = 0, x1 = 1, a1 = a % m, q, t
    if a1 < 0:
        a1 += m
    while a1:
        q = g // a1
        t = g - q * a1
        g = a1
        a1 = t
        t = x - q * x1
        x = x1
        x1 = t
    x %= m
    if x < 0:
        x += m
    return x


cdef inline int _jacobi(i64 a, i64 n) nogil:
    cdef int r = 1
    cdef i64 t
    a %= n
    if a < 0:
        a += n
    while a:
        while a % 2 == 0:
            a //= 2
            t = n % 8
            if t == 3 or t == 5:
                r = -r
        t = a
        a = n
        n = t
        if a % 4 == 3 and n % 4 == 3:
            r = -r
        a %= n
    return r if n == 1 else 0


def kloosterman_brute(int k2, long long m, long long n, long long c):
    """Sum over units r mod c of (c/r) eps_r^{k2} e((m r* + n r)/c); c divisible by 4."""
    cdef i64 r, rs, ph
    cdef double re = 0.0, im = 0.0, ang, cr, ci, ur, ui, tr
    cdef int s, q = ((k2 % 4) + 4) % 4
    # i^q for residues r = 3 mod 4
    cdef double e3r = 1.0, e3i = 0.0
    if q == 1:
        e3r, e3i = 0.0, 1.0
    elif q == 2:
        e3r, e3i = -1.0, 0.0
    elif q == 3:
        e3r, e3i = 0.0, -1.0
    with nogil:
        for r in range(1, c):
            if r % 2 == 0 or _gcd(r, c) != 1:
                continue
            s = _jacobi(c, r)
            if m != 0:
                rs = _inv(r, c)
            else:
                rs = 0
            ph = (m * rs + n * r) % c
            if ph < 0:
                ph += c
            ang = 2.0 * M_PI * (<double> ph) / (<double> c)
            cr = cos(ang)
            ci = sin(ang)
            if r % 4 == 3:
                tr = cr * e3r - ci * e3i
                ci = cr * e3i + ci * e3r
                cr = tr
            re += s * cr
            im += s * ci
    return complex(re, im)


def unit_kloosterman_brute(long long m, long long n, long long c):
    cdef i64 r, rs, ph
    cdef double re = 0.0, im = 0.0, ang
    with nogil:
        for r in range(0, c):
            if _gcd(r, c) != 1:
                continue
            rs = _inv(r, c) if m != 0 else 0
            ph = (m * rs + n * r) % c
            if ph < 0:
                ph += c
            ang = 2.0 * M_PI * (<double> ph) / (<double> c)
            re += cos(ang)
            im += sin(ang)
    return complex(re, im)


def lattice_sum_F0(long long N, int k, double x, double y, long long bound):
    """y^k * (1 + sum over c = N, 2N, ..., bound and |d| <= bound, gcd(c,d) = 1 of |c tau + d|^{-2k})."""
    cdef i64 c, d, rest, q
    cdef i64 primes[16]
    cdef int np_, j, ok
    cdef double acc = 0.0, row, cx, cy2, t, u
    with nogil:
        c = N
        while c <= bound:
            # distinct prime factors of c; coprimality becomes a few small mods
            np_ = 0
            rest = c
            q = 2
            while q * q <= rest:
                if rest % q == 0:
                    primes[np_] = q
                    np_ += 1
                    while rest % q == 0:
                        rest //= q
                q += 1
            if rest > 1:
                primes[np_] = rest
                np_ += 1
            row = 0.0
            cx = c * x
            cy2 = (c * y) * (c * y)
            for d in range(-bound, bound + 1):
                ok = 1
                for j in range(np_):
                    if d % primes[j] == 0:
                        ok = 0
                        break
                if not ok:
                    continue
                t = 1.0 / ((cx + d) * (cx + d) + cy2)
                u = t
                for j in range(1, k):
                    u *= t
                row += u
            acc += row
            c += N
    return pow(y, k) * (1.0 + acc)


def sqrt_count_scan(long long a, long long D):
    """Number of b in [0, 2a) with b^2 = D mod 4a."""
    cdef i64 b, cnt = 0, m = 4 * a, Dm = D % (4 * a)
    if Dm < 0:
        Dm += m
    with nogil:
        for b in range(0, 2 * a):
            if (b * b) % m == Dm:
                cnt += 1
    return cnt
