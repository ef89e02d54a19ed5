# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled curve kernel.

Hot inner loops of the simulator: prime-field inversion and the affine
group law, in C integer arithmetic. Semantics match vtsim._pycurve exactly
(same representation: reduced ints in [0, q), identity as None), so either
kernel can back the curve layer.

Products of two residues are taken in 128-bit registers, which keeps the
arithmetic exact for any modulus below 2^63.
"""

BACKEND_NAME = "compiled"

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64


cdef inline u64 c_mulmod(u64 x, u64 y, u64 q) noexcept:
    return <u64>((<u128>x * <u128>y) % <u128>q)


cdef inline u64 c_submod(u64 x, u64 y, u64 q) noexcept:
    return x - y + q if x < y else x - y


cdef u64 c_mod_inv(u64 x, u64 q) noexcept:
    # extended Euclid on signed accumulators; q prime, 0 < x < q
    cdef long long t = 0, new_t = 1
    cdef long long r = <long long>q, new_r = <long long>x
    cdef long long quot, tmp
    while new_r != 0:
        quot = r / new_r
        tmp = t - quot * new_t
        t = new_t
        new_t = tmp
        tmp = r - quot * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += <long long>q
    return <u64>t


# point_add/scalar_mul C cores signal the identity through a flag.

cdef int c_point_add(u64 x1, u64 y1, u64 x2, u64 y2, u64 a, u64 q,
                     u64 *ox, u64 *oy) noexcept:
    cdef u64 lam, num, den, x3
    if x1 == x2:
        if (y1 + y2) % q == 0:
            return 0
        num = (c_mulmod(3, c_mulmod(x1, x1, q), q) + a) % q
        den = c_mod_inv((2 * y1) % q, q)
    else:
        num = c_submod(y2, y1, q)
        den = c_mod_inv(c_submod(x2, x1, q), q)
    lam = c_mulmod(num, den, q)
    x3 = c_submod(c_submod(c_mulmod(lam, lam, q), x1, q), x2, q)
    oy[0] = c_submod(c_mulmod(lam, c_submod(x1, x3, q), q), y1, q)
    ox[0] = x3
    return 1


def mod_inv(x, q):
    """Inverse of x modulo the prime q. Caller guarantees x % q != 0."""
    return c_mod_inv(x, q)


def point_add(x1, y1, x2, y2, a, q):
    """Affine chord-and-tangent sum; returns (x, y) or None for the identity."""
    cdef u64 ox = 0, oy = 0
    if c_point_add(x1, y1, x2, y2, a, q, &ox, &oy):
        return ox, oy
    return None


def scalar_mul(k, px, py, a, q):
    """Double-and-add k * (px, py); returns (x, y) or None for the identity."""
    cdef unsigned long long kk = k
    cdef u64 aa = a, qq = q
    cdef u64 cx = px, cy = py
    cdef u64 rx = 0, ry = 0, nx = 0, ny = 0
    cdef int have_acc = 0
    while kk:
        if kk & 1:
            if not have_acc:
                rx = cx
                ry = cy
                have_acc = 1
            elif c_point_add(rx, ry, cx, cy, aa, qq, &nx, &ny):
                rx = nx
                ry = ny
            else:
                have_acc = 0
        kk >>= 1
        if kk:
            if not c_point_add(cx, cy, cx, cy, aa, qq, &nx, &ny):
                # doubling reached the identity: every higher bit
                # contributes the identity, so the sum is final
                break
            cx = nx
            cy = ny
    if have_acc:
        return rx, ry
    return None
