"""Pure-Python curve kernel.

Fallback used when the compiled extension (vtsim._curvecore) is not
available. Both kernels implement the identical affine chord-and-tangent
group law, so results are interchangeable point for point.

Conventions shared with the compiled kernel:
  * all coordinates and parameters are reduced integers in [0, q)
  * the identity is represented as None; point_add/scalar_mul take only
    affine operands (the caller strips identity cases first)
"""

BACKEND_NAME = "python"


def mod_inv(x, q):
    """Inverse of x modulo the prime q. Caller guarantees x % q != 0."""
    return pow(x, -1, q)


def point_add(x1, y1, x2, y2, a, q):
    """Affine chord-and-tangent sum; returns (x, y) or None for the identity."""
    if x1 == x2:
        if (y1 + y2) % q == 0:
            return None
        lam = (3 * x1 * x1 + a) * pow(2 * y1, -1, q) % q
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, q) % q
    x3 = (lam * lam - x1 - x2) % q
    y3 = (lam * (x1 - x3) - y1) % q
    return x3, y3


def scalar_mul(k, px, py, a, q):
    """Double-and-add k * (px, py); returns (x, y) or None for the identity."""
    rx = ry = None
    have_acc = False
    cx, cy = px, py
    while k:
        if k & 1:
            if not have_acc:
                rx, ry = cx, cy
                have_acc = True
            else:
                s = point_add(rx, ry, cx, cy, a, q)
                if s is None:
                    have_acc = False
                else:
                    rx, ry = s
        k >>= 1
        if k:
            d = point_add(cx, cy, cx, cy, a, q)
            if d is None:
                # doubling reached the identity: every higher bit
                # contributes the identity, so the sum is final
                return (rx, ry) if have_acc else None
            cx, cy = d
    return (rx, ry) if have_acc else None
