"""Pure-numpy scaling-and-squaring matrix exponential (fallback kernel).

Implements the diagonal Pade scheme of Higham (2005): pick the smallest
Pade order in {3, 5, 7, 9} whose accuracy bound covers the 1-norm of the
input, otherwise scale by a power of two, apply the order-13 approximant
and square back up.

Kept in lockstep with the compiled twin in ``_expm_cy.pyx``: same order
thresholds, same coefficient tables, same evaluation order, so the two
backends agree to rounding error.
"""

from __future__ import annotations

import math

import numpy as np

# 1-norm thresholds theta_m for Pade orders 3, 5, 7, 9, 13 (Higham 2005).
_THETA = (
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068),
)
_THETA_13 = 5.371920351148152

_B = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
    13: (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
         1187353796428800.0, 129060195264000.0, 10559470521600.0,
         670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
         960960.0, 16380.0, 182.0, 1.0),
}


def _pade_uv(a: np.ndarray, order: int):
    """Numerator split exp(a) ~ (V + U) / (V - U) for one Pade order."""
    b = _B[order]
    eye = np.eye(a.shape[0], dtype=np.complex128)
    a2 = a @ a
    if order == 3:
        u_poly = b[3] * a2 + b[1] * eye
        v = b[2] * a2 + b[0] * eye
    elif order == 5:
        a4 = a2 @ a2
        u_poly = b[5] * a4 + b[3] * a2 + b[1] * eye
        v = b[4] * a4 + b[2] * a2 + b[0] * eye
    elif order == 7:
        a4 = a2 @ a2
        a6 = a2 @ a4
        u_poly = b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye
        v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye
    elif order == 9:
        a4 = a2 @ a2
        a6 = a2 @ a4
        a8 = a6 @ a2
        u_poly = b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye
        v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye
    else:  # order 13: factor the degree-12 tail through an extra product
        a4 = a2 @ a2
        a6 = a2 @ a4
        u_poly = a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2) \
            + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye
        v = a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2) \
            + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye
    return a @ u_poly, v


def expm(a) -> np.ndarray:
    """Matrix exponential of a square complex matrix."""
    a = np.array(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expm expects a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return a
    norm = float(np.abs(a).sum(axis=0).max())

    order = 13
    scale = 0
    for m, theta in _THETA:
        if norm <= theta:
            order = m
            break
    else:
        if norm > _THETA_13:
            scale = max(0, int(math.ceil(math.log2(norm / _THETA_13))))
            a = a * 2.0 ** -scale

    u, v = _pade_uv(a, order)
    x = np.linalg.solve(v - u, v + u)
    for _ in range(scale):
        x = x @ x
    return x
