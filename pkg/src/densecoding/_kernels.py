"""Compiled inner loops of the measurement optimizer.

The mixed-state objective uses the same cyclic Jacobi scheme as
:mod:`densecoding.qmath`, specialised to one matrix at a time so the
optimizer can call it thousands of times per state.
"""

import math

import numba as nb
import numpy as np

SNAP = 1e-12
ZERO_PROB = 1e-12
OFFDIAG_TOL = 1e-12
MAX_SWEEPS = 100


@nb.njit(cache=True)
def jacobi_eigvals(a):
    """Eigenvalues of Hermitian ``a`` (overwritten). Returns NaNs on failure."""
    n = a.shape[0]
    out = np.empty(n)
    converged = False
    for _ in range(MAX_SWEEPS + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if math.sqrt(off) < OFFDIAG_TOL:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-280:
                    continue
                e = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    sgn = 1.0 if theta >= 0.0 else -1.0
                    t = sgn / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                eb = e.conjugate()
                for i in range(n):
                    x = a[i, p]
                    y = a[i, q]
                    a[i, p] = c * x - s * eb * y
                    a[i, q] = s * x + c * eb * y
                for i in range(n):
                    x = a[p, i]
                    y = a[q, i]
                    a[p, i] = c * x - s * e * y
                    a[q, i] = s * x + c * e * y
                a[p, q] = 0.0
                a[q, p] = 0.0
    for i in range(n):
        out[i] = a[i, i].real if converged else np.nan
    return out


@nb.njit(cache=True)
def spectrum_entropy(w):
    s = 0.0
    for x in w:
        if x > SNAP:
            s -= x * math.log2(x)
    return s


@nb.njit(cache=True)
def herm_entropy(m):
    n = m.shape[0]
    a = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            a[i, j] = 0.5 * (m[i, j] + m[j, i].conjugate())
    return spectrum_entropy(jacobi_eigvals(a))


@nb.njit(cache=True)
def dc_capacity(rho):
    """``1 + S(rho_B) - S(rho_AB)`` for a 4x4 matrix ordered (sender, receiver)."""
    rb = np.empty((2, 2), dtype=np.complex128)
    for x in range(2):
        for y in range(2):
            rb[x, y] = rho[x, y] + rho[2 + x, 2 + y]
    return 1.0 + herm_entropy(rb) - herm_entropy(rho)


@nb.njit(cache=True)
def _outcome_term(blocks, u0, u1):
    # unnormalized post state <u|rho|u> on the controller qubit
    sigma = np.empty((4, 4), dtype=np.complex128)
    cu0 = u0.conjugate()
    cu1 = u1.conjugate()
    for x in range(4):
        for y in range(4):
            sigma[x, y] = (cu0 * u0 * blocks[0, 0, x, y] + cu0 * u1 * blocks[0, 1, x, y]
                           + cu1 * u0 * blocks[1, 0, x, y] + cu1 * u1 * blocks[1, 1, x, y])
    p = 0.0
    for x in range(4):
        p += sigma[x, x].real
    if p < ZERO_PROB:
        return 0.0
    for x in range(4):
        for y in range(4):
            sigma[x, y] /= p
    return p * dc_capacity(sigma)


@nb.njit(cache=True)
def mixed_avg(blocks, theta, phi):
    """Average capacity after measuring the controller in basis ``(theta, phi)``.

    ``blocks[a, b]`` is the 4x4 (sender, receiver) block of the state at
    controller indices ``a, b``.
    """
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    e = complex(math.cos(phi), math.sin(phi))
    return (_outcome_term(blocks, complex(c, 0.0), e * s)
            + _outcome_term(blocks, complex(s, 0.0), -e * c))


@nb.njit(cache=True)
def mixed_grid(blocks, thetas, phis):
    out = np.empty((thetas.size, phis.size))
    for i in range(thetas.size):
        for j in range(phis.size):
            out[i, j] = mixed_avg(blocks, thetas[i], phis[j])
    return out


@nb.njit(cache=True)
def _binary_entropy(x):
    if x <= SNAP or x >= 1.0 - SNAP:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


@nb.njit(cache=True)
def _pure_term(m0, m1, m2, m3):
    p = (m0.real ** 2 + m0.imag ** 2 + m1.real ** 2 + m1.imag ** 2
         + m2.real ** 2 + m2.imag ** 2 + m3.real ** 2 + m3.imag ** 2)
    if p < ZERO_PROB:
        return 0.0
    det = m0 * m3 - m1 * m2
    x = min(4.0 * (det.real ** 2 + det.imag ** 2) / (p * p), 1.0)
    # smaller Schmidt weight, written to avoid cancellation
    mu = x / (2.0 * (1.0 + math.sqrt(1.0 - x)))
    return p * (1.0 + _binary_entropy(mu))


@nb.njit(cache=True)
def pure_avg(t, theta, phi):
    """Average capacity for a pure state.

    ``t[a]`` holds the four (sender, receiver) amplitudes at controller
    index ``a``.  Each post-measurement state is pure, so its capacity is
    ``1 + h(smaller Schmidt weight)``.
    """
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    eb = complex(math.cos(phi), -math.sin(phi))
    a0 = c * t[0, 0] + eb * s * t[1, 0]
    a1 = c * t[0, 1] + eb * s * t[1, 1]
    a2 = c * t[0, 2] + eb * s * t[1, 2]
    a3 = c * t[0, 3] + eb * s * t[1, 3]
    b0 = s * t[0, 0] - eb * c * t[1, 0]
    b1 = s * t[0, 1] - eb * c * t[1, 1]
    b2 = s * t[0, 2] - eb * c * t[1, 2]
    b3 = s * t[0, 3] - eb * c * t[1, 3]
    return _pure_term(a0, a1, a2, a3) + _pure_term(b0, b1, b2, b3)


@nb.njit(cache=True)
def evaluate(pure, t, blocks, theta, phi):
    if pure:
        return pure_avg(t, theta, phi)
    return mixed_avg(blocks, theta, phi)


@nb.njit(cache=True)
def evaluate_grid(pure, t, blocks, thetas, phis):
    out = np.empty((thetas.size, phis.size))
    for i in range(thetas.size):
        for j in range(phis.size):
            out[i, j] = evaluate(pure, t, blocks, thetas[i], phis[j])
    return out


@nb.njit(cache=True)
def maximize_nm(pure, t, blocks, x0, y0, step_x, step_y, xtol, max_iter):
    """Nelder-Mead ascent on the average capacity.

    Initial simplex ``(x0, y0)``, ``(x0 + step_x, y0)``, ``(x0, y0 + step_y)``.
    Stops when the simplex diameter is below ``xtol`` or after ``max_iter``
    iterations.  Returns ``(theta, phi, value, iterations)``.
    """
    px = np.array([x0, x0 + step_x, x0])
    py = np.array([y0, y0, y0 + step_y])
    fv = np.empty(3)
    for i in range(3):
        fv[i] = -evaluate(pure, t, blocks, px[i], py[i])
    it = 0
    while it < max_iter:
        it += 1
        order = np.argsort(fv)
        px = px[order]
        py = py[order]
        fv = fv[order]
        diam = max(math.hypot(px[0] - px[1], py[0] - py[1]),
                   math.hypot(px[0] - px[2], py[0] - py[2]),
                   math.hypot(px[1] - px[2], py[1] - py[2]))
        if diam < xtol:
            break
        cx = 0.5 * (px[0] + px[1])
        cy = 0.5 * (py[0] + py[1])
        rx = 2.0 * cx - px[2]
        ry = 2.0 * cy - py[2]
        fr = -evaluate(pure, t, blocks, rx, ry)
        if fr < fv[0]:
            ex = 3.0 * cx - 2.0 * px[2]
            ey = 3.0 * cy - 2.0 * py[2]
            fe = -evaluate(pure, t, blocks, ex, ey)
            if fe < fr:
                px[2], py[2], fv[2] = ex, ey, fe
            else:
                px[2], py[2], fv[2] = rx, ry, fr
        elif fr < fv[1]:
            px[2], py[2], fv[2] = rx, ry, fr
        else:
            if fr < fv[2]:
                kx = cx + 0.5 * (rx - cx)
                ky = cy + 0.5 * (ry - cy)
            else:
                kx = cx + 0.5 * (px[2] - cx)
                ky = cy + 0.5 * (py[2] - cy)
            fk = -evaluate(pure, t, blocks, kx, ky)
            if fk < min(fr, fv[2]):
                px[2], py[2], fv[2] = kx, ky, fk
            else:
                for i in range(1, 3):
                    px[i] = px[0] + 0.5 * (px[i] - px[0])
                    py[i] = py[0] + 0.5 * (py[i] - py[0])
                    fv[i] = -evaluate(pure, t, blocks, px[i], py[i])
    best = np.argmin(fv)
    return px[best], py[best], -fv[best], it
