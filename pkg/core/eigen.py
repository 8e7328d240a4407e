# core/eigen.py
"""
Eigenvalues of real dense matrices.

- eigenvalues_small: n <= 8 through the characteristic polynomial
  (closed-form quadratic / cubic for n <= 3, companion matrix beyond,
  roots polished by Newton steps on det(a - w I))
- eigenvalues_dense: n <= 512, balancing + Householder Hessenberg
  reduction + Francis double-shift QR

Both return complex eigenvalues of a real matrix as exact conjugate
pairs, sorted by (real part, imaginary part).
"""

import cmath
import logging
import math
from typing import List, Sequence

import numpy as np

from config.settings import (
    DENSE_MAX_DIM,
    POLISH_MAX_STEP,
    POLISH_STEPS,
    QR_ITER_PER_EIGENVALUE,
    SMALL_MAX_DIM,
)
from core.errors import DomainError, EigensolverError, NumericError
from core.types import ComplexValue

logger = logging.getLogger(__name__)

_RADIX = 2.0


def _as_square(matrix: Sequence[Sequence[float]], max_dim: int) -> np.ndarray:
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DomainError("expected a non-empty square matrix", shape=a.shape)
    if a.shape[0] > max_dim:
        raise DomainError("matrix dimension above supported bound", n=a.shape[0], max_dim=max_dim)
    if not np.all(np.isfinite(a)):
        raise NumericError("matrix has non-finite entries")
    return a


def _sorted_values(values) -> List[ComplexValue]:
    arr = np.asarray(values, dtype=complex)
    order = np.lexsort((arr.imag, arr.real))
    return [ComplexValue(float(arr[i].real), float(arr[i].imag)) for i in order]


# =========================
# Closed forms (n <= 3)
# =========================

def _quadratic_roots(b: float, c: float) -> List[complex]:
    """Roots of x^2 + b x + c."""
    half = -0.5 * b
    disc = half * half - c
    if disc >= 0.0:
        root = math.sqrt(disc)
        big = half + math.copysign(root, half) if half != 0.0 else root
        if big == 0.0:
            return [0.0, 0.0]
        return [big, c / big]
    root = math.sqrt(-disc)
    return [complex(half, root), complex(half, -root)]


def _matrix_quadratic(a: np.ndarray) -> List[complex]:
    # (a - d)^2 / 4 + bc avoids cancellation in tr^2/4 - det
    tr = a[0, 0] + a[1, 1]
    half_diff = 0.5 * (a[0, 0] - a[1, 1])
    disc = half_diff * half_diff + a[0, 1] * a[1, 0]
    mid = 0.5 * tr
    if disc >= 0.0:
        root = math.sqrt(disc)
        return [mid + root, mid - root]
    root = math.sqrt(-disc)
    return [complex(mid, root), complex(mid, -root)]


def _polish_real(coeffs: Sequence[float], x: float, steps: int = 3) -> float:
    for _ in range(steps):
        p = np.polyval(coeffs, x)
        dp = np.polyval(np.polyder(coeffs), x)
        if dp == 0.0:
            break
        step = p / dp
        if not math.isfinite(step):
            break
        x -= step
    return x


def _cubic_roots(a: float, b: float, c: float) -> List[complex]:
    """
    Roots of x^3 + a x^2 + b x + c (Cardano; trigonometric branch for three
    real roots). A complex pair is recovered by deflating the real root.
    """
    coeffs = [1.0, a, b, c]
    shift = a / 3.0
    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    disc = (0.5 * q) ** 2 + (p / 3.0) ** 3

    if p == 0.0 and q == 0.0:
        return [-shift] * 3

    if disc <= 0.0 and p < 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = max(-1.0, min(1.0, arg))
        phi = math.acos(arg) / 3.0
        roots = [m * math.cos(phi - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]
        return [_polish_real(coeffs, r) for r in roots]

    sq = math.sqrt(max(disc, 0.0))
    t = float(np.cbrt(-0.5 * q + sq) + np.cbrt(-0.5 * q - sq))
    real_root = _polish_real(coeffs, t - shift)
    # x^3 + a x^2 + b x + c = (x - r)(x^2 + (a + r) x + (b + r (a + r)))
    b2 = a + real_root
    c2 = b + real_root * b2
    return [real_root] + _quadratic_roots(b2, c2)


# =========================
# Characteristic polynomial (n >= 4)
# =========================

def characteristic_polynomial(a: np.ndarray) -> np.ndarray:
    """
    Monic characteristic polynomial coefficients, highest power first
    (Faddeev-LeVerrier recursion).
    """
    n = a.shape[0]
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    m = np.zeros_like(a)
    eye = np.eye(n)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def _companion(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    comp = np.zeros((n, n))
    comp[0, :] = -coeffs[1:]
    comp[np.arange(1, n), np.arange(n - 1)] = 1.0
    return comp


def _newton_on_matrix(a: np.ndarray, w, steps: int = POLISH_STEPS):
    """
    Newton steps on det(a - w I) evaluated through the matrix itself:
    w <- w + 1 / tr((a - w I)^-1). A step larger than POLISH_MAX_STEP
    (relative) is refused.
    """
    eye = np.eye(a.shape[0])
    for _ in range(steps):
        try:
            trace = np.trace(np.linalg.inv(a - w * eye))
        except np.linalg.LinAlgError:
            break
        if trace == 0 or not cmath.isfinite(trace):
            break
        step = 1.0 / trace
        if abs(step) > POLISH_MAX_STEP * (1.0 + abs(w)):
            break
        w = w + step
        if abs(step) <= 4.0 * np.finfo(float).eps * (1.0 + abs(w)):
            break
    return w


def _polish_roots(a: np.ndarray, roots: np.ndarray) -> np.ndarray:
    out = []
    for z in roots:
        if z.imag < 0.0:
            continue
        if z.imag == 0.0:
            out.append(complex(float(_newton_on_matrix(a, float(z.real)).real), 0.0))
        else:
            w = complex(_newton_on_matrix(a, complex(z)))
            out.extend([w, w.conjugate()])
    return np.array(out, dtype=complex)


def eigenvalues_small(matrix: Sequence[Sequence[float]]) -> List[ComplexValue]:
    a = _as_square(matrix, SMALL_MAX_DIM)
    n = a.shape[0]

    if n == 1:
        return [ComplexValue(float(a[0, 0]), 0.0)]
    if n == 2:
        return _sorted_values(_matrix_quadratic(a))
    if n == 3:
        tr = np.trace(a)
        minors = (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
                  + a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
                  + a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        det = float(np.linalg.det(a))
        return _sorted_values(_cubic_roots(-tr, minors, -det))

    coeffs = characteristic_polynomial(a)
    roots = _hqr(_hessenberg(_balance(_companion(coeffs))))
    return _sorted_values(_polish_roots(a, roots))


# =========================
# Dense path: balance -> Hessenberg -> Francis QR
# =========================

def _balance(a: np.ndarray) -> np.ndarray:
    """Diagonal similarity by powers of two equalizing row/column norms."""
    a = a.copy()
    n = a.shape[0]
    sqrdx = _RADIX * _RADIX
    done = False
    while not done:
        done = True
        for i in range(n):
            c = float(np.sum(np.abs(a[:, i])) - abs(a[i, i]))
            r = float(np.sum(np.abs(a[i, :])) - abs(a[i, i]))
            if c == 0.0 or r == 0.0:
                continue
            g = r / _RADIX
            f = 1.0
            s = c + r
            while c < g:
                f *= _RADIX
                c *= sqrdx
            g = r * _RADIX
            while c > g:
                f /= _RADIX
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                a[i, :] /= f
                a[:, i] *= f
    return a


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Householder reduction to upper Hessenberg form."""
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        norm_x = float(np.linalg.norm(x))
        if norm_x == 0.0 or norm_x == abs(x[0]) and np.all(x[1:] == 0.0):
            continue
        alpha = -math.copysign(norm_x, x[0])
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        h[k + 1:, k:] -= 2.0 * np.outer(v, v @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v)
        h[k + 2:, k] = 0.0
    return h


def _hqr(h: np.ndarray) -> np.ndarray:
    """
    Eigenvalues of an upper Hessenberg matrix by Francis double-shift QR
    with deflation on negligible subdiagonals.
    """
    a = h.copy()
    n = a.shape[0]
    wr = np.zeros(n)
    wi = np.zeros(n)

    anorm = float(np.sum(np.abs(np.triu(a, -1))))
    nn = n - 1
    t = 0.0
    total_its = 0
    max_its = QR_ITER_PER_EIGENVALUE * n

    while nn >= 0:
        its = 0
        while True:
            l = nn
            while l >= 1:
                s = abs(a[l - 1, l - 1]) + abs(a[l, l])
                if s == 0.0:
                    s = anorm
                if abs(a[l, l - 1]) + s == s:
                    a[l, l - 1] = 0.0
                    break
                l -= 1

            x = a[nn, nn]
            if l == nn:
                # one root
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
                break

            y = a[nn - 1, nn - 1]
            w = a[nn, nn - 1] * a[nn - 1, nn]
            if l == nn - 1:
                # two roots
                p = 0.5 * (y - x)
                q = p * p + w
                z = math.sqrt(abs(q))
                x += t
                if q >= 0.0:
                    z = p + math.copysign(z, p)
                    wr[nn - 1] = wr[nn] = x + z
                    if z != 0.0:
                        wr[nn] = x - w / z
                    wi[nn - 1] = wi[nn] = 0.0
                else:
                    wr[nn - 1] = wr[nn] = x + p
                    wi[nn - 1] = -z
                    wi[nn] = z
                nn -= 2
                break

            if total_its >= max_its:
                raise EigensolverError("QR iteration did not converge", n=n, iterations=total_its)
            if its and its % 10 == 0:
                # exceptional shift
                t += x
                idx = np.arange(nn + 1)
                a[idx, idx] -= x
                s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
                x = y = 0.75 * s
                w = -0.4375 * s * s
            its += 1
            total_its += 1

            m = nn - 2
            while m >= l:
                z = a[m, m]
                r = x - z
                s = y - z
                p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
                q = a[m + 1, m + 1] - z - r - s
                r = a[m + 2, m + 1]
                s = abs(p) + abs(q) + abs(r)
                p /= s
                q /= s
                r /= s
                if m == l:
                    break
                u = abs(a[m, m - 1]) * (abs(q) + abs(r))
                v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z) + abs(a[m + 1, m + 1]))
                if u + v == v:
                    break
                m -= 1

            for i in range(m + 2, nn + 1):
                a[i, i - 2] = 0.0
                if i != m + 2:
                    a[i, i - 3] = 0.0

            for k in range(m, nn):
                if k != m:
                    p = a[k, k - 1]
                    q = a[k + 1, k - 1]
                    r = a[k + 2, k - 1] if k != nn - 1 else 0.0
                    x = abs(p) + abs(q) + abs(r)
                    if x != 0.0:
                        p /= x
                        q /= x
                        r /= x
                s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
                if s == 0.0:
                    continue
                if k == m:
                    if l != m:
                        a[k, k - 1] = -a[k, k - 1]
                else:
                    a[k, k - 1] = -s * x
                p += s
                x = p / s
                y = q / s
                z = r / s
                q /= p
                r /= p

                cols = slice(k, nn + 1)
                pv = a[k, cols] + q * a[k + 1, cols]
                if k != nn - 1:
                    pv = pv + r * a[k + 2, cols]
                    a[k + 2, cols] -= pv * z
                a[k + 1, cols] -= pv * y
                a[k, cols] -= pv * x

                rows = slice(l, min(nn, k + 3) + 1)
                pv = x * a[rows, k] + y * a[rows, k + 1]
                if k != nn - 1:
                    pv = pv + z * a[rows, k + 2]
                    a[rows, k + 2] -= pv * r
                a[rows, k + 1] -= pv * q
                a[rows, k] -= pv

    logger.debug("hqr: n=%d converged after %d QR sweeps", n, total_its)
    return wr + 1j * wi


def eigenvalues_dense_array(matrix: Sequence[Sequence[float]]) -> np.ndarray:
    """Same spectrum as eigenvalues_dense, as a sorted complex ndarray."""
    a = _as_square(matrix, DENSE_MAX_DIM)
    if a.shape[0] == 1:
        return np.array([complex(a[0, 0], 0.0)])
    values = _hqr(_hessenberg(_balance(a)))
    order = np.lexsort((values.imag, values.real))
    return values[order]


def eigenvalues_dense(matrix: Sequence[Sequence[float]]) -> List[ComplexValue]:
    return [ComplexValue(float(z.real), float(z.imag)) for z in eigenvalues_dense_array(matrix)]
