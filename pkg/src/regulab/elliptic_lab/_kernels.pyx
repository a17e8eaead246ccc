# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled lattice-sum kernels; the pure numpy twins live in _fallback.py."""
import numpy as np

from libc.math cimport cos, sin, M_PI


def character_sum(double[::1] s, double[::1] r, long long[::1] m, long long[::1] n, double[::1] w):
    """out[i] = sum_j w[j] exp(2 pi i (s[i] n[j] - r[i] m[j])), summed in plan order.

    Per point, exp(2 pi i s n) and exp(-2 pi i r m) are tabulated over the
    index ranges, so each term costs one complex product instead of two trig calls.
    """
    cdef Py_ssize_t P = s.shape[0]
    cdef Py_ssize_t G = m.shape[0]
    cdef Py_ssize_t i, j, k
    cdef long long mo = 0, no = 0
    for j in range(G):
        if abs(m[j]) > mo:
            mo = abs(m[j])
        if abs(n[j]) > no:
            no = abs(n[j])
    cdef double[::1] cn = np.empty(2 * no + 1)
    cdef double[::1] sn = np.empty(2 * no + 1)
    cdef double[::1] cm = np.empty(2 * mo + 1)
    cdef double[::1] sm = np.empty(2 * mo + 1)
    cdef double ph, re, im, a, b, c, d, si, ri
    out = np.empty(P, dtype=np.complex128)
    cdef double complex[::1] o = out
    for i in range(P):
        si = s[i]
        ri = r[i]
        for k in range(2 * no + 1):
            ph = 2.0 * M_PI * si * (k - no)
            cn[k] = cos(ph)
            sn[k] = sin(ph)
        for k in range(2 * mo + 1):
            ph = -2.0 * M_PI * ri * (k - mo)
            cm[k] = cos(ph)
            sm[k] = sin(ph)
        re = 0.0
        im = 0.0
        for j in range(G):
            a = cn[n[j] + no]
            b = sn[n[j] + no]
            c = cm[m[j] + mo]
            d = sm[m[j] + mo]
            re += w[j] * (a * c - b * d)
            im += w[j] * (a * d + b * c)
        o[i] = re + 1j * im
    return out


def k3_direct_exact(
    long long[::1] m,
    long long[::1] n,
    double[::1] norm2,
    double complex[::1] gbar,
    long long[:, ::1] lookup,
    long long m_off,
    long long n_off,
    long long[:, ::1] phx,
    long long[::1] kx,
    long long[:, ::1] phy,
    long long[::1] ky,
    long long[:, ::1] phz,
    long long[::1] kz,
    long long den,
    double complex[::1] table,
):
    """Constrained triple sum with integer phases; (gamma2, gamma3) swaps are summed as pairs."""
    cdef Py_ssize_t G = m.shape[0]
    cdef Py_ssize_t ax = kx.shape[0], ay = ky.shape[0], az = kz.shape[0]
    cdef Py_ssize_t i1, i2, i3, a, b, c
    cdef long long m3, n3, p1, p2, p3, q2, q3
    cdef Py_ssize_t lm = lookup.shape[0], ln = lookup.shape[1]
    cdef double complex acc = 0.0, p23, p32, diff
    cdef double w, kk
    for i1 in range(G):
        for i2 in range(G):
            m3 = -m[i1] - m[i2] + m_off
            n3 = -n[i1] - n[i2] + n_off
            if m3 < 0 or m3 >= lm or n3 < 0 or n3 >= ln:
                continue
            i3 = lookup[m3, n3]
            if i3 <= i2:
                continue
            w = 1.0 / (norm2[i1] * norm2[i2] * norm2[i3])
            diff = gbar[i3] - gbar[i2]
            p23 = 0.0
            p32 = 0.0
            for a in range(ax):
                p1 = phx[a, i1]
                for b in range(ay):
                    p2 = phy[b, i2]
                    q2 = phy[b, i3]
                    for c in range(az):
                        kk = <double>(kx[a] * ky[b] * kz[c])
                        p3 = (p1 + p2 + phz[c, i3]) % den
                        q3 = (p1 + q2 + phz[c, i2]) % den
                        p23 = p23 + kk * table[p3]
                        p32 = p32 + kk * table[q3]
            acc = acc + w * diff * (p23 - p32)
    return complex(acc)


def k3_direct_float(
    long long[::1] m,
    long long[::1] n,
    double[::1] norm2,
    double complex[::1] gbar,
    long long[:, ::1] lookup,
    long long m_off,
    long long n_off,
    double complex[::1] dx,
    double complex[::1] dy,
    double complex[::1] dz,
):
    """Constrained triple sum from precomputed divisor characters."""
    cdef Py_ssize_t G = m.shape[0]
    cdef Py_ssize_t i1, i2, i3
    cdef long long m3, n3
    cdef Py_ssize_t lm = lookup.shape[0], ln = lookup.shape[1]
    cdef double complex acc = 0.0
    cdef double w
    for i1 in range(G):
        for i2 in range(G):
            m3 = -m[i1] - m[i2] + m_off
            n3 = -n[i1] - n[i2] + n_off
            if m3 < 0 or m3 >= lm or n3 < 0 or n3 >= ln:
                continue
            i3 = lookup[m3, n3]
            if i3 <= i2:
                continue
            w = 1.0 / (norm2[i1] * norm2[i2] * norm2[i3])
            acc = acc + w * (gbar[i3] - gbar[i2]) * dx[i1] * (dy[i2] * dz[i3] - dy[i3] * dz[i2])
    return complex(acc)
