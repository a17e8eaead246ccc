"""Pure numpy versions of the compiled kernels, with identical signatures."""
from __future__ import annotations

import numpy as np

_CHUNK = 1 << 22


def character_sum(s, r, m, n, w):
    s = np.asarray(s, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    m = np.asarray(m, dtype=np.float64)
    n = np.asarray(n, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    out = np.empty(s.shape[0], dtype=np.complex128)
    step = max(1, _CHUNK // max(1, m.shape[0]))
    for lo in range(0, s.shape[0], step):
        ph = 2.0 * np.pi * (np.outer(s[lo:lo + step], n) - np.outer(r[lo:lo + step], m))
        out[lo:lo + step] = np.cos(ph) @ w + 1j * (np.sin(ph) @ w)
    return out


def _partners(m, n, lookup, m_off, n_off, i1):
    m3 = -m[i1] - m + m_off
    n3 = -n[i1] - n + n_off
    ok = (m3 >= 0) & (m3 < lookup.shape[0]) & (n3 >= 0) & (n3 < lookup.shape[1])
    i2 = np.nonzero(ok)[0]
    i3 = lookup[m3[ok], n3[ok]]
    keep = i3 > i2
    return i2[keep], i3[keep]


def k3_direct_exact(m, n, norm2, gbar, lookup, m_off, n_off, phx, kx, phy, ky, phz, kz, den, table):
    acc = 0j
    for i1 in range(m.shape[0]):
        i2, i3 = _partners(m, n, lookup, m_off, n_off, i1)
        if i2.size == 0:
            continue
        w = 1.0 / (norm2[i1] * norm2[i2] * norm2[i3])
        diff = gbar[i3] - gbar[i2]
        p23 = np.zeros(i2.size, dtype=np.complex128)
        p32 = np.zeros(i2.size, dtype=np.complex128)
        for a in range(kx.shape[0]):
            p1 = phx[a, i1]
            for b in range(ky.shape[0]):
                for c in range(kz.shape[0]):
                    kk = float(kx[a] * ky[b] * kz[c])
                    p23 += kk * table[(p1 + phy[b, i2] + phz[c, i3]) % den]
                    p32 += kk * table[(p1 + phy[b, i3] + phz[c, i2]) % den]
        acc += np.sum(w * diff * (p23 - p32))
    return complex(acc)


def k3_direct_float(m, n, norm2, gbar, lookup, m_off, n_off, dx, dy, dz):
    acc = 0j
    for i1 in range(m.shape[0]):
        i2, i3 = _partners(m, n, lookup, m_off, n_off, i1)
        if i2.size == 0:
            continue
        w = 1.0 / (norm2[i1] * norm2[i2] * norm2[i3])
        acc += np.sum(w * (gbar[i3] - gbar[i2]) * dx[i1] * (dy[i2] * dz[i3] - dy[i3] * dz[i2]))
    return complex(acc)
