"""Pure-Python fallback for the compiled F_p elimination kernel."""
import numpy as np


def rref_modp(a, p):
    """Reduced row echelon form of ``a`` over F_p; returns ``(R, pivots)``."""
    m = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = m.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        if col.any():
            m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots
