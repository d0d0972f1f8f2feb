"""numpy implementation of the panel elimination kernel.

`panel_jordan` is the hot inner routine of GF(p) row reduction. The
compiled module `_speedups` implements the same contract; see the package
__init__ for selection. Both must pick identical pivots: for each column,
the first not-yet-pivoted row (in physical order) with a nonzero entry.
"""

import numpy as np

NAME = "pure"


def panel_jordan(E, p):
    """Full Gauss-Jordan on the int64 panel E, in place, modulo p.

    Returns (pivot_rows, pivot_cols) as parallel lists, ordered by column.
    Rows never chosen as pivots end with zeros across the whole panel;
    pivot columns are cleared in every other row, so sorting the pivot
    rows by column yields the RREF of the panel.
    """
    m, k = E.shape
    used = np.zeros(m, dtype=bool)
    rows: list[int] = []
    cols: list[int] = []
    for c in range(k):
        col = np.where(used, 0, E[:, c])
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        s = int(nz[0])
        inv = pow(int(E[s, c]), -1, p)
        if inv != 1:
            E[s] = E[s] * inv % p
        f = E[:, c].copy()
        f[s] = 0
        active = np.nonzero(f)[0]
        if active.size:
            E[active] = (E[active] - np.outer(f[active], E[s])) % p
        used[s] = True
        rows.append(s)
        cols.append(c)
    return rows, cols
