"""Exact integer matrix algebra on numpy arrays.

Matrices are 2-D numpy arrays with dtype int64 (fast path) or object
(arbitrary precision).  Every routine is exact: int64 arrays are promoted
to object arrays before any operation that could overflow, so nothing
ever wraps and nothing here touches floating point.

Elimination pivots on minimal-norm entries, which keeps intermediate
growth small for the sparse signed-permutation-like matrices this package
produces.  Oversized systems are first compressed by streaming row
reduction (only the row space matters for kernels), then finished exactly.
"""

from __future__ import annotations

from math import gcd

import numpy as np

__all__ = [
    "intmat",
    "zeros",
    "identity",
    "matmul",
    "matvec",
    "kernel",
    "rank",
    "column_hnf",
    "lattice_equal",
    "solve_int",
    "smith_normal_form",
    "snf_diagonal",
    "cokernel_invariants",
    "AbelianInvariants",
    "is_unimodular",
    "lattice_index",
    "integer_inverse",
    "RowEchelonAccumulator",
]

_INT64_SAFE = 2**62


def intmat(data) -> np.ndarray:
    """2-D exact integer array from nested lists / array-likes."""
    arr = np.array(data, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    if arr.size == 0:
        return arr.astype(np.int64)
    if max(abs(int(x)) for x in arr.flat) < _INT64_SAFE:
        return arr.astype(np.int64)
    return arr


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def _maxabs(a) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def _to_object(a: np.ndarray) -> np.ndarray:
    return a.astype(object) if a.dtype != object else a


def _rdiv(v: int, a: int) -> int:
    """Nearest-integer quotient, exact for arbitrary precision."""
    q, r = divmod(v, a)
    if 2 * abs(r) > abs(a):
        q += 1
    return q


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product; falls back to object dtype when int64 could overflow."""
    a, b = np.asarray(a), np.asarray(b)
    if a.dtype != object and b.dtype != object:
        bound = _maxabs(a) * _maxabs(b) * max(1, a.shape[1])
        if bound < _INT64_SAFE:
            return a @ b
    return _to_object(a) @ _to_object(b)


def matvec(a: np.ndarray, v) -> np.ndarray:
    return matmul(a, np.asarray(v).reshape(-1, 1)).ravel()


class SwellError(RuntimeError):
    """Entry growth ran away; the caller should switch to the fraction-based
    fallback algorithm."""


class _Eliminator:
    """Unimodular column operations on B, mirrored on U when tracked."""

    SWELL_BITS = 2048

    def __init__(self, b: np.ndarray, track: bool, swell_check: bool = False):
        self.b = np.asarray(b).copy()
        self.u = identity(b.shape[1]) if track else None
        if self.b.dtype == object and self.u is not None:
            self.u = _to_object(self.u)
        self._guard = self.b.dtype != object
        self._swell_check = swell_check

    def _promote(self):
        self.b = _to_object(self.b)
        if self.u is not None:
            self.u = _to_object(self.u)
        self._guard = False

    def axpy(self, dst: int, src: int, q: int):
        """column[dst] -= q * column[src]"""
        if q == 0:
            return
        if self._guard:
            mx = max(_maxabs(self.b[:, dst]), _maxabs(self.b[:, src]))
            if self.u is not None:
                mx = max(mx, _maxabs(self.u[:, dst]), _maxabs(self.u[:, src]))
            if (abs(q) + 1) * mx >= _INT64_SAFE:
                self._promote()
        elif self._swell_check and abs(int(q)).bit_length() > self.SWELL_BITS:
            raise SwellError("quotient exceeded the swell bound")
        self.b[:, dst] -= q * self.b[:, src]
        if self.u is not None:
            self.u[:, dst] -= q * self.u[:, src]

    def swap(self, i: int, j: int):
        if i == j:
            return
        self.b[:, [i, j]] = self.b[:, [j, i]]
        if self.u is not None:
            self.u[:, [i, j]] = self.u[:, [j, i]]

    def negate(self, i: int):
        self.b[:, i] = -self.b[:, i]
        if self.u is not None:
            self.u[:, i] = -self.u[:, i]


def _pick_pivot(b: np.ndarray, col0: int, row_done: np.ndarray):
    """Minimal-norm nonzero entry of b[~row_done, col0:], or None."""
    sub = b[:, col0:]
    if sub.dtype == object:
        best = None
        for r in range(b.shape[0]):
            if row_done[r]:
                continue
            for c in range(sub.shape[1]):
                v = abs(int(sub[r, c]))
                if v and (best is None or v < best[0]):
                    best = (v, r, c + col0)
                    if v == 1:
                        return best[1], best[2]
        return None if best is None else (best[1], best[2])
    absb = np.abs(sub)
    absb[row_done, :] = 0
    if not absb.any():
        return None
    masked = np.where(absb == 0, np.iinfo(np.int64).max, absb)
    flat = int(np.argmin(masked))
    r, c = divmod(flat, sub.shape[1])
    return r, c + col0


def _column_echelon(b: np.ndarray, track: bool):
    """Reduce B by unimodular column ops to a column staircase.

    Returns (E, U, pivots) with E = B @ U (U unimodular when tracked) and
    pivots a list of (row, col); columns from len(pivots) on are zero, and
    each pivot row is zero to the right of its pivot column.
    """
    ops = _Eliminator(b, track)
    m, n = ops.b.shape
    pivots = []
    row_done = np.zeros(m, dtype=bool)
    col0 = 0
    while col0 < n:
        pick = _pick_pivot(ops.b, col0, row_done)
        if pick is None:
            break
        prow, pcol = pick
        ops.swap(col0, pcol)
        while True:
            nzc = [c for c in range(col0 + 1, n) if ops.b[prow, c] != 0]
            if not nzc:
                break
            for c in nzc:
                a = int(ops.b[prow, col0])
                v = int(ops.b[prow, c])
                q = _rdiv(v, a)
                ops.axpy(c, col0, q)
                if ops.b[prow, c] != 0:
                    ops.swap(col0, c)
        if int(ops.b[prow, col0]) < 0:
            ops.negate(col0)
        pivots.append((prow, col0))
        row_done[prow] = True
        col0 += 1
    return ops.b, (ops.u if track else None), pivots


def _row_gcd_normalize(row: np.ndarray) -> np.ndarray:
    if row.dtype == object:
        g = 0
        for x in row:
            g = gcd(g, abs(int(x)))
            if g == 1:
                return row
        return row // g if g > 1 else row
    g = int(np.gcd.reduce(np.abs(row))) if row.size else 0
    return row // g if g > 1 else row


class RowEchelonAccumulator:
    """Streaming Q-row-space reducer for huge systems of linear conditions.

    Rows may be rescaled (only the row space over Q is preserved), so the
    result is valid for kernel computations, not for row-lattice questions.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows = {}  # pivot column -> normalized row (numpy 1-D)

    def add_row(self, row) -> bool:
        """Reduce a row against the accumulated basis; returns True if it
        enlarged the row space."""
        row = np.asarray(row)
        if row.dtype != object and _maxabs(row) >= _INT64_SAFE:
            row = _to_object(row)
        row = row.copy()
        while True:
            nz = np.nonzero(row != 0)[0]
            if nz.size == 0:
                return False
            j = int(nz[0])
            piv = self.rows.get(j)
            if piv is None:
                self.rows[j] = _row_gcd_normalize(row)
                return True
            a, v = int(piv[j]), int(row[j])
            g = gcd(a, v)
            qa, qv = a // g, v // g
            if piv.dtype == object or (
                row.dtype != object
                and abs(qa) * _maxabs(row) + abs(qv) * _maxabs(piv) >= _INT64_SAFE
            ):
                row = _to_object(row)
                piv = _to_object(piv)
            row = qa * row - qv * piv
            row = _row_gcd_normalize(row)

    def add_block(self, block):
        """Reduce many rows at once: forward-eliminate every existing pivot
        column across the whole block with vectorized operations, then feed
        the survivors through the scalar path."""
        block = np.asarray(block)
        if block.size == 0:
            return
        if block.dtype == object or _maxabs(block) >= 2**40:
            for r in block:
                self.add_row(r)
            return
        block = block.astype(np.int64, copy=True)
        live = np.any(block != 0, axis=1)
        for j in sorted(self.rows):
            if not live.any():
                return
            piv = self.rows[j]
            if piv.dtype == object:
                for r in block[live]:
                    self.add_row(r)
                return
            col = block[:, j]
            sel = np.nonzero((col != 0) & live)[0]
            if sel.size == 0:
                continue
            sub = block[sel]
            a = int(piv[j])
            g = np.gcd(sub[:, j], a)
            qa = a // g
            qv = sub[:, j] // g
            piv_max = int(np.abs(piv).max())
            bound = int(np.abs(qa).max()) * int(np.abs(sub).max()) + int(np.abs(qv).max()) * piv_max
            if bound >= _INT64_SAFE:
                for r in block[live]:
                    self.add_row(r)
                return
            sub = qa[:, None] * sub - np.outer(qv, piv)
            norms = np.gcd.reduce(np.abs(sub), axis=1)
            zero = norms == 0
            norms[zero] = 1
            sub //= norms[:, None]
            block[sel] = sub
            if zero.any():
                live[sel[zero]] = False
        for r in block[live]:
            if np.any(r != 0):
                self.add_row(r)

    def matrix(self) -> np.ndarray:
        if not self.rows:
            return zeros(0, self.ncols)
        rows = [self.rows[j] for j in sorted(self.rows)]
        if any(r.dtype == object for r in rows):
            rows = [_to_object(r) for r in rows]
        return np.vstack(rows)

    @property
    def rank(self) -> int:
        return len(self.rows)


def _stacked_hnf(a: np.ndarray):
    """Column HNF of [[A], [I]] with entries kept reduced throughout.

    Returns (top, bottom, npivots): top is the m x n Hermite staircase of A
    (pivot k in column k), bottom the n x n transform with
    A @ bottom = top, and columns from npivots on have zero top part, so
    their bottom parts are a canonical basis of the integer kernel.
    Processing the bottom rows too keeps every entry small; the naive
    transform-tracking variant of this suffers enormous coefficient swell.
    """
    a = np.asarray(a)
    m, n = a.shape
    eye = identity(n)
    if a.dtype == object:
        stacked = np.vstack([a, _to_object(eye)])
    else:
        stacked = np.vstack([a, eye])
    ops = _Eliminator(stacked, track=False, swell_check=True)
    c0 = 0
    npivots = 0
    for r in range(m + n):
        if c0 >= n:
            break
        b = ops.b
        row = b[r, c0:]
        nz = np.nonzero(row != 0)[0]
        if nz.size == 0:
            continue
        ops.swap(c0, c0 + int(nz[0]))
        while True:
            row = ops.b[r, c0 + 1 :]
            nzc = np.nonzero(row != 0)[0]
            if nzc.size == 0:
                break
            for off in nzc:
                c = c0 + 1 + int(off)
                av = int(ops.b[r, c0])
                v = int(ops.b[r, c])
                ops.axpy(c, c0, _rdiv(v, av))
                if ops.b[r, c] != 0:
                    ops.swap(c0, c)
        if int(ops.b[r, c0]) < 0:
            ops.negate(c0)
        piv = int(ops.b[r, c0])
        for c in range(c0):
            q = int(ops.b[r, c]) // piv
            ops.axpy(c, c0, q)
        if r < m:
            npivots += 1
        c0 += 1
    h = ops.b
    return h[:m], h[m:], npivots


def _rref_fractions(a: np.ndarray):
    """Reduced row echelon form over Q.  Returns (pivot columns, rows as
    Fraction lists).  Entries are quotients of minors, so sizes stay
    polynomially bounded regardless of pivoting."""
    from fractions import Fraction

    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(a)]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots, rows[:r]


def _kernel_fallback(a: np.ndarray, _depth: int = 0) -> np.ndarray:
    """Saturated integer kernel via rational RREF.

    RREF entries are quotients of minors, hence polynomially bounded.  With
    pivot coordinates x_P = -C x_F and d the common denominator of C, the
    kernel is {(-C y, y) : y in Z^F, (dC) y = 0 mod d}; the congruence
    lattice is the y-projection of ker_Z[dC | d I], which the staircase
    routine handles well since the d I block caps every pivot.
    """
    from math import lcm

    a = np.asarray(a)
    m, n = a.shape
    pivots, rows = _rref_fractions(a)
    t = len(pivots)
    free = [c for c in range(n) if c not in pivots]
    f = len(free)
    if f == 0:
        return zeros(n, 0)
    cmat = [[rows[i][c] for c in free] for i in range(t)]
    d = 1
    for row in cmat:
        for x in row:
            d = lcm(d, x.denominator)
    if d == 1:
        ymat = identity(f).astype(object)
    else:
        nmat = np.array([[int(x * d) % d for x in row] for row in cmat], dtype=object)
        block = np.hstack([nmat, d * _to_object(identity(t))])
        ker = kernel(intmat(block.tolist()), _depth + 1)
        # projection onto the y-part is injective on this kernel
        ymat = _to_object(ker[:f, :])
        if rank(ymat) != f:
            raise RuntimeError("congruence lattice projection lost rank")
    out = np.zeros((n, ymat.shape[1]), dtype=object)
    for j in range(ymat.shape[1]):
        y = [int(ymat[i, j]) for i in range(f)]
        for i, c in enumerate(free):
            out[c, j] = y[i]
        for i in range(t):
            val = -sum(cmat[i][k] * y[k] for k in range(f))
            if val.denominator != 1:
                raise RuntimeError("non-integer pivot coordinate in kernel assembly")
            out[pivots[i], j] = int(val)
    return intmat(out.tolist())


def kernel(a: np.ndarray, _depth: int = 0) -> np.ndarray:
    """Canonical basis of the integer kernel {x : A x = 0} as columns
    (saturated: the kernel of an integer matrix always is)."""
    a = np.asarray(a)
    if a.size == 0:
        return identity(a.shape[1] if a.ndim == 2 else 0)
    m, n = a.shape
    if m > 2 * n:
        acc = RowEchelonAccumulator(n)
        acc.add_block(a)
        a = acc.matrix()
        if a.size == 0:
            return identity(n)
    try:
        top, bottom, npivots = _stacked_hnf(a)
        return bottom[:, npivots:].copy()
    except SwellError:
        if _depth >= 3:
            raise RuntimeError("kernel computation kept swelling through fallbacks")
        return _kernel_fallback(a, _depth)


def rank(a: np.ndarray) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    _, _, pivots = _column_echelon(a, track=False)
    return len(pivots)


def column_hnf(a: np.ndarray) -> np.ndarray:
    """Canonical column Hermite form of the column lattice.

    Rows are processed top to bottom; each pivot is positive, kills the rest
    of its row to the right, and reduces earlier columns into [0, pivot).
    Zero columns are dropped, so two matrices span the same column lattice
    iff their forms are equal.
    """
    a = np.asarray(a)
    ops = _Eliminator(a, track=False)
    m, n = ops.b.shape
    c0 = 0
    for r in range(m):
        if c0 >= n:
            break
        # move a nonzero into (r, c0) and clear the row to the right
        nzc = [c for c in range(c0, n) if ops.b[r, c] != 0]
        if not nzc:
            continue
        ops.swap(c0, nzc[0])
        while True:
            nzc = [c for c in range(c0 + 1, n) if ops.b[r, c] != 0]
            if not nzc:
                break
            for c in nzc:
                av = int(ops.b[r, c0])
                v = int(ops.b[r, c])
                q = _rdiv(v, av)
                ops.axpy(c, c0, q)
                if ops.b[r, c] != 0:
                    ops.swap(c0, c)
        if int(ops.b[r, c0]) < 0:
            ops.negate(c0)
        piv = int(ops.b[r, c0])
        for c in range(c0):
            q = int(ops.b[r, c]) // piv
            ops.axpy(c, c0, q)
        c0 += 1
    return ops.b[:, :c0].copy()


def lattice_equal(a: np.ndarray, b: np.ndarray) -> bool:
    """Do the columns of A and B span the same sublattice of Z^m?"""
    ha, hb = column_hnf(a), column_hnf(b)
    return ha.shape == hb.shape and bool(np.all(ha == hb))


def solve_int(a: np.ndarray, b: np.ndarray):
    """Integer solution X of A X = B (columnwise), or None if none exists."""
    a = np.asarray(a)
    b = np.asarray(b)
    m, n = a.shape
    try:
        top, bottom, npivots = _stacked_hnf(a)
    except SwellError:
        return _solve_fallback(a, b)
    top = _to_object(top)
    # pivot row of staircase column k: first nonzero row
    pivot_rows = []
    for k in range(npivots):
        nz = np.nonzero(top[:, k] != 0)[0]
        pivot_rows.append(int(nz[0]))
    cols = b.shape[1] if b.ndim == 2 else 1
    bb = _to_object(b.reshape(m, cols)).copy()
    x = np.zeros((n, cols), dtype=object)
    bottom = _to_object(bottom)
    for k, prow in enumerate(pivot_rows):
        piv = int(top[prow, k])
        for j in range(cols):
            v = int(bb[prow, j])
            if v % piv != 0:
                return None
            q = v // piv
            if q:
                bb[:, j] -= q * top[:, k]
                x[:, j] += q * bottom[:, k]
    if np.any(bb != 0):
        return None
    return intmat(x.tolist())


def _solve_fallback(a: np.ndarray, b: np.ndarray):
    """Columnwise integer solve through the robust kernel: b is in the
    column span iff ker[A | -b] contains a vector with last coordinate 1."""
    from math import gcd as _g

    m, n = a.shape
    cols = b.shape[1] if b.ndim == 2 else 1
    bb = _to_object(b.reshape(m, cols))
    out = np.zeros((n, cols), dtype=object)
    a_obj = _to_object(a)
    for j in range(cols):
        block = np.hstack([a_obj, -bb[:, j].reshape(-1, 1)])
        ker = _to_object(kernel(intmat(block.tolist())))
        if ker.shape[1] == 0:
            return None
        # integer combination with last coordinate 1, built by running xgcd
        # across the kernel columns
        combo = None
        g = 0
        for k in range(ker.shape[1]):
            c = int(ker[n, k])
            if c == 0:
                continue
            if combo is None:
                combo = ker[:, k].copy()
                g = c
            else:
                gg, x, y = _xgcd(g, c)
                combo = x * combo + y * ker[:, k]
                g = gg
            if abs(g) == 1:
                break
        if combo is None or abs(g) != 1:
            return None
        if g == -1:
            combo = -combo
        out[:, j] = combo[:n]
    check = matmul(a_obj, out)
    if not np.array_equal(_to_object(check), _to_object(b.reshape(m, cols))):
        return None
    return intmat(out.tolist())


def _diagonalize(a: np.ndarray, track: bool):
    """Unimodular row and column ops to diagonal form: L A R = D.

    The divisibility chain is NOT yet enforced here.
    """
    d = np.asarray(a).copy()
    m, n = d.shape
    lmat = identity(m) if track else None
    rmat = identity(n) if track else None
    if d.dtype == object and track:
        lmat, rmat = _to_object(lmat), _to_object(rmat)
    state = {"guard": d.dtype != object}

    def promote():
        nonlocal d, lmat, rmat
        d = _to_object(d)
        if track:
            lmat, rmat = _to_object(lmat), _to_object(rmat)
        state["guard"] = False

    def check(q, vecs):
        if not state["guard"]:
            return
        mx = max((_maxabs(v) for v in vecs), default=0)
        if (abs(q) + 1) * mx >= _INT64_SAFE:
            promote()

    for k in range(min(m, n)):
        while True:
            sub = d[k:, k:]
            if sub.dtype == object:
                nzpos = [(r, c) for r in range(sub.shape[0]) for c in range(sub.shape[1]) if sub[r, c] != 0]
                if not nzpos:
                    break
                pr, pc = min(nzpos, key=lambda rc: (abs(int(sub[rc[0], rc[1]])), rc))
            else:
                absb = np.abs(sub)
                if not absb.any():
                    break
                masked = np.where(absb == 0, np.iinfo(np.int64).max, absb)
                flat = int(np.argmin(masked))
                pr, pc = divmod(flat, sub.shape[1])
            pr, pc = pr + k, pc + k
            if pr != k:
                d[[k, pr]] = d[[pr, k]]
                if track:
                    lmat[[k, pr]] = lmat[[pr, k]]
            if pc != k:
                d[:, [k, pc]] = d[:, [pc, k]]
                if track:
                    rmat[:, [k, pc]] = rmat[:, [pc, k]]
            clean = True
            for r in range(k + 1, m):
                v = int(d[r, k])
                if v:
                    piv = int(d[k, k])
                    q = _rdiv(v, piv)
                    check(q, [d[r], d[k]] + ([lmat[r], lmat[k]] if track else []))
                    d[r] -= q * d[k]
                    if track:
                        lmat[r] -= q * lmat[k]
                    if d[r, k] != 0:
                        clean = False
            for c in range(k + 1, n):
                v = int(d[k, c])
                if v:
                    piv = int(d[k, k])
                    q = _rdiv(v, piv)
                    check(q, [d[:, c], d[:, k]] + ([rmat[:, c], rmat[:, k]] if track else []))
                    d[:, c] -= q * d[:, k]
                    if track:
                        rmat[:, c] -= q * rmat[:, k]
                    if d[k, c] != 0:
                        clean = False
            if clean and not np.any(d[k + 1 :, k] != 0) and not np.any(d[k, k + 1 :] != 0):
                break
        if k < min(m, n) and int(d[k, k]) < 0:
            d[k] = -d[k]
            if track:
                lmat[k] = -lmat[k]
    return d, lmat, rmat


def _xgcd(a: int, b: int):
    """(g, x, y) with g = gcd(a, b) = x a + y b."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def smith_normal_form(a: np.ndarray):
    """(D, L, R) with L A R = D; L, R unimodular; D diagonal with
    d1 | d2 | ... and di >= 0."""
    a = np.asarray(a)
    d, lmat, rmat = _diagonalize(a, track=True)
    m, n = d.shape
    k = min(m, n)
    # repairs are rare; go exact-big once so the Bezout fixes cannot overflow
    d, lmat, rmat = _to_object(d), _to_object(lmat), _to_object(rmat)
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 1, k):
                di, dj = int(d[i, i]), int(d[j, j])
                if di == 0 and dj != 0:
                    d[i, i], d[j, j] = dj, 0
                    lmat[[i, j]] = lmat[[j, i]]
                    rmat[:, [i, j]] = rmat[:, [j, i]]
                    changed = True
                elif di != 0 and dj % di != 0:
                    # replace diag(a, b) by diag(g, ab/g) via the unimodular
                    # pair L2 = [[x, y], [-b/g, a/g]], R2 = [[1, -yb/g], [1, xa/g]]
                    g, x, y = _xgcd(di, dj)
                    li = x * lmat[i] + y * lmat[j]
                    lj = (-dj // g) * lmat[i] + (di // g) * lmat[j]
                    lmat[i], lmat[j] = li, lj
                    ri = rmat[:, i] + rmat[:, j]
                    rj = (-y * dj // g) * rmat[:, i] + (x * di // g) * rmat[:, j]
                    rmat[:, i], rmat[:, j] = ri, rj
                    d[i, i], d[j, j] = g, di // g * dj
                    changed = True
    return intmat(d.tolist()), intmat(lmat.tolist()), intmat(rmat.tolist())


def snf_diagonal(a: np.ndarray) -> list:
    """Nonzero invariant factors d1 | d2 | ... without transform matrices."""
    d, _, _ = _diagonalize(np.asarray(a), track=False)
    vals = [abs(int(d[i, i])) for i in range(min(d.shape))]
    vals = [v for v in vals if v != 0]
    vals.sort()
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            g = gcd(vals[i], vals[j])
            vals[i], vals[j] = g, vals[i] // g * vals[j]
    return vals


class AbelianInvariants:
    """Finitely generated abelian group in invariant-factor form."""

    __slots__ = ("torsion", "free_rank")

    def __init__(self, torsion=(), free_rank=0):
        torsion = tuple(int(t) for t in torsion if int(t) != 1)
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValueError(f"not a divisibility chain: {torsion}")
        if any(t < 2 for t in torsion):
            raise ValueError(f"invalid torsion coefficients: {torsion}")
        self.torsion = torsion
        self.free_rank = int(free_rank)

    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def two_torsion_dim(self) -> int:
        return sum(1 for t in self.torsion if t % 2 == 0)

    def __eq__(self, other):
        return (
            isinstance(other, AbelianInvariants)
            and self.torsion == other.torsion
            and self.free_rank == other.free_rank
        )

    def __hash__(self):
        return hash((self.torsion, self.free_rank))

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"AbelianInvariants({self})"


ZERO_GROUP = AbelianInvariants()
Z2 = AbelianInvariants((2,))


def cokernel_invariants(a: np.ndarray, ambient_rank=None) -> AbelianInvariants:
    """Invariants of Z^m / column-span(A); m defaults to A's row count."""
    a = np.asarray(a)
    m = a.shape[0] if ambient_rank is None else ambient_rank
    diag = snf_diagonal(a) if a.size else []
    return AbelianInvariants([d for d in diag if d != 1], m - len(diag))


def is_unimodular(a: np.ndarray) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return snf_diagonal(a) == [1] * a.shape[0]


def lattice_index(sub: np.ndarray, ambient: np.ndarray):
    """Index of colspan(sub) in colspan(ambient); None if not contained or
    not finite."""
    x = solve_int(ambient, sub)
    if x is None:
        return None
    d = snf_diagonal(x)
    if len(d) < ambient.shape[1]:
        return None
    prod = 1
    for v in d:
        prod *= v
    return prod


def integer_inverse(a: np.ndarray):
    """Exact inverse of a unimodular matrix, or None."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return None
    return solve_int(a, identity(a.shape[0]))
