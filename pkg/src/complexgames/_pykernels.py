"""Pure-Python implementations of the pivoting kernels.

These mirror ``_ckernels.pyx`` operation for operation and are used when the
compiled extension is unavailable (or ``COMPLEXGAMES_PURE=1`` is set).
"""
import numpy as np

OPTIMAL = 0
UNBOUNDED = 1
ITERATION_LIMIT = 2


def simplex_loop(T, basis, n_cols, eps, max_iter):
    """Run Bland-rule primal simplex pivots on tableau ``T`` in place.

    ``T`` has one row per constraint followed by the reduced-cost row of a
    minimisation problem; the last column is the right-hand side. Only the
    first ``n_cols`` columns may enter the basis. A column enters when its
    reduced cost is below ``-eps``; a row may leave only if its pivot entry
    exceeds ``eps`` times the largest positive entry of the column (at least 1).

    Returns ``(status, iterations)``.
    """
    n_rows = T.shape[0] - 1
    rhs = T.shape[1] - 1
    it = 0
    while it < max_iter:
        enter = -1
        for j in range(n_cols):
            if T[n_rows, j] < -eps:
                enter = j
                break
        if enter < 0:
            return OPTIMAL, it

        # pivot threshold relative to the column scale keeps noise entries out
        tol = eps * max(1.0, float(np.max(T[:n_rows, enter], initial=0.0)))
        leave = -1
        best = 0.0
        for i in range(n_rows):
            a = T[i, enter]
            if a > tol:
                # rounding can leave a basic value slightly negative; treat it as 0
                ratio = max(T[i, rhs], 0.0) / a
                if leave < 0 or ratio < best - eps:
                    leave, best = i, ratio
                elif ratio <= best + eps and basis[i] < basis[leave]:
                    leave, best = i, ratio
        if leave < 0:
            return UNBOUNDED, it

        pivot(T, leave, enter)
        basis[leave] = enter
        it += 1
    return ITERATION_LIMIT, it


def pivot(T, r, c):
    T[r, :] /= T[r, c]
    for i in range(T.shape[0]):
        if i != r:
            f = T[i, c]
            if f != 0.0:
                T[i, :] -= f * T[r, :]
                T[i, c] = 0.0


def complex_echelon(M, eps):
    """Forward elimination with partial pivoting by modulus on augmented ``M``.

    ``M`` is a ``p x (q+1)`` complex array (coefficients then right-hand
    side), modified in place. Pivot rows are chosen by maximum modulus with
    the lowest row index winning ties; columns whose best modulus is below
    ``eps`` are left free.

    Returns the list of pivot columns (row ``k`` of ``M`` holds the ``k``-th).
    """
    p, q1 = M.shape
    q = q1 - 1
    pivots = []
    row = 0
    for col in range(q):
        if row >= p:
            break
        best = row
        best_mod = abs(M[row, col])
        for i in range(row + 1, p):
            mod = abs(M[i, col])
            if mod > best_mod:
                best, best_mod = i, mod
        if best_mod <= eps:
            continue
        if best != row:
            M[[row, best], :] = M[[best, row], :]
        piv = M[row, col]
        for i in range(row + 1, p):
            f = M[i, col] / piv
            if f != 0:
                M[i, col:] -= f * M[row, col:]
                M[i, col] = 0.0
        pivots.append(col)
        row += 1
    return pivots


def payoff_table(A, D_row, D_col):
    """Real payoffs ``Re(conj(d_i)^T A d_j)`` for all extreme-point pairs.

    ``D_row`` is ``m x P`` and ``D_col`` is ``n x Q``; returns ``P x Q``.
    """
    return np.real(D_row.conj().T @ A @ D_col)
