# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pivoting kernels. See ``_pykernels`` for the reference semantics."""
import numpy as np

cdef extern from "complex.h" nogil:
    double cabs(double complex)

cdef enum:
    OPTIMAL = 0
    UNBOUNDED = 1
    ITERATION_LIMIT = 2


cdef void _pivot(double[:, ::1] T, Py_ssize_t r, Py_ssize_t c) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef Py_ssize_t n_r = T.shape[0], n_c = T.shape[1]
    cdef double piv = T[r, c], f
    for j in range(n_c):
        T[r, j] /= piv
    for i in range(n_r):
        if i == r:
            continue
        f = T[i, c]
        if f != 0.0:
            for j in range(n_c):
                T[i, j] -= f * T[r, j]
            T[i, c] = 0.0


def pivot(double[:, ::1] T, Py_ssize_t r, Py_ssize_t c):
    _pivot(T, r, c)


def simplex_loop(double[:, ::1] T, long[::1] basis, Py_ssize_t n_cols,
                 double eps, long max_iter):
    cdef Py_ssize_t n_rows = T.shape[0] - 1
    cdef Py_ssize_t rhs = T.shape[1] - 1
    cdef Py_ssize_t i, j, enter, leave
    cdef double a, ratio, piv_tol, best = 0.0
    cdef long it = 0
    cdef int status = OPTIMAL
    with nogil:
        while it < max_iter:
            enter = -1
            for j in range(n_cols):
                if T[n_rows, j] < -eps:
                    enter = j
                    break
            if enter < 0:
                break
            piv_tol = 1.0
            for i in range(n_rows):
                if T[i, enter] > piv_tol:
                    piv_tol = T[i, enter]
            piv_tol = piv_tol * eps
            leave = -1
            for i in range(n_rows):
                a = T[i, enter]
                if a > piv_tol:
                    ratio = T[i, rhs] / a if T[i, rhs] > 0.0 else 0.0
                    if leave < 0 or ratio < best - eps:
                        leave = i
                        best = ratio
                    elif ratio <= best + eps and basis[i] < basis[leave]:
                        leave = i
                        best = ratio
            if leave < 0:
                status = UNBOUNDED
                break
            _pivot(T, leave, enter)
            basis[leave] = enter
            it += 1
    if status == OPTIMAL and it >= max_iter:
        status = ITERATION_LIMIT
    return int(status), it


def complex_echelon(double complex[:, ::1] M, double eps):
    cdef Py_ssize_t p = M.shape[0], q = M.shape[1] - 1
    cdef Py_ssize_t row = 0, col, i, j, best
    cdef double best_mod, mod
    cdef double complex piv, f, tmp
    pivots = []
    for col in range(q):
        if row >= p:
            break
        best = row
        best_mod = cabs(M[row, col])
        for i in range(row + 1, p):
            mod = cabs(M[i, col])
            if mod > best_mod:
                best = i
                best_mod = mod
        if best_mod <= eps:
            continue
        if best != row:
            for j in range(q + 1):
                tmp = M[row, j]
                M[row, j] = M[best, j]
                M[best, j] = tmp
        piv = M[row, col]
        for i in range(row + 1, p):
            f = M[i, col] / piv
            if f != 0:
                for j in range(col, q + 1):
                    M[i, j] = M[i, j] - f * M[row, j]
                M[i, col] = 0
        pivots.append(col)
        row += 1
    return pivots


def payoff_table(A, D_row, D_col):
    cdef const double complex[:, ::1] a = np.ascontiguousarray(A, dtype=np.complex128)
    cdef const double complex[:, ::1] dr = np.ascontiguousarray(D_row, dtype=np.complex128)
    cdef const double complex[:, ::1] dc = np.ascontiguousarray(D_col, dtype=np.complex128)
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t P = dr.shape[1], Q = dc.shape[1]
    cdef Py_ssize_t i, j, r, s
    cdef double complex acc
    out = np.zeros((P, Q), dtype=np.float64)
    cdef double[:, ::1] o = out
    # AD[r, j] = (A @ D_col)[r, j]
    AD = np.zeros((m, Q), dtype=np.complex128)
    cdef double complex[:, ::1] ad_v = AD
    for r in range(m):
        for j in range(Q):
            acc = 0
            for s in range(n):
                acc = acc + a[r, s] * dc[s, j]
            ad_v[r, j] = acc
    for i in range(P):
        for j in range(Q):
            acc = 0
            for r in range(m):
                acc = acc + dr[r, i].conjugate() * ad_v[r, j]
            o[i, j] = acc.real
    return out
