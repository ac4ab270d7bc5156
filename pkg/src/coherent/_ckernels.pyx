# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer-preserving simplex kernels (same contract as _kernels_py)."""


def pivot(list rows, Py_ssize_t r, Py_ssize_t s, object det):
    cdef list prow = rows[r]
    cdef list row
    cdef object p = prow[s]
    cdef object f, a, b
    cdef Py_ssize_t width = len(prow)
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j
    for i in range(n):
        if i == r:
            continue
        row = rows[i]
        f = row[s]
        if f:
            for j in range(width):
                b = prow[j]
                a = row[j]
                if a or b:
                    row[j] = (a * p - f * b) // det
        else:
            for j in range(width):
                a = row[j]
                if a:
                    row[j] = a * p // det
    return p


def leaving_row(list rows, Py_ssize_t s, Py_ssize_t rhs, list basis, Py_ssize_t nrows):
    cdef Py_ssize_t best = -1
    cdef Py_ssize_t i
    cdef object a, num, lhs, other
    cdef object best_num = 0
    cdef object best_den = 1
    for i in range(nrows):
        a = (<list>rows[i])[s]
        if a > 0:
            num = (<list>rows[i])[rhs]
            if best < 0:
                best = i
                best_num = num
                best_den = a
                continue
            lhs = num * best_den
            other = best_num * a
            if lhs < other or (lhs == other and basis[i] < basis[best]):
                best = i
                best_num = num
                best_den = a
    return best
