"""Integer-preserving simplex kernels, pure-Python version.

The tableau is a list of rows of Python ints sharing one positive
denominator ``det``.  Entry ``rows[i][j] / det`` is the rational value.
The compiled module ``_ckernels`` exports the same two functions.
"""


def pivot(rows, r, s, det):
    """Pivot ``rows`` in place on entry ``(r, s)`` and return the new denominator.

    Uses the fraction-free update ``(a*p - f*b) // det``; the division is
    exact because every entry stays a minor of the original integer matrix.
    """
    prow = rows[r]
    p = prow[s]
    width = len(prow)
    for i in range(len(rows)):
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


def leaving_row(rows, s, rhs, basis, nrows):
    """Bland ratio test on column ``s``.

    Returns the index of the row with the smallest ratio ``rhs / a`` over
    positive entries ``a`` (ties go to the smallest basic variable), or -1
    when the column has no positive entry.
    """
    best = -1
    best_num = 0
    best_den = 1
    for i in range(nrows):
        a = rows[i][s]
        if a > 0:
            num = rows[i][rhs]
            if best < 0:
                best, best_num, best_den = i, num, a
                continue
            lhs = num * best_den
            other = best_num * a
            if lhs < other or (lhs == other and basis[i] < basis[best]):
                best, best_num, best_den = i, num, a
    return best
