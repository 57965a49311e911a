"""Exact rational linear algebra on dense row lists."""

from __future__ import annotations

from fractions import Fraction as Q


def frac(x) -> Q:
    if isinstance(x, Q):
        return x
    if isinstance(x, str):
        return Q(x)
    return Q(x)


def rref(rows):
    """Reduced row echelon form. Returns (matrix, pivot columns)."""
    m = [[frac(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def det(rows) -> Q:
    m = [[frac(x) for x in r] for r in rows]
    n = len(m)
    d = Q(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Q(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def nullspace(rows, ncols=None):
    """Basis of {x : rows @ x = 0}."""
    if not rows:
        n = ncols or 0
        return [[Q(int(i == j)) for j in range(n)] for i in range(n)]
    n = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * n
        v[f] = Q(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(a_rows, b):
    """One solution x of A x = b, or None when inconsistent."""
    n = len(a_rows[0]) if a_rows else 0
    aug = [list(r) + [frac(bi)] for r, bi in zip(a_rows, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Q(0)] * n
    for r, p in enumerate(pivots):
        x[p] = red[r][n]
    return x


def inverse(rows):
    n = len(rows)
    aug = [[frac(x) for x in r] + [Q(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, c)), Q(0)) for c in bt] for r in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


class SpanCoordinates:
    """Express sparse vectors in terms of a fixed independent family.

    Vectors are dicts key -> Fraction.  Raises ValueError for vectors
    outside the span.
    """

    def __init__(self, vectors):
        self.n = len(vectors)
        keys = sorted({k for v in vectors for k in v}, key=repr)
        self.keys = keys
        self.index = {k: i for i, k in enumerate(keys)}
        # eliminate on the augmented system [v | e_i]
        rows = []
        for i, v in enumerate(vectors):
            row = [Q(0)] * (len(keys) + self.n)
            for k, x in v.items():
                row[self.index[k]] = frac(x)
            row[len(keys) + i] = Q(1)
            rows.append(row)
        self._pivot_rows = []
        work = rows
        for c in range(len(keys)):
            piv = next((r for r in work if r[c] != 0), None)
            if piv is None:
                continue
            work = [r for r in work if r is not piv]
            inv = 1 / piv[c]
            piv = [x * inv for x in piv]
            work = [[a - r[c] * b for a, b in zip(r, piv)] if r[c] != 0 else r for r in work]
            self._pivot_rows = [[a - pr[c] * b for a, b in zip(pr, piv)] if pr[c] != 0 else pr
                                for pr in self._pivot_rows]
            self._pivot_rows.append(piv)
        self.independent = len(self._pivot_rows) == self.n
        self._pivot_cols = [next(c for c in range(len(keys)) if r[c] != 0) for r in self._pivot_rows]

    def coords(self, v):
        """Coordinates c with sum c_i vectors_i = v."""
        out = [Q(0)] * self.n
        residual = {k: frac(x) for k, x in v.items() if x != 0}
        for k in residual:
            if k not in self.index:
                raise ValueError("vector outside span")
        nk = len(self.keys)
        vals = [Q(0)] * nk
        for k, x in residual.items():
            vals[self.index[k]] = x
        for row, c in zip(self._pivot_rows, self._pivot_cols):
            f = vals[c]
            if f == 0:
                continue
            for j in range(nk):
                if row[j] != 0:
                    vals[j] -= f * row[j]
            for i in range(self.n):
                if row[nk + i] != 0:
                    out[i] += f * row[nk + i]
        if any(x != 0 for x in vals):
            raise ValueError("vector outside span")
        return out
