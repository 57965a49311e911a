"""Brute-force reference computations shared by the test modules.

Nothing here imports the algorithms under test beyond the plain containers
(``RootSupersystem``, symbols), so disagreements point at the library.
"""

from __future__ import annotations

import itertools
from fractions import Fraction as Q

from rootsuper.rootsys import RootSupersystem, delta, eps


def natural_weights(kind, m, n):
    """Weights (vector, parity) of the defining module in coordinates e1..em, d1..dn."""
    d = m + n

    def u(i, c=1):
        v = [Q(0)] * d
        v[i] = Q(c)
        return tuple(v)

    if kind == "sl":
        return [(u(i), 0) for i in range(m)] + [(u(m + j), 1) for j in range(n)]
    W = []
    for i in range(m):
        W += [(u(i), 0), (u(i, -1), 0)]
    if kind == "osp-odd":
        W.append((tuple([Q(0)] * d), 0))
    for j in range(n):
        W += [(u(m + j), 1), (u(m + j, -1), 1)]
    return W


def weight_roots(kind, m, n):
    """Roots of sl(m|n) (differences of weights) or osp (super-exterior square)."""
    W = natural_weights(kind, m, n)
    out = {tuple([Q(0)] * (m + n))}
    for (i, (w, p)), (j, (x, q)) in itertools.product(enumerate(W), repeat=2):
        if kind == "sl":
            if i != j:
                out.add(tuple(a - b for a, b in zip(w, x)))
        elif i < j or (i == j and p == 1):
            out.add(tuple(a + b for a, b in zip(w, x)))
    return out


def weight_system(kind, m, n):
    gram = [[Q(0)] * (m + n) for _ in range(m + n)]
    for i in range(m + n):
        gram[i][i] = Q(1) if i < m else Q(-1)
    basis = [eps(i + 1) for i in range(m)] + [delta(j + 1) for j in range(n)]
    return RootSupersystem.make(basis, gram, weight_roots(kind, m, n))


# Matches found by searching all weight systems with m <= 4, n <= 3 for an
# isomorphic root system (frozen from that search).
WEIGHT_MATCHES = {
    ("A", (3,)): ("sl", 3, 0),
    ("B", (3,)): ("osp-odd", 3, 0),
    ("C", (3,)): ("osp-even", 0, 3),
    ("D", (4,)): ("osp-even", 4, 0),
    ("BC", (2,)): ("osp-odd", 0, 2),
    ("Adot(0,T)", (0, 3)): ("sl", 3, 1),
    ("Cdot(0,T)", (0, 2)): ("osp-even", 1, 2),
    ("Cdot(0,T)", (0, 3)): ("osp-even", 1, 3),
    ("B(0,T)", (0, 2)): ("osp-odd", 0, 2),
    ("B(T,T')", (2, 2)): ("osp-odd", 2, 2),
    ("B(1,T)", (1, 1)): ("osp-odd", 1, 1),
    ("B(1,T)", (1, 3)): ("osp-odd", 1, 3),
    ("D(1,T)", (1, 3)): ("osp-even", 3, 1),
    ("B(T,1)", (3, 1)): ("osp-odd", 3, 1),
    ("D(2,T)", (2, 2)): ("osp-even", 2, 2),
    ("Adot(T,T')", (2, 3)): ("sl", 2, 3),
}

# Nonzero root counts.  Classical entries are cross-checked against
# weight_roots in the tests; the exceptional ones follow from the dimensions
# of the even and odd parts (ab(1|3): 2+18 even, 16 odd; g(3): 2+12 even,
# 14 odd; d(2,1;l): 6 even, 8 odd).
ROOT_COUNTS = {
    "A_2": 2, "A_3": 6, "A_4": 12, "B_2": 8, "B_3": 18, "B_4": 32, "C_3": 18,
    "C_4": 32, "D_4": 24, "BC_1": 4, "BC_2": 12, "BC_3": 24, "BC_4": 40,
    "Adot(0,2)": 6, "Adot(0,3)": 12, "Adot(0,4)": 20, "Cdot(0,2)": 16,
    "Cdot(0,3)": 30, "Cdot(0,4)": 48, "A(1,1)": 8, "A(2,2)": 30, "B(0,1)": 4,
    "B(0,2)": 12, "B(0,3)": 24, "B(0,4)": 40, "B(2,2)": 36, "BC(1,1)": 12,
    "BC(1,2)": 24, "BC(1,3)": 40, "BC(2,2)": 40, "C(2,2)": 32, "B(1,1)": 10,
    "B(1,2)": 22, "B(1,3)": 38, "C(1,2)": 18, "C(1,3)": 32, "D(1,3)": 26,
    "B(2,1)": 20, "B(3,1)": 34, "D(2,2)": 28, "D(2,1;1)": 14, "D(2,1;2)": 14,
    "D(2,1;-1/2)": 14, "AB(1,3)": 36, "G(1,2)": 28,
}


def supermatrix_bracket(A, B, parity):
    """[A, B] for dense homogeneous supermatrices; parity(i, j) of unit (i, j)."""
    n = len(A)

    def mul(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    def par(X):
        ps = {parity(i, j) for i in range(n) for j in range(n) if X[i][j]}
        return ps.pop() if ps else 0

    s = (-1) ** (par(A) * par(B))
    AB, BA = mul(A, B), mul(B, A)
    return [[AB[i][j] - s * BA[i][j] for j in range(n)] for i in range(n)]
