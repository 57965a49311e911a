"""Finite-dimensional Lie superalgebras given by exact structure constants.

Elements are sparse dicts ``{basis index: Fraction}``.  The bracket table
stores only nonzero brackets of basis elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property

from . import linalg
from .errors import (
    DimensionMismatch,
    NonSelfCentralizing,
    NotAntisupersymmetric,
    NotDiagonalizable,
    NotNilpotent,
    NoTriple,
    ParityViolation,
    SingularCartanForm,
)
from .rootsys import Report


def clean(v):
    return {k: x for k, x in v.items() if x != 0}


def vec_add(a, b, c=Q(1)):
    out = dict(a)
    for k, x in b.items():
        out[k] = out.get(k, Q(0)) + c * x
    return clean(out)


def vec_scale(c, a):
    return clean({k: c * x for k, x in a.items()})


class EchelonSpan:
    """Incrementally maintained echelon basis of a subspace of sparse vectors."""

    def __init__(self):
        self.rows = {}  # pivot -> normalized row

    def reduce(self, v):
        v = dict(v)
        for p in self.rows:
            x = v.get(p)
            if x:
                for k, y in self.rows[p].items():
                    v[k] = v.get(k, Q(0)) - x * y
        return clean(v)

    def add(self, v):
        r = self.reduce(v)
        if not r:
            return None
        p = min(r, key=repr)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for q, row in self.rows.items():
            x = row.get(p)
            if x:
                for k, y in r.items():
                    row[k] = row.get(k, Q(0)) - x * y
                self.rows[q] = clean(row)
        self.rows[p] = r
        return r

    def __len__(self):
        return len(self.rows)

    def contains(self, v):
        return not self.reduce(v)


@dataclass(frozen=True, eq=False)
class LieSuperalgebra:
    labels: tuple
    parities: tuple
    table: dict
    form: dict | None = None
    cartan: tuple | None = None
    meta: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.labels)

    def basis_vector(self, i):
        return {i: Q(1)}

    def bracket_basis(self, i, j):
        return self.table.get((i, j), {})

    def bracket(self, x, y):
        for v in (x, y):
            if any(not (0 <= k < self.dim) for k in v):
                raise DimensionMismatch("element outside basis range")
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.table.get((i, j), {}).items():
                    out[k] = out.get(k, Q(0)) + a * b * c
        return clean(out)

    def form_value(self, x, y):
        if self.form is None:
            raise DimensionMismatch("no form")
        s = Q(0)
        for i, a in x.items():
            for j, b in y.items():
                g = self.form.get((i, j))
                if g:
                    s += a * b * g
        return s

    def parity_of(self, v):
        ps = {self.parities[k] for k in v}
        return ps.pop() if len(ps) == 1 else None

    def ad_columns(self, x):
        """Columns of ad(x): column j is [x, b_j]."""
        return [self.bracket(x, {j: Q(1)}) for j in range(self.dim)]

    @cached_property
    def gram(self):
        n = self.dim
        return [[self.form.get((i, j), Q(0)) for j in range(n)] for i in range(n)]


def from_table(labels, parities, table, form=None, cartan=None, **meta) -> LieSuperalgebra:
    n = len(labels)
    if len(parities) != n:
        raise DimensionMismatch("labels and parities differ in length")
    tab = {}
    for (i, j), v in table.items():
        v = clean({k: Q(x) for k, x in v.items()})
        if v:
            tab[(i, j)] = v
    for i in range(n):
        for j in range(n):
            a = tab.get((i, j), {})
            b = tab.get((j, i), {})
            sign = 1 if parities[i] * parities[j] % 2 == 0 else -1
            # [x,y] = -(-1)^{|x||y|}[y,x]
            if vec_add(a, b, Q(sign)):
                raise NotAntisupersymmetric(f"basis pair ({labels[i]}, {labels[j]})")
            for k in a:
                if parities[k] != (parities[i] + parities[j]) % 2:
                    raise ParityViolation(f"[{labels[i]},{labels[j]}] has component {labels[k]}")
    frm = None
    if form is not None:
        frm = {(i, j): Q(x) for (i, j), x in form.items() if x != 0}
    return LieSuperalgebra(tuple(labels), tuple(int(p) % 2 for p in parities), tab, frm,
                           tuple(cartan) if cartan is not None else None, dict(meta))


def bracket(L, x, y):
    return L.bracket(x, y)


def jacobi_check(L) -> Report:
    n, P, T = L.dim, L.parities, L.table
    viol = []

    def br(v, c):
        out = {}
        for m, x in v.items():
            for k, y in T.get((m, c), {}).items():
                out[k] = out.get(k, Q(0)) + x * y
        return out

    count = 0
    for a in range(n):
        for b in range(n):
            ab = T.get((a, b), {})
            for c in range(n):
                count += 1
                s1 = 1 if P[a] * P[c] % 2 == 0 else -1
                s2 = 1 if P[c] * P[b] % 2 == 0 else -1
                s3 = 1 if P[b] * P[a] % 2 == 0 else -1
                tot = {}
                for sign, v in ((s1, br(ab, c)), (s2, br(T.get((c, a), {}), b)), (s3, br(T.get((b, c), {}), a))):
                    for k, x in v.items():
                        tot[k] = tot.get(k, Q(0)) + sign * x
                if any(x != 0 for x in tot.values()):
                    viol.append((L.labels[a], L.labels[b], L.labels[c]))
                    if len(viol) >= 20:
                        return Report("jacobi", tuple(viol), count)
    return Report("jacobi", tuple(viol), count)


def root_decomposition(L, cartan=None):
    """Map weight (values on the Cartan basis) -> list of basis indices."""
    cartan = tuple(cartan if cartan is not None else L.cartan)
    for a in cartan:
        for b in cartan:
            if L.bracket_basis(a, b):
                raise NotDiagonalizable("Cartan is not abelian")
    spaces = {}
    for j in range(L.dim):
        w = []
        for h in cartan:
            v = L.bracket_basis(h, j)
            if not v:
                w.append(Q(0))
                continue
            if set(v) != {j}:
                raise NotDiagonalizable(f"basis vector {L.labels[j]} is not a weight vector")
            w.append(v[j])
        spaces.setdefault(tuple(w), []).append(j)
    zero = tuple([Q(0)] * len(cartan))
    if sorted(spaces.get(zero, [])) != sorted(cartan):
        raise NonSelfCentralizing("zero weight space differs from the Cartan")
    return spaces


def weight_of(L, v, cartan=None):
    cartan = tuple(cartan if cartan is not None else L.cartan)
    spaces = root_decomposition(L, cartan)
    inv = {j: w for w, js in spaces.items() for j in js}
    ws = {inv[k] for k in v}
    if len(ws) != 1:
        raise NotDiagonalizable("element is not homogeneous for the Cartan")
    return ws.pop()


def form_check(L) -> Report:
    if L.form is None:
        return Report("form", (("missing", "no form"),))
    n, P = L.dim, L.parities
    viol = []
    G = L.gram
    for i in range(n):
        for j in range(n):
            if G[i][j] != 0 and P[i] != P[j]:
                viol.append(("even", L.labels[i], L.labels[j]))
            s = 1 if P[i] * P[j] % 2 == 0 else -1
            if G[i][j] != s * G[j][i]:
                viol.append(("supersymmetric", L.labels[i], L.labels[j]))
    for i in range(n):
        for j in range(n):
            xy = L.bracket_basis(i, j)
            for k in range(n):
                lhs = sum((c * G[m][k] for m, c in xy.items()), Q(0))
                yz = L.bracket_basis(j, k)
                rhs = sum((G[i][m] * c for m, c in yz.items()), Q(0))
                if lhs != rhs:
                    viol.append(("invariant", L.labels[i], L.labels[j], L.labels[k]))
                    if len(viol) > 20:
                        return Report("form", tuple(viol))
    if linalg.rank(G) != n:
        viol.append(("nondegenerate", f"rank {linalg.rank(G)} < {n}"))
    if L.cartan is not None:
        try:
            spaces = root_decomposition(L)
        except (NotDiagonalizable, NonSelfCentralizing) as e:
            viol.append(("grading", str(e)))
            spaces = {}
        for wa, ia in spaces.items():
            for wb, ib in spaces.items():
                if any(x + y != 0 for x, y in zip(wa, wb)):
                    for i in ia:
                        for j in ib:
                            if G[i][j] != 0:
                                viol.append(("form-zero", L.labels[i], L.labels[j]))
    return Report("form", tuple(viol), n * n * n)


def cartan_representative(L, alpha, cartan=None):
    """t_alpha in the Cartan span with (t_alpha, h) = alpha(h).

    ``alpha`` is the tuple of values on the Cartan basis elements.
    """
    cartan = tuple(cartan if cartan is not None else L.cartan)
    G = [[L.form.get((a, b), Q(0)) for b in cartan] for a in cartan]
    if linalg.det(G) == 0:
        raise SingularCartanForm("form restricted to the Cartan is singular")
    x = linalg.solve(G, [Q(v) for v in alpha])
    return clean({c: xi for c, xi in zip(cartan, x)})


def _eval_weight(alpha, cartan, h):
    return sum((alpha[cartan.index(k)] * x for k, x in h.items()), Q(0))


@dataclass(frozen=True, eq=False)
class AlgebraMap:
    """Linear map given by images of the source basis vectors."""

    source: LieSuperalgebra
    target: LieSuperalgebra
    images: tuple
    iso: bool = False

    def __call__(self, v):
        out = {}
        for i, x in v.items():
            for k, y in self.images[i].items():
                out[k] = out.get(k, Q(0)) + x * y
        return clean(out)

    def compose(self, other):
        """self after other."""
        return AlgebraMap(other.source, self.target,
                          tuple(self(img) for img in other.images), self.iso and other.iso)

    def matrix(self):
        return [[self.images[j].get(i, Q(0)) for j in range(self.source.dim)]
                for i in range(self.target.dim)]


def identity_map(L):
    return AlgebraMap(L, L, tuple({i: Q(1)} for i in range(L.dim)), True)


def _exp_ad(L, x):
    """exp(ad x) as a list of images of basis vectors."""
    n = L.dim
    images = []
    for j in range(n):
        term = {j: Q(1)}
        total = dict(term)
        k = 0
        while term:
            k += 1
            if k > n + 1:
                raise NotNilpotent("ad-series does not terminate")
            term = vec_scale(Q(1, k), L.bracket(x, term))
            total = vec_add(total, term)
        images.append(total)
    return images


def sl2_triple(L, alpha, cartan=None):
    """(e, f, h) with [e,f]=h, [h,e]=2e, [h,f]=-2f for the even weight alpha."""
    cartan = tuple(cartan if cartan is not None else L.cartan)
    spaces = root_decomposition(L, cartan)
    alpha = tuple(Q(a) for a in alpha)
    neg = tuple(-a for a in alpha)
    if alpha not in spaces or neg not in spaces:
        raise NoTriple("alpha or -alpha is not a weight")
    if len(spaces[alpha]) != 1 or len(spaces[neg]) != 1:
        raise NoTriple("root space not one-dimensional")
    ei, fi = spaces[alpha][0], spaces[neg][0]
    if L.parities[ei] != 0:
        raise NoTriple("alpha is odd")
    e, f0 = {ei: Q(1)}, {fi: Q(1)}
    u = L.bracket(e, f0)
    if any(k not in cartan for k in u):
        raise NoTriple("[e,f] not in the Cartan")
    au = _eval_weight(alpha, cartan, u)
    if au == 0:
        raise NoTriple("alpha([e,f]) = 0")
    h = vec_scale(2 / au, u)
    f = vec_scale(2 / au, f0)
    if L.bracket(h, e) != vec_scale(Q(2), e) or L.bracket(h, f) != vec_scale(Q(-2), f):
        raise NoTriple("sl2 relations fail")
    return e, f, h


@dataclass(frozen=True)
class ThetaResult:
    map: AlgebraMap
    h_alpha: dict
    report: Report


def theta_automorphism(L, alpha, cartan=None) -> ThetaResult:
    cartan = tuple(cartan if cartan is not None else L.cartan)
    e, f, h = sl2_triple(L, alpha, cartan)
    alpha = tuple(Q(a) for a in alpha)
    E = AlgebraMap(L, L, tuple(_exp_ad(L, e)))
    F = AlgebraMap(L, L, tuple(_exp_ad(L, vec_scale(Q(-1), f))))
    theta = E.compose(F).compose(E)
    theta = AlgebraMap(L, L, theta.images, True)
    viol = []
    for c in cartan:
        hv = {c: Q(1)}
        want = vec_add(hv, h, -_eval_weight(alpha, cartan, hv))
        if theta(hv) != want:
            viol.append(("cartan", L.labels[c]))
    spaces = root_decomposition(L, cartan)
    where = {j: w for w, js in spaces.items() for j in js}
    for w, js in spaces.items():
        bh = _eval_weight(w, cartan, h)
        target = tuple(x - bh * a for x, a in zip(w, alpha))
        allowed = set(spaces.get(target, []))
        for j in js:
            if not set(theta.images[j]) <= allowed:
                viol.append(("root-space", L.labels[j]))
    del where
    return ThetaResult(theta, h, Report("theta", tuple(viol)))


def verify_homomorphism(m: AlgebraMap) -> Report:
    S, T = m.source, m.target
    viol = []
    for i, img in enumerate(m.images):
        if img and T.parity_of(img) != S.parities[i]:
            viol.append(("parity", S.labels[i]))
    for i in range(S.dim):
        for j in range(S.dim):
            lhs = m(S.bracket_basis(i, j))
            rhs = T.bracket(m.images[i], m.images[j])
            if lhs != rhs:
                viol.append(("bracket", S.labels[i], S.labels[j]))
                if len(viol) > 20:
                    return Report("homomorphism", tuple(viol))
    if m.iso:
        M = m.matrix()
        if S.dim != T.dim or linalg.rank(M) != S.dim:
            viol.append(("invertible", "matrix is singular"))
    return Report("homomorphism", tuple(viol), S.dim * S.dim)


def ideal_generated(L, vectors):
    span = EchelonSpan()
    todo = []
    for v in vectors:
        r = span.add(v)
        if r is not None:
            todo.append(r)
    while todo:
        v = todo.pop()
        for j in range(L.dim):
            w = L.bracket(v, {j: Q(1)})
            if w:
                r = span.add(w)
                if r is not None:
                    todo.append(r)
    return span


def center(L, indices=None):
    """Elements of span(indices) commuting with span(indices)."""
    idx = list(range(L.dim)) if indices is None else list(indices)
    rows = []
    for f in idx:
        cols = [L.bracket({e: Q(1)}, {f: Q(1)}) for e in idx]
        keys = sorted({k for c in cols for k in c})
        for k in keys:
            rows.append([c.get(k, Q(0)) for c in cols])
    ns = linalg.nullspace(rows, len(idx)) if rows else linalg.nullspace([], len(idx))
    return [clean({idx[i]: x for i, x in enumerate(v)}) for v in ns]


def center_of_even_part(L):
    return center(L, [i for i in range(L.dim) if L.parities[i] == 0])


def _multiplication_algebra_full(L):
    n = L.dim
    gens = []
    for i in range(n):
        cols = L.ad_columns({i: Q(1)})
        gens.append({(r, c): x for c, col in enumerate(cols) for r, x in col.items()})
    span = EchelonSpan()
    ident = {(i, i): Q(1) for i in range(n)}
    todo = [span.add(ident)]
    for g in gens:
        r = span.add(g)
        if r is not None:
            todo.append(r)

    def mul(a, b):
        out = {}
        brow = {}
        for (r, c), x in b.items():
            brow.setdefault(r, []).append((c, x))
        for (r, k), x in a.items():
            for c, y in brow.get(k, ()):
                out[(r, c)] = out.get((r, c), Q(0)) + x * y
        return clean(out)

    while todo and len(span) < n * n:
        a = todo.pop()
        for g in gens:
            r = span.add(mul(g, a))
            if r is not None:
                todo.append(r)
    return len(span) == n * n


def is_simple(L) -> bool:
    """Simplicity test.

    With a nondegenerate invariant form and a diagonalizable Cartan, a
    nonzero ideal meets some root space, hence contains a Cartan element
    t_alpha and then a whole root space; so it suffices that the center is
    zero, the roots separate the Cartan, and every root space generates L.
    Without that structure the adjoint module is tested for absolute
    irreducibility (multiplication algebra equals End(L)).
    """
    n = L.dim
    if n == 0:
        return False
    if all(not v for v in L.table.values()):
        return False
    if L.form is not None and L.cartan is not None:
        if linalg.rank(L.gram) != n:
            return False
        try:
            spaces = root_decomposition(L)
        except (NotDiagonalizable, NonSelfCentralizing):
            return _multiplication_algebra_full(L)
        if center(L):
            return False
        weights = [w for w in spaces if any(w)]
        if not weights or linalg.rank(weights) != len(L.cartan):
            return False
        for w in weights:
            if len(ideal_generated(L, [{j: Q(1)} for j in spaces[w]])) != n:
                return False
        return True
    return _multiplication_algebra_full(L)
