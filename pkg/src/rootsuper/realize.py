"""Matrix models of osp(2m+1|2n), osp(2m|2n) and sl(m|n) with exact arithmetic.

Matrices are sparse dicts ``{(row, col): Fraction}`` over :class:`SuperIndex`
keys. Printed root-vector rows are checked against the defining relation and
the weight equation; a failing row is replaced by the spanning vector of the
actual weight space and the substitution is recorded in ``model.corrections``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property
from typing import NamedTuple

from . import linalg
from .chevalley import ConstantsTable, Setup, TotalOrder, _pair_classes, symbol_order
from .errors import (
    BadIndexSets,
    CongruenceFails,
    DimensionMismatch,
    EmptyOddPart,
    NotClosed,
    NotSubset,
    TypeA11Unsupported,
    ZeroBracket,
)
from .rootsys import (
    RootSupersystem,
    Symbol,
    delta,
    eps,
    integral_base,
    is_zero,
    lattice_coords,
    recognize,
    vadd,
    vneg,
)
from .superalg import AlgebraMap, from_table, verify_homomorphism


class SuperIndex(NamedTuple):
    """Row/column label: ``tag`` is 'zero', 'plain' or 'bar'; ``block`` is 'I' or 'J'."""

    tag: str
    block: str
    i: int

    @property
    def parity(self):
        return 1 if self.block == "J" else 0

    def __str__(self):
        if self.tag == "zero":
            return "0"
        name = ("i" if self.block == "I" else "j") + str(self.i)
        return name + ("~" if self.tag == "bar" else "")


ZERO = SuperIndex("zero", "I", 0)


def plain(block, i):
    return SuperIndex("plain", block, i)


def bar(block, i):
    return SuperIndex("bar", block, i)


def e(r, s, c=1):
    return {(r, s): Q(c)}


# ---------------------------------------------------------------- matrices

def madd(*terms):
    """Sum of (coefficient, matrix) pairs or bare matrices."""
    out = {}
    for t in terms:
        c, m = t if isinstance(t, tuple) else (Q(1), t)
        for k, v in m.items():
            out[k] = out.get(k, Q(0)) + c * v
    return {k: v for k, v in out.items() if v}


def mscale(c, m):
    return {k: c * v for k, v in m.items() if c * v}


def mmul(A, B):
    rows = {}
    for (i, k), a in B.items():
        rows.setdefault(i, []).append((k, a))
    out = {}
    for (i, j), a in A.items():
        for k, b in rows.get(j, ()):
            out[(i, k)] = out.get((i, k), Q(0)) + a * b
    return {k: v for k, v in out.items() if v}


def mparity(A):
    ps = {(r.parity + s.parity) % 2 for (r, s) in A}
    if len(ps) > 1:
        raise DimensionMismatch("inhomogeneous matrix")
    return ps.pop() if ps else 0


def supertranspose(A):
    """(A^st)_{ij} = -a_{ji} when |i| = 0 and |j| = 1, else a_{ji}."""
    out = {}
    for (r, s), a in A.items():
        # entry lands at (s, r)
        sign = -1 if (s.parity == 0 and r.parity == 1) else 1
        out[(s, r)] = sign * a
    return out


def sbracket(A, B):
    pa, pb = mparity(A), mparity(B)
    sign = -1 if pa * pb % 2 else 1
    return madd(mmul(A, B), (Q(-sign), mmul(B, A)))


def supertrace(A):
    return sum(((-1) ** r.parity * a for (r, s), a in A.items() if r == s), Q(0))


@dataclass(frozen=True)
class QForm:
    matrix: dict
    kind: str
    indices: tuple


def _indices(kind, m, n):
    idx = []
    if kind == "osp-odd":
        idx.append(ZERO)
    idx += [plain("I", i) for i in range(1, m + 1)] + [bar("I", i) for i in range(1, m + 1)]
    idx += [plain("J", j) for j in range(1, n + 1)] + [bar("J", j) for j in range(1, n + 1)]
    return tuple(idx)


def osp_form(kind, m, n) -> QForm:
    M = {}
    if kind == "osp-odd":
        M[(ZERO, ZERO)] = Q(-2)
    for i in range(1, m + 1):
        M[(plain("I", i), bar("I", i))] = Q(1)
        M[(bar("I", i), plain("I", i))] = Q(1)
    for j in range(1, n + 1):
        M[(plain("J", j), bar("J", j))] = Q(1)
        M[(bar("J", j), plain("J", j))] = Q(-1)
    return QForm(M, kind, _indices(kind, m, n))


def in_osp(X, Qf):
    Qm = Qf.matrix if isinstance(Qf, QForm) else Qf
    return not madd(mmul(supertranspose(X), Qm), mmul(Qm, X))


# ---------------------------------------------------------------- models

def _weight_symbol(kind, idx):
    """Weight of a row index: e_{a,b} has weight w(a) - w(b)."""
    if idx.tag == "zero":
        return {}
    s = eps(idx.i) if idx.block == "I" else delta(idx.i)
    if kind == "sl":
        # epsilon_i(D) = D_ii, delta_p(D) = -D_pp
        return {s: Q(1) if idx.block == "I" else Q(-1)}
    return {s: Q(1) if idx.tag == "plain" else Q(-1)}


def _osp_rows(kind, m, n):
    """Printed root-vector rows: (name, root as symbol dict, matrix)."""
    I, J = range(1, m + 1), range(1, n + 1)
    r_, rb = (lambda r: plain("I", r)), (lambda r: bar("I", r))
    p_, pb = (lambda p: plain("J", p)), (lambda p: bar("J", p))
    rows = []
    for r in I:
        for s in I:
            if r == s:
                continue
            if r < s:
                rows.append(("er+es", {eps(r): 1, eps(s): 1}, madd(e(r_(r), rb(s)), (Q(-1), e(r_(s), rb(r))))))
                rows.append(("-er-es", {eps(r): -1, eps(s): -1}, madd(e(rb(r), r_(s)), (Q(-1), e(rb(s), r_(r))))))
            rows.append(("er-es", {eps(r): 1, eps(s): -1}, madd(e(r_(r), r_(s)), (Q(-1), e(rb(s), rb(r))))))
    for p in J:
        for q in J:
            if p == q:
                continue
            if p < q:
                # printed as e_{p,q~} + e_{p,q~}
                rows.append(("dp+dq", {delta(p): 1, delta(q): 1}, madd(e(p_(p), pb(q)), e(p_(p), pb(q)))))
                rows.append(("-dp-dq", {delta(p): -1, delta(q): -1}, madd(e(pb(p), p_(q)), e(pb(q), p_(p)))))
            rows.append(("dp-dq", {delta(p): 1, delta(q): -1}, madd(e(p_(p), p_(q)), (Q(-1), e(pb(q), pb(p))))))
        rows.append(("2dp", {delta(p): 2}, e(p_(p), pb(p))))
        rows.append(("-2dp", {delta(p): -2}, e(pb(p), p_(p))))
    for r in I:
        for p in J:
            rows.append(("er+dp", {eps(r): 1, delta(p): 1}, madd(e(r_(r), pb(p)), e(p_(p), rb(r)))))
            rows.append(("-er-dp", {eps(r): -1, delta(p): -1}, madd(e(rb(r), p_(p)), (Q(-1), e(pb(p), r_(r))))))
            rows.append(("er-dp", {eps(r): 1, delta(p): -1}, madd(e(r_(r), p_(p)), (Q(-1), e(pb(p), rb(r))))))
            rows.append(("-er+dp", {eps(r): -1, delta(p): 1}, madd(e(rb(r), pb(p)), e(p_(p), r_(r)))))
    if kind == "osp-odd":
        for r in I:
            rows.append(("er", {eps(r): 1}, madd(e(ZERO, rb(r)), e(r_(r), ZERO, 2))))
            rows.append(("-er", {eps(r): -1}, madd(e(ZERO, r_(r)), e(rb(r), ZERO, 2))))
        for p in J:
            rows.append(("dp", {delta(p): 1}, madd(e(ZERO, pb(p)), e(p_(p), ZERO, -2))))
            rows.append(("-dp", {delta(p): -1}, madd(e(ZERO, p_(p)), e(pb(p), ZERO, 2))))
    return rows


def _sl_rows(m, n):
    I, J = range(1, m + 1), range(1, n + 1)
    rows = []
    for i in I:
        for j in I:
            if i != j:
                rows.append(("ei-ej", {eps(i): 1, eps(j): -1}, e(plain("I", i), plain("I", j))))
    for p in J:
        for q in J:
            if p != q:
                rows.append(("dp-dq", {delta(p): 1, delta(q): -1}, e(plain("J", q), plain("J", p))))
    for i in I:
        for p in J:
            rows.append(("ei+dp", {eps(i): 1, delta(p): 1}, e(plain("I", i), plain("J", p))))
            rows.append(("-ei-dp", {eps(i): -1, delta(p): -1}, e(plain("J", p), plain("I", i))))
    return rows


@dataclass(frozen=True, eq=False)
class MatrixModel:
    kind: str
    m: int
    n: int
    indices: tuple
    symbols: tuple
    cartan: tuple
    cartan_labels: tuple
    root_vectors: dict
    qform: QForm | None
    quotient: bool
    corrections: tuple = ()
    gram: tuple = ()

    @property
    def name(self):
        if self.kind == "osp-odd":
            return f"osp({2 * self.m + 1},{2 * self.n})"
        if self.kind == "osp-even":
            return f"osp({2 * self.m},{2 * self.n})"
        return f"sl({self.m}|{self.n})"

    def reduce(self, X):
        """Canonical representative (modulo the identity for sl(l|l))."""
        if not self.quotient:
            return X
        j0 = plain("J", 1)
        c = X.get((j0, j0), Q(0))
        if not c:
            return X
        return madd(X, (-c, {(i, i): Q(1) for i in self.indices}))

    def weight_value(self, coords, D):
        """Value of the functional with symbol coordinates on diagonal D."""
        out = Q(0)
        for s, c in zip(self.symbols, coords):
            if not c:
                continue
            if s.kind == "eps":
                out += c * D.get((plain("I", s.index), plain("I", s.index)), Q(0))
            else:
                d = D.get((plain("J", s.index), plain("J", s.index)), Q(0))
                out += c * (-d if self.kind == "sl" else d)
        return out

    def vec(self, sym):
        v = [Q(0)] * len(self.symbols)
        pos = {s: i for i, s in enumerate(self.symbols)}
        for s, c in sym.items():
            v[pos[s]] += Q(c)
        return self.project(tuple(v))

    def project(self, v):
        if not self.quotient:
            return v
        c = sum(v, Q(0)) / len(v)
        return tuple(x - c for x in v)

    @cached_property
    def rootsys(self) -> RootSupersystem:
        return RootSupersystem.make(self.symbols, self.gram, list(self.root_vectors), None,
                                    model=self.name)

    @cached_property
    def cartan_gram(self):
        return [[supertrace(mmul(a, b)) for b in self.cartan] for a in self.cartan]

    def t_vector(self, alpha):
        """Cartan element t with str(t D) = alpha(D) for all Cartan D."""
        rhs = [self.weight_value(alpha, D) for D in self.cartan]
        x = linalg.solve(self.cartan_gram, rhs)
        if x is None:
            raise DimensionMismatch("degenerate Cartan form")
        return madd(*[(c, D) for c, D in zip(x, self.cartan) if c])

    @cached_property
    def basis(self):
        """(label, parity, matrix, weight) in canonical order: Cartan then roots."""
        out = [(lab, 0, D, None) for lab, D in zip(self.cartan_labels, self.cartan)]
        R = self.rootsys
        for a in R.nonzero:
            vs = self.root_vectors[a]
            for k, X in enumerate(vs):
                lab = R.label(a) + (f"#{k + 1}" if len(vs) > 1 else "")
                out.append((lab, mparity(X), X, a))
        return tuple(out)

    def coords(self, X):
        """Coordinates of X in ``basis``; raises NotClosed when X is outside."""
        X = self.reduce(X)
        groups = {}
        for (r, s), c in X.items():
            w = self.project(tuple(x - y for x, y in zip(self.vec(_weight_symbol(self.kind, r)),
                                                         self.vec(_weight_symbol(self.kind, s)))))
            groups.setdefault(w, {})[(r, s)] = c
        out = {}
        for w, part in groups.items():
            if is_zero(w):
                slots = list(range(len(self.cartan)))
            else:
                slots = self._slots.get(w)
                if slots is None:
                    raise NotClosed(f"component of weight {w} is not a root")
            keys = sorted({k for i in slots for k in self.basis[i][2]} | set(part))
            A = [[self.basis[i][2].get(k, Q(0)) for i in slots] for k in keys]
            b = [part.get(k, Q(0)) for k in keys]
            x = linalg.solve(A, b)
            if x is None:
                raise NotClosed("matrix outside the model")
            for i, c in zip(slots, x):
                if c:
                    out[i] = c
        return out

    @cached_property
    def _zero(self):
        return tuple([Q(0)] * len(self.symbols))

    @cached_property
    def _slots(self):
        slots = {}
        for i, (_, _, _, w) in enumerate(self.basis):
            if w is not None:
                slots.setdefault(w, []).append(i)
        return slots

    def matrix_of(self, v):
        return madd(*[(c, self.basis[i][2]) for i, c in v.items()])


def _weight_space(kind, indices, alpha_sym, Qf, proj, vec):
    """Basis of {X in g_Q : X has weight alpha} via a nullspace."""
    units = [(r, s) for r in indices for s in indices
             if proj(tuple(x - y for x, y in zip(vec(r), vec(s)))) == alpha_sym]
    if not units:
        return []
    cond_keys = {}
    cols = []
    for u in units:
        X = {u: Q(1)}
        cols.append(madd(mmul(supertranspose(X), Qf.matrix), mmul(Qf.matrix, X)))
    keys = sorted({k for c in cols for k in c})
    rows = [[c.get(k, Q(0)) for c in cols] for k in keys]
    ns = linalg.nullspace(rows, len(units)) if rows else [
        [Q(int(i == j)) for i in range(len(units))] for j in range(len(units))]
    return [{u: x for u, x in zip(units, v) if x} for v in ns]


def build_model(kind, I, J) -> MatrixModel:
    """kind in {'osp-odd', 'osp-even', 'sl'}; I, J are sizes (or index lists)."""
    m = len(I) if not isinstance(I, int) else I
    n = len(J) if not isinstance(J, int) else J
    if m < 0 or n < 0:
        raise BadIndexSets("negative size")
    if kind == "sl":
        if m == 0 or n == 0:
            raise EmptyOddPart("sl needs both parts nonempty")
        if m + n < 3:
            raise BadIndexSets("sl(1|1) has no roots")
    elif kind == "osp-odd":
        if n == 0:
            raise EmptyOddPart("osp needs J nonempty")
    elif kind == "osp-even":
        if n == 0:
            raise EmptyOddPart("osp needs J nonempty")
        if m == 0:
            raise BadIndexSets("osp(0,2n) needs I nonempty")
    else:
        raise BadIndexSets(f"unknown kind {kind}")
    symbols = tuple([eps(i) for i in range(1, m + 1)] + [delta(j) for j in range(1, n + 1)])
    quotient = kind == "sl" and m == n
    if kind == "sl":
        indices = tuple([plain("I", i) for i in range(1, m + 1)] + [plain("J", j) for j in range(1, n + 1)])
        Qf = None
        rows = _sl_rows(m, n)
        diag = lambda a, b: madd(e(a, a), (Q(-1), e(b, b)))
        cartan, labels = [], []
        for i in range(1, m):
            cartan.append(diag(plain("I", i), plain("I", i + 1)))
            labels.append(f"h{i}")
        for j in range(1, n):
            cartan.append(diag(plain("J", j), plain("J", j + 1)))
            labels.append(f"d{j}")
        cartan.append(madd(e(plain("I", 1), plain("I", 1)), e(plain("J", 1), plain("J", 1))))
        labels.append("z")
        gram = tuple(tuple(Q(0) if a != b else (Q(1) if a.kind == "eps" else Q(-1)) for b in symbols)
                     for a in symbols)
    else:
        Qf = osp_form(kind, m, n)
        indices = Qf.indices
        rows = _osp_rows(kind, m, n)
        cartan = [madd(e(plain("I", t), plain("I", t)), (Q(-1), e(bar("I", t), bar("I", t))))
                  for t in range(1, m + 1)]
        cartan += [madd(e(plain("J", k), plain("J", k)), (Q(-1), e(bar("J", k), bar("J", k))))
                   for k in range(1, n + 1)]
        labels = [f"h{t}" for t in range(1, m + 1)] + [f"d{k}" for k in range(1, n + 1)]
        gram = None
    proto = MatrixModel(kind, m, n, indices, symbols, tuple(cartan), tuple(labels), {}, Qf, quotient)
    if quotient:
        reps = [proto.reduce(D) for D in cartan]
        keys = sorted({k for D in reps for k in D})
        _, piv = linalg.rref([[D.get(k, Q(0)) for D in reps] for k in keys])
        cartan = [reps[i] for i in piv]
        labels = [labels[i] for i in piv]
        proto = MatrixModel(kind, m, n, indices, symbols, tuple(cartan), tuple(labels), {}, Qf, quotient)

    def vec_of_index(idx):
        if idx.tag == "zero":
            return proto._zero
        return proto.vec(_weight_symbol(kind, idx))

    root_vectors = {}
    corrections = []
    for name, sym, X in rows:
        alpha = proto.vec(sym)
        ok = _row_ok(proto, X, alpha, Qf)
        if not ok:
            space = _weight_space(kind, indices, alpha, Qf, proto.project, vec_of_index)
            if len(space) != 1:
                raise NotClosed(f"row {name}: weight space of dimension {len(space)}")
            Y = space[0]
            # unit coefficient on the first printed entry
            k0 = next((k for k in sorted(X) if k in Y), None)
            if k0 is not None:
                Y = mscale(1 / Y[k0], Y)
            corrections.append((name, _fmt(X), _fmt(Y)))
            X = Y
            if not _row_ok(proto, X, alpha, Qf):
                raise NotClosed(f"row {name}: corrected vector fails")
        root_vectors.setdefault(alpha, []).append(proto.reduce(X))
    if gram is None:
        G = proto.cartan_gram
        Gi = linalg.inverse(G)
        # symbol s evaluated on Cartan basis element D_a
        W = [[proto.weight_value(tuple(Q(int(s == t)) for t in symbols), D) for D in cartan] for s in symbols]
        gram = tuple(tuple(sum((W[i][a] * Gi[a][b] * W[j][b] for a in range(len(cartan)) for b in range(len(cartan))), Q(0))
                           for j in range(len(symbols))) for i in range(len(symbols)))
    model = MatrixModel(kind, m, n, indices, symbols, tuple(cartan), tuple(labels), root_vectors, Qf,
                        quotient, tuple(corrections), gram)
    _audit_gram(model)
    return model


def _audit_gram(model):
    """The symbol Gram must reproduce str(t_a t_b) on all roots."""
    R = model.rootsys
    ts = {a: model.t_vector(a) for a in R.nonzero}
    for a in R.nonzero:
        for b in R.nonzero:
            if R.form(a, b) != model.weight_value(a, ts[b]):
                raise NotClosed("induced form disagrees with the supertrace form")


def _row_ok(model, X, alpha, Qf):
    if not X:
        return False
    if Qf is not None and not in_osp(X, Qf):
        return False
    if Qf is None and supertrace(X) != 0:
        return False
    for D in model.cartan:
        lhs = sbracket(D, X)
        if model.reduce(madd(lhs, (-model.weight_value(alpha, D), X))):
            return False
    return True


def _fmt(X):
    return " + ".join(f"{c}*e[{r},{s}]" for (r, s), c in sorted(X.items()))


def supertrace_form(model, X, Y):
    for A in (X, Y):
        if any(r not in model.indices or s not in model.indices for (r, s) in A):
            raise DimensionMismatch("matrix outside the model's index set")
    return supertrace(mmul(X, Y))


def to_abstract(model):
    """Structure table of the model in its canonical basis, with the supertrace form."""
    B = model.basis
    n = len(B)
    table, form = {}, {}
    for i in range(n):
        for j in range(n):
            Z = sbracket(B[i][2], B[j][2])
            if Z:
                c = model.coords(Z)
                if c:
                    table[(i, j)] = c
            v = supertrace(mmul(B[i][2], B[j][2]))
            if v:
                form[(i, j)] = v
    roots = tuple(w for _, _, _, w in B)
    return from_table([b[0] for b in B], [b[1] for b in B], table, form,
                      cartan=range(len(model.cartan)), model=model.name, weights=roots)


# ---------------------------------------------------------------- general g_Q

@dataclass(frozen=True, eq=False)
class FormAlgebra:
    """g_Q = {X : X^st Q = -QX} with an explicit matrix basis."""

    qform: dict
    indices: tuple
    basis: tuple

    def coords(self, X):
        keys = sorted({k for B in self.basis for k in B} | set(X))
        A = [[B.get(k, Q(0)) for B in self.basis] for k in keys]
        x = linalg.solve(A, [X.get(k, Q(0)) for k in keys])
        if x is None:
            raise NotClosed("matrix outside g_Q")
        return {i: c for i, c in enumerate(x) if c}

    @cached_property
    def algebra(self):
        n = len(self.basis)
        table = {}
        for i in range(n):
            for j in range(n):
                Z = sbracket(self.basis[i], self.basis[j])
                if Z:
                    table[(i, j)] = self.coords(Z)
        return from_table([f"x{i}" for i in range(n)], [mparity(B) for B in self.basis], table)


def form_algebra(Qm, indices) -> FormAlgebra:
    """Basis of g_Q for an even form Q, parity by parity."""
    basis = []
    for par in (0, 1):
        units = [(r, s) for r in indices for s in indices if (r.parity + s.parity) % 2 == par]
        cols = [madd(mmul(supertranspose({u: Q(1)}), Qm), mmul(Qm, {u: Q(1)})) for u in units]
        keys = sorted({k for c in cols for k in c})
        rows = [[c.get(k, Q(0)) for c in cols] for k in keys]
        for v in linalg.nullspace(rows, len(units)):
            basis.append({u: x for u, x in zip(units, v) if x})
    return FormAlgebra(dict(Qm), tuple(indices), tuple(basis))


def minverse(T, indices):
    M = [[T.get((r, s), Q(0)) for s in indices] for r in indices]
    try:
        Mi = linalg.inverse(M)
    except ZeroDivisionError:
        raise CongruenceFails("T is not invertible") from None
    return {(r, s): Mi[a][b] for a, r in enumerate(indices) for b, s in enumerate(indices) if Mi[a][b]}


def congruence_iso(Q1, Q2, T, indices) -> AlgebraMap:
    """X -> T^-1 X T from g_{Q1} to g_{Q2}, given T^st Q1 T = Q2."""
    if mparity(T) != 0:
        raise CongruenceFails("T must be even")
    if madd(mmul(mmul(supertranspose(T), Q1), T), (Q(-1), Q2)):
        raise CongruenceFails("T^st Q1 T differs from Q2")
    Ti = minverse(T, indices)
    A, B = form_algebra(Q1, indices), form_algebra(Q2, indices)
    if len(A.basis) != len(B.basis):
        raise CongruenceFails("dimension mismatch")
    images = tuple(B.coords(mmul(mmul(Ti, X), T)) for X in A.basis)
    return AlgebraMap(A.algebra, B.algebra, images, True)


def cor2_matrices(m, n):
    """Finite analogues of S, Q and Q_e relating two presentations of osp(2m+1,2n)."""
    I, J = range(1, m + 1), range(1, n + 1)
    S = {(ZERO, ZERO): Q(1)}
    Qe = {(ZERO, ZERO): Q(-2)}
    for i in I:
        a, b = plain("I", i), bar("I", i)
        S.update({(a, a): Q(1), (a, b): Q(1), (b, a): Q(1), (b, b): Q(-1)})
        Qe.update({(a, a): Q(2), (b, b): Q(-2)})
    for j in J:
        a, b = plain("J", j), bar("J", j)
        S.update({(a, a): Q(1), (b, b): Q(1)})
        Qe.update({(a, b): Q(1), (b, a): Q(-1)})
    Qf = osp_form("osp-odd", m, n)
    return S, Qf.matrix, Qe, Qf.indices


def reindex(X, eta):
    return {(eta[r], eta[s]): c for (r, s), c in X.items()}


def reindex_iso(Qm, indices, eta) -> AlgebraMap:
    """X -> X^eta for a parity-preserving bijection eta of the index set."""
    for r in indices:
        if eta[r].parity != r.parity:
            raise CongruenceFails("eta must preserve parity")
    if sorted(eta.values()) != sorted(indices):
        raise CongruenceFails("eta must be a bijection")
    A = form_algebra(Qm, indices)
    B = form_algebra(reindex(Qm, eta), indices)
    images = tuple(B.coords(reindex(X, eta)) for X in A.basis)
    return AlgebraMap(A.algebra, B.algebra, images, True)


# ---------------------------------------------------------------- embeddings

def embed(small: MatrixModel, big: MatrixModel) -> AlgebraMap:
    """Index inclusion between models of the same kind."""
    if small.kind != big.kind or small.m > big.m or small.n > big.n:
        raise NotSubset(f"{small.name} does not sit inside {big.name}")
    if small.quotient or big.quotient:
        if (small.m, small.n) != (big.m, big.n):
            raise NotSubset("quotient models do not embed by index inclusion")
    images = tuple(big.coords(X) for _, _, X, _ in small.basis)
    return AlgebraMap(to_abstract(small), to_abstract(big), images, False)


def compose(maps):
    """maps[0] then maps[1] then ...: returns the composite."""
    out = maps[0]
    for m in maps[1:]:
        out = m.compose(out)
    return out


# ---------------------------------------------------------------- extraction

@dataclass(frozen=True, eq=False)
class Extraction:
    table: ConstantsTable
    vectors: dict
    h: dict


def chevalley_vectors(model, order=None, seeds=None, rScale=Q(1)) -> Extraction:
    R = model.rootsys
    d = recognize(R)
    if d.family == "A(l,l)":
        raise TypeA11Unsupported(f"model {model.name} has root system {d}")
    order = order or symbol_order(R)
    S = Setup(R, order, Q(rScale))
    pc = _pair_classes(S)
    if seeds is None:
        seeds = {p: Q(1) for p in pc.extraspecial}
    seeds = {k: Q(v) for k, v in seeds.items()}
    es = pc.extraspecial_by_sum
    r = Q(rScale)
    ev, hv = {}, {}
    for a in S.positive:
        if a in es:
            x, y = es[a]
            Z = model.reduce(sbracket(ev[x], ev[y]))
            if not Z:
                raise ZeroBracket(f"[{R.label(x)}, {R.label(y)}]")
            ev[a] = mscale(1 / seeds[(x, y)], Z)
        else:
            vs = model.root_vectors[a]
            if len(vs) != 1:
                raise TypeA11Unsupported("root space of dimension > 1")
            ev[a] = vs[0]
    for a in S.positive:
        h = mscale(r, model.t_vector(a))
        hv[a] = h
        v = model.root_vectors[vneg(a)][0]
        Z = model.reduce(sbracket(ev[a], v))
        c = _ratio(h, Z)
        ev[vneg(a)] = mscale(c, v)
    N = {}
    for a in R.nonzero:
        for b in R.nonzero:
            s = vadd(a, b)
            if s in S.nonzero:
                Z = model.reduce(sbracket(ev[a], ev[b]))
                if not Z:
                    raise ZeroBracket(f"[{R.label(a)}, {R.label(b)}]")
                N[(a, b)] = _ratio(Z, ev[s])
    base = list(integral_base(R))
    hc = {a: tuple(r * x for x in lattice_coords(base, a)) for a in S.positive}
    return Extraction(ConstantsTable(R, order, r, dict(seeds), N, hc), ev, hv)


def _ratio(X, Y):
    """The scalar c with X = c Y (exact), else ZeroBracket."""
    if not Y:
        raise ZeroBracket("division by a zero matrix")
    k = next(iter(sorted(Y)))
    c = X.get(k, Q(0)) / Y[k]
    if madd(X, (-c, Y)):
        raise ZeroBracket("matrices are not proportional")
    return c


def extract_constants(model, order=None, seeds=None, rScale=Q(1)) -> ConstantsTable:
    return chevalley_vectors(model, order, seeds, rScale).table


def model_from_name(name):
    """'osp(3,2)', 'osp(2,4)', 'sl(2|1)' -> MatrixModel."""
    import re
    mt = re.fullmatch(r"\s*osp\((\d+),(\d+)\)\s*", name)
    if mt:
        a, b = int(mt.group(1)), int(mt.group(2))
        if b % 2:
            raise BadIndexSets("second osp argument must be even")
        return build_model("osp-odd" if a % 2 else "osp-even", a // 2, b // 2)
    mt = re.fullmatch(r"\s*sl_?s?\((\d+)[|,](\d+)\)\s*", name)
    if mt:
        return build_model("sl", int(mt.group(1)), int(mt.group(2)))
    raise BadIndexSets(f"unknown model {name}")
