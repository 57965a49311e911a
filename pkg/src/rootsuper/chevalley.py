"""Chevalley structure constants from free seeds on extraspecial pairs.

Conventions: ``[e_a, e_b] = N[a, b] e_{a+b}``, ``[e_a, e_{-a}] = sigma_a h_a``
with ``h_a = r t_a`` so that ``x(h_a) = r (x, a)``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property

from .errors import InternalInconsistency, SeedMissing, SumNotRoot, TypeA11Unsupported
from .rootsys import (
    Report,
    even_odd_partition,
    integral_base,
    is_zero,
    recognize,
    vadd,
    vneg,
    vsub,
)
from .superalg import from_table, AlgebraMap, LieSuperalgebra


@dataclass(frozen=True)
class TotalOrder:
    """Lexicographic positivity by an ordered list of linear functionals.

    A symbol order is the special case of coordinate functionals.
    """

    functionals: tuple

    def key(self, v):
        return tuple(sum((a * b for a, b in zip(f, v)), Q(0)) for f in self.functionals)

    def positive(self, v):
        for x in self.key(v):
            if x != 0:
                return x > 0
        return False

    def is_symbol_order(self):
        return all(sum(1 for x in f if x != 0) == 1 and max(f) == 1 for f in self.functionals)


def symbol_order(R, symbols=None):
    """Order by the given symbols (default: the basis order of R)."""
    symbols = list(R.basis) if symbols is None else list(symbols)
    fs = []
    for s in symbols:
        fs.append(tuple(Q(int(b == s)) for b in R.basis))
    return TotalOrder(tuple(fs))


def _is_all(R):
    d = R.descriptor
    if d is None:
        d = recognize(R)
    return d.family == "A(l,l)"


@dataclass(frozen=True, eq=False)
class Setup:
    """Order-dependent data shared by the recursion and the audits."""

    R: object
    order: TotalOrder
    rScale: Q = Q(1)

    @cached_property
    def nonzero(self):
        return frozenset(self.R.nonzero)

    @cached_property
    def odd(self):
        return even_odd_partition(self.R)[1]

    def parity(self, a):
        return 1 if a in self.odd else 0

    @cached_property
    def positive(self):
        pos = [a for a in self.R.nonzero if self.order.positive(a)]
        return tuple(sorted(pos, key=self.order.key))

    @cached_property
    def positive_set(self):
        return frozenset(self.positive)

    @cached_property
    def sigma(self):
        return {a: (-1 if (a in self.odd and a not in self.positive_set) else 1) for a in self.R.nonzero}

    @cached_property
    def nonsingular(self):
        return frozenset(self.R.nonsingular)

    def h_eval(self, x, a):
        """x(h_a)."""
        return self.rScale * self.R.form(x, a)

    def in_rx(self, v):
        return v in self.nonzero


def order_and_signs(R, order=None):
    S = Setup(R, order or symbol_order(R))
    return S.positive, S.sigma


@dataclass(frozen=True)
class PairClass:
    special: tuple
    extraspecial: tuple

    @cached_property
    def extraspecial_by_sum(self):
        return {vadd(a, b): (a, b) for a, b in self.extraspecial}


def pair_classes(R, order=None) -> PairClass:
    S = Setup(R, order or symbol_order(R))
    return _pair_classes(S)


def _pair_classes(S: Setup) -> PairClass:
    key = S.order.key
    pos = S.positive
    special = []
    for i, a in enumerate(pos):
        for b in pos[i:]:
            if vadd(a, b) in S.nonzero:
                special.append((a, b))
    special.sort(key=lambda ab: (key(vadd(*ab)), key(ab[0])))
    best = {}
    for a, b in special:
        s = vadd(a, b)
        if s not in best:
            best[s] = (a, b)
    extra = tuple(sorted(best.values(), key=lambda ab: key(vadd(*ab))))
    return PairClass(tuple(special), extra)


def string_depth(S: Setup, a, b):
    """p of the r-coefficient: 0 for two nonsingular roots, else the
    length of the unbroken run b, b-a, ..., b-pa inside R."""
    if a in S.nonsingular and b in S.nonsingular:
        return 0
    p = 0
    roots = S.R.roots
    cur = vsub(b, a)
    while cur in roots:
        p += 1
        cur = vsub(cur, a)
        if p > 16:
            break
    return p


def _r(S: Setup, a, b):
    if vadd(a, b) not in S.nonzero:
        raise SumNotRoot(f"{S.R.label(a)} + {S.R.label(b)}")
    pa, pb = S.parity(a), S.parity(b)
    p = string_depth(S, a, b)
    total = Q(0)
    for i in range(p + 1):
        x = tuple(bb - i * aa for aa, bb in zip(a, b))
        total += (-1) ** (i * pa) * S.h_eval(x, a)
    sg = S.sigma
    return sg[b] * sg[vadd(b, a)] * sg[a] * (-1) ** (pb * pa) * total


def r_coefficient(R, order, a, b, rScale=Q(1)):
    return _r(Setup(R, order or symbol_order(R), Q(rScale)), a, b)


@dataclass(frozen=True, eq=False)
class ConstantsTable:
    R: object
    order: TotalOrder
    rScale: Q
    seeds: dict
    N: dict
    hCoords: dict = field(default_factory=dict)

    def get(self, a, b):
        return self.N.get((a, b), Q(0))


def _reduce(S: Setup, known, start):
    """Value of N at ``start`` from ``known`` via the 12-pair relations."""
    if start in known:
        return known[start]
    # state: pair -> (c, e) meaning N(start) = c * N(pair)^e
    seen = {start: (Q(1), 1)}
    dq = deque([start])
    sg = S.sigma
    while dq:
        pr = dq.popleft()
        c, e = seen[pr]
        x, y = pr
        px, py = S.parity(x), S.parity(y)
        s = vadd(x, y)
        moves = (
            ((y, x), Q(-(-1) ** (px * py)), 1),
            ((y, vneg(s)), Q(sg[x] * sg[s]), 1),
            ((vneg(x), vneg(y)), _r(S, x, y), -1),
        )
        for nxt, m, f in moves:
            if nxt in seen:
                continue
            c2, e2 = c * (m ** e), f * e
            if nxt in known:
                val = known[nxt]
                return c2 * (val ** e2)
            seen[nxt] = (c2, e2)
            dq.append(nxt)
    raise InternalInconsistency(f"no computed special pair reachable from {start}")


def _nval(S, known, a, b):
    if not S.in_rx(vadd(a, b)) or not S.in_rx(a) or not S.in_rx(b):
        return Q(0)
    return _reduce(S, known, (a, b))


def _sign(p, q):
    return -1 if (p * q) % 2 else 1


def constants_from_seeds(R, order=None, seeds=None, rScale=Q(1)) -> ConstantsTable:
    if _is_all(R):
        # in A(l,l) two nonsingular roots can sum to a root modulo the
        # supertrace relation while their root vectors commute
        raise TypeA11Unsupported(f"no Chevalley recursion for {R.descriptor or 'A(l,l)'}")
    order = order or symbol_order(R)
    S = Setup(R, order, Q(rScale))
    pc = _pair_classes(S)
    if seeds is None:
        seeds = {p: Q(1) for p in pc.extraspecial}
    seeds = {k: Q(v) for k, v in seeds.items()}
    for p in pc.extraspecial:
        if p not in seeds:
            raise SeedMissing(f"({R.label(p[0])}, {R.label(p[1])})")
        if seeds[p] == 0:
            raise SeedMissing("seeds must be nonzero")
    known = {}
    es = pc.extraspecial_by_sum
    sg = S.sigma
    par = S.parity
    for a, b in pc.special:
        s = vadd(a, b)
        g, d = es[s]
        if (a, b) == (g, d):
            known[(a, b)] = seeds[(a, b)]
            continue
        # four-term identity on a + b + (-g) + (-d) = 0
        ng, nd = vneg(g), vneg(d)
        pa, pb, pg = par(a), par(b), par(g)
        t2 = _sign(pa, pb) * _sg0(sg, vadd(b, ng)) * _nval(S, known, b, ng) * _nval(S, known, a, nd)
        t3 = _sign(pb, pg) * _sg0(sg, vadd(a, ng)) * _nval(S, known, ng, a) * _nval(S, known, b, nd)
        coef = _sign(pa, pg) * sg[s] * _nval(S, known, ng, nd)
        if coef == 0:
            raise InternalInconsistency("vanishing leading coefficient in the four-term relation")
        val = -(t2 + t3) / coef
        if val == 0:
            raise InternalInconsistency(
                f"the four-term relation forces N = 0 on special pair ({R.label(a)}, {R.label(b)})")
        known[(a, b)] = val
    N = {}
    for a in R.nonzero:
        for b in R.nonzero:
            if vadd(a, b) in S.nonzero:
                v = _reduce(S, known, (a, b))
                if v == 0:
                    raise InternalInconsistency("zero structure constant")
                N[(a, b)] = v
    base = list(integral_base(R))
    from .rootsys import lattice_coords
    hc = {a: tuple(Q(rScale) * x for x in lattice_coords(base, a)) for a in S.positive}
    return ConstantsTable(R, order, Q(rScale), dict(seeds), N, hc)


def _sg0(sg, v):
    return sg.get(v, 1)


def verify_constants(R, order, table: ConstantsTable, rScale=None) -> Report:
    order = order or table.order
    S = Setup(R, order, Q(table.rScale if rScale is None else rScale))
    N = table.N
    rx = S.nonzero
    sg = S.sigma
    par = S.parity
    viol = []

    def n(a, b):
        return N.get((a, b), Q(0))

    checked = 0
    for a in R.nonzero:
        for b in R.nonzero:
            s = vadd(a, b)
            if s not in rx:
                if (a, b) in N and N[(a, b)] != 0:
                    viol.append(("support", R.label(a), R.label(b)))
                continue
            checked += 1
            if n(a, b) == 0:
                viol.append(("nonzero", R.label(a), R.label(b)))
                continue
            if n(a, b) != -_sign(par(a), par(b)) * n(b, a):
                viol.append(("i", R.label(a), R.label(b)))
            if n(a, b) != sg[a] * sg[s] * n(b, vneg(s)):
                viol.append(("ii", R.label(a), R.label(b)))
            if n(a, b) * n(vneg(a), vneg(b)) != _r(S, a, b):
                viol.append(("iii", R.label(a), R.label(b)))
    nz = list(R.nonzero)
    idx = {a: i for i, a in enumerate(nz)}
    for a, b, c in itertools.product(nz, repeat=3):
        d = vneg(vadd(vadd(a, b), c))
        if d not in idx:
            continue
        quad = (a, b, c, d)
        if any(is_zero(vadd(x, y)) for x, y in itertools.combinations(quad, 2)):
            continue
        checked += 1
        pa, pb, pc_ = par(a), par(b), par(c)
        tot = (
            _sign(pa, pc_) * _sg0(sg, vadd(a, b)) * n(a, b) * n(c, d)
            + _sign(pa, pb) * _sg0(sg, vadd(b, c)) * n(b, c) * n(a, d)
            + _sign(pb, pc_) * _sg0(sg, vadd(a, c)) * n(c, a) * n(b, d)
        )
        if tot != 0:
            viol.append(("iv", tuple(R.label(x) for x in quad)))
        if len(viol) > 50:
            break
    return Report("constants", tuple(viol), checked)


def assemble_algebra(R, table: ConstantsTable) -> LieSuperalgebra:
    """Cartan basis h_pi (pi in an integral base) followed by e_a for a in R^x."""
    S = Setup(R, table.order, table.rScale)
    base = list(integral_base(R))
    from .rootsys import lattice_coords
    roots = sorted(R.nonzero, key=lambda a: (not S.order.positive(a), S.order.key(a) if S.order.positive(a) else tuple(-x for x in S.order.key(a))))
    labels = [("h", R.label(p)) for p in base] + [("e", R.label(a)) for a in roots]
    parities = [0] * len(base) + [S.parity(a) for a in roots]
    ell = len(base)
    pos = {a: ell + i for i, a in enumerate(roots)}
    r = table.rScale
    coords = {a: lattice_coords(base, a) for a in roots}
    table_ = {}
    for i, p in enumerate(base):
        for a in roots:
            v = r * R.form(a, p)
            if v:
                table_[(i, pos[a])] = {pos[a]: v}
                table_[(pos[a], i)] = {pos[a]: -v}
    for a in roots:
        for b in roots:
            s = vadd(a, b)
            if is_zero(s):
                h = {i: S.sigma[a] * c for i, c in enumerate(coords[a]) if c}
                if h:
                    table_[(pos[a], pos[b])] = h
            elif s in S.nonzero:
                table_[(pos[a], pos[b])] = {pos[s]: table.N[(a, b)]}
    form = {}
    for i, p in enumerate(base):
        for j, q in enumerate(base):
            v = r * r * R.form(p, q)
            if v:
                form[(i, j)] = v
    for a in roots:
        form[(pos[a], pos[vneg(a)])] = S.sigma[a] * r
    L = from_table(labels, parities, table_, form, cartan=range(ell),
                   roots=tuple(roots), base=tuple(base), root_index=pos)
    return L


def diagonal_automorphism(R, table: ConstantsTable, phi: dict) -> AlgebraMap:
    """e_a -> phi(a) e_a with phi extended multiplicatively from the base."""
    from .rootsys import lattice_coords
    L = assemble_algebra(R, table)
    base = list(L.meta["base"])
    for p in base:
        if Q(phi.get(p, 1)) == 0:
            raise ValueError("phi must be nonzero")
    images = []
    for i in range(L.dim):
        if i < len(base):
            images.append({i: Q(1)})
            continue
        a = L.meta["roots"][i - len(base)]
        c = lattice_coords(base, a)
        val = Q(1)
        for p, ci in zip(base, c):
            val *= Q(phi.get(p, 1)) ** int(ci)
        images.append({i: val})
    return AlgebraMap(L, L, tuple(images), True)
