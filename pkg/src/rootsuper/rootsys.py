"""Locally finite root supersystems at finite rank.

Vectors are tuples of Fractions aligned with the ordered symbol basis of
the system they belong to.  Root sets always contain the zero vector.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property
from typing import NamedTuple

from . import linalg
from .errors import (
    BrokenString,
    IncompatibleFamily,
    InvalidLambda,
    InvalidRanks,
    NoBaseFound,
    NotARoot,
    NotReflectable,
    Unrecognized,
    UnknownSymbol,
)


class Symbol(NamedTuple):
    kind: str  # "eps", "delta" or "alphastar"
    index: int = 0

    def __str__(self):
        if self.kind == "alphastar":
            return "a*"
        return ("e" if self.kind == "eps" else "d") + str(self.index)


def eps(i):
    return Symbol("eps", i)


def delta(i):
    return Symbol("delta", i)


ALPHASTAR = Symbol("alphastar", 0)


FAMILIES = (
    "A", "B", "C", "D", "BC",
    "Adot(0,T)", "Cdot(0,T)", "Adot(T,T')",
    "A(l,l)", "B(0,T)", "B(T,T')", "BC(T,T')", "C(T,T')", "D(T,T')",
    "B(1,T)", "C(1,T)", "D(1,T)", "B(T,1)", "AB(1,3)", "G(1,2)",
    "D(2,1,lambda)", "D(2,T)",
)

IMAGINARY = {"Adot(0,T)", "Cdot(0,T)", "Adot(T,T')"}
PLAIN = {"A", "B", "C", "D", "BC"}


@dataclass(frozen=True)
class TypeDescriptor:
    """Family name plus the integers shown in its name.

    Plain families carry one rank (|T|).  Super families carry the pair of
    numbers of their display name, e.g. B(1,T) with |T|=2 has ranks (1, 2)
    and B(0,T) has ranks (0, n).  ``lam`` is used only by D(2,1,lambda).
    """

    family: str
    ranks: tuple = ()
    lam: Q | None = None

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if self.lam is not None:
            object.__setattr__(self, "lam", Q(self.lam))

    def __str__(self):
        if self.family == "D(2,1,lambda)":
            return f"D(2,1;{self.lam})"
        if self.family in PLAIN:
            return f"{self.family}_{self.ranks[0]}"
        name = self.family.split("(")[0]
        return f"{name}({','.join(str(r) for r in self.ranks)})"


def validate_descriptor(d: TypeDescriptor) -> None:
    f, r = d.family, d.ranks
    if f not in FAMILIES:
        raise InvalidRanks(f"unknown family {f!r}")

    def need(cond, msg):
        if not cond:
            raise InvalidRanks(f"{f} {r}: {msg}")

    if f == "D(2,1,lambda)":
        need(r in ((), (2, 1)), "ranks must be (2,1)")
        if d.lam is None or d.lam in (0, -1):
            raise InvalidLambda(f"lambda must avoid 0 and -1, got {d.lam}")
        return
    if f in ("AB(1,3)", "G(1,2)"):
        need(r in ((), {"AB(1,3)": (1, 3), "G(1,2)": (1, 2)}[f]), "fixed ranks")
        return
    if f in PLAIN:
        need(len(r) == 1, "one rank expected")
        lo = {"A": 2, "B": 2, "C": 3, "D": 4, "BC": 1}[f]
        need(r[0] >= lo, f"rank must be at least {lo}")
        return
    need(len(r) == 2, "two ranks expected")
    m, n = r
    if f in ("Adot(0,T)", "Cdot(0,T)", "B(0,T)"):
        need(m == 0, "first rank is 0")
        need(n >= (1 if f == "B(0,T)" else 2), "rank too small")
    elif f == "Adot(T,T')":
        need(m >= 2 and n >= 2, "both ranks at least 2")
        need(m != n, "equal ranks belong to A(l,l)")
    elif f == "A(l,l)":
        need(m == n and m >= 1, "ranks (l,l) with l >= 1")
    elif f == "B(T,T')":
        need(m >= 2 and n >= 2, "both ranks at least 2")
    elif f == "BC(T,T')":
        need((m >= 2 and n >= 2) or (m == 1 and n >= 1), "ranks (>=2,>=2), (1,1) or (1,>=2)")
    elif f == "C(T,T')":
        need(m >= 2 and n >= 2, "both ranks at least 2")
    elif f == "D(T,T')":
        need(m >= 3 and n >= 2, "ranks (>=3, >=2)")
    elif f == "B(1,T)":
        need(m == 1 and n >= 1, "ranks (1, >=1)")
    elif f == "C(1,T)":
        need(m == 1 and n >= 2, "ranks (1, >=2)")
    elif f == "D(1,T)":
        need(m == 1 and n >= 3, "ranks (1, >=3)")
    elif f == "B(T,1)":
        need(n == 1 and m >= 2, "ranks (>=2, 1)")
    elif f == "D(2,T)":
        need(m == 2 and n >= 2, "ranks (2, >=2)")


def descriptor_from_name(letter: str, ranks, lam=None) -> TypeDescriptor:
    """Resolve shorthand such as ('B', (1, 2)) or ('D', (2, 1)) to a family."""
    ranks = tuple(int(x) for x in ranks)
    if letter in FAMILIES and (letter not in PLAIN or len(ranks) == 1):
        if letter == "D(2,1,lambda)":
            return TypeDescriptor(letter, (2, 1), Q(lam))
        return TypeDescriptor(letter, ranks, Q(lam) if lam is not None else None)
    aliases = {"Adot": "A", "Cdot": "C", "A(0,T)": "A"}
    letter = aliases.get(letter, letter)
    if len(ranks) == 1:
        return TypeDescriptor(letter, ranks)
    if len(ranks) != 2:
        raise InvalidRanks(f"cannot resolve {letter}{ranks}")
    m, n = ranks
    table = {
        "A": lambda: "Adot(0,T)" if m == 0 else ("A(l,l)" if m == n else "Adot(T,T')"),
        "B": lambda: "B(0,T)" if m == 0 else "B(1,T)" if m == 1 else "B(T,1)" if n == 1 else "B(T,T')",
        "C": lambda: "Cdot(0,T)" if m == 0 else "C(1,T)" if m == 1 else "C(T,T')",
        "D": lambda: ("D(2,1,lambda)" if (m, n) == (2, 1) else "D(1,T)" if m == 1
                      else "D(2,T)" if m == 2 else "D(T,T')"),
        "BC": lambda: "BC(T,T')",
        "AB": lambda: "AB(1,3)",
        "G": lambda: "G(1,2)",
    }
    if letter not in table:
        raise InvalidRanks(f"unknown family letter {letter!r}")
    fam = table[letter]()
    if fam == "D(2,1,lambda)":
        return TypeDescriptor(fam, (2, 1), Q(lam) if lam is not None else None)
    return TypeDescriptor(fam, ranks)


# ---------------------------------------------------------------- vectors

def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def vneg(a):
    return tuple(-x for x in a)


def is_zero(a):
    return all(x == 0 for x in a)


def graded_lex_key(v):
    return (sum(abs(x) for x in v), tuple(-x for x in v))


@dataclass(frozen=True)
class Report:
    """Outcome of an audit: ``ok`` is true when ``violations`` is empty."""

    name: str
    violations: tuple = ()
    checked: int = 0
    notes: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class RootSupersystem:
    basis: tuple
    gram: tuple
    roots: frozenset
    descriptor: TypeDescriptor | None = None
    meta: dict = field(default_factory=dict, compare=False)

    # ---- construction helpers
    @classmethod
    def make(cls, basis, gram, roots, descriptor=None, **meta):
        basis = tuple(basis)
        n = len(basis)
        gram = tuple(tuple(Q(x) for x in row) for row in gram)
        roots = frozenset(tuple(Q(x) for x in r) for r in roots) | {tuple([Q(0)] * n)}
        return cls(basis, gram, roots, descriptor, dict(meta))

    @property
    def dim(self):
        return len(self.basis)

    @cached_property
    def _scaled(self):
        # common denominator D and the roots as integer tuples scaled by D
        D = 1
        for r in self.roots:
            for x in r:
                D = math.lcm(D, x.denominator)
        return D, frozenset(tuple(int(x * D) for x in r) for r in self.roots)

    @property
    def zero(self):
        return tuple([Q(0)] * self.dim)

    def vector(self, coords: dict):
        """LatticeVector from a mapping symbol -> rational."""
        v = [Q(0)] * self.dim
        pos = {s: i for i, s in enumerate(self.basis)}
        for s, x in coords.items():
            if s not in pos:
                raise UnknownSymbol(str(s))
            v[pos[s]] += Q(x)
        return tuple(v)

    def form(self, a, b):
        if len(a) != self.dim or len(b) != self.dim:
            raise UnknownSymbol("vector not supported on this basis")
        g = self.gram
        total = Q(0)
        for i, x in enumerate(a):
            if x:
                row = g[i]
                for j, y in enumerate(b):
                    if y and row[j]:
                        total += x * row[j] * y
        return total

    @cached_property
    def nonzero(self):
        return tuple(sorted((r for r in self.roots if not is_zero(r)), key=graded_lex_key))

    @cached_property
    def real(self):
        return tuple(r for r in self.nonzero if self.form(r, r) != 0)

    @cached_property
    def nonsingular(self):
        return tuple(r for r in self.nonzero if self.form(r, r) == 0)

    @cached_property
    def span_rank(self):
        return linalg.rank(list(self.nonzero)) if self.nonzero else 0

    def with_form_scaled(self, k):
        k = Q(k)
        g = [[k * x for x in row] for row in self.gram]
        return RootSupersystem.make(self.basis, g, self.roots, self.descriptor, **self.meta)

    def with_roots(self, roots, descriptor=None):
        return RootSupersystem.make(self.basis, self.gram, roots, descriptor, **self.meta)

    def label(self, v):
        """Human readable form of a vector, e.g. 'e1-d1'."""
        parts = []
        for s, x in zip(self.basis, v):
            if x == 0:
                continue
            coef = "" if abs(x) == 1 else str(abs(x))
            parts.append(("-" if x < 0 else "+") + coef + str(s))
        if not parts:
            return "0"
        out = "".join(parts)
        return out[1:] if out[0] == "+" else out


# ---------------------------------------------------------------- building

def _unit(n, i, c=1):
    v = [Q(0)] * n
    v[i] = Q(c)
    return v


def _comp_A(n, pos):
    out = []
    for a in pos:
        for b in pos:
            if a != b:
                v = [Q(0)] * n
                v[a], v[b] = Q(1), Q(-1)
                out.append(tuple(v))
    return out


def _comp_D(n, pos):
    out = []
    for a, b in itertools.combinations(pos, 2):
        for sa in (1, -1):
            for sb in (1, -1):
                v = [Q(0)] * n
                v[a], v[b] = Q(sa), Q(sb)
                out.append(tuple(v))
    return out


def _comp_short(n, pos, c=1):
    return [tuple(_unit(n, a, s * c)) for a in pos for s in (1, -1)]


def _comp(kind, n, pos):
    if kind == "A":
        return _comp_A(n, pos)
    if kind == "D":
        return _comp_D(n, pos)
    if kind == "B":
        return _comp_D(n, pos) + _comp_short(n, pos)
    if kind == "C":
        return _comp_D(n, pos) + _comp_short(n, pos, 2)
    if kind == "BC":
        return _comp_D(n, pos) + _comp_short(n, pos) + _comp_short(n, pos, 2)
    raise ValueError(kind)


def reflect_vec(gram_form, alpha, beta):
    aa = gram_form(alpha, alpha)
    if aa == 0:
        raise NotReflectable("isotropic vector")
    c = 2 * gram_form(beta, alpha) / aa
    return tuple(b - c * a for a, b in zip(alpha, beta))


def _orbit(form, reals, v):
    seen = {v}
    todo = [v]
    while todo:
        x = todo.pop()
        for a in reals:
            y = reflect_vec(form, a, x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def _diag(vals):
    n = len(vals)
    return [[Q(vals[i]) if i == j else Q(0) for j in range(n)] for i in range(n)]


def build(d: TypeDescriptor) -> RootSupersystem:
    validate_descriptor(d)
    f, r = d.family, d.ranks

    if f in PLAIN:
        n = r[0]
        basis = [eps(i) for i in range(1, n + 1)]
        real = _comp(f, n, range(n))
        return RootSupersystem.make(basis, _diag([1] * n), real, d)

    if f == "B(0,T)":
        n = r[1]
        basis = [delta(i) for i in range(1, n + 1)]
        real = _comp("BC", n, range(n))
        return RootSupersystem.make(basis, _diag([-1] * n), real, d)

    if f in IMAGINARY:
        m, n = r
        if f == "Adot(T,T')":
            basis = [eps(i) for i in range(1, m + 1)] + [delta(i) for i in range(1, n + 1)]
            real = _comp_A(m + n + 1, range(m)) + _comp_A(m + n + 1, range(m, m + n))
            diag = [1] * m + [-1] * n
        else:
            basis = [eps(i) for i in range(1, n + 1)]
            real = _comp("A" if f == "Adot(0,T)" else "C", n + 1, range(n))
            diag = [1] * n
        basis.append(ALPHASTAR)
        size = len(basis)
        g = _diag(diag + [0])
        g[-1][0] = g[0][-1] = Q(1)
        if f == "Adot(T,T')":
            g[-1][m] = g[m][-1] = Q(1)
        R0 = RootSupersystem.make(basis, g, real)
        astar = tuple(_unit(size, size - 1))
        orb = _orbit(R0.form, real, astar)
        ns = orb | {vneg(v) for v in orb}
        return RootSupersystem.make(basis, g, list(real) + list(ns), d, delta_star=astar)

    # real types: assemble components, delta*, form
    m, n = r if len(r) == 2 else (None, None)
    symmetric_orbit = False
    if f == "A(l,l)":
        l = m
        basis = [eps(i) for i in range(1, l + 2)] + [delta(i) for i in range(1, l + 2)]
        N = len(basis)
        real = _comp_A(N, range(l + 1)) + _comp_A(N, range(l + 1, N))
        diag = [1] * (l + 1) + [-1] * (l + 1)
        w = Q(1, l + 1)
        ds = [Q(0)] * N
        for i in range(l + 1):
            ds[i] = -w
            ds[l + 1 + i] = -w
        ds[0] += 1
        ds[l + 1] += 1
        symmetric_orbit = True
    elif f == "D(2,1,lambda)":
        lam = d.lam
        basis = [eps(1), eps(2), delta(1)]
        N = 3
        real = _comp_short(N, range(3), 2)
        diag = [1, lam, -1 - lam]
        ds = [Q(1), Q(1), Q(1)]
    elif f == "AB(1,3)":
        basis = [eps(1), eps(2), eps(3), delta(1)]
        N = 4
        real = _comp("B", N, range(3)) + _comp_short(N, [3])
        diag = [1, 1, 1, -3]
        ds = [Q(1, 2)] * 4
    elif f == "G(1,2)":
        basis = [eps(1), eps(2), eps(3), delta(1)]
        N = 4
        long_ = []
        for i in range(3):
            v = [Q(-1)] * 3 + [Q(0)]
            v[i] = Q(2)
            long_ += [tuple(v), vneg(v)]
        real = _comp_A(N, range(3)) + long_ + _comp_short(N, [3]) + _comp_short(N, [3], 2)
        diag = [1, 1, 1, -2]
        ds = [Q(1), Q(0), Q(-1), Q(1)]
    else:
        # ε-component kind and size, δ-component kind and size
        spec = {
            "B(T,T')": ("B", m, "BC", n),
            "BC(T,T')": ("BC", m, "BC", n),
            "C(T,T')": ("C", m, "C", n),
            "D(T,T')": ("D", m, "C", n),
            "B(1,T)": ("B", 1, "BC", n),
            "C(1,T)": ("C", 1, "C", n),
            "D(1,T)": ("D", n, "C", 1),
            "B(T,1)": ("B", m, "BC", 1),
            "D(2,T)": ("D", 2, "C", n),
        }[f]
        ek, em, dk, dn = spec
        basis = [eps(i) for i in range(1, em + 1)] + [delta(i) for i in range(1, dn + 1)]
        N = len(basis)
        real = _comp(ek, N, range(em)) + _comp(dk, N, range(em, N))
        diag = [1] * em + [-1] * dn
        ds = [Q(0)] * N
        ds[0] = ds[em] = Q(1)
    g = _diag(diag)
    R0 = RootSupersystem.make(basis, g, real)
    ds = tuple(ds)
    assert R0.form(ds, ds) == 0
    orb = _orbit(R0.form, real, ds)
    if symmetric_orbit:
        orb |= {vneg(v) for v in orb}
    return RootSupersystem.make(basis, g, list(real) + list(orb), d, delta_star=ds)


# ---------------------------------------------------------------- queries

def form_eval(R, a, b):
    return R.form(a, b)


def classify_root(R, a):
    a = tuple(Q(x) for x in a)
    if a not in R.roots:
        raise NotARoot(R.label(a) if len(a) == R.dim else str(a))
    if is_zero(a):
        return "Zero"
    return "Real" if R.form(a, a) != 0 else "Nonsingular"


def reflect(R, alpha, beta):
    return reflect_vec(R.form, alpha, beta)


def weyl_orbit(R, v):
    return _orbit(R.form, R.real, tuple(Q(x) for x in v))


class RootString(NamedTuple):
    p: int
    q: int


def root_string(R, alpha, beta):
    aa = R.form(alpha, alpha)
    if aa == 0:
        raise NotReflectable("alpha must be real")
    c = 2 * R.form(beta, alpha) / aa
    K = int(abs(c)) + 8
    D, roots = R._scaled
    a = [x * D for x in alpha]
    b = [x * D for x in beta]
    if any(x.denominator != 1 for x in a + b):
        ks = [k for k in range(-K, K + 1) if vadd(beta, vscale(k, alpha)) in R.roots]
    else:
        a = [int(x) for x in a]
        ks = []
        v = [int(y) - K * x for x, y in zip(a, b)]
        for k in range(-K, K + 1):
            if tuple(v) in roots:
                ks.append(k)
            v = [x + y for x, y in zip(v, a)]
    if 0 not in ks:
        raise NotARoot("beta not in R")
    lo, hi = min(ks), max(ks)
    if ks != list(range(lo, hi + 1)) or c.denominator != 1 or (-lo) - hi != c:
        raise BrokenString(f"alpha={R.label(alpha)} beta={R.label(beta)} ks={ks}")
    return RootString(-lo, hi)


def _span_basis(vectors):
    red, _ = linalg.rref(list(vectors))
    return red


def form_nondegenerate(R):
    if not R.nonzero:
        return False
    B = _span_basis(R.nonzero)
    G = [[R.form(a, b) for b in B] for a in B]
    return linalg.det(G) != 0


def check_axioms(R) -> Report:
    v = []
    roots = R.roots
    zero = R.zero
    if zero not in roots:
        v.append(("S1", "0 not in R"))
    if not R.nonzero:
        v.append(("S1", "roots do not span a nontrivial lattice"))
    for a in R.nonzero:
        if vneg(a) not in roots:
            v.append(("S2", R.label(a)))
    checked = 0
    for a in R.real:
        aa = R.form(a, a)
        for b in roots:
            checked += 1
            c = 2 * R.form(a, b) / aa
            if c.denominator != 1:
                v.append(("S3", (R.label(a), R.label(b))))
                continue
            try:
                root_string(R, a, b)
            except BrokenString as e:
                v.append(("S4", str(e)))
    for a in R.nonsingular:
        for b in roots:
            if R.form(a, b) != 0:
                checked += 1
                if vsub(b, a) not in roots and vadd(b, a) not in roots:
                    v.append(("S5", (R.label(a), R.label(b))))
    if R.nonzero and not form_nondegenerate(R):
        v.append(("form", "degenerate on root span"))
    return Report("axioms", tuple(v), checked)


def _components(R, vecs):
    vecs = list(vecs)
    parent = list(range(len(vecs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(vecs)), 2):
        if R.form(vecs[i], vecs[j]) != 0:
            parent[find(i)] = find(j)
    groups = {}
    for i, x in enumerate(vecs):
        groups.setdefault(find(i), []).append(x)

    def key(g):
        first = min(next(k for k, c in enumerate(x) if c != 0) for x in g)
        return (first, len(g))

    return sorted((sorted(g, key=graded_lex_key) for g in groups.values()), key=key)


def is_irreducible(R):
    return len(_components(R, R.nonzero)) == 1


def real_components(R):
    return _components(R, R.real)


def length_classes(R, component):
    comp = list(component)
    sign = 1 if R.form(comp[0], comp[0]) > 0 else -1
    norms = {a: sign * R.form(a, a) for a in comp}
    m = min(norms.values())
    short = [a for a in comp if norms[a] == m]
    cs = set(comp)
    ex = [a for a in comp if a not in short and any(vscale(2, s) == a for s in short)]
    exs = set(ex)
    long_ = [a for a in comp if norms[a] != m and a not in exs]
    del cs
    return short, long_, ex


def even_odd_partition(R):
    """Return (even roots including 0, odd roots)."""
    roots = R.roots
    desc = R.descriptor
    if desc is None and R.nonsingular:
        try:
            desc = recognize(R)
        except Unrecognized:
            desc = None
    if desc is not None and desc.family == "BC(T,T')":
        comps = real_components(R)
        neg = [c for c in comps if R.form(c[0], c[0]) < 0]
        second = neg[0] if neg else comps[-1]
        short = set(length_classes(R, second)[0])
        even = {a for a in R.real if a not in short}
    else:
        even = {a for a in R.real if vscale(2, a) not in roots}
    even.add(R.zero)
    odd = set(roots) - even
    return frozenset(even), frozenset(odd)


# ---------------------------------------------------------------- recognition

def _component_names(R, comp):
    n = linalg.rank(comp)
    N = len(comp)
    cs = set(comp)
    if any(vscale(2, a) in cs for a in comp):
        return {("BC", n)}
    sign = 1 if R.form(comp[0], comp[0]) > 0 else -1
    norms = sorted({sign * R.form(a, a) for a in comp})
    names = set()
    if len(norms) == 1:
        if N == n * (n + 1):
            names.add(("A", n))
        if n >= 3 and N == 2 * n * (n - 1):
            names.add(("D", n))
    elif len(norms) == 2:
        ratio = norms[1] / norms[0]
        nshort = sum(1 for a in comp if sign * R.form(a, a) == norms[0])
        if ratio == 2 and N == 2 * n * n:
            if nshort == 2 * n:
                names.add(("B", n))
            if nshort == 2 * n * (n - 1):
                names.add(("C", n))
        if ratio == 3 and n == 2 and N == 12:
            names.add(("G", 2))
    if not names:
        raise Unrecognized(f"component of rank {n} with {N} roots")
    return names


def _has(names, letter, cond=lambda n: True):
    return [n for (l, n) in names if l == letter and cond(n)]


def recognize(R) -> TypeDescriptor:
    if not R.nonzero:
        raise Unrecognized("empty root set")
    if not is_irreducible(R):
        raise Unrecognized("reducible")
    comps = real_components(R)
    info = [(_component_names(R, c), c) for c in comps]
    positive = [R.form(c[0], c[0]) > 0 for c in comps]

    if not R.nonsingular:
        (names, c), = info
        pos = positive[0]
        for letter in ("A", "D", "B", "C", "BC"):
            hit = _has(names, letter)
            if hit:
                n = hit[0]
                if letter == "BC" and not pos:
                    return TypeDescriptor("B(0,T)", (0, n))
                if letter == "A":
                    return TypeDescriptor("A", (n + 1,))
                return TypeDescriptor(letter, (n,))
        raise Unrecognized("root system")

    real_rank = linalg.rank(list(R.real)) if R.real else 0
    if real_rank < R.span_rank:
        if len(info) == 1:
            names = info[0][0]
            if _has(names, "A"):
                return TypeDescriptor("Adot(0,T)", (0, _has(names, "A")[0] + 1))
            if _has(names, "C") or _has(names, "B", lambda n: n == 2):
                n = (_has(names, "C") or [2])[0]
                return TypeDescriptor("Cdot(0,T)", (0, n))
        if len(info) == 2 and all(_has(x[0], "A") for x in info):
            a, b = (_has(x[0], "A")[0] + 1 for x in info)
            if not positive[0] and positive[1]:
                a, b = b, a
            return TypeDescriptor("Adot(T,T')", (a, b))
        raise Unrecognized("imaginary type")

    if len(info) == 3:
        if all(_has(x[0], "A", lambda n: n == 1) for x in info):
            n1, n2 = (R.form(c[0], c[0]) for c in comps[:2])
            return TypeDescriptor("D(2,1,lambda)", (2, 1), n2 / n1)
        a1 = [i for i, x in enumerate(info) if _has(x[0], "A", lambda n: n == 1)]
        rest = [i for i in range(3) if i not in a1[:2]]
        if len(a1) >= 2:
            cn = _has(info[rest[0]][0], "C", lambda n: n >= 2) or _has(info[rest[0]][0], "B", lambda n: n == 2)
            if cn:
                return TypeDescriptor("D(2,T)", (2, cn[0]))
        raise Unrecognized("three real components")
    if len(info) != 2:
        raise Unrecognized("real type needs two or three components")

    (n1, c1), (n2, c2) = info
    p1, p2 = positive

    def pick(order_first, la, ca, lb, cb):
        """Try assigning component letters la/lb under conditions ca/cb."""
        for (na, pa), (nb, pb) in (((n1, p1), (n2, p2)), ((n2, p2), (n1, p1))) if not order_first else (((n1, p1), (n2, p2)),):
            x = _has(na, la, ca)
            y = _has(nb, lb, cb)
            if x and y:
                return x[0], y[0], pa, pb
        return None

    def sym(la, ca):
        hit = None
        for (na, pa), (nb, pb) in (((n1, p1), (n2, p2)), ((n2, p2), (n1, p1))):
            x, y = _has(na, la, ca), _has(nb, la, ca)
            if x and y:
                hit = (x[0], y[0], pa, pb)
                if pa and not pb:
                    return hit
        return hit

    ge2 = lambda n: n >= 2
    one = lambda n: n == 1
    hit = sym("A", lambda n: True)
    if hit and hit[0] == hit[1]:
        return TypeDescriptor("A(l,l)", (hit[0], hit[0]))
    hit = pick(False, "B", ge2, "BC", ge2)
    if hit:
        return TypeDescriptor("B(T,T')", (hit[0], hit[1]))
    hit = pick(False, "BC", lambda n: True, "BC", lambda n: True)
    if hit:
        a, b = hit[0], hit[1]
        if a >= 2 and b >= 2:
            hs = sym("BC", ge2)
            a, b = hs[0], hs[1]
        elif b == 1 and a != 1:
            a, b = b, a
        return TypeDescriptor("BC(T,T')", (a, b))
    hit = pick(False, "D", lambda n: n >= 3, "C", ge2)
    if hit:
        return TypeDescriptor("D(T,T')", (hit[0], hit[1]))
    cc = lambda na: _has(na, "C", ge2) or _has(na, "B", lambda n: n == 2)
    if cc(n1) and cc(n2) and not (_has(n1, "A", one) or _has(n2, "A", one)):
        a, b = cc(n1)[0], cc(n2)[0]
        if not p1 and p2:
            a, b = b, a
        return TypeDescriptor("C(T,T')", (a, b))
    hit = pick(False, "A", one, "BC", lambda n: True)
    if hit:
        return TypeDescriptor("B(1,T)", (1, hit[1]))
    hit = pick(False, "A", one, "B", lambda n: n == 3)
    if hit:
        return TypeDescriptor("AB(1,3)", (1, 3))
    for na, nb in ((n1, n2), (n2, n1)):
        if _has(na, "A", one) and cc(nb):
            return TypeDescriptor("C(1,T)", (1, cc(nb)[0]))
    hit = pick(False, "A", one, "D", lambda n: n >= 3)
    if hit:
        return TypeDescriptor("D(1,T)", (1, hit[1]))
    hit = pick(False, "BC", one, "B", ge2)
    if hit:
        return TypeDescriptor("B(T,1)", (hit[1], 1))
    hit = pick(False, "BC", one, "G", lambda n: True)
    if hit:
        return TypeDescriptor("G(1,2)", (1, 2))
    raise Unrecognized("no matching real-type row")


_D21_ORBIT = (
    lambda l: l, lambda l: 1 / l, lambda l: -1 - l, lambda l: -1 / (1 + l),
    lambda l: -l / (1 + l), lambda l: -(1 + l) / l,
)


def descriptors_equivalent(a: TypeDescriptor, b: TypeDescriptor) -> bool:
    """Equality up to parameter symmetries of the classification tables."""
    if a.family != b.family:
        return False
    if a.family == "D(2,1,lambda)":
        return any(g(a.lam) == b.lam for g in _D21_ORBIT)
    if a.family in ("Adot(T,T')", "C(T,T')") or (a.family == "BC(T,T')" and min(a.ranks) >= 2):
        return sorted(a.ranks) == sorted(b.ranks)
    return a.ranks == b.ranks


# ---------------------------------------------------------------- bases

def lattice_coords(basis_vectors, v):
    """Rational coordinates of v in terms of independent basis_vectors."""
    A = linalg.transpose(list(basis_vectors))
    x = linalg.solve(A, list(v))
    return x


def _is_z_basis(R, pi):
    if linalg.rank(list(pi)) != len(pi) or len(pi) != R.span_rank:
        return False
    sc = linalg.SpanCoordinates([dict(enumerate(p)) for p in pi])
    for a in R.nonzero:
        try:
            c = sc.coords(dict(enumerate(a)))
        except ValueError:
            return False
        if any(x.denominator != 1 for x in c):
            return False
    return True


def partial_sum_ok(R, pi):
    rx = set(R.nonzero)
    steps = list(pi) + [vneg(p) for p in pi]
    seen = {p for p in steps if p in rx}
    todo = list(seen)
    while todo:
        x = todo.pop()
        for s in steps:
            y = vadd(x, s)
            if y in rx and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen == rx


def positive_by_functionals(v, functionals):
    for f in functionals:
        s = sum((a * b for a, b in zip(f, v)), Q(0))
        if s != 0:
            return s > 0
    return False


def _indecomposables(R, functionals):
    pos = [a for a in R.nonzero if positive_by_functionals(a, functionals)]
    ps = set(pos)
    out = []
    for a in pos:
        if not any(vsub(a, b) in ps for b in pos if b != a):
            out.append(a)
    return out


@dataclass(frozen=True)
class IntegralBase:
    roots: tuple
    partial_sums: bool
    skipped_partial_sum_check: bool = False

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)


def integral_base(R, functionals=None) -> IntegralBase:
    is_all = R.descriptor is not None and R.descriptor.family == "A(l,l)"
    n = R.dim
    unit_orders = []
    if functionals is not None:
        unit_orders.append(functionals)
    unit_orders.append([tuple(_unit(n, i)) for i in range(n)])
    for perm in itertools.islice(itertools.permutations(range(n)), 60):
        for signs in itertools.islice(itertools.product((1, -1), repeat=n), 8):
            unit_orders.append([tuple(_unit(n, i, s)) for i, s in zip(perm, signs)])
    for fs in unit_orders:
        pi = _indecomposables(R, fs)
        pi = sorted(pi, key=lambda v: [-x for f in fs for x in [sum(a * b for a, b in zip(f, v))]])
        if len(pi) == R.span_rank and _is_z_basis(R, pi):
            if is_all:
                return IntegralBase(tuple(pi), False, True)
            if partial_sum_ok(R, pi):
                return IntegralBase(tuple(pi), True)
    for pi in itertools.combinations(R.nonzero, R.span_rank):
        if _is_z_basis(R, pi):
            if is_all:
                return IntegralBase(tuple(pi), False, True)
            if partial_sum_ok(R, pi):
                return IntegralBase(tuple(pi), True)
    raise NoBaseFound(str(R.descriptor))


# ---------------------------------------------------------------- unions

SERIES = {
    "B(0,T)": "osp-odd", "B(1,T)": "osp-odd", "B(T,1)": "osp-odd", "B(T,T')": "osp-odd",
    "Cdot(0,T)": "osp-even", "D(2,T)": "osp-even", "D(1,T)": "osp-even",
    "D(T,T')": "osp-even", "D(2,1,lambda)": "osp-even",
    "Adot(0,T)": "sl", "Adot(T,T')": "sl",
}


def _embed(small, big, v):
    pos = {s: i for i, s in enumerate(big.basis)}
    out = [Q(0)] * big.dim
    for s, x in zip(small.basis, v):
        if s not in pos:
            raise IncompatibleFamily(f"symbol {s} missing from larger system")
        out[pos[s]] = x
    return tuple(out)


@dataclass(frozen=True)
class ChainLink:
    small: RootSupersystem
    big: RootSupersystem
    image: frozenset
    included: bool
    closed: bool
    bases_agree: bool


def direct_union_chain(descriptors):
    descriptors = list(descriptors)
    for a, b in zip(descriptors, descriptors[1:]):
        sa, sb = SERIES.get(a.family, a.family), SERIES.get(b.family, b.family)
        if sa != sb:
            raise IncompatibleFamily(f"{a} and {b}")
        if len(a.ranks) != len(b.ranks) or any(x > y for x, y in zip(a.ranks, b.ranks)) or a.ranks == b.ranks:
            raise IncompatibleFamily(f"ranks must increase: {a} -> {b}")
    systems = [build(d) for d in descriptors]
    links = []
    for small, big in zip(systems, systems[1:]):
        image = frozenset(_embed(small, big, v) for v in small.roots)
        included = image <= big.roots
        forms_agree = all(
            small.form(a, b) == big.form(_embed(small, big, a), _embed(small, big, b))
            for a in small.nonzero for b in small.nonzero
        )
        closed = all(
            vadd(a, b) in image
            for a in image for b in image
            if vadd(a, b) in big.roots
        )
        try:
            pb = set(integral_base(big))
            ps = {_embed(small, big, p) for p in integral_base(small)}
            agree = ps <= pb
        except NoBaseFound:
            agree = False
        links.append(ChainLink(small, big, image, included and forms_agree, closed, agree))
    return systems, links


# ---------------------------------------------------------------- isomorphism

@dataclass(frozen=True)
class RootIso:
    """Linear isomorphism of root spans fixed by the images of a base."""

    source: RootSupersystem
    target: RootSupersystem
    base: tuple
    images: tuple
    k: Q

    @cached_property
    def _coords(self):
        return linalg.SpanCoordinates([dict(enumerate(p)) for p in self.base])

    def __call__(self, v):
        c = self._coords.coords(dict(enumerate(v)))
        out = [Q(0)] * self.target.dim
        for ci, img in zip(c, self.images):
            if ci:
                for j, x in enumerate(img):
                    out[j] += ci * x
        return tuple(out)

    def inverse(self):
        return RootIso(self.target, self.source, self.images, self.base, 1 / self.k)

    def symbol_map(self):
        return {self.source.label(b): self.target.label(i) for b, i in zip(self.base, self.images)}


def _verify_iso(R, S, base, images, k):
    iso = RootIso(R, S, tuple(base), tuple(images), Q(k))
    seen = set()
    for a in R.nonzero:
        fa = iso(a)
        if fa not in S.roots or fa in seen:
            return None
        seen.add(fa)
    if len(seen) != len(S.nonzero):
        return None
    for a, b in itertools.product(base, repeat=2):
        if S.form(iso(a), iso(b)) != k * R.form(a, b):
            return None
    return iso


def is_isomorphic(R, S):
    """Search for f: span R -> span S with f(R) = S and (f a, f b) = k (a, b)."""
    if (len(R.roots), len(R.real), len(R.nonsingular), R.span_rank) != (
        len(S.roots), len(S.real), len(S.nonsingular), S.span_rank
    ):
        return None
    base = list(integral_base(R))
    if R.basis == S.basis:
        for a in base:
            for b in base:
                if R.form(a, b) != 0:
                    k = S.form(a, b) / R.form(a, b)
                    if k != 0:
                        iso = _verify_iso(R, S, base, base, k)
                        if iso is not None:
                            return iso
                    break
            else:
                continue
            break
    base.sort(key=lambda a: R.form(a, a) == 0)
    G = [[R.form(a, b) for b in base] for a in base]
    cands = list(S.nonzero)
    S_real = set(S.real)
    n = len(base)

    def rec(i, imgs, k):
        if i == n:
            if k is None:
                return None
            return _verify_iso(R, S, base, imgs, k)
        want_real = G[i][i] != 0
        for c in cands:
            if (c in S_real) != want_real or c in imgs:
                continue
            kk = k
            ok = True
            for j in range(i + 1):
                img_j = c if j == i else imgs[j]
                val = S.form(c, img_j)
                if G[i][j] == 0:
                    if val != 0:
                        ok = False
                        break
                elif kk is None:
                    kk = val / G[i][j]
                    if kk == 0:
                        ok = False
                        break
                elif val != kk * G[i][j]:
                    ok = False
                    break
            if not ok:
                continue
            if linalg.rank(imgs + [c]) != i + 1:
                continue
            res = rec(i + 1, imgs + [c], kk)
            if res is not None:
                return res
        return None

    return rec(0, [], None)


# ---------------------------------------------------------------- non-root audit

NONROOT_COMBOS = (
    (2, -2, -1), (2, -2, -3), (1, -1, -3), (2, -2, -2), (2, -1, -1),
    (1, -2, -1), (2, -1, -2), (1, -2, -2), (2, -1, -3), (1, -2, -3),
    (2, 1, -1), (1, 2, 1), (1, -1, 1), (1, 1, 1), (1, 1, -1),
    (0, 2, -2), (0, 2, 2), (2, 0, -2), (1, 0, -2), (0, 1, 2),
    (2, 1, 0), (2, -1, 0), (1, 2, 0), (1, -2, 0), (2, 0, -1),
    (0, 2, 1), (1, 0, 1), (0, 1, -1), (2, 0, 0), (0, 2, 0),
)
"""Coefficients (a, b, c) of a*theta1 + b*theta2 + c*gamma that are not roots."""


def rem3_nonroot_audit(R, family=None, p=1, q=2, i=1) -> Report:
    fam = family or (R.descriptor.family if R.descriptor else None)
    if fam not in ("C(T,T')", "BC(T,T')"):
        return Report("nonroot", (("family", str(fam)),))
    n_eps = sum(1 for s in R.basis if s.kind == "eps")
    e = R.vector({eps(i): 1})
    if n_eps == 1:
        e = vscale(Q(1, 2) if fam == "C(T,T')" else Q(1), R.vector({eps(1): 1}))
    dp, dq = R.vector({delta(p): 1}), R.vector({delta(q): 1})
    gamma = vadd(dp, dq)
    t1, t2 = vadd(e, dp), vsub(e, dp)
    v = []
    f = R.form
    if f(vadd(t1, t2), gamma) != 0:
        v.append(("identity", "(t1+t2,g)=0"))
    d = vsub(t1, t2)
    if f(d, d) != 2 * f(d, gamma):
        v.append(("identity", "(t1-t2,t1-t2)=2(t1-t2,g)"))
    if f(d, gamma) != f(gamma, gamma):
        v.append(("identity", "(t1-t2,g)=(g,g)"))
    if f(gamma, t1) == 0 or f(gamma, t2) == 0:
        v.append(("identity", "(g,t_i) nonzero"))
    for a, b, c in NONROOT_COMBOS:
        w = vadd(vadd(vscale(a, t1), vscale(b, t2)), vscale(c, gamma))
        if w in R.roots:
            v.append(("root", (a, b, c), R.label(w)))
    return Report("nonroot", tuple(v), len(NONROOT_COMBOS) + 4)
