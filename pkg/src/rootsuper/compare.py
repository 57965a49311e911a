"""Transport of root-system isomorphisms to algebra isomorphisms."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction as Q

from . import linalg
from .chevalley import ConstantsTable, TotalOrder, assemble_algebra, constants_from_seeds, symbol_order
from .errors import NotHomomorphism, SeedMismatch
from .rootsys import is_isomorphic, lattice_coords, vadd
from .superalg import AlgebraMap, verify_homomorphism

__all__ = [
    "Verdict",
    "conjugacy_verdict",
    "transport_constants",
    "transport_iso",
    "transport_order",
    "transport_seeds",
    "model_iso",
    "verify_homomorphism",
]


class Verdict(str, Enum):
    Conjugate = "Conjugate"
    NotConjugate = "NotConjugate"


def transport_order(order: TotalOrder, f) -> TotalOrder:
    """The order on the target with f(u) positive exactly when u is."""
    base, imgs = list(f.base), [list(v) for v in f.images]
    out = []
    for phi in order.functionals:
        vals = [sum((x * y for x, y in zip(phi, b)), Q(0)) for b in base]
        psi = linalg.solve(imgs, vals)
        out.append(tuple(psi))
    return TotalOrder(tuple(out))


def transport_seeds(seeds, f):
    return {(f(a), f(b)): Q(v) for (a, b), v in seeds.items()}


def transport_constants(R, S, f, table: ConstantsTable | None = None, r=Q(1)) -> tuple:
    """Constants on R and the matched constants on S (scale s = r / k)."""
    table = table or constants_from_seeds(R, None, None, r)
    order_s = transport_order(table.order, f)
    other = constants_from_seeds(S, order_s, transport_seeds(table.seeds, f), table.rScale / f.k)
    return table, other


def _check_seeds(T, T2, f):
    for (a, b), v in T.N.items():
        if T2.N.get((f(a), f(b))) != v:
            raise SeedMismatch(f"N[{T.R.label(a)}, {T.R.label(b)}] differs under f")


def transport_iso(g, L, f, T: ConstantsTable, T2: ConstantsTable) -> AlgebraMap:
    """h_pi -> h'_{f(pi)}, e_a -> e'_{f(a)} between assembled algebras.

    ``g``/``L`` come from ``assemble_algebra`` over f's source/target with
    tables ``T``/``T2``.
    """
    if T2.rScale * f.k != T.rScale:
        raise SeedMismatch("scales must satisfy r = s k")
    _check_seeds(T, T2, f)
    base_g, base_L = list(g.meta["base"]), list(L.meta["base"])
    ell = len(base_g)
    images = []
    for p in base_g:
        c = lattice_coords(base_L, f(p))
        images.append({i: x for i, x in enumerate(c) if x})
    pos_L = L.meta["root_index"]
    for a in g.meta["roots"]:
        images.append({pos_L[f(a)]: Q(1)})
    assert len(images) == g.dim and ell == len(base_L)
    m = AlgebraMap(g, L, tuple(images), True)
    rep = verify_homomorphism(m)
    if not rep.ok:
        raise NotHomomorphism(str(rep.violations[:3]))
    return m


def model_iso(model, extraction, R, T: ConstantsTable, f) -> AlgebraMap:
    """Chevalley-assembled algebra over R into ``to_abstract(model)``.

    ``extraction`` is ``realize.chevalley_vectors`` run with the transported
    order, seeds and scale, so its vectors realize T.
    """
    from .realize import mscale, to_abstract
    g = assemble_algebra(R, T)
    L = to_abstract(model)
    s = extraction.table.rScale
    images = []
    for p in g.meta["base"]:
        images.append(model.coords(mscale(s, model.t_vector(f(p)))))
    for a in g.meta["roots"]:
        images.append(model.coords(extraction.vectors[f(a)]))
    m = AlgebraMap(g, L, tuple(images), True)
    rep = verify_homomorphism(m)
    if not rep.ok:
        raise NotHomomorphism(str(rep.violations[:3]))
    return m


def conjugacy_verdict(R, S) -> Verdict:
    return Verdict.Conjugate if is_isomorphic(R, S) is not None else Verdict.NotConjugate
