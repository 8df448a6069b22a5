"""
Flag complexes of subspaces (the Tits building and its suspension model),
the layer subposets used to split the differential, the subdivision models
built from E*(V), and the comparison maps between all of these.

Every equivalence is checked on integral homology: ``induced_map`` returns
the matrix of a simplicial map on homology bases and ``is_homology_iso``
tests that it is invertible over Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import gfgeom as gf
from . import scx
from .errors import BadLine, NotASimplicialMap
from .exactalg import HomologyGroup, IntMatrix, determinant, homology, smith_normal_form
from .scx import Poset, SimplicialComplex, SimplicialMap


def _flag_complex(subs: List[gf.Subspace], forbid_pair: Optional[Tuple[int, int]] = None,
                  name: str = "") -> SimplicialComplex:
    m = len(subs)
    nested = [set() for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if subs[i].dim < subs[j].dim and subs[i].issubspace(subs[j]):
                nested[i].add(j)
    # ids are sorted by dimension, so a flag is an increasing id chain of
    # consecutive inclusions
    def member(s):
        if forbid_pair is not None and s[0] == forbid_pair[0] and s[-1] == forbid_pair[1]:
            return False
        return all(b in nested[a] for a, b in zip(s, s[1:]))

    # a flag has at most one subspace of each dimension
    bound = len({S.dim for S in subs}) - 1
    if forbid_pair is not None:
        bound -= 1
    return SimplicialComplex(subs, member, None, name, max(bound, 0))


@lru_cache(maxsize=None)
def tits(q: int, n: int) -> SimplicialComplex:
    """T(V): flags of proper nonzero subspaces of F_q^n."""
    subs = [S for k in range(1, n) for S in gf.enumerate_subspaces(q, n, k)]
    return _flag_complex(subs, name=f"T(F_{q}^{n})")


@lru_cache(maxsize=None)
def sigma_tits(q: int, n: int) -> SimplicialComplex:
    """Flags of arbitrary subspaces that do not contain both 0 and V."""
    subs = gf.all_subspaces(q, n)
    return _flag_complex(subs, forbid_pair=(0, len(subs) - 1), name=f"ST(F_{q}^{n})")


def ct_union(q: int, n: int) -> SimplicialComplex:
    """Union of the cones Ct(W) over hyperplanes W: flags avoiding V."""
    subs = [S for S in gf.all_subspaces(q, n) if not S.is_full()]
    return _flag_complex(subs, name=f"Ct-union(F_{q}^{n})")


def flag_of(C: SimplicialComplex, s) -> Tuple[gf.Subspace, ...]:
    return C.simplex_labels(s)


# ---------------------------------------------------------------------------
# posets of layers

def layer_order_complex(P: gf.LayerPoset, name: str = "BJ") -> SimplicialComplex:
    # each strict step in a chain of layers moves the lower or the upper end
    return scx.order_complex(Poset(P.elements, gf.Layer.leq, name), name=name, dim_bound=2 * P.n)


def subposet_J1(q: int, n: int) -> gf.LayerPoset:
    """Layers (X, Y) with dim(Y/X) <= n-2 whenever Y != V, together with all (X, V)."""
    J = gf.layer_poset(q, n)
    return J.restrict(lambda x: x.upper.is_full() or x.width <= n - 2)


def subposet_J2(q: int, n: int) -> gf.LayerPoset:
    """The layer poset without the layers (L, V) with L a line."""
    J = gf.layer_poset(q, n)
    return J.restrict(lambda x: not (x.upper.is_full() and x.lower.dim == 1))


def below_layer(q: int, n: int, top: gf.Layer) -> gf.LayerPoset:
    """Proper layers strictly below ``top``."""
    return gf.layer_poset(q, n).below(top, strict=True)


# ---------------------------------------------------------------------------
# subdivision models

def _span(q: int, n: int, vectors) -> gf.Subspace:
    return gf.span(q, n, list(vectors))


@lru_cache(maxsize=None)
def sd_estar(q: int, n: int) -> SimplicialComplex:
    return scx.barycentric_sd(scx.estar_complex(q, n))


def model_X(q: int, n: int) -> SimplicialComplex:
    """sd E*(V) minus the chains K_0 < ... < K_p with <K_0> a line and <K_p> = V."""
    sd = sd_estar(q, n)
    spans = [_span(q, n, K) for K in sd.labels]

    def keep(s):
        return not (spans[s[0]].dim == 1 and spans[s[-1]].is_full())

    return sd.subcomplex(keep, f"X(F_{q}^{n})")


@lru_cache(maxsize=None)
def sd_punctured_full(q: int, n: int) -> SimplicialComplex:
    return scx.barycentric_sd(scx.punctured_full(q, n))


def model_XL(q: int, n: int, L: gf.Subspace) -> SimplicialComplex:
    """Vertices K of sd E(V-0) with L <= <K>, minus chains spanning L at the bottom and V at the top."""
    if L.dim != 1:
        raise BadLine(f"expected a line, got dimension {L.dim}")
    sd = sd_punctured_full(q, n)
    spans = [_span(q, n, K) for K in sd.labels]
    allowed = [L.issubspace(S) for S in spans]
    labels = [K for K, a in zip(sd.labels, allowed) if a]
    sub_spans = [S for S, a in zip(spans, allowed) if a]
    sets = [frozenset(K) for K in labels]

    def member(s):
        if not all(sets[a] < sets[b] for a, b in zip(s, s[1:])):
            return False
        return not (sub_spans[s[0]] == L and sub_spans[s[-1]].is_full())

    return SimplicialComplex(labels, member, None, f"X_L(F_{q}^{n})", sd.dim_bound)


def map_qL(q: int, n: int, L: gf.Subspace) -> SimplicialMap:
    """Quotient map X_L -> sd E*(V/L).

    A vertex K goes to its image in V/L with the zero class removed, or to
    {0} when K lies inside L.  This is simplicial for n = 2 only; for n >= 3
    incomparable images occur and NotASimplicialMap is raised.
    """
    if L.dim != 1:
        raise BadLine(f"expected a line, got dimension {L.dim}")
    if n != 2:
        raise NotASimplicialMap("the vertex rule for the quotient map is only simplicial when dim V = 2")
    dom = model_XL(q, n, L)
    cod = sd_estar(q, n - 1)
    qm = gf.quotient_map(q, n, L)
    zero = gf.zero_vec(n - 1)

    def f(K):
        img = {qm(v) for v in K} - {zero}
        return tuple(sorted(img)) if img else (zero,)

    m = SimplicialMap.from_labels(dom, cod, f)
    m.check()
    return m


# ---------------------------------------------------------------------------
# comparison maps

def map_g(q: int, n: int) -> SimplicialMap:
    """sd ST(V) -> BJ(V) induced by the flag (W_0 < ... < W_p) |-> (W_0, W_p)."""
    dom = scx.barycentric_sd(sigma_tits(q, n))
    cod = layer_order_complex(gf.layer_poset(q, n))
    return SimplicialMap.from_labels(dom, cod, lambda fl: gf.Layer(fl[0], fl[-1]))


def map_gprime(q: int, n: int) -> SimplicialMap:
    """sd sd E*(V) -> BJ(V) induced by (X_0 < ... < X_p) |-> (<X_0>, <X_p>)."""
    dom = scx.barycentric_sd(sd_estar(q, n))
    cod = layer_order_complex(gf.layer_poset(q, n))
    return SimplicialMap.from_labels(dom, cod, lambda ch: gf.Layer(_span(q, n, ch[0]), _span(q, n, ch[-1])))


def map_ARprime(q: int, n: int) -> SimplicialMap:
    """sd E*(V) -> ST(V), X |-> <X>."""
    return SimplicialMap.from_labels(sd_estar(q, n), sigma_tits(q, n), lambda X: _span(q, n, X))


def image_complex(f: SimplicialMap, name: str = "") -> SimplicialComplex:
    """The image of a simplicial map, as a subcomplex of its codomain."""
    simp = set()
    for s in f.domain.all_simplices():
        simp.add(f.image(s))
    return f.codomain.subcomplex(lambda s: s in simp, name)


def map_image_J1(q: int, n: int) -> gf.LayerPoset:
    """g applied to the simplices of AR'(sd E**(V)); used to cross-check the J1 filter."""
    dstar = scx.estar_doublestar(q, n)
    sd = scx.barycentric_sd(dstar)
    ar = SimplicialMap.from_labels(sd, sigma_tits(q, n), lambda X: _span(q, n, X))
    flags = {ar.image(s) for s in sd.all_simplices()}
    S = sigma_tits(q, n)
    return gf.LayerPoset(q, n, [gf.Layer(S.labels[fl[0]], S.labels[fl[-1]]) for fl in flags])


# ---------------------------------------------------------------------------
# homology comparisons

@dataclass(frozen=True)
class InducedMap:
    source: HomologyGroup
    target: HomologyGroup
    matrix: IntMatrix  # columns: images of the free source generators, free target coordinates


def induced_map(f: SimplicialMap, k: int, reduced: bool = True) -> InducedMap:
    Hs = scx.homology_in(f.domain, k, reduced)
    Ht = scx.homology_in(f.codomain, k, reduced)
    cols = []
    for z in Hs.cycle_basis[:Hs.rank]:
        c = Ht.coordinates(scx.pushforward(f, z))
        cols.append({i: v for i, v in enumerate(c[:Ht.rank]) if v})
    return InducedMap(Hs, Ht, IntMatrix.from_col_dicts(cols, Ht.rank))


def is_homology_iso(m: InducedMap) -> bool:
    """Rank and torsion agree and the free part is unimodular."""
    if m.source.rank != m.target.rank or m.source.torsion != m.target.torsion:
        return False
    if m.source.rank == 0:
        return True
    return abs(determinant(m.matrix)) == 1


def homology_report(C: SimplicialComplex, top: int, reduced: bool = True) -> List[dict]:
    out = []
    for k, (r, t) in scx.homology_ranks(C, top, reduced).items():
        out.append({"degree": k, "rank": r, "torsion": list(t)})
    return out


def euler_oracle_rank(q: int, n: int) -> int:
    """Rank of the top homology of T(V) from the Euler characteristic, assuming concentration."""
    T = tits(q, n)
    chi = sum((-1) ** k * c for k, c in enumerate(T.f_vector()))
    if n == 2:
        return chi
    # connected, so chi - 1 = (-1)^(n-2) * rank H_{n-2}
    return (-1) ** (n - 2) * (chi - 1)
