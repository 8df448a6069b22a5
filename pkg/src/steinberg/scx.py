"""
Abstract simplicial complexes given by a vertex table and a membership
predicate, plus the concrete complexes built from a vector space.

A simplex is an increasing tuple of vertex ids.  Chains are dicts from
simplices to integers and use the orientation given by the vertex order.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from . import gfgeom as gf
from .errors import CapExceeded, NotACover, NotASimplicialMap
from .exactalg import Chain, ChainComplex, IntMatrix, chain_add, chain_scale, homology

Simplex = Tuple[int, ...]
VERTEX_CAP = 12


def sort_sign(seq: Sequence) -> Tuple[int, tuple]:
    """(sign of the sorting permutation, sorted tuple); sign 0 on repeats."""
    s = list(seq)
    if len(set(s)) != len(s):
        return 0, ()
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(s)


def perm_sign(perm: Sequence[int]) -> int:
    return sort_sign(perm)[0]


class SimplicialComplex:
    """Finite simplicial complex on an ordered vertex table.

    ``member`` receives an increasing tuple of vertex ids of length >= 2
    and must describe a downward closed family; every vertex is a simplex.
    ``member=None`` means the full simplex on the vertices.

    ``max_dim`` is an enumeration cap: asking for simplices above it raises
    CapExceeded.  ``dim_bound`` is a known upper bound on the dimension
    (no simplices above it exist), which makes full enumeration safe.
    """

    def __init__(self, labels: Sequence[Hashable], member: Optional[Callable[[Simplex], bool]] = None,
                 max_dim: Optional[int] = None, name: str = "", dim_bound: Optional[int] = None):
        self.labels: Tuple[Hashable, ...] = tuple(labels)
        self.vid: Dict[Hashable, int] = {x: i for i, x in enumerate(self.labels)}
        if len(self.vid) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        self._member = member
        self.max_dim = max_dim
        self.name = name
        self.dim_bound = dim_bound
        self._cache: Dict[int, Tuple[Simplex, ...]] = {}

    @property
    def nverts(self) -> int:
        return len(self.labels)

    def contains(self, s: Simplex) -> bool:
        if not s:
            return False
        if any(not 0 <= v < self.nverts for v in s):
            return False
        if len(s) == 1:
            return True
        if len(set(s)) != len(s):
            return False
        s = tuple(sorted(s))
        return self._member is None or bool(self._member(s))

    __contains__ = contains

    def contains_labels(self, labels: Iterable[Hashable]) -> bool:
        try:
            return self.contains(tuple(sorted(self.vid[x] for x in labels)))
        except KeyError:
            return False

    def simplex(self, labels: Iterable[Hashable]) -> Simplex:
        return tuple(sorted(self.vid[x] for x in labels))

    def simplex_labels(self, s: Simplex) -> tuple:
        return tuple(self.labels[v] for v in s)

    def simplices(self, k: int) -> Tuple[Simplex, ...]:
        """All k-simplices, in lexicographic order."""
        if k < 0 or (self.dim_bound is not None and k > self.dim_bound):
            return ()
        if self.max_dim is not None and k > self.max_dim:
            raise CapExceeded(f"degree {k} beyond the cap {self.max_dim} of {self.name or 'complex'}")
        if k in self._cache:
            return self._cache[k]
        if k == 0:
            out = tuple((v,) for v in range(self.nverts))
        else:
            prev = self.simplices(k - 1)
            member = self._member
            out = []
            for s in prev:
                for v in range(s[-1] + 1, self.nverts):
                    t = s + (v,)
                    if member is None or member(t):
                        out.append(t)
            out = tuple(out)
        self._cache[k] = out
        return out

    def _check_materializable(self) -> None:
        if self.max_dim is None and self.dim_bound is None and self.nverts > VERTEX_CAP:
            raise CapExceeded(f"{self.name or 'complex'} has {self.nverts} vertices; "
                              f"full materialization is refused beyond {VERTEX_CAP}, use a degree window")

    def dimension(self) -> int:
        self._check_materializable()
        k = 0
        if not self.nverts:
            return -1
        while self.simplices(k + 1):
            k += 1
        return k

    def all_simplices(self) -> List[Simplex]:
        self._check_materializable()
        out: List[Simplex] = []
        k = 0
        while True:
            s = self.simplices(k)
            if not s:
                return out
            out.extend(s)
            k += 1

    def f_vector(self) -> List[int]:
        return [len(self.simplices(k)) for k in range(self.dimension() + 1)]

    def subcomplex(self, member: Callable[[Simplex], bool], name: str = "") -> "SimplicialComplex":
        """Subcomplex on the same vertex table; ``member`` is intersected with ours."""
        mine = self._member

        def both(s):
            return (mine is None or mine(s)) and member(s)

        return SimplicialComplex(self.labels, both, self.max_dim, name, self.dim_bound)

    def with_cap(self, max_dim: Optional[int]) -> "SimplicialComplex":
        return SimplicialComplex(self.labels, self._member, max_dim, self.name, self.dim_bound)

    def to_json(self) -> dict:
        simp = self.all_simplices()
        by_dim: Dict[str, list] = {}
        for s in simp:
            by_dim.setdefault(str(len(s) - 1), []).append(list(s))
        return {"vertices": [label_json(x) for x in self.labels], "simplices_by_dim": by_dim}

    def __repr__(self) -> str:
        return f"SimplicialComplex({self.name or '?'}, {self.nverts} vertices)"


def label_json(x):
    if isinstance(x, gf.Subspace):
        return [list(r) for r in x.basis]
    if isinstance(x, gf.Layer):
        return x.to_json()
    if isinstance(x, (tuple, list, frozenset)):
        return [label_json(y) for y in x]
    return x


# ---------------------------------------------------------------------------
# constructors

def full_complex_E(labels: Sequence[Hashable], max_dim: Optional[int] = None, name: str = "E") -> SimplicialComplex:
    """Every nonempty finite subset of the vertex set is a simplex."""
    return SimplicialComplex(labels, None, max_dim, name)


def _span_dim(q: int, n: int, vectors) -> int:
    return gf.matrix_rank(q, vectors) if vectors else 0


def estar_complex(q: int, n: int, max_dim: Optional[int] = None) -> SimplicialComplex:
    """E*(V): subsets without 0, or containing 0 and spanning a proper subspace."""
    labels = gf.all_vectors(q, n)
    zero = 0  # the zero vector is first in lexicographic order

    def member(s):
        if s[0] != zero:
            return True
        return _span_dim(q, n, [labels[v] for v in s[1:]]) < n

    return SimplicialComplex(labels, member, max_dim, f"E*(F_{q}^{n})")


def full_complex_V(q: int, n: int, max_dim: Optional[int] = None) -> SimplicialComplex:
    return full_complex_E(gf.all_vectors(q, n), max_dim, f"E(F_{q}^{n})")


def estar_punctured(q: int, n: int, max_dim: Optional[int] = None) -> SimplicialComplex:
    """E*(V - 0): nonzero vectors, simplices spanning a proper subspace."""
    labels = gf.nonzero_vectors(q, n)

    def member(s):
        return _span_dim(q, n, [labels[v] for v in s]) < n

    return SimplicialComplex(labels, member, max_dim, f"E*(F_{q}^{n}-0)")


def punctured_full(q: int, n: int, max_dim: Optional[int] = None) -> SimplicialComplex:
    """E(V - 0)."""
    return full_complex_E(gf.nonzero_vectors(q, n), max_dim, f"E(F_{q}^{n}-0)")


def elowern(q: int, n: int, max_dim: Optional[int] = None) -> SimplicialComplex:
    """Union of E(W) over hyperplanes W (vertex set all of V).

    A finite set lies in some hyperplane iff its span is proper, which is
    how the union is tested.
    """
    labels = gf.all_vectors(q, n)

    def member(s):
        return _span_dim(q, n, [labels[v] for v in s]) < n

    return SimplicialComplex(labels, member, max_dim, f"E<n(F_{q}^{n})")


def estar_doublestar(q: int, n: int, max_dim: Optional[int] = None) -> SimplicialComplex:
    """E**(V): E*(V) without the simplices containing 0 whose span has dimension n-1."""
    labels = gf.all_vectors(q, n)

    def member(s):
        if s[0] != 0:
            return True
        return _span_dim(q, n, [labels[v] for v in s[1:]]) < n - 1

    return SimplicialComplex(labels, member, max_dim, f"E**(F_{q}^{n})")


class Poset:
    """Finite poset on an ordered element table."""

    def __init__(self, elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool], name: str = ""):
        self.elements = tuple(elements)
        self.leq = leq
        self.name = name
        self.index = {x: i for i, x in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)


def simplex_poset(C: SimplicialComplex) -> Poset:
    """Simpl(C): simplices (as label tuples) ordered by inclusion."""
    simp = C.all_simplices()
    simp.sort(key=lambda s: (len(s), s))
    labels = [C.simplex_labels(s) for s in simp]
    return Poset(labels, lambda a, b: set(a) <= set(b), f"Simpl({C.name})")


def order_complex(P: Poset, max_dim: Optional[int] = None, name: str = "",
                  dim_bound: Optional[int] = None) -> SimplicialComplex:
    """B(P): the chains of P."""
    m = len(P.elements)
    comp = [set() for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if P.comparable(P.elements[i], P.elements[j]):
                comp[i].add(j)
                comp[j].add(i)

    def member(s):
        # only the last vertex is new during enumeration, but check all pairs
        return all(b in comp[a] for a, b in combinations(s, 2))

    return SimplicialComplex(P.elements, member, max_dim, name or f"B({P.name})", dim_bound)


def barycentric_sd(C: SimplicialComplex, max_dim: Optional[int] = None) -> SimplicialComplex:
    """First barycentric subdivision; vertex labels are label tuples of simplices of C."""
    simp = C.all_simplices()
    simp.sort(key=lambda s: (len(s), s))
    labels = [C.simplex_labels(s) for s in simp]
    sets = [frozenset(s) for s in simp]

    def member(s):
        # ids sorted by dimension of the underlying simplex, so a chain is
        # a sequence of strict inclusions
        return all(sets[a] < sets[b] for a, b in zip(s, s[1:]))

    return SimplicialComplex(labels, member, max_dim, f"sd({C.name})", C.dimension())


# ---------------------------------------------------------------------------
# maps and chains

class SimplicialMap:
    """Vertex map between complexes; images of simplices must be simplices."""

    def __init__(self, domain: SimplicialComplex, codomain: SimplicialComplex, vertex_map: Sequence[int]):
        if len(vertex_map) != domain.nverts:
            raise ValueError("vertex map must be total")
        self.domain, self.codomain = domain, codomain
        self.vertex_map = tuple(vertex_map)

    @classmethod
    def from_labels(cls, domain: SimplicialComplex, codomain: SimplicialComplex, f: Callable) -> "SimplicialMap":
        try:
            return cls(domain, codomain, [codomain.vid[f(x)] for x in domain.labels])
        except KeyError as exc:
            raise NotASimplicialMap(f"vertex image {exc.args[0]!r} not in codomain") from None

    def image(self, s: Simplex) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in s}))

    def check(self, max_degree: Optional[int] = None) -> None:
        top = self.domain.dimension() if max_degree is None else max_degree
        for k in range(1, top + 1):
            for s in self.domain.simplices(k):
                if not self.codomain.contains(self.image(s)):
                    raise NotASimplicialMap(f"image of {self.domain.simplex_labels(s)} is not a simplex")

    def __call__(self, z: Chain) -> Chain:
        return pushforward(self, z)


def pushforward(f: SimplicialMap, z: Chain) -> Chain:
    out: Chain = {}
    for s, c in z.items():
        img = [f.vertex_map[v] for v in s]
        sign, t = sort_sign(img)
        if not f.codomain.contains(tuple(sorted(set(img)))):
            raise NotASimplicialMap(f"image of {s} is not a simplex")
        if sign:
            w = out.get(t, 0) + sign * c
            if w:
                out[t] = w
            else:
                del out[t]
    return out


def ordered_chain(C: SimplicialComplex, terms: Iterable[Tuple[Sequence[Hashable], int]]) -> Chain:
    """Chain of C from (ordered label sequence, coefficient) pairs; repeated labels give 0."""
    out: Chain = {}
    for seq, c in terms:
        sign, s = sort_sign([C.vid[x] for x in seq])
        if not sign or not c:
            continue
        if not C.contains(s):
            raise NotACover(f"{tuple(seq)} is not a simplex of {C.name}")
        w = out.get(s, 0) + sign * c
        if w:
            out[s] = w
        else:
            del out[s]
    return out


def boundary(z: Chain) -> Chain:
    """Alternating face sum of a chain of id tuples (no membership checks)."""
    out: Chain = {}
    for s, c in z.items():
        if len(s) == 1:
            continue
        for i in range(len(s)):
            t = s[:i] + s[i + 1:]
            w = out.get(t, 0) + (c if i % 2 == 0 else -c)
            if w:
                out[t] = w
            else:
                del out[t]
    return out


def chains(C: SimplicialComplex, lo: int, hi: int, relative_to: Optional[Callable[[Simplex], bool]] = None) -> ChainComplex:
    """Simplicial chain complex of C on degrees [lo, hi].

    With ``relative_to`` (a predicate on simplices of a subcomplex) the
    relative chains C(X) / C(A) are returned.
    """
    keep = (lambda s: True) if relative_to is None else (lambda s: not relative_to(s))
    bases = {k: tuple(s for s in C.simplices(k) if keep(s)) for k in range(lo, hi + 1)}
    if C.max_dim is not None and hi + 1 > C.max_dim:
        top_complete = False
    else:
        top_complete = not any(keep(s) for s in C.simplices(hi + 1))
    index = {k: {s: i for i, s in enumerate(b)} for k, b in bases.items()}
    bd = {}
    for k in range(max(lo + 1, 1), hi + 1):
        ent = {}
        rows = index[k - 1]
        for j, s in enumerate(bases[k]):
            for i in range(len(s)):
                r = rows.get(s[:i] + s[i + 1:])
                if r is not None:
                    ent[(r, j)] = 1 if i % 2 == 0 else -1
        bd[k] = IntMatrix(len(bases[k - 1]), len(bases[k]), ent)
    return ChainComplex(lo, hi, bases, bd, top_complete, index)


def homology_in(C: SimplicialComplex, k: int, reduced: bool = True,
                relative_to: Optional[Callable[[Simplex], bool]] = None):
    """Homology of C in degree k, building only degrees k-1 .. k+1."""
    lo = max(k - 1, 0)
    cc = chains(C, lo, k + 1, relative_to)
    return homology(cc, k, reduced=reduced and relative_to is None)


def homology_ranks(C: SimplicialComplex, top: int, reduced: bool = True) -> Dict[int, Tuple[int, Tuple[int, ...]]]:
    """{k: (rank, torsion)} for k = 0 .. top from one chain complex."""
    cc = chains(C, 0, top + 1)
    out = {}
    for k in range(top + 1):
        H = homology(cc, k, reduced=reduced)
        out[k] = (H.rank, H.torsion)
    return out


def mv_decompose(D: SimplicialComplex, B: SimplicialComplex, C: SimplicialComplex, z: Chain) -> Tuple[Chain, Chain]:
    """Split a chain of D as b + c with b in B and c in C.

    A simplex goes to B when it is a simplex of B, otherwise to C.  The
    three complexes may have different vertex tables; simplices are
    translated through their labels.
    """
    b: Chain = {}
    c: Chain = {}
    for s, v in z.items():
        labels = D.simplex_labels(s)
        if B.contains_labels(labels):
            b[B.simplex(labels)] = v
        elif C.contains_labels(labels):
            c[C.simplex(labels)] = v
        else:
            raise NotACover(f"{labels} lies in neither half of the cover")
    return b, c


def translate(src: SimplicialComplex, dst: SimplicialComplex, z: Chain) -> Chain:
    """Re-index a chain of src as a chain of dst with the same vertex labels."""
    out: Chain = {}
    for s, v in z.items():
        labels = src.simplex_labels(s)
        sign, t = sort_sign([dst.vid[x] for x in labels])
        if not dst.contains(t):
            raise NotACover(f"{labels} is not a simplex of {dst.name}")
        out = chain_add(out, {t: sign * v})
    return out


def subdivide_chain(C: SimplicialComplex, z: Chain) -> Dict[tuple, int]:
    """Chain-level barycentric subdivision.

    Each simplex becomes a signed sum of flags, written as sequences of
    simplices (id tuples) with the largest first: sd(s) = s * sd(d s).
    The result is keyed by such ordered sequences.
    """
    memo: Dict[Simplex, Dict[tuple, int]] = {}

    def sd(s: Simplex) -> Dict[tuple, int]:
        if s in memo:
            return memo[s]
        if len(s) == 1:
            res = {(s,): 1}
        else:
            res = {}
            for i in range(len(s)):
                sign = 1 if i % 2 == 0 else -1
                for flag, c in sd(s[:i] + s[i + 1:]).items():
                    key = (s,) + flag
                    w = res.get(key, 0) + sign * c
                    if w:
                        res[key] = w
                    else:
                        del res[key]
        memo[s] = res
        return res

    out: Dict[tuple, int] = {}
    for s, c in z.items():
        for flag, v in sd(s).items():
            w = out.get(flag, 0) + c * v
            if w:
                out[flag] = w
            else:
                del out[flag]
    return out
