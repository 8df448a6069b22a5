"""
Steinberg modules as computed homology, and the two kinds of symbols that
generate them.

* A modular symbol [g_1, ..., g_n] is the push-forward of the fundamental
  cycle of the subdivided boundary of the (n-1)-simplex into T(V), sending
  a subset S of indices to the span of the g_i with i in S.
* An extended symbol d(0, g_1, ..., g_n) is the boundary of the simplex
  (0, g_1, ..., g_n), a cycle of E*(V).

``compare_to_steinberg`` carries extended symbols to modular ones through
the Mayer-Vietoris connecting map and the span map on subdivisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import gfgeom as gf
from . import scx
from .building import tits
from .errors import DimMismatch, NotACycle, NotInvertible, SignConventionUnset, ZeroGenerator
from .exactalg import Chain, HomologyGroup, IntMatrix, chain_add, chain_scale, determinant, homology, smith_normal_form
from .rng import SplitMix64

Coords = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Steinberg modules

@dataclass(frozen=True)
class SteinbergModule:
    """St(V) = H_{n-2}(T(V)) (plain) or its reduced variant.

    For n <= 1 both are the formal group Z and ``homology`` is None.
    """

    q: int
    n: int
    variant: str
    homology: Optional[HomologyGroup]

    @property
    def rank(self) -> int:
        return 1 if self.homology is None else self.homology.rank

    @property
    def torsion(self) -> Tuple[int, ...]:
        return () if self.homology is None else self.homology.torsion

    def coordinates(self, z: Chain) -> Coords:
        if self.homology is None:
            raise DimMismatch("the rank <= 1 Steinberg module has no chain model")
        return self.homology.coordinates(z)

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "variant": self.variant, "rank": self.rank, "torsion": list(self.torsion)}


@lru_cache(maxsize=None)
def steinberg(q: int, n: int, variant: str = "plain") -> SteinbergModule:
    if variant not in ("plain", "reduced"):
        raise ValueError(f"unknown variant {variant!r}")
    if n <= 1:
        return SteinbergModule(q, n, variant, None)
    T = tits(q, n)
    # reduced and plain homology differ only for n = 2 (degree 0)
    cc = scx.chains(T, max(n - 3, 0), n - 1)
    H = homology(cc, n - 2, reduced=(variant == "reduced"))
    return SteinbergModule(q, n, variant, H)


@lru_cache(maxsize=None)
def estar_homology(q: int, n: int) -> HomologyGroup:
    """Reduced H_{n-1}(E*(V)), the home of extended symbols."""
    E = scx.estar_complex(q, n)
    return homology(scx.chains(E, max(n - 2, 0), n), n - 1, reduced=True)


@lru_cache(maxsize=None)
def punctured_homology(q: int, n: int) -> HomologyGroup:
    """Reduced H_{n-2}(E*(V - 0))."""
    P = scx.estar_punctured(q, n)
    return homology(scx.chains(P, max(n - 3, 0), n - 1), n - 2, reduced=True)


@lru_cache(maxsize=None)
def _estar(q: int, n: int) -> scx.SimplicialComplex:
    return scx.estar_complex(q, n)


@lru_cache(maxsize=None)
def _punctured(q: int, n: int) -> scx.SimplicialComplex:
    return scx.estar_punctured(q, n)


# ---------------------------------------------------------------------------
# symbols

def _check_gens(q: int, n: int, gens) -> Tuple[gf.Vec, ...]:
    out = tuple(gf.vec(q, g) for g in gens)
    if len(out) != n:
        raise DimMismatch(f"expected {n} generators, got {len(out)}")
    for g in out:
        if len(g) != n:
            raise DimMismatch(f"generator {g} does not lie in F_{q}^{n}")
    return out


@dataclass(frozen=True)
class ModularSymbol:
    q: int
    n: int
    gens: Tuple[gf.Vec, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", _check_gens(self.q, self.n, self.gens))
        if any(gf.is_zero(g) for g in self.gens):
            raise ZeroGenerator("modular symbols take nonzero vectors")

    def is_degenerate(self) -> bool:
        return not gf.independent(self.q, list(self.gens))


@dataclass(frozen=True)
class ExtendedSymbol:
    """d(0, g_1, ..., g_n); zero or dependent generators give the zero class."""

    q: int
    n: int
    gens: Tuple[gf.Vec, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", _check_gens(self.q, self.n, self.gens))

    def is_degenerate(self) -> bool:
        return any(gf.is_zero(g) for g in self.gens) or not gf.independent(self.q, list(self.gens))

    def to_json(self) -> list:
        return [list(g) for g in self.gens]


@dataclass(frozen=True)
class GLElement:
    q: int
    matrix: gf.Mat

    def __post_init__(self):
        M = gf.mat(self.q, self.matrix)
        if any(len(r) != len(M) for r in M):
            raise DimMismatch("matrix is not square")
        gf.check_invertible(self.q, M)
        object.__setattr__(self, "matrix", M)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __matmul__(self, other: "GLElement") -> "GLElement":
        return GLElement(self.q, gf.mat_mul(self.q, self.matrix, other.matrix))


def random_gl(rng: SplitMix64, q: int, n: int) -> GLElement:
    while True:
        A = rng.matrix(q, n)
        if gf.det_mod(q, A):
            return GLElement(q, A)


# ---------------------------------------------------------------------------
# modular symbols

@lru_cache(maxsize=None)
def sphere_complex(n: int) -> scx.SimplicialComplex:
    """The subdivided boundary of the (n-1)-simplex: chains of proper nonempty subsets of {0..n-1}."""
    from itertools import combinations
    subsets = [c for k in range(1, n) for c in combinations(range(n), k)]
    P = scx.Poset(subsets, lambda a, b: set(a) <= set(b), "proper subsets")
    return scx.order_complex(P, dim_bound=max(n - 2, 0))


@lru_cache(maxsize=None)
def fundamental_cycle(n: int) -> Dict[tuple, int]:
    """Fundamental cycle of the subdivided boundary of the (n-1)-simplex.

    It is the chain-level subdivision of the boundary of (0, ..., n-1), so
    for n = 2 it is {1} - {0}.  Keys are flags of subsets, largest first.
    """
    D = scx.full_complex_E(list(range(n)))
    return scx.subdivide_chain(D, scx.boundary({tuple(range(n)): 1}))


def fundamental_chain(n: int) -> Chain:
    S = sphere_complex(n)
    return scx.ordered_chain(S, fundamental_cycle(n).items())


def modular_symbol_cycle(s: ModularSymbol) -> Chain:
    """phi_*(zeta) as a chain of T(V)."""
    q, n = s.q, s.n
    T = tits(q, n)
    memo: Dict[tuple, gf.Subspace] = {}

    def sp(S):
        if S not in memo:
            memo[S] = gf.span(q, n, [s.gens[i] for i in S])
        return memo[S]

    terms = []
    for flag, c in fundamental_cycle(n).items():
        terms.append((tuple(sp(S) for S in flag), c))
    return scx.ordered_chain(T, terms)


def modular_symbol_class(s: ModularSymbol, variant: str = "plain") -> Coords:
    if s.n < 2:
        raise DimMismatch("modular symbols need n >= 2")
    St = steinberg(s.q, s.n, variant)
    return St.coordinates(modular_symbol_cycle(s))


# ---------------------------------------------------------------------------
# extended symbols

def extended_symbol_cycle(s: ExtendedSymbol) -> Chain:
    """Alternating face sum of (0, g_1, ..., g_n) in E*(V)."""
    E = _estar(s.q, s.n)
    seq = (gf.zero_vec(s.n),) + s.gens
    terms = [(seq[:i] + seq[i + 1:], (-1) ** i) for i in range(len(seq))]
    return scx.ordered_chain(E, terms)


def extended_symbol_class(s: ExtendedSymbol) -> Coords:
    H = estar_homology(s.q, s.n)
    return H.coordinates(extended_symbol_cycle(s))


# ---------------------------------------------------------------------------
# the comparison E*(V) -> E*(V - 0) -> T(V)

@lru_cache(maxsize=None)
def _punctured_full(q: int, n: int) -> scx.SimplicialComplex:
    return scx.punctured_full(q, n)


@lru_cache(maxsize=None)
def _elowern(q: int, n: int) -> scx.SimplicialComplex:
    return scx.elowern(q, n)


def mv_connecting(q: int, n: int, z: Chain) -> Chain:
    """Connecting map of the cover E*(V) = E(V - 0) u E^{<n}(V) on a cycle z.

    z is split as b + c with b the simplices avoiding 0; the result is the
    cycle d(b) of E*(V - 0).
    """
    E = _estar(q, n)
    if n >= 2 and scx.boundary(z):
        raise NotACycle("input of the connecting map is not a cycle")
    b, _ = scx.mv_decompose(E, _punctured_full(q, n), _elowern(q, n), z)
    return scx.translate(_punctured_full(q, n), _punctured(q, n), scx.boundary(b))


def mv_comparison(s: ExtendedSymbol) -> Coords:
    """Class in reduced H_{n-2}(E*(V - 0)) of the connecting map applied to d(0, g)."""
    if s.n < 2:
        raise DimMismatch("the comparison needs n >= 2")
    H = punctured_homology(s.q, s.n)
    return H.coordinates(mv_connecting(s.q, s.n, extended_symbol_cycle(s)))


def punctured_symbol_cycle(q: int, n: int, gens: Sequence[gf.Vec]) -> Chain:
    """The cycle d(g_1, ..., g_n) of E*(V - 0)."""
    P = _punctured(q, n)
    seq = tuple(gens)
    return scx.ordered_chain(P, [(seq[:i] + seq[i + 1:], (-1) ** i) for i in range(len(seq))])


def mv_comparison_matrix(q: int, n: int) -> IntMatrix:
    """Matrix of the connecting map from reduced H_{n-1}(E*(V)) to reduced H_{n-2}(E*(V - 0))."""
    Hs = estar_homology(q, n)
    Ht = punctured_homology(q, n)
    cols = []
    for z in Hs.cycle_basis[:Hs.rank]:
        c = Ht.coordinates(mv_connecting(q, n, z))
        cols.append({i: v for i, v in enumerate(c[:Ht.rank]) if v})
    return IntMatrix.from_col_dicts(cols, Ht.rank)


def mv_comparison_is_iso(q: int, n: int) -> bool:
    Hs, Ht = estar_homology(q, n), punctured_homology(q, n)
    if (Hs.rank, Hs.torsion) != (Ht.rank, Ht.torsion):
        return False
    return abs(determinant(mv_comparison_matrix(q, n))) == 1


def span_map_chain(q: int, n: int, z: Chain) -> Chain:
    """Push a cycle of E*(V - 0) through sd and X |-> <X> into T(V)."""
    P = _punctured(q, n)
    T = tits(q, n)
    memo: Dict[tuple, gf.Subspace] = {}

    def sp(s):
        if s not in memo:
            memo[s] = gf.span(q, n, P.simplex_labels(s))
        return memo[s]

    flags = scx.subdivide_chain(P, z)
    return scx.ordered_chain(T, [(tuple(sp(s) for s in fl), c) for fl, c in flags.items()])


def _raw_comparison(s: ExtendedSymbol) -> Coords:
    St = steinberg(s.q, s.n, "reduced")
    cyc = mv_connecting(s.q, s.n, extended_symbol_cycle(s))
    return St.coordinates(span_map_chain(s.q, s.n, cyc))


@lru_cache(maxsize=None)
def comparison_sign(q: int, n: int) -> int:
    """Global sign fixed by the basis symbol [e_1, ..., e_n]."""
    e = gf.std_basis(n)
    raw = _raw_comparison(ExtendedSymbol(q, n, e))
    ref = modular_symbol_class(ModularSymbol(q, n, e), "reduced")
    if raw == ref:
        return 1
    if raw == tuple(-x for x in ref):
        return -1
    raise SignConventionUnset(f"basis symbol maps to {raw}, modular class is {ref}")


def compare_to_steinberg(s: ExtendedSymbol) -> Coords:
    """Image of d(0, g_1, ..., g_n) in the reduced Steinberg module, sign-calibrated."""
    if s.n < 2:
        raise DimMismatch("the comparison needs n >= 2")
    sign = comparison_sign(s.q, s.n)
    return tuple(sign * x for x in _raw_comparison(s))


def compare_agrees(s: ExtendedSymbol) -> bool:
    """compare_to_steinberg(d(0, g)) equals the reduced modular class [g]."""
    got = compare_to_steinberg(s)
    if s.is_degenerate():
        return not any(got)
    return got == modular_symbol_class(ModularSymbol(s.q, s.n, s.gens), "reduced")


# ---------------------------------------------------------------------------
# GL action

Space = str  # "plain" | "reduced" | "estar"


def _as_gl(q: int, A) -> GLElement:
    if isinstance(A, GLElement):
        if A.q != q:
            raise DimMismatch("field mismatch")
        return A
    try:
        return GLElement(q, A)
    except NotInvertible:
        raise


@lru_cache(maxsize=4096)
def action_matrix(q: int, n: int, A: gf.Mat, space: Space = "plain") -> IntMatrix:
    """Matrix of A acting on a homology group, on its generators.

    ``space`` selects St(V) ("plain"), the reduced module ("reduced"), or
    reduced H_{n-1}(E*(V)) ("estar").  Only free coordinates are tracked,
    which is everything since these groups are torsion free.
    """
    if space == "estar":
        E = _estar(q, n)
        H = estar_homology(q, n)
        f = scx.SimplicialMap.from_labels(E, E, lambda v: gf.mat_vec(q, A, v))
    else:
        if n <= 1:
            return IntMatrix.identity(1)
        T = tits(q, n)
        H = steinberg(q, n, space).homology
        f = scx.SimplicialMap.from_labels(T, T, lambda S: S.image(A))
    cols = []
    for z in H.cycle_basis:
        c = H.coordinates(scx.pushforward(f, z))
        cols.append({i: v for i, v in enumerate(c) if v})
    return IntMatrix.from_col_dicts(cols, H.ngens)


def gl_act(A, x: Union[ModularSymbol, ExtendedSymbol, Sequence[int]], q: Optional[int] = None,
           n: Optional[int] = None, space: Space = "plain"):
    """Act by A on a symbol (generator-wise) or on class coordinates (push-forward)."""
    if isinstance(x, (ModularSymbol, ExtendedSymbol)):
        g = _as_gl(x.q, A)
        if g.n != x.n:
            raise DimMismatch(f"{g.n}x{g.n} matrix on a symbol in dimension {x.n}")
        return type(x)(x.q, x.n, tuple(gf.mat_vec(x.q, g.matrix, v) for v in x.gens))
    if q is None or n is None:
        raise ValueError("q and n are required to act on coordinates")
    g = _as_gl(q, A)
    if g.n != n:
        raise DimMismatch(f"{g.n}x{g.n} matrix in dimension {n}")
    M = action_matrix(q, n, g.matrix, space)
    if M.cols != len(x):
        raise DimMismatch(f"expected {M.cols} coordinates, got {len(x)}")
    out = M.apply({i: v for i, v in enumerate(x) if v})
    return tuple(out.get(i, 0) for i in range(M.rows))


# ---------------------------------------------------------------------------
# relations

def _neg(c: Coords) -> Coords:
    return tuple(-x for x in c)


def _add(*cs: Coords) -> Coords:
    return tuple(sum(t) for t in zip(*cs))


def _dependent_tuple(rng: SplitMix64, q: int, n: int) -> List[gf.Vec]:
    """n nonzero vectors of rank < n."""
    while True:
        gens = rng.vectors(q, n, n - 1)
        combo = (0,) * n
        for g in gens:
            combo = gf.vadd(q, combo, gf.vscale(q, rng.below(q), g))
        if any(combo):
            gens.insert(rng.below(n), combo)
            return gens


def check_relations(q: int, n: int, trials: int, seed: int) -> dict:
    """Verify the symbol relations on ``trials`` seeded random instances each.

    Modular relations (n >= 2): antisymmetry, scaling, vanishing for
    dependent vectors, the cocycle relation and GL-equivariance.  Extended
    relations (n >= 1): the same list for d(0, g_1, ..., g_n).
    """
    rng = SplitMix64(seed)
    results: Dict[str, List[bool]] = {}

    def record(name, ok):
        results.setdefault(name, []).append(bool(ok))

    def mclass(gens):
        return modular_symbol_class(ModularSymbol(q, n, gens))

    def eclass(gens):
        return extended_symbol_class(ExtendedSymbol(q, n, gens))

    for _ in range(trials):
        if n >= 2:
            g = rng.vectors(q, n, n)
            i, j = rng.below(n), rng.below(n - 1)
            j = j + 1 if j >= i else j
            h = list(g)
            h[i], h[j] = h[j], h[i]
            record("antisymmetry", mclass(h) == _neg(mclass(g)))
            a = 1 + rng.below(q - 1)
            h = list(g)
            k = rng.below(n)
            h[k] = gf.vscale(q, a, h[k])
            record("scaling", mclass(h) == mclass(g))
            record("dependent_zero", not any(mclass(_dependent_tuple(rng, q, n))))
            g1 = rng.vectors(q, n, n + 1)
            tot = _add(*[mclass(g1[:i] + g1[i + 1:]) if i % 2 == 0 else _neg(mclass(g1[:i] + g1[i + 1:]))
                         for i in range(n + 1)])
            record("cocycle", not any(tot))
            A = random_gl(rng, q, n)
            lhs = mclass(gl_act(A, ModularSymbol(q, n, g)).gens)
            rhs = gl_act(A, mclass(g), q=q, n=n, space="plain")
            record("gl_equivariance", lhs == rhs)

        g = rng.vectors(q, n, n)
        if n >= 2:
            i, j = rng.below(n), rng.below(n - 1)
            j = j + 1 if j >= i else j
            h = list(g)
            h[i], h[j] = h[j], h[i]
            record("ext_antisymmetry", eclass(h) == _neg(eclass(g)))
        a = 1 + rng.below(q - 1)
        h = list(g)
        k = rng.below(n)
        h[k] = gf.vscale(q, a, h[k])
        record("ext_scaling", eclass(h) == eclass(g))
        if n >= 2:
            record("ext_dependent_zero", not any(eclass(_dependent_tuple(rng, q, n))))
        g1 = rng.vectors(q, n, n + 1)
        tot = _add(*[eclass(g1[:i] + g1[i + 1:]) if i % 2 == 0 else _neg(eclass(g1[:i] + g1[i + 1:]))
                     for i in range(n + 1)])
        record("ext_cocycle", not any(tot))
        A = random_gl(rng, q, n)
        lhs = eclass(gl_act(A, ExtendedSymbol(q, n, g)).gens)
        rhs = gl_act(A, eclass(g), q=q, n=n, space="estar")
        record("ext_gl_equivariance", lhs == rhs)

    rel = {name: {"trials": len(v), "passed": sum(v)} for name, v in sorted(results.items())}
    ok = all(r["trials"] == r["passed"] for r in rel.values())

    def held(name):
        return name not in rel or rel[name]["trials"] == rel[name]["passed"]

    # antisymmetry and scaling follow from vanishing and the cocycle relation
    derivable = (not (held("dependent_zero") and held("cocycle"))) or (held("antisymmetry") and held("scaling"))
    return {"q": q, "n": n, "trials": trials, "seed": seed, "relations": rel,
            "consequences_consistent": derivable, "ok": ok and derivable}


def presentation_check(q: int, n: int) -> dict:
    """Compare the module presented by extended-symbol generators and relations with homology.

    Generators are all n-tuples of vectors; relations are the dependent
    tuples and the alternating sums over (n+1)-tuples of nonzero vectors.
    The check reports the rank and torsion of the presented module and
    whether the evaluation map onto reduced H_{n-1}(E*(V)) is onto.
    """
    from itertools import product
    vecs = gf.all_vectors(q, n)
    nz = gf.nonzero_vectors(q, n)
    gens = [tuple(t) for t in product(vecs, repeat=n)]
    gid = {g: i for i, g in enumerate(gens)}
    rels: List[Dict[int, int]] = []
    for g in gens:
        if any(gf.is_zero(v) for v in g) or not gf.independent(q, list(g)):
            rels.append({gid[g]: 1})
    for t in product(nz, repeat=n + 1):
        r: Dict[int, int] = {}
        for i in range(n + 1):
            key = gid[t[:i] + t[i + 1:]]
            r[key] = r.get(key, 0) + (-1) ** (i + 1)
        r = {k: v for k, v in r.items() if v}
        if r:
            rels.append(r)
    R = IntMatrix.from_col_dicts(rels, len(gens))
    diag = smith_normal_form(R, transforms=False).diagonal
    pres_rank = len(gens) - len(diag)
    pres_torsion = [d for d in diag if d > 1]

    H = estar_homology(q, n)
    ev_cols = []
    for g in gens:
        c = extended_symbol_class(ExtendedSymbol(q, n, g))
        ev_cols.append({i: v for i, v in enumerate(c) if v})
    EV = IntMatrix.from_col_dicts(ev_cols, H.ngens)
    ev_diag = smith_normal_form(EV, transforms=False).diagonal
    onto = len(ev_diag) == H.ngens and all(d == 1 for d in ev_diag)
    # relations must die under evaluation
    EVR = EV @ R
    return {"q": q, "n": n, "generators": len(gens), "relations": len(rels),
            "presented_rank": pres_rank, "presented_torsion": pres_torsion,
            "homology_rank": H.rank, "relations_vanish": EVR.is_zero(), "onto": onto,
            "ok": onto and EVR.is_zero() and pres_rank == H.rank and not pres_torsion}
