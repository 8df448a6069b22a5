"""
The differential d^1 on Steinberg coefficients.

An extended symbol d(0, g_1, ..., g_n) of V = F_q^n is sent to a signed sum
of extended symbols indexed by layers of V:

* mono part, layers (0, W_i) with W_i the span of the g_j, j != i,
  coefficient -(-1)^i and payload (g_j)_{j != i} in W_i;
* epi part, layers (<g_i>, V), coefficient (-1)^i and payload the images
  of (g_j)_{j != i} in V / <g_i>.

Payload vectors are written in the deterministic coordinates of the
layer's subquotient (``gfgeom.LayerCoords``).  Both parts are checked
against independent Mayer-Vietoris computations, and the square of the
differential is checked to vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import gfgeom as gf
from . import scx
from .errors import CompositionMismatch, DimMismatch, NotACover, ZeroGenerator
from .exactalg import HomologyGroup, IntMatrix, homology, smith_normal_form
from .symbols import (ExtendedSymbol, ModularSymbol, action_matrix, compare_agrees, estar_homology,
                      extended_symbol_class, extended_symbol_cycle, steinberg, _estar, _punctured_full, _elowern)

Coords = Tuple[int, ...]


# ---------------------------------------------------------------------------
# formal sums of layer-indexed symbols

@dataclass(frozen=True)
class Term:
    layer: gf.Layer
    coeff: int
    payload: Tuple[gf.Vec, ...]

    def to_json(self) -> dict:
        return {"layer": self.layer.to_json(), "coeff": self.coeff, "symbol": [list(v) for v in self.payload]}


def _canonical_payload(q: int, payload: Sequence[gf.Vec]) -> Tuple[int, Tuple[gf.Vec, ...]]:
    """(sign, payload) after making each vector monic and sorting; sign 0 if degenerate."""
    if any(gf.is_zero(v) for v in payload) or not gf.independent(q, list(payload)):
        return 0, ()
    mon = [gf.monic(q, v)[0] for v in payload]
    sign, srt = scx.sort_sign(mon)
    return sign, srt


class SymbolSum:
    """Z-linear combination of extended symbols indexed by layers of F_q^n."""

    def __init__(self, q: int, n: int, terms: Iterable[Term] = ()):
        self.q, self.n = q, n
        self.terms: Tuple[Term, ...] = tuple(terms)
        for t in self.terms:
            if len(t.payload) != t.layer.width or any(len(v) != t.layer.width for v in t.payload):
                raise DimMismatch(f"payload {t.payload} does not live in the subquotient of {t.layer}")

    def __add__(self, other: "SymbolSum") -> "SymbolSum":
        if (self.q, self.n) != (other.q, other.n):
            raise DimMismatch("ambient spaces differ")
        return SymbolSum(self.q, self.n, self.terms + other.terms)

    def scale(self, k: int) -> "SymbolSum":
        return SymbolSum(self.q, self.n, [Term(t.layer, k * t.coeff, t.payload) for t in self.terms])

    def __neg__(self) -> "SymbolSum":
        return self.scale(-1)

    def canonical(self) -> "SymbolSum":
        """Monic, sorted payloads; degenerate payloads and zero coefficients dropped; equal terms merged."""
        acc: Dict[Tuple[gf.Layer, tuple], int] = {}
        for t in self.terms:
            sign, p = _canonical_payload(self.q, t.payload)
            if sign and t.coeff:
                key = (t.layer, p)
                acc[key] = acc.get(key, 0) + sign * t.coeff
        terms = [Term(L, c, p) for (L, p), c in acc.items() if c]
        terms.sort(key=lambda t: (t.layer.key(), t.payload))
        return SymbolSum(self.q, self.n, terms)

    def is_empty(self) -> bool:
        return not self.canonical().terms

    def classes(self) -> Dict[gf.Layer, Coords]:
        """Per layer, the total class of the payloads in the reduced Steinberg module of the subquotient."""
        out: Dict[gf.Layer, List[int]] = {}
        for t in self.terms:
            c = extended_symbol_class(ExtendedSymbol(self.q, t.layer.width, t.payload))
            cur = out.setdefault(t.layer, [0] * len(c))
            for i, x in enumerate(c):
                cur[i] += t.coeff * x
        return {L: tuple(v) for L, v in out.items() if any(v)}

    def class_equal(self, other: "SymbolSum") -> bool:
        return (self + (-other)).classes() == {}

    def to_json(self) -> dict:
        return {"terms": [t.to_json() for t in self.canonical().terms]}

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolSum):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return (a.q, a.n, a.terms) == (b.q, b.n, b.terms)

    def __repr__(self) -> str:
        return f"SymbolSum({len(self.terms)} terms)"


def _require_nonzero(s: ExtendedSymbol) -> None:
    if any(gf.is_zero(g) for g in s.gens):
        raise ZeroGenerator("d1 takes nonzero generators")
    if s.n < 2:
        raise DimMismatch("d1 needs n >= 2")


def d1_mono(s: ExtendedSymbol) -> SymbolSum:
    """Terms -(-1)^i ((0, W_i), d(0, g_1, .., g_i^, .., g_n)), dropping W_i of dimension < n-1."""
    _require_nonzero(s)
    q, n = s.q, s.n
    zero = gf.zero_subspace(q, n)
    terms = []
    for i in range(1, n + 1):
        rest = s.gens[:i - 1] + s.gens[i:]
        W = gf.span(q, n, rest)
        if W.dim < n - 1:
            continue
        layer = gf.Layer(zero, W)
        co = layer.coords()
        terms.append(Term(layer, -(-1) ** i, tuple(co(v) for v in rest)))
    return SymbolSum(q, n, terms)


def d1_epi(s: ExtendedSymbol) -> SymbolSum:
    """Terms (-1)^i ((<g_i>, V), d(0, images of g_j, j != i)), dropping degenerate images."""
    _require_nonzero(s)
    q, n = s.q, s.n
    V = gf.full_space(q, n)
    terms = []
    for i in range(1, n + 1):
        L = gf.line(q, s.gens[i - 1])
        qm = gf.quotient_map(q, n, L)
        img = tuple(qm(v) for j, v in enumerate(s.gens) if j != i - 1)
        if any(gf.is_zero(v) for v in img) or not gf.independent(q, list(img)):
            continue
        terms.append(Term(gf.Layer(L, V), (-1) ** i, img))
    return SymbolSum(q, n, terms)


def d1_coeff(s: ExtendedSymbol) -> SymbolSum:
    """Both parts, canonicalized.  A symbol with dependent generators is zero and maps to the empty sum."""
    _require_nonzero(s)
    if s.is_degenerate():
        return SymbolSum(s.q, s.n)
    return (d1_mono(s) + d1_epi(s)).canonical()


def d1_classes(s: ExtendedSymbol) -> Dict[gf.Layer, Coords]:
    """Class-level value of the raw formula (no degeneracy shortcut)."""
    return (d1_mono(s) + d1_epi(s)).classes()


def transport(x: SymbolSum, A: gf.Mat) -> SymbolSum:
    """Move every term along A: layers by image, payloads through the ambient space."""
    q = x.q
    gf.check_invertible(q, A)
    terms = []
    for t in x.terms:
        src = t.layer.coords()
        L = gf.Layer(t.layer.lower.image(A), t.layer.upper.image(A))
        dst = L.coords()
        terms.append(Term(L, t.coeff, tuple(dst(gf.mat_vec(q, A, src.lift(v))) for v in t.payload)))
    return SymbolSum(q, x.n, terms)


# ---------------------------------------------------------------------------
# the Mayer-Vietoris oracles

@lru_cache(maxsize=None)
def _hyperplane_relative(q: int, n: int, W: gf.Subspace):
    """H_{n-2}(E*(W), A_W), with A_W the simplices spanning less than W.

    A_W is acyclic (it is the union of E(U) over hyperplanes U of W), so
    this group is the reduced Steinberg module of W.
    """
    labels = W.vectors()
    labels.sort()
    zero = gf.zero_vec(n)
    k = W.dim

    def member(s):
        vs = [labels[v] for v in s]
        if zero in vs:
            return gf.matrix_rank(q, vs) < k
        return True

    C = scx.SimplicialComplex(labels, member, None, f"E*({W!r})")

    def small(s):
        return gf.matrix_rank(q, [labels[v] for v in s]) < k

    cc = scx.chains(C, max(n - 3, 0), n - 1, relative_to=small)
    H = homology(cc, n - 2, reduced=False)
    return C, small, H


def _relative_coords(q: int, n: int, W: gf.Subspace, chain_labels: Dict[tuple, int]) -> Coords:
    """Relative coordinates of a chain given as {label tuple (sorted by id): coeff}."""
    C, small, H = _hyperplane_relative(q, n, W)
    z = {}
    for labels, c in chain_labels.items():
        sign, s = scx.sort_sign([C.vid[x] for x in labels])
        if not sign:
            continue
        if small(s):
            continue
        z[s] = z.get(s, 0) + sign * c
    z = {s: c for s, c in z.items() if c}
    return H.coordinates(z)


def mono_oracle(s: ExtendedSymbol) -> Dict[gf.Subspace, Coords]:
    """Connecting map of E*(V) = E^{<n}(V) u E**(V) on d(0, g), split per hyperplane.

    The cycle is lifted as a_1 + a_2 with a_1 in E^{<n}(V); the value is
    -d(a_1), projected for each hyperplane W to the simplices spanning W.
    """
    q, n = s.q, s.n
    E = _estar(q, n)
    z = extended_symbol_cycle(s)
    a1, _ = scx.mv_decompose(E, _elowern(q, n), scx.estar_doublestar(q, n), z)
    Elow = _elowern(q, n)
    minus_da1 = {s_: -c for s_, c in scx.boundary(a1).items()}
    per_W: Dict[gf.Subspace, Dict[tuple, int]] = {}
    for simp, c in minus_da1.items():
        labels = Elow.simplex_labels(simp)
        W = gf.span(q, n, labels)
        if W.dim != n - 1:
            continue
        per_W.setdefault(W, {})[labels] = c
    out = {}
    for W in gf.enumerate_subspaces(q, n, n - 1):
        c = _relative_coords(q, n, W, per_W.get(W, {}))
        if any(c):
            out[W] = c
    return out


def mono_formula_relative(x: SymbolSum) -> Dict[gf.Subspace, Coords]:
    """The (0, W) terms of a sum, as relative classes of E*(W) inside V."""
    q, n = x.q, x.n
    acc: Dict[gf.Subspace, List[int]] = {}
    for t in x.terms:
        if not t.layer.lower.is_zero():
            continue
        W = t.layer.upper
        lifted = [t.layer.coords().lift(v) for v in t.payload]
        seq = [gf.zero_vec(n)] + lifted
        faces: Dict[tuple, int] = {}
        for i in range(len(seq)):
            face = seq[:i] + seq[i + 1:]
            faces[tuple(face)] = faces.get(tuple(face), 0) + (-1) ** i * t.coeff
        c = _relative_coords(q, n, W, faces)
        cur = acc.setdefault(W, [0] * len(c))
        for i, v in enumerate(c):
            cur[i] += v
    return {W: tuple(v) for W, v in acc.items() if any(v)}


def mono_oracle_check(s: ExtendedSymbol) -> bool:
    return mono_formula_relative(d1_mono(s)) == mono_oracle(s)


def epi_oracle(s: ExtendedSymbol) -> Dict[gf.Subspace, Coords]:
    """For each line L, the class of -d(a_2) pushed along V - 0 -> V/L.

    Here a_2 is the part of d(0, g) avoiding 0.
    """
    q, n = s.q, s.n
    E = _estar(q, n)
    Pf = _punctured_full(q, n)
    z = extended_symbol_cycle(s)
    a2, _ = scx.mv_decompose(E, Pf, _elowern(q, n), z)
    minus_da2 = {simp: -c for simp, c in scx.boundary(a2).items()}
    target = _estar(q, n - 1)
    H = estar_homology(q, n - 1)
    out = {}
    for L in gf.enumerate_subspaces(q, n, 1):
        qm = gf.quotient_map(q, n, L)
        terms = [(tuple(qm(v) for v in Pf.simplex_labels(simp)), c) for simp, c in minus_da2.items()]
        pushed = scx.ordered_chain(target, terms)
        c = H.coordinates(pushed)
        if any(c):
            out[L] = c
    return out


def epi_formula_classes(x: SymbolSum) -> Dict[gf.Subspace, Coords]:
    return {L.lower: c for L, c in x.classes().items() if L.upper.is_full() and L.lower.dim == 1}


def epi_oracle_check(s: ExtendedSymbol) -> bool:
    return epi_formula_classes(d1_epi(s)) == epi_oracle(s)


# ---------------------------------------------------------------------------
# d1 o d1

def compose_layer(outer: gf.Layer, inner: gf.Layer) -> gf.Layer:
    """A layer of the subquotient of ``outer`` (in its coordinates) as a layer of V."""
    co = outer.coords()
    X = co.preimage(inner.lower)
    Y = co.preimage(inner.upper)
    return gf.Layer(X, Y)


def d1_square(s: ExtendedSymbol) -> SymbolSum:
    """d1 applied twice, with second-level layers re-indexed as layers of V."""
    q, n = s.q, s.n
    if n < 3:
        raise DimMismatch("d1 o d1 needs n >= 3")
    first = d1_coeff(s)
    out: List[Term] = []
    for t in first.terms:
        w = t.layer.width
        outer = t.layer.coords()
        second = d1_coeff(ExtendedSymbol(q, w, t.payload))
        for u in second.terms:
            L = compose_layer(t.layer, u.layer)
            if L.width != n - 2:
                raise CompositionMismatch(f"{t.layer} then {u.layer} gives {L}")
            inner = u.layer.coords()
            dst = L.coords()
            payload = tuple(dst(outer.lift(inner.lift(v))) for v in u.payload)
            out.append(Term(L, t.coeff * u.coeff, payload))
    return SymbolSum(q, n, out)


def d1_square_check(s: ExtendedSymbol) -> dict:
    sq = d1_square(s)
    classes = sq.classes()
    return {"formal_terms": len(sq.canonical().terms), "nonzero_layers": len(classes),
            "ok": not classes}


# ---------------------------------------------------------------------------
# chains of automorphisms

@dataclass(frozen=True)
class E1Term:
    maps: Tuple[gf.Mat, ...]  # f_1, ..., f_p between copies of F_q^n
    coeff: int
    symbol: ModularSymbol


@dataclass(frozen=True)
class E1Chain:
    q: int
    n: int
    terms: Tuple[E1Term, ...]

    def __post_init__(self):
        for t in self.terms:
            if (t.symbol.q, t.symbol.n) != (self.q, self.n):
                raise DimMismatch("symbol does not live in F_q^n")
            for f in t.maps:
                if len(f) != self.n or any(len(r) != self.n for r in f):
                    raise DimMismatch("chain maps must be n x n")
                gf.check_invertible(self.q, f)


@dataclass(frozen=True)
class ChainTerm:
    layers: Tuple[gf.Layer, ...]  # the layer transported along the chain
    coeff: int
    payload: Tuple[gf.Vec, ...]  # modular symbol in coordinates of layers[0]

    def to_json(self) -> dict:
        return {"layers": [L.to_json() for L in self.layers], "coeff": self.coeff,
                "symbol": [list(v) for v in self.payload]}


def canonical_chain_terms(q: int, terms: Iterable[ChainTerm]) -> List[ChainTerm]:
    acc: Dict[tuple, int] = {}
    for t in terms:
        sign, p = _canonical_payload(q, t.payload)
        if sign and t.coeff:
            key = (t.layers, p)
            acc[key] = acc.get(key, 0) + sign * t.coeff
    out = [ChainTerm(Ls, c, p) for (Ls, p), c in acc.items() if c]
    out.sort(key=lambda t: (tuple(L.key() for L in t.layers), t.payload))
    return out


def d1_chain(x: E1Chain) -> List[ChainTerm]:
    """The differential on chains: each coefficient term's layer is carried along f_1, ..., f_p."""
    q, n = x.q, x.n
    out: List[ChainTerm] = []
    for t in x.terms:
        s = ExtendedSymbol(q, n, t.symbol.gens)
        if s.is_degenerate():
            continue
        coeff_terms = (d1_mono(s) + d1_epi(s)).terms
        for ct in coeff_terms:
            layers = [ct.layer]
            M = gf.identity(n)
            for f in t.maps:
                M = gf.mat_mul(q, f, M)
                layers.append(gf.Layer(ct.layer.lower.image(M), ct.layer.upper.image(M)))
            out.append(ChainTerm(tuple(layers), t.coeff * ct.coeff, ct.payload))
    return canonical_chain_terms(q, out)


def d1_modular_agrees(s: ExtendedSymbol) -> bool:
    """Each payload of d1_coeff(s) corresponds to the same modular symbol under the comparison."""
    for t in d1_coeff(s).terms:
        if t.layer.width >= 2 and not compare_agrees(ExtendedSymbol(s.q, t.layer.width, t.payload)):
            return False
    return True


# ---------------------------------------------------------------------------
# coinvariants

@dataclass(frozen=True)
class CoinvariantsResult:
    q: int
    n: int
    rank: int
    torsion: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "rank": self.rank, "torsion": list(self.torsion)}


def coinvariants_from_matrices(mats: Iterable[IntMatrix], r: int) -> Tuple[int, Tuple[int, ...]]:
    """Z^r modulo the images of (M - I) for the given action matrices."""
    cols: List[Dict[int, int]] = []
    for M in mats:
        for j, col in enumerate(M.col_dicts()):
            c = dict(col)
            c[j] = c.get(j, 0) - 1
            c = {i: v for i, v in c.items() if v}
            if c:
                cols.append(c)
    R = IntMatrix.from_col_dicts(cols, r)
    diag = smith_normal_form(R, transforms=False).diagonal
    return r - len(diag), tuple(d for d in diag if d > 1)


def e1_coinvariants(q: int, n: int, full_group: bool = False) -> CoinvariantsResult:
    """Coinvariants of GL_n(F_q) on the reduced Steinberg module.

    By default the group is generated by elementary transvections and one
    diagonal matrix; ``full_group`` uses every element instead.
    """
    gens = gf.enumerate_gl(q, n) if full_group else gf.gl_generators(q, n)
    if n == 1:
        mats = [action_matrix(q, 1, A, "estar") for A in gens]
        r = estar_homology(q, 1).ngens
    else:
        mats = [action_matrix(q, n, A, "reduced") for A in gens]
        r = steinberg(q, n, "reduced").homology.ngens
    rank, tors = coinvariants_from_matrices(mats, r)
    return CoinvariantsResult(q, n, rank, tors)
