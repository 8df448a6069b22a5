"""
Linear algebra over prime fields F_q and the lattice of subspaces of F_q^n.

Vectors are tuples of residues in ``range(q)``.  Matrices are tuples of row
tuples and act on column vectors, so ``A @ g`` is ``mat_vec(q, A, g)``.
A subspace is stored by its reduced row echelon basis, which makes equal
subspaces compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import BadLine, DimMismatch, NotInvertible, ParseError

Vec = Tuple[int, ...]
Mat = Tuple[Tuple[int, ...], ...]


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"q must be prime, got {self.q}")

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.q - 2, self.q)

    def units(self) -> List[int]:
        return list(range(1, self.q))

    def generator(self) -> int:
        """Smallest generator of the cyclic group F_q^x."""
        return primitive_root(self.q)


@lru_cache(maxsize=None)
def primitive_root(q: int) -> int:
    if q == 2:
        return 1
    phi = q - 1
    factors = {p for p in range(2, phi + 1) if phi % p == 0 and is_prime(p)}
    for g in range(2, q):
        if all(pow(g, phi // p, q) != 1 for p in factors):
            return g
    raise ValueError(f"no primitive root mod {q}")


def inv_mod(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(a, q - 2, q)


# ---------------------------------------------------------------------------
# vectors

def vec(q: int, coords: Iterable[int]) -> Vec:
    return tuple(int(c) % q for c in coords)


def zero_vec(n: int) -> Vec:
    return (0,) * n


def is_zero(v: Sequence[int]) -> bool:
    return not any(v)


def vadd(q: int, a: Vec, b: Vec) -> Vec:
    return tuple((x + y) % q for x, y in zip(a, b))


def vsub(q: int, a: Vec, b: Vec) -> Vec:
    return tuple((x - y) % q for x, y in zip(a, b))


def vscale(q: int, k: int, a: Vec) -> Vec:
    return tuple((k * x) % q for x in a)


def leading_index(v: Sequence[int]) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    return -1


def monic(q: int, v: Vec) -> Tuple[Vec, int]:
    """Scale v so its first nonzero entry is 1; returns (w, a) with v = a*w."""
    j = leading_index(v)
    if j < 0:
        return v, 1
    a = v[j]
    return vscale(q, inv_mod(a, q), v), a


def all_vectors(q: int, n: int) -> List[Vec]:
    return [tuple(v) for v in product(range(q), repeat=n)]


def nonzero_vectors(q: int, n: int) -> List[Vec]:
    return [v for v in all_vectors(q, n) if any(v)]


def std_basis(n: int) -> List[Vec]:
    return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]


# ---------------------------------------------------------------------------
# row reduction

def rref(q: int, rows: Iterable[Sequence[int]], n: Optional[int] = None) -> Tuple[Mat, Tuple[int, ...]]:
    """Reduced row echelon form over F_q; returns (nonzero rows, pivot columns)."""
    M = [[x % q for x in r] for r in rows]
    if n is None:
        n = len(M[0]) if M else 0
    pivots: List[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = inv_mod(M[r][c], q)
        M[r] = [(x * inv) % q for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % q for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return tuple(tuple(row) for row in M[:r]), tuple(pivots)


def matrix_rank(q: int, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(q, rows)[0])


def independent(q: int, vectors: Sequence[Vec]) -> bool:
    if not vectors:
        return True
    return matrix_rank(q, vectors) == len(vectors)


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True, order=False)
class Subspace:
    q: int
    n: int
    basis: Mat

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(leading_index(r) for r in self.basis)

    def key(self) -> tuple:
        return (self.dim, tuple(x for r in self.basis for x in r))

    def __lt__(self, other: "Subspace") -> bool:
        return self.key() < other.key()

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.n

    def reduce(self, v: Sequence[int]) -> Vec:
        """v minus its projection along the echelon basis (pivot entries become 0)."""
        w = [x % self.q for x in v]
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f:
                w = [(x - f * y) % self.q for x, y in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.n:
            raise DimMismatch(f"vector of length {len(v)} in F_{self.q}^{self.n}")
        return is_zero(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        return self.dim <= other.dim and all(other.contains(r) for r in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def coordinates(self, v: Sequence[int]) -> Vec:
        """Coordinates of v in the echelon basis (the entries at pivot columns)."""
        if not self.contains(v):
            raise DimMismatch("vector not in subspace")
        return tuple(v[p] % self.q for p in self.pivots)

    def from_coordinates(self, c: Sequence[int]) -> Vec:
        out = [0] * self.n
        for a, row in zip(c, self.basis):
            if a:
                out = [(x + a * y) % self.q for x, y in zip(out, row)]
        return tuple(out)

    def join(self, other: "Subspace") -> "Subspace":
        return span(self.q, self.n, list(self.basis) + list(other.basis))

    def meet(self, other: "Subspace") -> "Subspace":
        # brute force is fine at the sizes used here
        return span(self.q, self.n, [v for v in self.vectors() if other.contains(v)])

    def vectors(self) -> List[Vec]:
        return [self.from_coordinates(c) for c in product(range(self.q), repeat=self.dim)]

    def image(self, A: Mat) -> "Subspace":
        return span(self.q, self.n, [mat_vec(self.q, A, r) for r in self.basis])

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        return span(obj["q"], obj["n"], [tuple(r) for r in obj["basis"]])

    def __repr__(self) -> str:
        return f"<{' '.join(''.join(map(str, r)) for r in self.basis) or '0'}>"


def span(q: int, n: int, vectors: Iterable[Sequence[int]]) -> Subspace:
    vs = list(vectors)
    for v in vs:
        if len(v) != n:
            raise DimMismatch(f"vector {tuple(v)} has length {len(v)}, expected {n}")
    basis, _ = rref(q, vs, n)
    return Subspace(q, n, basis)


def zero_subspace(q: int, n: int) -> Subspace:
    return Subspace(q, n, ())


def full_space(q: int, n: int) -> Subspace:
    return Subspace(q, n, tuple(std_basis(n)))


def gaussian_binomial(q: int, n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def _enumerate(q: int, n: int, k: int) -> Tuple[Subspace, ...]:
    out = []
    for piv in combinations(range(n), k):
        # free entries: columns after each pivot that are not pivots themselves
        free = [(i, c) for i, p in enumerate(piv) for c in range(p + 1, n) if c not in piv]
        for vals in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(piv):
                rows[i][p] = 1
            for (i, c), x in zip(free, vals):
                rows[i][c] = x
            out.append(Subspace(q, n, tuple(tuple(r) for r in rows)))
    out.sort(key=Subspace.key)
    return tuple(out)


def enumerate_subspaces(q: int, n: int, k: int) -> List[Subspace]:
    """All k-dimensional subspaces of F_q^n, sorted by (dim, flattened basis)."""
    if not 0 <= k <= n:
        raise DimMismatch(f"k={k} outside [0, {n}]")
    return list(_enumerate(q, n, k))


def all_subspaces(q: int, n: int) -> List[Subspace]:
    return [S for k in range(n + 1) for S in _enumerate(q, n, k)]


def line(q: int, v: Sequence[int]) -> Subspace:
    if is_zero(v):
        raise BadLine("zero vector spans no line")
    return span(q, len(v), [v])


# ---------------------------------------------------------------------------
# subquotients

class QuotientMap:
    """The projection F_q^n -> F_q^n / L realized as F_q^{n-1}.

    The generator v of L is normalized to have a 1 at its pivot j, and
    x maps to x - x_j v with coordinate j deleted.
    """

    def __init__(self, q: int, n: int, L: Subspace):
        if L.dim != 1:
            raise BadLine(f"expected a line, got a subspace of dimension {L.dim}")
        self.q, self.n, self.L = q, n, L
        self.v = L.basis[0]
        self.j = L.pivots[0]

    def __call__(self, x: Sequence[int]) -> Vec:
        if len(x) != self.n:
            raise DimMismatch(f"vector of length {len(x)}, expected {self.n}")
        f = x[self.j] % self.q
        w = [(a - f * b) % self.q for a, b in zip(x, self.v)]
        return tuple(w[:self.j] + w[self.j + 1:])

    def lift(self, y: Sequence[int]) -> Vec:
        """A preimage of y (the one with zero at the pivot of L)."""
        return tuple(y[:self.j]) + (0,) + tuple(y[self.j:])

    def preimage(self, S: Subspace) -> Subspace:
        """Full preimage in F_q^n of a subspace of the quotient."""
        return span(self.q, self.n, [self.lift(r) for r in S.basis] + [self.v])


def quotient_map(q: int, n: int, L: Subspace) -> QuotientMap:
    return QuotientMap(q, n, L)


class LayerCoords:
    """Deterministic identification of a subquotient Y/X with F_q^{dim Y - dim X}.

    A vector y of Y is reduced modulo the echelon basis of X; the reduced
    vectors span a complement R of X inside Y whose echelon basis gives
    the coordinates.  For X = 0 these are echelon coordinates of Y, and for
    (L, V) this is exactly the pivot-deletion quotient map.
    """

    def __init__(self, lower: Subspace, upper: Subspace):
        if not lower.issubspace(upper):
            raise DimMismatch("lower subspace not contained in upper")
        self.lower, self.upper = lower, upper
        self.q, self.n = upper.q, upper.n
        self.complement = span(self.q, self.n, [lower.reduce(r) for r in upper.basis])
        self.dim = self.complement.dim

    def __call__(self, y: Sequence[int]) -> Vec:
        if not self.upper.contains(y):
            raise DimMismatch("vector not in the upper subspace")
        r = self.lower.reduce(y)
        return tuple(r[p] for p in self.complement.pivots)

    def lift(self, c: Sequence[int]) -> Vec:
        if len(c) != self.dim:
            raise DimMismatch(f"coordinates of length {len(c)}, expected {self.dim}")
        return self.complement.from_coordinates(c)

    def preimage(self, S: Subspace) -> Subspace:
        """Subspace X + lift(S) of the ambient space for S in the coordinate space."""
        return span(self.q, self.n, [self.lift(r) for r in S.basis] + list(self.lower.basis))


# ---------------------------------------------------------------------------
# layers and J(V)

@dataclass(frozen=True)
class Layer:
    lower: Subspace
    upper: Subspace

    def __post_init__(self):
        if not self.lower.issubspace(self.upper):
            raise DimMismatch(f"{self.lower} is not contained in {self.upper}")
        if self.lower.is_zero() and self.upper.is_full():
            raise DimMismatch("(0, V) is not a proper layer")

    @property
    def width(self) -> int:
        """dim(upper / lower)."""
        return self.upper.dim - self.lower.dim

    def key(self) -> tuple:
        return (self.lower.key(), self.upper.key())

    def __lt__(self, other: "Layer") -> bool:
        return self.key() < other.key()

    def leq(self, other: "Layer") -> bool:
        return other.lower.issubspace(self.lower) and self.upper.issubspace(other.upper)

    def coords(self) -> LayerCoords:
        return LayerCoords(self.lower, self.upper)

    def to_json(self) -> dict:
        return {"lower": [list(r) for r in self.lower.basis], "upper": [list(r) for r in self.upper.basis]}

    def __repr__(self) -> str:
        return f"({self.lower!r},{self.upper!r})"


class LayerPoset:
    """A finite set of layers of F_q^n with the layer order."""

    def __init__(self, q: int, n: int, elements: Iterable[Layer]):
        self.q, self.n = q, n
        self.elements: Tuple[Layer, ...] = tuple(sorted(set(elements), key=Layer.key))
        self.index: Dict[Layer, int] = {x: i for i, x in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Layer]:
        return iter(self.elements)

    def __contains__(self, x: Layer) -> bool:
        return x in self.index

    def leq(self, a: Layer, b: Layer) -> bool:
        return a.leq(b)

    def below(self, top: Layer, strict: bool = True) -> "LayerPoset":
        return LayerPoset(self.q, self.n, [x for x in self.elements if x.leq(top) and not (strict and x == top)])

    def restrict(self, keep) -> "LayerPoset":
        return LayerPoset(self.q, self.n, [x for x in self.elements if keep(x)])


def layer_poset(q: int, n: int) -> LayerPoset:
    """J(V): all nested pairs W0 <= W1 of subspaces of F_q^n except (0, V)."""
    subs = all_subspaces(q, n)
    out = []
    for W0 in subs:
        for W1 in subs:
            if W0.dim <= W1.dim and W0.issubspace(W1) and not (W0.is_zero() and W1.is_full()):
                out.append(Layer(W0, W1))
    return LayerPoset(q, n, out)


# ---------------------------------------------------------------------------
# matrices

def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat(q: int, rows: Iterable[Iterable[int]]) -> Mat:
    return tuple(tuple(x % q for x in r) for r in rows)


def mat_vec(q: int, A: Mat, v: Sequence[int]) -> Vec:
    if len(A[0]) != len(v):
        raise DimMismatch(f"{len(A)}x{len(A[0])} matrix on a vector of length {len(v)}")
    return tuple(sum(a * x for a, x in zip(row, v)) % q for row in A)


def mat_mul(q: int, A: Mat, B: Mat) -> Mat:
    if len(A[0]) != len(B):
        raise DimMismatch("matrix shapes do not compose")
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % q for col in cols) for row in A)


def det_mod(q: int, A: Mat) -> int:
    M = [list(r) for r in A]
    n = len(M)
    d = 1
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] % q), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d = d * M[c][c] % q
        inv = inv_mod(M[c][c], q)
        for i in range(c + 1, n):
            f = M[i][c] * inv % q
            if f:
                M[i] = [(x - f * y) % q for x, y in zip(M[i], M[c])]
    return d % q


def mat_inv(q: int, A: Mat) -> Mat:
    n = len(A)
    aug = [list(r) + list(e) for r, e in zip(A, identity(n))]
    R, piv = rref(q, aug, 2 * n)
    if tuple(piv[:n]) != tuple(range(n)) or len(R) < n:
        raise NotInvertible("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


def check_invertible(q: int, A: Mat) -> None:
    if det_mod(q, A) == 0:
        raise NotInvertible("matrix is singular over F_%d" % q)


def columns_matrix(vectors: Sequence[Vec]) -> Mat:
    """Matrix whose columns are the given vectors."""
    return tuple(zip(*vectors))


def transvection(n: int, i: int, j: int, a: int = 1) -> Mat:
    return tuple(tuple((1 if r == c else 0) + (a if (r, c) == (i, j) else 0) for c in range(n)) for r in range(n))


def diagonal(n: int, entries: Sequence[int]) -> Mat:
    return tuple(tuple(entries[r] if r == c else 0 for c in range(n)) for r in range(n))


def gl_generators(q: int, n: int) -> List[Mat]:
    """Elementary transvections I + E_ij and diag(u, 1, ..., 1) with u generating F_q^x."""
    gens = [transvection(n, i, j) for i in range(n) for j in range(n) if i != j]
    u = primitive_root(q)
    if u != 1 or n == 1:
        gens.append(diagonal(n, [u] + [1] * (n - 1)))
    return gens


def enumerate_gl(q: int, n: int) -> List[Mat]:
    """Every invertible n x n matrix; only sensible for tiny q, n."""
    return [A for A in (tuple(tuple(r) for r in rows) for rows in product(all_vectors(q, n), repeat=n))
            if det_mod(q, A)]


def ordered_bases(q: int, n: int) -> List[Tuple[Vec, ...]]:
    """All ordered bases of F_q^n."""
    return [tuple(zip(*A)) for A in enumerate_gl(q, n)]


# ---------------------------------------------------------------------------
# text

def parse_vector(text: str, q: int, n: Optional[int] = None) -> Vec:
    parts = [p.strip() for p in text.split(",")]
    try:
        v = tuple(int(p) % q for p in parts)
    except ValueError:
        raise ParseError(f"cannot parse vector {text!r}") from None
    if n is not None and len(v) != n:
        raise ParseError(f"vector {text!r} has {len(v)} coordinates, expected {n}")
    return v


def parse_vectors(text: str, q: int, n: Optional[int] = None) -> List[Vec]:
    """Parse ``"1,0;0,1"`` into a list of vectors."""
    text = text.strip()
    if not text:
        return []
    return [parse_vector(chunk, q, n) for chunk in text.split(";")]


def format_vector(v: Sequence[int]) -> str:
    return ",".join(str(x) for x in v)
