"""
Exact integer linear algebra: sparse matrices, Smith normal form with
transformation matrices, and homology of (degree-windowed) chain complexes.

All arithmetic is done with Python integers, so entry growth during
elimination can never overflow.

Chains are plain dicts ``{simplex: coefficient}`` with no zero values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .errors import NotACycle, WindowError

Chain = Dict[Hashable, int]


# ---------------------------------------------------------------------------
# chains

def chain_add(*chains: Chain) -> Chain:
    out: Chain = {}
    for ch in chains:
        for s, v in ch.items():
            w = out.get(s, 0) + v
            if w:
                out[s] = w
            else:
                out.pop(s, None)
    return out


def chain_scale(ch: Chain, k: int) -> Chain:
    if k == 0:
        return {}
    return {s: k * v for s, v in ch.items()}


def chain_sub(a: Chain, b: Chain) -> Chain:
    return chain_add(a, chain_scale(b, -1))


# ---------------------------------------------------------------------------
# sparse integer matrices

class IntMatrix:
    """Immutable sparse integer matrix.

    ``entries`` maps ``(row, col)`` to a nonzero int.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Dict[Tuple[int, int], int]] = None):
        self.rows = rows
        self.cols = cols
        ent = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r},{c}) outside {rows}x{cols}")
            if v:
                ent[(r, c)] = int(v)
        self.entries = ent

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        m = len(rows)
        n = len(rows[0]) if m else (ncols or 0)
        return cls(m, n, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})

    @classmethod
    def from_row_dicts(cls, rows: Sequence[Dict[int, int]], ncols: int) -> "IntMatrix":
        return cls(len(rows), ncols, {(i, j): v for i, row in enumerate(rows) for j, v in row.items()})

    @classmethod
    def from_col_dicts(cls, cols: Sequence[Dict[int, int]], nrows: int) -> "IntMatrix":
        return cls(nrows, len(cols), {(i, j): v for j, col in enumerate(cols) for i, v in col.items()})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_dicts(self) -> List[Dict[int, int]]:
        rows: List[Dict[int, int]] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def col_dicts(self) -> List[Dict[int, int]]:
        cols: List[Dict[int, int]] = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def __getitem__(self, rc: Tuple[int, int]) -> int:
        return self.entries.get(rc, 0)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        right = other.row_dicts()
        acc: Dict[Tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in right[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return IntMatrix(self.rows, other.cols, acc)

    def apply(self, vec: Dict[int, int]) -> Dict[int, int]:
        """Matrix times a sparse column vector ``{index: value}``."""
        out: Dict[int, int] = {}
        cols = self.col_dicts() if len(vec) * 4 < self.cols else None
        if cols is not None:
            for j, x in vec.items():
                for i, v in cols[j].items():
                    out[i] = out.get(i, 0) + v * x
        else:
            for (i, j), v in self.entries.items():
                x = vec.get(j)
                if x:
                    out[i] = out.get(i, 0) + v * x
        return {i: v for i, v in out.items() if v}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, v] for (r, c), v in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntMatrix":
        return cls(obj["rows"], obj["cols"], {(r, c): v for r, c, v in obj["entries"]})


# ---------------------------------------------------------------------------
# Smith normal form

@dataclass(frozen=True)
class SNFResult:
    """``M == U @ D @ W`` with U, W unimodular."""

    D: IntMatrix
    U: Optional[IntMatrix]
    Uinv: Optional[IntMatrix]
    W: Optional[IntMatrix]
    Winv: Optional[IntMatrix]
    diagonal: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _mix(vecs: List[Dict[int, int]], i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (v_i, v_j) <- (a v_i + b v_j, c v_i + d v_j)
    vi, vj = vecs[i], vecs[j]
    ni: Dict[int, int] = {}
    nj: Dict[int, int] = {}
    for k in vi.keys() | vj.keys():
        x, y = vi.get(k, 0), vj.get(k, 0)
        u, w = a * x + b * y, c * x + d * y
        if u:
            ni[k] = u
        if w:
            nj[k] = w
    vecs[i], vecs[j] = ni, nj


def _addmul(vecs: List[Dict[int, int]], i: int, j: int, k: int) -> None:
    # v_i += k v_j
    vi = vecs[i]
    for idx, y in vecs[j].items():
        w = vi.get(idx, 0) + k * y
        if w:
            vi[idx] = w
        else:
            del vi[idx]


class _SNFWork:
    """Mutable elimination state; row dicts for A plus a column index."""

    def __init__(self, M: IntMatrix, track: bool):
        self.m, self.n = M.rows, M.cols
        self.A = M.row_dicts()
        self.colrows: List[set] = [set() for _ in range(self.n)]
        for (r, c) in M.entries:
            self.colrows[c].add(r)
        self.track = track
        if track:
            # R @ M @ C == D ; keep R, C and their inverses
            self.R = [{i: 1} for i in range(self.m)]        # rows
            self.Rinv = [{i: 1} for i in range(self.m)]     # columns
            self.C = [{i: 1} for i in range(self.n)]        # columns
            self.Cinv = [{i: 1} for i in range(self.n)]     # rows

    # row operations ------------------------------------------------------
    def row_addmul(self, i: int, j: int, k: int) -> None:
        if not k:
            return
        Ai = self.A[i]
        for c, y in self.A[j].items():
            w = Ai.get(c, 0) + k * y
            if w:
                if c not in Ai:
                    self.colrows[c].add(i)
                Ai[c] = w
            else:
                del Ai[c]
                self.colrows[c].discard(i)
        if self.track:
            _addmul(self.R, i, j, k)
            _addmul(self.Rinv, j, i, -k)

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        Ai, Aj = self.A[i], self.A[j]
        for c in Ai:
            self.colrows[c].discard(i)
        for c in Aj:
            self.colrows[c].discard(j)
        self.A[i], self.A[j] = Aj, Ai
        for c in Aj:
            self.colrows[c].add(i)
        for c in Ai:
            self.colrows[c].add(j)
        if self.track:
            self.R[i], self.R[j] = self.R[j], self.R[i]
            self.Rinv[i], self.Rinv[j] = self.Rinv[j], self.Rinv[i]

    def row_negate(self, i: int) -> None:
        self.A[i] = {c: -v for c, v in self.A[i].items()}
        if self.track:
            self.R[i] = {c: -v for c, v in self.R[i].items()}
            self.Rinv[i] = {c: -v for c, v in self.Rinv[i].items()}

    def row_mix(self, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        det = a * d - b * c
        assert det in (1, -1)
        for col in self.A[i]:
            self.colrows[col].discard(i)
        for col in self.A[j]:
            self.colrows[col].discard(j)
        _mix(self.A, i, j, a, b, c, d)
        for col in self.A[i]:
            self.colrows[col].add(i)
        for col in self.A[j]:
            self.colrows[col].add(j)
        if self.track:
            _mix(self.R, i, j, a, b, c, d)
            _mix(self.Rinv, i, j, det * d, -det * c, -det * b, det * a)

    # column operations ---------------------------------------------------
    def col_addmul(self, i: int, j: int, k: int) -> None:
        # col_i += k col_j
        if not k:
            return
        for r in list(self.colrows[j]):
            Ar = self.A[r]
            w = Ar.get(i, 0) + k * Ar[j]
            if w:
                if i not in Ar:
                    self.colrows[i].add(r)
                Ar[i] = w
            else:
                del Ar[i]
                self.colrows[i].discard(r)
        if self.track:
            _addmul(self.C, i, j, k)
            _addmul(self.Cinv, j, i, -k)

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for r in self.colrows[i] | self.colrows[j]:
            Ar = self.A[r]
            x, y = Ar.pop(i, 0), Ar.pop(j, 0)
            if y:
                Ar[i] = y
            if x:
                Ar[j] = x
        self.colrows[i], self.colrows[j] = self.colrows[j], self.colrows[i]
        if self.track:
            self.C[i], self.C[j] = self.C[j], self.C[i]
            self.Cinv[i], self.Cinv[j] = self.Cinv[j], self.Cinv[i]

    def col_mix(self, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        det = a * d - b * c
        assert det in (1, -1)
        for r in self.colrows[i] | self.colrows[j]:
            Ar = self.A[r]
            x, y = Ar.pop(i, 0), Ar.pop(j, 0)
            u, w = a * x + b * y, c * x + d * y
            if u:
                Ar[i] = u
            if w:
                Ar[j] = w
        rows = self.colrows[i] | self.colrows[j]
        self.colrows[i] = {r for r in rows if i in self.A[r]}
        self.colrows[j] = {r for r in rows if j in self.A[r]}
        if self.track:
            _mix(self.C, i, j, a, b, c, d)
            _mix(self.Cinv, i, j, det * d, -det * c, -det * b, det * a)

    # pivoting ------------------------------------------------------------
    def find_pivot(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        best_key = None
        for r in range(t, self.m):
            row = self.A[r]
            if not row:
                continue
            lr = len(row)
            for c, v in row.items():
                key = (abs(v), (lr - 1) * (len(self.colrows[c]) - 1))
                if best_key is None or key < best_key:
                    best, best_key = (r, c), key
                    if key == (1, 0):
                        return best
        return best

    def reduce_at(self, t: int) -> None:
        """Clear row t and column t except the pivot at (t, t)."""
        while True:
            p = self.A[t][t]
            for r in [r for r in self.colrows[t] if r != t]:
                self.row_addmul(r, t, -_nearest_quotient(self.A[r][t], p))
            for c in [c for c in self.A[t] if c != t]:
                self.col_addmul(c, t, -_nearest_quotient(self.A[t][c], p))
            rest_col = [r for r in self.colrows[t] if r != t]
            rest_row = [c for c in self.A[t] if c != t]
            if not rest_col and not rest_row:
                return
            # a remainder smaller than |p| survived: make it the new pivot
            cands = [(abs(self.A[r][t]), 0, r) for r in rest_col] + \
                    [(abs(self.A[t][c]), 1, c) for c in rest_row]
            _, kind, idx = min(cands)
            if kind == 0:
                self.row_swap(t, idx)
            else:
                self.col_swap(t, idx)

    def run(self) -> List[int]:
        t = 0
        lim = min(self.m, self.n)
        while t < lim:
            piv = self.find_pivot(t)
            if piv is None:
                break
            r, c = piv
            self.row_swap(t, r)
            self.col_swap(t, c)
            self.reduce_at(t)
            t += 1
        diag = [self.A[i][i] for i in range(t)]
        for i, v in enumerate(diag):
            if v < 0:
                self.row_negate(i)
                diag[i] = -v
        # enforce d_1 | d_2 | ... with 2x2 unimodular cleanups
        for i in range(t):
            for j in range(i + 1, t):
                a, b = diag[i], diag[j]
                if b % a == 0:
                    continue
                g, s, u = _xgcd(a, b)
                # rows: r_i += r_j  ->  [[a, b], [0, b]]
                self.row_addmul(i, j, 1)
                # cols: [[s, -b/g], [u, a/g]] sends row i to (g, 0)
                self.col_mix(i, j, s, u, -b // g, a // g)
                # row j = (b*u, a*b/g); clear its first entry
                self.row_addmul(j, i, -(self.A[j].get(i, 0) // g))
                diag[i], diag[j] = g, a * b // g
                if self.A[j].get(j, 0) < 0:
                    self.row_negate(j)
        return diag


def _nearest_quotient(a: int, p: int) -> int:
    """q with |a - q p| <= |p| / 2; smaller remainders keep entry growth down."""
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(M: IntMatrix, transforms: bool = True) -> SNFResult:
    """Smith normal form ``M = U D W`` by sparse elimination.

    Pivots are chosen by minimal absolute value, ties broken by a
    Markowitz fill-in estimate.  With ``transforms=False`` only D is
    computed, which is considerably cheaper.
    """
    work = _SNFWork(M, transforms)
    diag = work.run()
    D = IntMatrix(M.rows, M.cols, {(i, i): v for i, v in enumerate(diag)})
    if not transforms:
        return SNFResult(D, None, None, None, None, tuple(diag))
    m, n = M.rows, M.cols
    U = IntMatrix.from_col_dicts(work.Rinv, m)
    Uinv = IntMatrix.from_row_dicts(work.R, m)
    W = IntMatrix.from_row_dicts(work.Cinv, n)
    Winv = IntMatrix.from_col_dicts(work.C, n)
    return SNFResult(D, U, Uinv, W, Winv, tuple(diag))


def invariant_factors(M: IntMatrix) -> Tuple[int, ...]:
    return smith_normal_form(M, transforms=False).diagonal


def rank(M: IntMatrix) -> int:
    return len(invariant_factors(M))


def cokernel_invariants(M: IntMatrix) -> Tuple[int, List[int]]:
    """(free rank, torsion factors > 1) of Z^rows / im M."""
    diag = invariant_factors(M)
    return M.rows - len(diag), [d for d in diag if d > 1]


def determinant(M: IntMatrix) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    a = M.to_dense()
    n = M.rows
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# chain complexes

@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex materialized on a contiguous window of degrees.

    ``bases[k]`` lists the basis cells of C_k for ``lo <= k <= hi`` and
    ``boundary[k]`` is the matrix of C_k -> C_{k-1} for ``lo < k <= hi``
    (and for ``k == 0`` it is implicitly the zero map).  ``top_complete``
    records that C_{hi+1} is zero, so homology in degree ``hi`` is available.
    """

    lo: int
    hi: int
    bases: Dict[int, Tuple[Hashable, ...]]
    boundary: Dict[int, IntMatrix]
    top_complete: bool = False
    index: Dict[int, Dict[Hashable, int]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.index is None:
            object.__setattr__(self, "index", {k: {s: i for i, s in enumerate(b)} for k, b in self.bases.items()})
        for k, B in self.boundary.items():
            if B.cols != len(self.bases[k]) or B.rows != len(self.bases[k - 1]):
                raise ValueError(f"boundary {k} has shape {B.rows}x{B.cols}")
        for k in self.boundary:
            if k - 1 in self.boundary and not (self.boundary[k - 1] @ self.boundary[k]).is_zero():
                raise ValueError(f"d_{k-1} d_{k} != 0")

    def rank(self, k: int) -> int:
        return len(self.bases.get(k, ()))

    def to_vector(self, z: Chain, k: int) -> Dict[int, int]:
        idx = self.index[k]
        try:
            return {idx[s]: v for s, v in z.items() if v}
        except KeyError as exc:
            raise ValueError(f"{exc.args[0]!r} is not a basis cell in degree {k}") from None

    def from_vector(self, vec: Dict[int, int], k: int) -> Chain:
        basis = self.bases[k]
        return {basis[i]: v for i, v in vec.items() if v}

    def boundary_matrix(self, k: int, reduced: bool = False) -> IntMatrix:
        if k == 0:
            n0 = self.rank(0)
            if reduced:
                return IntMatrix(1, n0, {(0, j): 1 for j in range(n0)})
            return IntMatrix(0, n0)
        if k not in self.boundary:
            raise WindowError(f"boundary in degree {k} outside window [{self.lo}, {self.hi}]")
        return self.boundary[k]

    def upper_boundary(self, k: int) -> IntMatrix:
        if k + 1 in self.boundary:
            return self.boundary[k + 1]
        if k == self.hi and self.top_complete:
            return IntMatrix(self.rank(k), 0)
        raise WindowError(f"boundary in degree {k + 1} outside window [{self.lo}, {self.hi}]")

    def d(self, z: Chain, k: int, reduced: bool = False) -> Chain:
        """Boundary of a k-chain (as a chain of (k-1)-cells; augmentation if reduced, k=0)."""
        B = self.boundary_matrix(k, reduced)
        out = B.apply(self.to_vector(z, k))
        if k == 0:
            return {"*": out[0]} if out else {}
        return self.from_vector(out, k - 1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.rank(k) for k in range(self.lo, self.hi + 1))


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    rank: int
    torsion: Tuple[int, ...]
    cycle_basis: Tuple[Chain, ...]
    reduced: bool
    complex: ChainComplex = field(repr=False, compare=False)
    # coordinate data: rows of W spanning ker-coordinates, rows of the second
    # SNF's U^{-1} for the free and torsion summands
    _ker_rows: Tuple[Dict[int, int], ...] = field(repr=False, compare=False, default=())
    _coord_rows: Tuple[Dict[int, int], ...] = field(repr=False, compare=False, default=())

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    def coordinates(self, z: Chain) -> Tuple[int, ...]:
        return cycle_coordinates(self, z)

    def to_json(self) -> dict:
        return {"degree": self.degree, "rank": self.rank, "torsion": list(self.torsion)}


def homology(C: ChainComplex, degree: int, reduced: bool = False) -> HomologyGroup:
    """Integral homology of C in one degree, with cycle basis and coordinates.

    With ``reduced=True`` the degree-0 boundary is the augmentation.
    """
    k = degree
    if k < C.lo or (k > C.lo and k - 1 < C.lo) or k > C.hi:
        raise WindowError(f"degree {k} outside window [{C.lo}, {C.hi}]")
    if k > 0 and k == C.lo:
        raise WindowError(f"degree {k} needs C_{k-1}, window starts at {C.lo}")
    dk = C.boundary_matrix(k, reduced)
    dk1 = C.upper_boundary(k)
    mk = C.rank(k)

    s1 = smith_normal_form(dk)
    r1 = s1.rank
    W_rows = s1.W.row_dicts()[r1:]
    Winv_cols = s1.Winv.col_dicts()[r1:]
    z = mk - r1

    # image of d_{k+1} in kernel coordinates
    dk1_cols = dk1.col_dicts()
    Bp: Dict[Tuple[int, int], int] = {}
    for j, col in enumerate(dk1_cols):
        for i, row in enumerate(W_rows):
            v = sum(row.get(idx, 0) * x for idx, x in col.items())
            if v:
                Bp[(i, j)] = v
    s2 = smith_normal_form(IntMatrix(z, dk1.cols, Bp))
    diag = s2.diagonal
    r2 = len(diag)
    U2_cols = s2.U.col_dicts()
    U2inv_rows = s2.Uinv.row_dicts()

    tors_pos = [i for i in range(r2) if diag[i] > 1]
    positions = list(range(r2, z)) + tors_pos
    torsion = tuple(diag[i] for i in tors_pos)

    cycles = []
    for p in positions:
        vec: Dict[int, int] = {}
        for i, a in U2_cols[p].items():
            for idx, x in Winv_cols[i].items():
                vec[idx] = vec.get(idx, 0) + a * x
        cycles.append(C.from_vector({i: v for i, v in vec.items() if v}, k))

    return HomologyGroup(
        degree=k,
        rank=z - r2,
        torsion=torsion,
        cycle_basis=tuple(cycles),
        reduced=reduced,
        complex=C,
        _ker_rows=tuple(W_rows),
        _coord_rows=tuple(U2inv_rows[p] for p in positions),
    )


def is_cycle(C: ChainComplex, z: Chain, degree: int, reduced: bool = False) -> bool:
    if degree == 0 and not reduced:
        return True
    return not C.d(z, degree, reduced)


def cycle_coordinates(H: HomologyGroup, z: Chain) -> Tuple[int, ...]:
    """Coordinates of the class of z in Z^rank + (torsion summands).

    Free coordinates come first; torsion coordinates are reduced modulo
    their invariant factor.
    """
    C, k = H.complex, H.degree
    if not is_cycle(C, z, k, H.reduced):
        raise NotACycle(f"chain is not a cycle in degree {k}")
    vec = C.to_vector(z, k)
    y = [sum(row.get(i, 0) * x for i, x in vec.items()) for row in H._ker_rows]
    coords = []
    for n, row in enumerate(H._coord_rows):
        c = sum(a * y[i] for i, a in row.items())
        if n >= H.rank:
            c %= H.torsion[n - H.rank]
        coords.append(c)
    return tuple(coords)


def boundary_witness(C: ChainComplex, z: Chain, degree: int, reduced: bool = False) -> Optional[Chain]:
    """A (degree+1)-chain w with d(w) = z, or None if z is not a boundary."""
    if not is_cycle(C, z, degree, reduced):
        raise NotACycle(f"chain is not a cycle in degree {degree}")
    if not z:
        return {}
    B = C.upper_boundary(degree)
    s = smith_normal_form(B)
    y = s.Uinv.apply(C.to_vector(z, degree))
    x: Dict[int, int] = {}
    for i, v in y.items():
        if i >= s.rank or v % s.diagonal[i]:
            return None
        x[i] = v // s.diagonal[i]
    w = s.Winv.apply(x)
    return C.from_vector(w, degree + 1)


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
