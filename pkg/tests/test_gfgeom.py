from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from steinberg import gfgeom as gf
from steinberg.errors import BadLine, DimMismatch, NotInvertible, ParseError


def brute_subspaces(q, n):
    """Every subspace as a frozenset of vectors, by closing spans of vector subsets."""
    vecs = gf.all_vectors(q, n)
    seen = set()
    for k in range(n + 1):
        for gens in combinations(gf.nonzero_vectors(q, n), k):
            pts = set()
            for coeffs in product(range(q), repeat=k):
                v = [0] * n
                for c, g in zip(coeffs, gens):
                    v = [(a + c * b) % q for a, b in zip(v, g)]
                pts.add(tuple(v))
            seen.add(frozenset(pts) if pts else frozenset({tuple([0] * n)}))
    return seen


def test_primes():
    assert [p for p in range(20) if gf.is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        gf.PrimeField(4)
    assert gf.primitive_root(7) in (3, 5)
    assert gf.inv_mod(3, 7) * 3 % 7 == 1


def test_span_examples():
    S = gf.span(2, 2, [(1, 0)])
    assert S.dim == 1 and S.basis == ((1, 0),)
    assert gf.span(2, 2, [(1, 0), (0, 1), (1, 1)]).is_full()
    # 1*1 - 2*2 = -3 = 0 mod 3: the two vectors are proportional
    T = gf.span(3, 2, [(1, 2), (2, 1)])
    assert T.dim == 1 and T.basis == ((1, 2),)
    assert gf.span(3, 2, []).is_zero()
    with pytest.raises(DimMismatch):
        gf.span(2, 2, [(1, 0, 0)])


def test_rref_is_canonical():
    rows, piv = gf.rref(3, [(2, 1, 1), (1, 1, 0)], 3)
    for i, p in enumerate(piv):
        assert rows[i][p] == 1
        assert all(rows[j][p] == 0 for j in range(len(rows)) if j != i)
    assert list(piv) == sorted(piv)


@pytest.mark.parametrize("q,n,k,count", [(2, 2, 1, 3), (3, 3, 1, 13), (2, 3, 2, 7), (3, 2, 1, 4), (2, 4, 2, 35)])
def test_enumerate_counts(q, n, k, count):
    subs = gf.enumerate_subspaces(q, n, k)
    assert len(subs) == count == gf.gaussian_binomial(q, n, k)
    assert len(set(subs)) == count
    assert all(S.dim == k for S in subs)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (3, 2)])
def test_enumeration_matches_brute_force(q, n):
    ours = {frozenset(S.vectors()) for S in gf.all_subspaces(q, n)}
    assert ours == brute_subspaces(q, n)
    assert gf.enumerate_subspaces(q, n, 0) == [gf.zero_subspace(q, n)]


@pytest.mark.parametrize("q,n", [(2, 3), (3, 3), (5, 2)])
def test_span_of_basis_roundtrip(q, n):
    for S in gf.all_subspaces(q, n):
        assert gf.span(q, n, S.basis) == S
        assert gf.span(q, n, S.vectors()) == S
        assert gf.Subspace.from_json(S.to_json()) == S


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.data())
def test_span_contains_generators(q, n, data):
    k = data.draw(st.integers(0, n + 1))
    vs = [tuple(data.draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n))) for _ in range(k)]
    S = gf.span(q, n, vs)
    assert all(S.contains(v) for v in vs)
    assert S.dim == gf.matrix_rank(q, vs) if vs else S.dim == 0
    for v in S.basis:
        assert S.from_coordinates(S.coordinates(v)) == v


def test_quotient_examples():
    L = gf.line(2, (1, 0))
    qm = gf.quotient_map(2, 2, L)
    assert qm((1, 1)) == (1,)
    assert qm((1, 0)) == (0,)
    L3 = gf.line(3, (0, 1, 2))
    assert gf.quotient_map(3, 3, L3)((1, 1, 0)) == (1, 1)
    with pytest.raises(BadLine):
        gf.quotient_map(2, 2, gf.full_space(2, 2))


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_quotient_linear_with_kernel_L(q, n):
    vecs = gf.all_vectors(q, n)
    for L in gf.enumerate_subspaces(q, n, 1):
        qm = gf.quotient_map(q, n, L)
        kernel = {v for v in vecs if gf.is_zero(qm(v))}
        assert kernel == set(L.vectors())
        for x, y in product(vecs[:9], repeat=2):
            assert qm(gf.vadd(q, x, y)) == gf.vadd(q, qm(x), qm(y))
        assert {qm(v) for v in vecs} == set(gf.all_vectors(q, n - 1))
        for y in gf.all_vectors(q, n - 1):
            assert qm(qm.lift(y)) == y


@pytest.mark.parametrize("q,n", [(2, 3), (3, 3)])
def test_layer_coords_agree_with_quotient_and_rref(q, n):
    V = gf.full_space(q, n)
    zero = gf.zero_subspace(q, n)
    for L in gf.enumerate_subspaces(q, n, 1):
        lc, qm = gf.Layer(L, V).coords(), gf.quotient_map(q, n, L)
        assert all(lc(v) == qm(v) for v in gf.all_vectors(q, n))
    for W in gf.enumerate_subspaces(q, n, n - 1):
        lc = gf.Layer(zero, W).coords()
        assert all(lc(v) == W.coordinates(v) for v in W.vectors())


@pytest.mark.parametrize("q,n", [(2, 3), (3, 3)])
def test_layer_coords_bijective_and_preimage(q, n):
    for layer in gf.layer_poset(q, n):
        lc = layer.coords()
        assert lc.dim == layer.width
        imgs = {lc(v) for v in layer.upper.vectors()}
        assert imgs == set(gf.all_vectors(q, layer.width))
        for c in gf.all_vectors(q, layer.width):
            assert lc(lc.lift(c)) == c
        for S in gf.all_subspaces(q, layer.width):
            P = lc.preimage(S)
            assert layer.lower <= P <= layer.upper
            assert P.dim == layer.lower.dim + S.dim


def test_layer_poset_examples():
    J1 = gf.layer_poset(2, 1)
    assert len(J1) == 2
    a, b = J1.elements
    assert not a.leq(b) and not b.leq(a)
    J = gf.layer_poset(2, 2)
    assert len(J) == 11
    V, zero = gf.full_space(2, 2), gf.zero_subspace(2, 2)
    assert all(not (x.lower == zero and x.upper == V) for x in J)
    with pytest.raises(DimMismatch):
        gf.Layer(zero, V)
    with pytest.raises(DimMismatch):
        gf.Layer(gf.line(2, (1, 0)), gf.line(2, (0, 1)))


def test_layer_order_definition():
    J = gf.layer_poset(2, 2)
    for x in J:
        for y in J:
            expected = y.lower.issubspace(x.lower) and x.upper.issubspace(y.upper)
            assert x.leq(y) == expected
            if x.leq(y) and y.leq(x):
                assert x == y
            for z in J:
                if x.leq(y) and y.leq(z):
                    assert x.leq(z)


def test_layer_poset_sizes():
    # pairs of nested subspaces minus (0, V)
    for q, n in [(2, 2), (2, 3), (3, 2)]:
        subs = gf.all_subspaces(q, n)
        nested = sum(1 for a in subs for b in subs if a <= b)
        assert len(gf.layer_poset(q, n)) == nested - 1
    assert len(gf.layer_poset(2, 3)) == 65


def test_matrices_and_group():
    q = 3
    A = gf.mat(q, [[1, 2], [0, 1]])
    assert gf.mat_mul(q, A, gf.mat_inv(q, A)) == gf.identity(2)
    assert gf.det_mod(q, A) == 1
    with pytest.raises(NotInvertible):
        gf.check_invertible(q, gf.mat(q, [[1, 2], [2, 1]]))
    assert len(gf.enumerate_gl(2, 2)) == 6
    assert len(gf.enumerate_gl(3, 2)) == 48
    assert len(gf.ordered_bases(3, 2)) == 48


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_generators_generate(q, n):
    gens = gf.gl_generators(q, n)
    seen = {gf.identity(n)}
    frontier = [gf.identity(n)]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = gf.mat_mul(q, s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    assert seen == set(gf.enumerate_gl(q, n))


def test_parse_and_format():
    assert gf.parse_vectors("1,0;0,1", 2, 2) == [(1, 0), (0, 1)]
    assert gf.parse_vector("4,5", 3) == (1, 2)
    assert gf.format_vector((1, 0, 2)) == "1,0,2"
    with pytest.raises(ParseError):
        gf.parse_vector("1,x", 2)
    with pytest.raises(ParseError):
        gf.parse_vectors("1,0;1", 2, 2)


def test_subspace_lattice_ops():
    q, n = 2, 3
    A = gf.span(q, n, [(1, 0, 0), (0, 1, 0)])
    B = gf.span(q, n, [(0, 1, 0), (0, 0, 1)])
    assert A.join(B).is_full()
    assert A.meet(B) == gf.line(q, (0, 1, 0))
    assert A < B or B < A
    P = gf.mat(q, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    assert A.image(P) == B
