from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from steinberg import building, gfgeom as gf, scx, symbols as sy
from steinberg.errors import DimMismatch, NotInvertible, ZeroGenerator
from steinberg.rng import SplitMix64

E1, E2 = (1, 0), (0, 1)


def mclass(q, n, gens, variant="plain"):
    return sy.modular_symbol_class(sy.ModularSymbol(q, n, gens), variant)


def eclass(q, n, gens):
    return sy.extended_symbol_class(sy.ExtendedSymbol(q, n, gens))


def neg(c):
    return tuple(-x for x in c)


def test_steinberg_ranks():
    assert sy.steinberg(2, 2).rank == 3
    assert sy.steinberg(2, 2, "reduced").rank == 2
    assert sy.steinberg(2, 3).rank == 8
    assert sy.steinberg(2, 3, "reduced").rank == 8
    assert sy.steinberg(3, 1).rank == 1
    for q, n in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        assert sy.steinberg(q, n).torsion == ()


def test_modular_basis_symbol_2_2():
    s = sy.ModularSymbol(2, 2, (E1, E2))
    T = building.tits(2, 2)
    expected = scx.ordered_chain(T, [((gf.line(2, E2),), 1), ((gf.line(2, E1),), -1)])
    assert sy.modular_symbol_cycle(s) == expected
    c = mclass(2, 2, (E1, E2))
    assert any(c)
    assert mclass(2, 2, (E2, E1)) == neg(c)
    assert not any(mclass(2, 2, ((1, 1), (1, 1))))


def test_modular_symbol_rejects_zero():
    with pytest.raises(ZeroGenerator):
        sy.ModularSymbol(2, 2, ((0, 0), E1))
    with pytest.raises(DimMismatch):
        sy.ModularSymbol(2, 2, (E1,))


def test_cocycle_example_2_2():
    g0, g1, g2 = E1, E2, (1, 1)
    tot = [a - b + c for a, b, c in zip(mclass(2, 2, (g1, g2)), mclass(2, 2, (g0, g2)), mclass(2, 2, (g0, g1)))]
    assert not any(tot)


@pytest.mark.parametrize("q", [3, 5])
def test_scaling_2(q):
    base = mclass(q, 2, (E1, (1, 1)))
    for a in range(1, q):
        assert mclass(q, 2, ((a, 0), (1, 1))) == base
        assert mclass(q, 2, (E1, (a, a))) == base


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fundamental_cycle_is_cycle(n):
    z = sy.fundamental_chain(n)
    assert scx.boundary(z) == {}
    if n >= 2:
        assert len(z) == factorial(n)


def test_fundamental_cycle_generates_sphere():
    for n in (2, 3, 4):
        S = sy.sphere_complex(n)
        H = scx.homology_in(S, n - 2, reduced=True)
        assert H.rank == 1
        assert abs(H.coordinates(sy.fundamental_chain(n))[0]) == 1


def test_extended_symbol_2_2():
    s = sy.ExtendedSymbol(2, 2, (E1, E2))
    E = scx.estar_complex(2, 2)
    expected = scx.ordered_chain(E, [([E1, E2], 1), ([(0, 0), E2], -1), ([(0, 0), E1], 1)])
    assert sy.extended_symbol_cycle(s) == expected
    assert any(eclass(2, 2, (E1, E2)))
    assert not any(eclass(2, 2, (E1, E1)))
    assert not any(eclass(2, 2, ((0, 0), E1)))


def test_extended_symbol_n1_generates():
    H = sy.estar_homology(2, 1)
    assert (H.rank, H.torsion) == (1, ())
    assert eclass(2, 1, ((1,),)) in ((1,), (-1,))
    assert eclass(2, 1, ((0,),)) == (0,)
    # over F_3 both nonzero vectors hit the same generator
    assert eclass(3, 1, ((1,),)) == eclass(3, 1, ((2,),))


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_check_relations(q, n):
    rep = sy.check_relations(q, n, trials=8, seed=2024)
    assert rep["ok"], rep
    assert rep["consequences_consistent"]
    names = set(rep["relations"])
    assert {"antisymmetry", "scaling", "dependent_zero", "cocycle", "gl_equivariance"} <= names
    assert {"ext_cocycle", "ext_gl_equivariance"} <= names


def test_check_relations_n1_and_empty():
    rep = sy.check_relations(3, 1, trials=5, seed=1)
    assert rep["ok"] and "cocycle" not in rep["relations"]
    empty = sy.check_relations(2, 2, trials=0, seed=0)
    assert empty["ok"] and empty["relations"] == {}


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_mv_comparison_is_iso(q, n):
    assert sy.mv_comparison_is_iso(q, n)


def test_mv_comparison_example():
    c = sy.mv_comparison(sy.ExtendedSymbol(2, 2, (E1, E2)))
    H = sy.punctured_homology(2, 2)
    P = scx.estar_punctured(2, 2)
    expected = H.coordinates(scx.ordered_chain(P, [([E2], 1), ([E1], -1)]))
    assert c == expected and any(c)
    assert not any(sy.mv_comparison(sy.ExtendedSymbol(2, 2, (E1, E1))))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_mv_comparison_linear(seed):
    rng = SplitMix64(seed)
    q, n = 2, 3
    g = rng.vectors(q, n, n)
    h = rng.vectors(q, n, n)
    za = sy.extended_symbol_cycle(sy.ExtendedSymbol(q, n, g))
    zb = sy.extended_symbol_cycle(sy.ExtendedSymbol(q, n, h))
    Ht = sy.punctured_homology(q, n)
    s = {k: za.get(k, 0) + zb.get(k, 0) for k in set(za) | set(zb)}
    s = {k: v for k, v in s.items() if v}
    a = Ht.coordinates(sy.mv_connecting(q, n, za))
    b = Ht.coordinates(sy.mv_connecting(q, n, zb))
    assert Ht.coordinates(sy.mv_connecting(q, n, s)) == tuple(x + y for x, y in zip(a, b))


@pytest.mark.parametrize("q", [2, 3])
def test_compare_all_bases_plane(q):
    bases = gf.ordered_bases(q, 2)
    assert len(bases) == {2: 6, 3: 48}[q]
    for B in bases:
        assert sy.compare_agrees(sy.ExtendedSymbol(q, 2, tuple(B)))
    assert sy.compare_agrees(sy.ExtendedSymbol(q, 2, (E1, E1)))


def test_compare_random_3():
    rng = SplitMix64(77)
    for _ in range(15):
        g = rng.vectors(2, 3, 3)
        assert sy.compare_agrees(sy.ExtendedSymbol(2, 3, tuple(g)))


def test_compare_basis_example():
    s = sy.ExtendedSymbol(2, 2, (E1, E2))
    assert sy.compare_to_steinberg(s) == mclass(2, 2, (E1, E2), "reduced")
    assert sy.comparison_sign(2, 2) in (1, -1)


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_presentation(q, n):
    rep = sy.presentation_check(q, n)
    assert rep["ok"], rep


def test_gl_action_examples():
    q, n = 2, 2
    I = gf.identity(2)
    s = sy.ModularSymbol(q, n, (E1, E2))
    assert sy.gl_act(I, s) == s
    swap = ((0, 1), (1, 0))
    t = sy.gl_act(swap, s)
    assert t.gens == (E2, E1)
    c = mclass(q, n, s.gens)
    assert mclass(q, n, t.gens) == neg(c)
    assert sy.gl_act(swap, c, q=q, n=n) == neg(c)
    with pytest.raises(NotInvertible):
        sy.gl_act(((1, 1), (1, 1)), s)
    with pytest.raises(DimMismatch):
        sy.gl_act(gf.identity(3), s)


@pytest.mark.parametrize("q,n,space", [(2, 2, "plain"), (3, 2, "reduced"), (2, 3, "plain"), (2, 3, "estar")])
def test_gl_action_axiom(q, n, space):
    rng = SplitMix64(q * 100 + n)
    H = sy.estar_homology(q, n) if space == "estar" else sy.steinberg(q, n, space).homology
    for _ in range(4):
        A, B = sy.random_gl(rng, q, n), sy.random_gl(rng, q, n)
        x = tuple(rng.below(7) - 3 for _ in range(H.ngens))
        lhs = sy.gl_act(A, sy.gl_act(B, x, q=q, n=n, space=space), q=q, n=n, space=space)
        assert lhs == sy.gl_act(A @ B, x, q=q, n=n, space=space)


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_modular_class_equivariant(q, n):
    rng = SplitMix64(5 * q + n)
    for _ in range(3):
        A = sy.random_gl(rng, q, n)
        g = rng.vectors(q, n, n)
        s = sy.ModularSymbol(q, n, tuple(g))
        lhs = mclass(q, n, sy.gl_act(A, s).gens)
        assert lhs == sy.gl_act(A, mclass(q, n, s.gens), q=q, n=n)


def test_modular_symbols_span_steinberg():
    # the basis symbols generate St, so their classes have full rank
    from steinberg.exactalg import IntMatrix, rank
    q, n = 2, 3
    cols = []
    for B in gf.ordered_bases(q, n):
        c = mclass(q, n, tuple(B))
        cols.append({i: v for i, v in enumerate(c) if v})
    assert rank(IntMatrix.from_col_dicts(cols, sy.steinberg(q, n).rank)) == 8
