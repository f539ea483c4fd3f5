import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from avgcoh.graded import (GradedMap, GradedVectorSpace, LengthMismatch,
                           TooManyArguments, bar_circ, chi_sign, compose,
                           gerstenhaber, koszul_sign, shuffle_factorize,
                           shuffles, sign_of_perm)


def rand_map(space, arity, degree, rng, dom_sv=True, cod_sv=True):
    gm = GradedMap(space, arity, degree, dom_sv, cod_sv)
    found = False
    for tup in product(range(space.dim), repeat=arity):
        for out in range(space.dim):
            if gm.entry_allowed(tup, out):
                v = rng.randint(-2, 2)
                if not found and v == 0:
                    v = 1
                if v:
                    gm.set_entry(tup, out, v)
                    found = True
    return gm if found else None


def test_koszul_identity_permutation():
    assert koszul_sign((0, 1, 2), (1, 1, 1)) == 1
    assert chi_sign((0, 1, 2), (0, 1, 0)) == 1


def test_swap_of_two_odds():
    assert koszul_sign((1, 0), (1, 1)) == -1
    assert chi_sign((1, 0), (1, 1)) == 1


def test_swap_odd_even():
    assert koszul_sign((1, 0), (1, 0)) == 1
    assert chi_sign((1, 0), (1, 0)) == -1


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        koszul_sign((0, 1), (1,))


def test_koszul_composition_law():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randrange(2, 6)
        degs = [rng.randrange(-2, 3) for _ in range(n)]
        p = list(range(n))
        q = list(range(n))
        rng.shuffle(p)
        rng.shuffle(q)
        comp = tuple(p[q[k]] for k in range(n))
        ydegs = [degs[p[k]] for k in range(n)]
        assert koszul_sign(comp, degs) == \
            koszul_sign(tuple(q), ydegs) * koszul_sign(tuple(p), degs)


def test_shuffles_counts():
    assert len(shuffles(2, 1)) == 3
    assert shuffles(0, 4) == [(0, 1, 2, 3)]
    assert shuffles(3, 0) == [(0, 1, 2)]
    from math import comb
    for i in range(0, 5):
        for j in range(0, 5):
            assert len(shuffles(i, j)) == comb(i + j, i)


def test_shuffles_are_monotone_blocks():
    for p in shuffles(2, 3):
        assert list(p[:2]) == sorted(p[:2])
        assert list(p[2:]) == sorted(p[2:])


def test_shuffle_factorization_bijection():
    # unique factorization perm = sigma o (delta, tau); exhaustive for n <= 5
    for n in range(1, 6):
        for i in range(1, n):
            seen = set()
            for perm in permutations(range(n)):
                sigma, delta, tau = shuffle_factorize(perm, i)
                assert sigma in set(shuffles(i, n - i))
                assert sorted(delta) == list(range(i))
                assert sorted(tau) == list(range(n - i))
                rebuilt = tuple(sigma[delta[k]] for k in range(i)) + \
                    tuple(sigma[i + tau[m]] for m in range(n - i))
                assert rebuilt == perm
                seen.add((sigma, delta, tau))
            assert len(seen) == len(list(permutations(range(n))))


def test_chi_factorization_multiplicative():
    rng = random.Random(8)
    for _ in range(40):
        n = rng.randrange(2, 6)
        i = rng.randrange(1, n)
        degs = [rng.randrange(0, 3) for _ in range(n)]
        perm = list(range(n))
        rng.shuffle(perm)
        perm = tuple(perm)
        sigma, delta, tau = shuffle_factorize(perm, i)
        front_degs = [degs[sigma[k]] for k in range(i)]
        back_degs = [degs[sigma[i + m]] for m in range(n - i)]
        assert chi_sign(perm, degs) == chi_sign(sigma, degs) * \
            chi_sign(delta, front_degs) * chi_sign(tau, back_degs)


def test_graded_map_degree_guard():
    space = GradedVectorSpace([0, 1])
    gm = GradedMap(space, 1, 0, True, True)
    gm.set_entry((0,), 0, 1)
    with pytest.raises(AssertionError):
        gm.set_entry((0,), 1, 1)  # output degree off by one


def test_compose_with_identity_slots():
    space = GradedVectorSpace([0, 0])
    rng = random.Random(3)
    f = rand_map(space, 2, -1, rng)
    out = compose(f, [None, None])
    assert out == f


def test_bar_empty_insertion_is_identity():
    space = GradedVectorSpace([0, 1])
    rng = random.Random(5)
    f = rand_map(space, 2, -1, rng)
    assert bar_circ(f, []) == f


def test_bar_arity_one_outer_is_composition():
    space = GradedVectorSpace([0, 0])
    rng = random.Random(7)
    f = rand_map(space, 1, 0, rng)
    g = rand_map(space, 2, -1, rng)
    assert bar_circ(f, [g]) == compose(f, [g])


def test_bar_single_insertion_expansion():
    # arity-2 f, arity-1 g: f barcirc g = f(g x id) + f(id x g) with signs
    space = GradedVectorSpace([0, 1])
    rng = random.Random(9)
    f = rand_map(space, 2, -1, rng)
    g = rand_map(space, 1, -1, rng)
    expect = compose(f, [g, None]).add(compose(f, [None, g]))
    assert bar_circ(f, [g]) == expect


def test_bar_insertion_of_arity_one_identity_scales_by_arity():
    space = GradedVectorSpace([0, 1])
    rng = random.Random(11)
    ident = GradedMap(space, 1, 0, True, True)
    for i in range(space.dim):
        ident.set_entry((i,), i, 1)
    for arity in (1, 2, 3):
        f = rand_map(space, arity, -1, rng)
        assert bar_circ(f, [ident]) == f.scale(arity)


def test_too_many_arguments():
    space = GradedVectorSpace([0])
    rng = random.Random(13)
    f = rand_map(space, 1, 0, rng)
    g = rand_map(space, 1, 0, rng)
    with pytest.raises(TooManyArguments):
        bar_circ(f, [g, g])


def _pre_jacobi_rhs(f, gs, hs):
    """Independent expansion: each inserted map eats a consecutive block."""
    m, n = len(gs), len(hs)
    total = None

    def walk(k, start, args, exp):
        nonlocal total
        if k == m:
            args = args + hs[start:]
            if len(args) > f.arity:
                return
            term = bar_circ(f, args)
            if exp % 2:
                term = term.neg()
            total = term if total is None else total.add(term)
            return
        for i_k in range(start, n + 1):
            crossed = sum(h.degree for h in hs[:i_k])
            for j_k in range(i_k, n + 1):
                if j_k - i_k > gs[k].arity:
                    break
                inner = bar_circ(gs[k], hs[i_k:j_k]) if j_k > i_k else gs[k]
                walk(k + 1, j_k,
                     args + hs[start:i_k] + [inner],
                     exp + gs[k].degree * crossed)

    walk(0, 0, [], 0)
    return total


def feasible_degrees(space, arity):
    out = []
    for d in range(-3, 4):
        gm = GradedMap(space, arity, d, True, True)
        if any(gm.entry_allowed(tup, o)
               for tup in product(range(space.dim), repeat=arity)
               for o in range(space.dim)):
            out.append(d)
    return out


def feasible_map(space, arity, rng):
    return rand_map(space, arity, rng.choice(feasible_degrees(space, arity)), rng)


def sample_pre_jacobi_triple(space, rng):
    """(f, gs, hs) with arities that make both nested insertions legal."""
    m = rng.randrange(1, 3)
    f = feasible_map(space, rng.randrange(m, 4), rng)
    gs = [feasible_map(space, rng.randrange(1, 3), rng) for _ in range(m)]
    if f is None or any(g is None for g in gs):
        return None
    outer_arity = f.arity - m + sum(g.arity for g in gs)
    if outer_arity < 1:
        return None
    hs = [feasible_map(space, rng.randrange(1, 3), rng)
          for _ in range(rng.randrange(1, min(outer_arity, 2) + 1))]
    if any(h is None for h in hs):
        return None
    return f, gs, hs


def check_pre_jacobi(f, gs, hs):
    lhs = bar_circ(bar_circ(f, gs), hs)
    rhs = _pre_jacobi_rhs(f, gs, hs)
    return rhs is not None and lhs == rhs


def test_pre_jacobi_identity():
    rng = random.Random(17)
    spaces = [GradedVectorSpace([0, 0]), GradedVectorSpace([0, 1])]
    checked = 0
    for space in spaces:
        for _ in range(40):
            triple = sample_pre_jacobi_triple(space, rng)
            if triple is None:
                continue
            assert check_pre_jacobi(*triple)
            checked += 1
    assert checked >= 30


def test_gerstenhaber_antisymmetry():
    rng = random.Random(19)
    space = GradedVectorSpace([0, 1])
    for _ in range(20):
        f = rand_map(space, rng.randrange(1, 3), rng.randrange(-1, 2), rng)
        g = rand_map(space, rng.randrange(1, 3), rng.randrange(-1, 2), rng)
        if f is None or g is None:
            continue
        lhs = gerstenhaber(f, g)
        rhs = gerstenhaber(g, f)
        sign = -1 if (f.degree * g.degree) % 2 == 0 else 1
        assert lhs == rhs.scale(sign)


def test_gerstenhaber_square():
    rng = random.Random(23)
    space = GradedVectorSpace([0, 1])
    for _ in range(20):
        f = rand_map(space, rng.randrange(1, 3), rng.randrange(-1, 2), rng)
        if f is None:
            continue
        sq = gerstenhaber(f, f)
        if f.degree % 2 == 0:
            assert sq.is_zero()
        else:
            assert sq == bar_circ(f, [f]).scale(2)


def test_gerstenhaber_graded_leibniz():
    # [f, [g, h]] = [[f, g], h] + (-1)^{|f||g|} [g, [f, h]]
    rng = random.Random(29)
    space = GradedVectorSpace([0, 1])
    checked = 0
    for _ in range(40):
        f = rand_map(space, rng.randrange(1, 3), rng.randrange(-1, 2), rng)
        g = rand_map(space, rng.randrange(1, 3), rng.randrange(-1, 2), rng)
        h = rand_map(space, rng.randrange(1, 3), rng.randrange(-1, 2), rng)
        if f is None or g is None or h is None:
            continue
        lhs = gerstenhaber(f, gerstenhaber(g, h))
        rhs = gerstenhaber(gerstenhaber(f, g), h)
        cross = gerstenhaber(g, gerstenhaber(f, h))
        if (f.degree * g.degree) % 2:
            cross = cross.neg()
        assert lhs == rhs.add(cross)
        checked += 1
    assert checked >= 20


def test_associative_product_has_square_zero_bracket():
    # the suspended dual-numbers product: one even, one odd generator
    space = GradedVectorSpace([0, 1])
    b2 = GradedMap(space, 2, -1, True, True)
    b2.set_entry((0, 0), 0, 1)
    b2.set_entry((0, 1), 1, 1)
    b2.set_entry((1, 0), 1, -1)
    assert gerstenhaber(b2, b2).is_zero()
    # and the componentwise product on two even generators
    space0 = GradedVectorSpace([0, 0])
    m = GradedMap(space0, 2, -1, True, True)
    m.set_entry((0, 0), 0, 1)
    m.set_entry((1, 1), 1, 1)
    assert gerstenhaber(m, m).is_zero()


def test_suspension_views_share_coefficients():
    space = GradedVectorSpace([0])
    g = GradedMap(space, 1, -1, True, False)
    g.set_entry((0,), 0, Fraction(2))
    s = g.suspend_output()
    assert s.degree == 0 and s.cod_sv
    assert s.coeffs is g.coeffs
    assert s.unsuspend_output() == g
