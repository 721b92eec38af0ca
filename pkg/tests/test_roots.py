"""Half-space roots: membership, intervals, prenilpotency, walls."""

import itertools
from math import inf

import pytest

from rgdkit import roots as rt
from rgdkit.coxeter import CoxeterMatrix, CoxeterSystem
from rgdkit.errors import RgdError
from rgdkit.galleries import get_gallery, min_gal


def cox_dihedral(m):
    return CoxeterSystem(CoxeterMatrix.dihedral(m, direction=(1, 0) if m == 6 else None))


def cox_universal(n):
    return CoxeterSystem(CoxeterMatrix.universal(n))


def test_member_examples():
    cox = cox_dihedral(3)
    a0 = rt.simple_root(cox, 0)
    # positive roots contain the identity
    for root in rt.phi_w(cox, (0, 1, 0)):
        assert rt.member(cox, (), root)
    assert not rt.member(cox, (0,), a0)
    # m=3: st lies outside s.alpha_t
    s_at = rt.act(cox, (0,), rt.simple_root(cox, 1))
    assert not rt.member(cox, (0, 1), s_at)


def test_opposite():
    cox = cox_dihedral(3)
    a0 = rt.simple_root(cox, 0)
    neg = rt.opposite(cox, a0)
    assert neg.vec == tuple(-c for c in a0.vec)
    assert rt.opposite(cox, neg) == a0
    for w in cox.ball(4):
        assert rt.member(cox, w, a0) != rt.member(cox, w, neg)


def test_reflection_word():
    cox = cox_dihedral(3)
    assert rt.reflection_word(cox, rt.simple_root(cox, 0)) == (0,)
    s_at = rt.act(cox, (0,), rt.simple_root(cox, 1))
    assert rt.reflection_word(cox, s_at) == cox.normal_form((0, 1, 0))
    # r_alpha swaps alpha and -alpha, and is an involution on roots
    for root in rt.phi_w(cox, (0, 1, 0)):
        refl = rt.reflection_word(cox, root)
        assert rt.act(cox, refl, root).vec == rt.opposite(cox, root).vec
        assert rt.act(cox, refl, rt.act(cox, refl, root)) == root


def test_phi_w():
    cox = cox_dihedral(3)
    assert rt.phi_w(cox, ()) == []
    crossed = rt.phi_w(cox, (0, 1, 0))
    assert len(crossed) == 3
    assert crossed[0] == rt.simple_root(cox, 0)
    assert crossed[1] == rt.act(cox, (0,), rt.simple_root(cox, 1))
    assert crossed[2] == rt.simple_root(cox, 1)


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_phi_w_counts_and_reduced_word_independence(m):
    cox = cox_dihedral(m)
    for w in cox.ball(min(6, m)):
        sets = {frozenset(r.vec for r in G.roots) for G in min_gal(cox, w)}
        assert len(sets) == 1
        assert len(rt.phi_w(cox, w)) == len(w)


def test_pair_order():
    cox4 = cox_dihedral(4)
    assert rt.pair_order(cox4, rt.simple_root(cox4, 0), rt.simple_root(cox4, 1)) == 4
    u2 = cox_universal(2)
    a, b = rt.simple_root(u2, 0), rt.act(u2, (0,), rt.simple_root(u2, 1))
    assert rt.pair_order(u2, a, b) == inf
    cox3 = cox_dihedral(3)
    a, b = rt.simple_root(cox3, 0), rt.act(cox3, (0,), rt.simple_root(cox3, 1))
    assert rt.pair_order(cox3, a, b) == 3
    with pytest.raises(RgdError):
        rt.pair_order(cox3, a, a)


def test_prenilpotent():
    cox3 = cox_dihedral(3)
    assert rt.prenilpotent(cox3, rt.simple_root(cox3, 0), rt.simple_root(cox3, 1))
    u2 = cox_universal(2)
    a0 = rt.simple_root(u2, 0)
    s_at = rt.act(u2, (0,), rt.simple_root(u2, 1))
    assert rt.prenilpotent(u2, a0, s_at)
    # beta = t.alpha_s: -alpha_s is contained in beta, so the quadrant
    # (-alpha)^(-beta) is empty (opposite-facing rays on the tree)
    beta = rt.act(u2, (1,), a0)
    assert beta.is_positive(u2)
    assert not rt.prenilpotent(u2, a0, beta)


def test_prenilpotent_radius_rule_validated(bp_rightangled3, bp_product_b2):
    # the bounded search radius is compared against radius + 4 on all pairs
    # of positive roots appearing in small balls of the test systems
    # (universal rank 2 and right-angled rank 3 keep deep balls small; the
    # dense rank-3 check runs on the finite product type)
    cases = [(cox_universal(2), 4), (bp_rightangled3.cox, 2), (bp_product_b2.cox, 4)]
    for cox, depth_bound in cases:
        seen = {}
        for w in cox.ball(depth_bound):
            for root in rt.phi_w(cox, w):
                seen[root.vec] = root
        roots = list(seen.values())
        for a, b in itertools.combinations(roots, 2):
            if a.vec == tuple(-c for c in b.vec):
                continue
            base = rt.depth(cox, a) + rt.depth(cox, b) + 2
            assert rt.prenilpotent(cox, a, b) == \
                rt.prenilpotent(cox, a, b, radius=base + 4)


def test_noncrossing_sign_matches_bounded_search(bp_rightangled3, bp_product_b2):
    # the exact criterion behind interval(): for positive roots,
    # prenilpotency is equivalent to B > -1 (crossing walls or same-facing
    # nested walls); compared against the chamber-search definition
    from rgdkit.qf24 import ONE
    cases = [(cox_universal(2), 3), (bp_rightangled3.cox, 2), (bp_product_b2.cox, 4)]
    for cox, depth_bound in cases:
        seen = {}
        for w in cox.ball(depth_bound):
            for root in rt.phi_w(cox, w):
                seen[root.vec] = root
        roots = list(seen.values())
        for a, b in itertools.combinations(roots, 2):
            if a.vec == tuple(-c for c in b.vec):
                continue
            sign_criterion = (cox.bform(a.vec, b.vec) + ONE).sign() > 0
            assert rt.prenilpotent(cox, a, b) == sign_criterion


def test_interval_examples():
    cox3 = cox_dihedral(3)
    G = get_gallery(cox3, (0, 1, 0))
    b1, b2, b3 = G.roots
    assert rt.interval(cox3, b1, b3, G) == [b1, b2, b3]
    assert rt.open_interval(cox3, b1, b3, G) == [b2]
    assert rt.interval(cox3, b1, b1, G) == [b1]

    cox6 = cox_dihedral(6)
    G6 = get_gallery(cox6, (0, 1, 0, 1, 0, 1))
    inner = rt.open_interval(cox6, G6.root(2), G6.root(6), G6)
    assert inner == [G6.root(3), G6.root(4), G6.root(5)]
    assert G6.root(4) in inner  # the hexagon constraint set sits inside


def test_interval_empty_for_commuting_pair():
    cox2 = cox_dihedral(2)
    G = get_gallery(cox2, (0, 1))
    assert rt.open_interval(cox2, G.root(1), G.root(2), G) == []
    oracle = rt.interval_oracle(cox2, G.root(1), G.root(2), 2)
    assert oracle == {G.root(1), G.root(2)}


@pytest.mark.parametrize("m,r", [(2, 4), (3, 4), (4, 5), (6, 7)])
def test_interval_matches_oracle_dihedral(m, r):
    cox = cox_dihedral(m)
    w0 = cox.longest_element((0, 1))
    G = get_gallery(cox, cox.normal_form(w0))
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            cone = rt.interval(cox, G.root(i), G.root(j), G)
            oracle = rt.interval_oracle(cox, G.root(i), G.root(j), r)
            assert set(cone) == oracle


def test_interval_matches_oracle_universal3():
    cox = cox_universal(3)
    for w in cox.ball(4):
        G = get_gallery(cox, w)
        for i in range(1, len(w) + 1):
            for j in range(i, len(w) + 1):
                cone = rt.interval(cox, G.root(i), G.root(j), G)
                oracle = rt.interval_oracle(cox, G.root(i), G.root(j), 6)
                assert set(cone) == oracle


def test_halfspace_convexity():
    cox = cox_dihedral(6)
    a = rt.act(cox, (0,), rt.simple_root(cox, 1))
    inside = [w for w in cox.ball(5) if rt.member(cox, w, a)]
    for u in inside:
        for v in inside:
            # walk one minimal gallery from u to v and stay inside alpha
            diff = cox.normal_form(tuple(reversed(u)) + v)
            c = u
            for letter in diff:
                c = cox.normal_form(cox.right_mult(c, letter))
            assert c == v


def test_residues_on_wall():
    cox = cox_universal(3)
    # universal type has no spherical rank-2 residues at all
    assert rt.residues_on_wall(cox, rt.simple_root(cox, 0), 2) == []

    cox3 = cox_dihedral(3)
    res = rt.residues_on_wall(cox3, rt.simple_root(cox3, 0), 2)
    assert rt.Residue2((), (0, 1)) in res
    for R in res:
        refl = rt.reflection_word(cox3, rt.simple_root(cox3, 0))
        assert rt.stabilizes_residue(cox3, refl, R)


def test_residues_on_wall_excludes_far_walls(bp_product_b2):
    cox = bp_product_b2.cox
    res = rt.residues_on_wall(cox, rt.simple_root(cox, 0), 2)
    types = {R.J for R in res}
    assert (0, 1) in types and (0, 2) in types
    assert (1, 2) not in types  # generator 1's wall does not stabilize R_{2,3}


def test_root_images_never_mix_signs(bp_universal3):
    # w . e_s is a root vector: all coordinates weakly one sign
    for cox in (cox_dihedral(6), bp_universal3.cox):
        for w in cox.ball(4):
            for s in range(cox.rank):
                assert cox.vec_sign(cox.apply(w, cox.basis[s])) in (-1, 1)


def test_residue_roots():
    cox = cox_dihedral(6)
    R = rt.residue_at(cox, (), (0, 1))
    walls = rt.residue_roots(cox, R)
    assert len(walls) == 6
    assert rt.simple_root(cox, 0) in walls and rt.simple_root(cox, 1) in walls
