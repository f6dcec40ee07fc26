import itertools

import pytest

from schurlab.groups import build_group, inner_automorphisms
from schurlab.perms import (
    PermGroup,
    identity_perm,
    left_regular,
    pinv,
    pmul,
    right_regular,
    transitivity_module,
)
from schurlab.srings import center_sring, full, subring_le, trivial


def brute_closure(degree, gens):
    seen = {identity_perm(degree)}
    frontier = list(seen)
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = pmul(p, g)
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    return seen


def test_perm_basics():
    p = (1, 2, 0)
    q = (0, 2, 1)
    assert pmul(p, q)[0] == q[p[0]]
    assert pmul(p, pinv(p)) == identity_perm(3)


def test_regular_representations():
    for spec in ("dihedral:8", "cyclic:6", "A4"):
        G = build_group(spec)
        R = right_regular(G)
        L = left_regular(G)
        assert R.order() == G.n and R.is_regular()
        assert L.order() == G.n and L.is_regular()
        # left and right translations commute
        for gl in L.generators:
            for gr in R.generators:
                assert pmul(gl, gr) == pmul(gr, gl)


def test_abelian_left_equals_right():
    G = build_group("cyclic:6")
    R = set(right_regular(G).elements())
    L = set(left_regular(G).elements())
    assert R == L


@pytest.mark.parametrize("spec", ["dihedral:8", "cyclic:9", "A4", "dihedral:10"])
def test_bsgs_order_matches_brute_closure(spec):
    G = build_group(spec)
    K = inner_automorphisms(G)
    brute = brute_closure(G.n, K.generators)
    assert K.order() == len(brute)
    for p in itertools.islice(brute, 50):
        assert K.contains(p)
    # a permutation outside the group is rejected
    n = G.n
    outsider = tuple([1, 0] + list(range(2, n)))
    assert K.contains(outsider) == (outsider in brute)


def test_orbit_stabilizer():
    G = build_group("dihedral:10")
    K = inner_automorphisms(G)
    for x in range(G.n):
        orbit = next(o for o in K.orbits() if x in o)
        assert K.order() == len(orbit) * K.stabilizer(x).order()


def test_stabilizer_of_regular_action_is_trivial():
    G = build_group("dihedral:8")
    R = right_regular(G)
    assert R.stabilizer(0).order() == 1


def test_transitivity_module_sym_gives_trivial():
    G = build_group("cyclic:5")
    n = G.n
    sym = PermGroup(n, [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])])
    assert transitivity_module(sym, G) == trivial(G)


def test_transitivity_module_regular_gives_full():
    G = build_group("dihedral:8")
    assert transitivity_module(right_regular(G), G) == full(G)


@pytest.mark.parametrize("spec", ["dihedral:6", "dihedral:8", "A4"])
def test_transitivity_module_inner_gives_center(spec):
    G = build_group(spec)
    K = PermGroup(G.n, right_regular(G).generators + inner_automorphisms(G).generators)
    assert transitivity_module(K, G) == center_sring(G)


def test_transitivity_module_requires_regular_subgroup():
    G = build_group("cyclic:5")
    with pytest.raises(ValueError):
        transitivity_module(PermGroup(G.n, []), G)


def test_monotonicity_of_transitivity_modules():
    # K <= K' implies V(K', G) is a coarsening of V(K, G)
    for spec in ("dihedral:8", "dihedral:12", "A4"):
        G = build_group(spec)
        k1 = right_regular(G)
        k2 = PermGroup(G.n, k1.generators + inner_automorphisms(G).generators)
        n = G.n
        sym = PermGroup(n, [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])])
        a1 = transitivity_module(k1, G)
        a2 = transitivity_module(k2, G)
        a3 = transitivity_module(sym, G)
        assert subring_le(a2, a1)
        assert subring_le(a3, a2)
