import pytest

from schurlab.groups import CapExceeded, build_group
from schurlab.fusion import (
    EnumerationBudgetExceeded,
    brute_force_partitions,
    cyclotomic,
    enumerate_all,
    enumerate_central,
)
from schurlab.groups import automorphism_group
from schurlab.perms import PermGroup
from schurlab.srings import center_sring, full, is_central, sring_closure, trivial


@pytest.mark.parametrize("spec", ["dihedral:6", "dihedral:8", "quaternion:8", "frobenius:7:3"])
def test_enumerate_central_matches_brute_force(spec):
    G = build_group(spec)
    fast = enumerate_central(G)
    brute = brute_force_partitions(G, "central")
    assert fast.srings == brute.srings


@pytest.mark.parametrize("spec", ["cyclic:4", "cyclic:6", "elemabelian:4", "dihedral:8"])
def test_enumerate_all_matches_brute_force(spec):
    G = build_group(spec)
    fast = enumerate_all(G)
    brute = brute_force_partitions(G, "all")
    assert fast.srings == brute.srings


def test_c2_has_one_sring():
    assert enumerate_all(build_group("cyclic:2")).count == 1


def test_c4_census():
    G = build_group("cyclic:4")
    rep = enumerate_all(G)
    assert rep.count == 3
    blocks = {A.blocks for A in rep.srings}
    assert ((0,), (1, 3), (2,)) in blocks
    assert trivial(G).blocks in blocks and full(G).blocks in blocks


def test_bell_number_guard():
    G = build_group("cyclic:8")
    rep = brute_force_partitions(G, "all")
    assert rep.stats.nodes == 4140  # Bell(8)
    with pytest.raises(CapExceeded):
        brute_force_partitions(build_group("cyclic:9"), "all")


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_central(build_group("cyclic:32"))  # 32 atoms > default 24
    with pytest.raises(CapExceeded):
        enumerate_all(build_group("dihedral:52"))
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_central(build_group("dihedral:24"), node_budget=3)


def test_report_contents():
    G = build_group("dihedral:8")
    rep = enumerate_central(G)
    assert len(set(rep.srings)) == rep.count
    blocks = {A.blocks for A in rep.srings}
    assert trivial(G).blocks in blocks
    assert center_sring(G).blocks in blocks
    for A, ann in zip(rep.srings, rep.annotations):
        assert ann.central and is_central(A)
        assert ann.rank == A.rank and ann.sizes == A.sizes
    assert rep.stats.nodes > 0


def test_a5_central_census():
    rep = enumerate_central(build_group("A5"))
    assert rep.count == 3
    assert sorted(A.rank for A in rep.srings) == [2, 4, 5]
    rank4 = next(A for A in rep.srings if A.rank == 4)
    assert rank4.sizes == (1, 15, 20, 24)


def test_cyclotomic():
    C4 = build_group("cyclic:4")
    assert cyclotomic(C4, PermGroup(4, [])) == full(C4)
    assert cyclotomic(C4, automorphism_group(C4)).blocks == ((0,), (1, 3), (2,))
    A5 = build_group("A5")
    cyc = cyclotomic(A5, automorphism_group(A5))
    assert cyc.rank == 4 and cyc.sizes == (1, 15, 20, 24)
    with pytest.raises(ValueError):
        cyclotomic(C4, PermGroup(4, [(1, 2, 3, 0)]))  # moves the identity


def test_fusion_join_closure():
    # the closure generated by any two members is again a member
    G = build_group("cyclic:12")
    rep = enumerate_all(G, order_cap=25)
    members = {A.blocks for A in rep.srings}
    rings = rep.srings
    for i in range(0, len(rings), 3):
        for j in range(j0 := i + 1, min(j0 + 4, len(rings))):
            joined = sring_closure(G, list(rings[i].blocks) + list(rings[j].blocks))
            assert joined.blocks in members


def test_abelian_central_equals_all():
    G = build_group("cyclic:8")
    assert enumerate_central(G).srings == enumerate_all(G).srings
