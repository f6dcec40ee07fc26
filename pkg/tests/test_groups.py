import numpy as np
import pytest

from schurlab.groups import (
    CapExceeded,
    GroupSpecError,
    Subgroup,
    all_subgroups,
    automorphism_perms,
    build_group,
    camina_kernels,
    center,
    class_of,
    conjugacy_classes,
    find_isomorphism,
    frattini,
    generated_subgroup,
    has_maximal_cyclic_subgroup,
    inner_automorphisms,
    is_camina_pair,
    is_normal,
    maximal_subgroups,
    quotient_group,
    validate_table,
)

CATALOG = [
    "cyclic:1", "cyclic:7", "cyclic:12", "dihedral:6", "dihedral:8", "dihedral:16",
    "quaternion:8", "quaternion:16", "semidihedral:16", "modular:16", "modular:27",
    "elemabelian:8", "elemabelian:9", "direct(cyclic:4,cyclic:2)",
    "semidirect(cyclic:3,cyclic:4,2)", "centralprod(quaternion:8,cyclic:4,2:2)",
    "extraspecial:27:+", "extraspecial:27:-", "frobenius:5:4", "frobenius:7:3",
    "A4", "A5", "S4",
]


@pytest.mark.parametrize("spec", CATALOG)
def test_constructors_are_valid_groups(spec):
    G = build_group(spec)
    validate_table(G.mul)
    assert G.mul[0, 0] == 0
    assert all(G.mul[x, G.inv[x]] == 0 for x in range(G.n))
    assert len(set(G.labels)) == G.n


@pytest.mark.parametrize(
    "spec,order",
    [("cyclic:4", 4), ("dihedral:16", 16), ("quaternion:32", 32), ("A5", 60), ("S4", 24),
     ("frobenius:11:5", 55), ("extraspecial:27:+", 27)],
)
def test_orders(spec, order):
    assert build_group(spec).n == order


def test_spec_round_trip():
    for spec in ("dihedral:10", "frobenius:7:3", "direct(cyclic:3,cyclic:5)"):
        G = build_group(spec)
        assert build_group(G.spec) == G


def test_malformed_specs_rejected():
    for bad in ("quaternion:12", "semidihedral:8", "frobenius:7:4", "frobenius:8:2",
                "cyclic:0", "nonsense:5", "dihedral:7", "extraspecial:16:+",
                "semidirect(dihedral:6,cyclic:2,2)", "centralprod(cyclic:4,cyclic:4,1:2)"):
        with pytest.raises(GroupSpecError):
            build_group(bad)


def test_dihedral_presentation():
    G = build_group("dihedral:16")
    a, b = 1, 8
    assert G.power(a, 8) == 0 and G.power(b, 2) == 0
    # a^b = a^-1
    assert G.mul[G.mul[G.inv[b], a], b] == G.inv[a]


def test_cyclic_classes_are_singletons():
    G = build_group("cyclic:4")
    assert [len(c) for c in conjugacy_classes(G)] == [1, 1, 1, 1]


def test_d8_class_sizes():
    sizes = sorted(len(c) for c in conjugacy_classes(build_group("dihedral:8")))
    assert sizes == [1, 1, 2, 2, 2]


def test_a5_class_sizes():
    sizes = sorted(len(c) for c in conjugacy_classes(build_group("A5")))
    assert sizes == [1, 12, 12, 15, 20]


def test_class_of_inside_subgroup():
    S3 = build_group("dihedral:6")
    H = generated_subgroup(S3, [1])  # <a> = C3
    assert class_of(S3, 1, H) == (1,)
    whole = Subgroup(tuple(range(S3.n)), S3)
    assert set(class_of(S3, 1, whole)) == {1, 2}
    assert class_of(S3, 0, whole) == (0,)
    with pytest.raises(ValueError):
        class_of(S3, 3, H)


def test_generated_subgroup():
    G = build_group("dihedral:16")
    assert generated_subgroup(G, []).elements == (0,)
    assert generated_subgroup(G, [2]).elements == (0, 2, 4, 6)
    A5 = build_group("A5")
    five_cycle = next(x for x in range(60) if A5.element_order(x) == 5)
    gens = None
    for inv in (x for x in range(60) if A5.element_order(x) == 2):
        sub = generated_subgroup(A5, [five_cycle, inv])
        if len(sub) == 60:
            gens = (five_cycle, inv)
            break
    assert gens is not None


def test_quotients():
    G = build_group("dihedral:16")
    triv = generated_subgroup(G, [])
    sec = quotient_group(G, triv)
    assert sec.quotient.n == G.n
    rot = generated_subgroup(G, [1])
    assert quotient_group(G, rot).quotient.n == 2
    A4 = build_group("A4")
    v4 = next(H for H in all_subgroups(A4) if len(H) == 4 and is_normal(A4, H))
    q = quotient_group(A4, v4)
    assert q.quotient.n == 3 and q.quotient.is_abelian
    # epimorphism property, exhaustively
    for x in range(A4.n):
        for y in range(A4.n):
            assert q.epi[A4.mul[x, y]] == q.quotient.mul[q.epi[x], q.epi[y]]


def test_center_and_frattini():
    ab = build_group("direct(cyclic:4,cyclic:2)")
    assert len(center(ab)) == ab.n
    Q8 = build_group("quaternion:8")
    assert len(center(Q8)) == 2
    assert len(frattini(Q8)) == 2
    E8 = build_group("elemabelian:8")
    assert frattini(E8).elements == (0,)
    assert all(len(m) == 4 for m in maximal_subgroups(E8))


def test_automorphism_counts():
    assert len(automorphism_perms(build_group("cyclic:4"))) == 2
    assert len(automorphism_perms(build_group("elemabelian:4"))) == 6
    assert len(automorphism_perms(build_group("quaternion:8"))) == 24
    assert len(automorphism_perms(build_group("dihedral:8"))) == 8


def test_inner_automorphism_order():
    for spec in ("dihedral:8", "quaternion:8", "A4", "dihedral:12"):
        G = build_group(spec)
        inn = inner_automorphisms(G)
        assert inn.order() * len(center(G)) == G.n


def test_automorphism_cap():
    with pytest.raises(CapExceeded):
        automorphism_perms(build_group("dihedral:72"))


def test_find_isomorphism():
    G = build_group("dihedral:6")
    H = build_group("frobenius:3:2")
    iso = find_isomorphism(G, H)
    assert iso is not None
    for x in range(6):
        for y in range(6):
            assert iso[G.mul[x, y]] == H.mul[iso[x], iso[y]]
    assert find_isomorphism(build_group("cyclic:8"), build_group("direct(cyclic:4,cyclic:2)")) is None


def test_camina_pairs():
    S3 = build_group("dihedral:6")
    C3 = generated_subgroup(S3, [1])
    assert is_camina_pair(S3, C3)
    Q8 = build_group("quaternion:8")
    assert is_camina_pair(Q8, center(Q8))
    C4 = build_group("cyclic:4")
    assert not is_camina_pair(C4, generated_subgroup(C4, [2]))
    with pytest.raises(ValueError):
        is_camina_pair(S3, generated_subgroup(S3, []))
    with pytest.raises(ValueError):
        is_camina_pair(S3, generated_subgroup(S3, [3]))  # <b> is not normal


def test_camina_class_coset_property():
    # classes outside the kernel are unions of kernel cosets
    for spec in ("dihedral:6", "quaternion:8", "A4", "frobenius:5:4"):
        G = build_group(spec)
        for H in camina_kernels(G):
            hset = set(H.elements)
            for cls in conjugacy_classes(G):
                cset = set(cls)
                if cset <= hset:
                    continue
                for x in cls:
                    assert {int(G.mul[x, k]) for k in H.elements} <= cset


def test_has_maximal_cyclic_subgroup():
    assert has_maximal_cyclic_subgroup(build_group("cyclic:16"))
    assert has_maximal_cyclic_subgroup(build_group("dihedral:16"))
    assert has_maximal_cyclic_subgroup(build_group("modular:27"))
    assert not has_maximal_cyclic_subgroup(build_group("elemabelian:27"))
    assert not has_maximal_cyclic_subgroup(build_group("extraspecial:27:+"))
    with pytest.raises(ValueError):
        has_maximal_cyclic_subgroup(build_group("dihedral:12"))


def test_central_product_amalgam():
    # Q8 o C4 over the common C2 is a group of order 16 with center of order 4
    G = build_group("centralprod(quaternion:8,cyclic:4,2:2)")
    assert G.n == 16
    assert len(center(G)) == 4
