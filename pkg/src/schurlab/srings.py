"""S-rings over finite groups: verification, radicals, quotients, wreath products.

An S-ring is held as the partition of the group's element set that spans it:
blocks are sorted tuples, listed in canonical order (ascending smallest
member), so two S-rings over the same group are equal iff their ``blocks``
tuples are equal.  All operations are pure functions of immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from ._kernels import pair_counts
from .groups import (
    Group,
    Section,
    Subgroup,
    CapExceeded,
    conjugacy_classes,
    generated_subgroup,
    is_normal,
    make_section,
    quotient_group,
)

A_SUBGROUP_CAP = 128


class NotAnSRing(ValueError):
    """Raised by strict constructors when a partition violates an S-ring axiom."""

    def __init__(self, violation: "AxiomViolation"):
        super().__init__(str(violation))
        self.violation = violation


@dataclass(frozen=True)
class AxiomViolation:
    """Witness for a rejected partition: which axiom broke, and where."""

    axiom: int
    message: str
    blocks: tuple[tuple[int, ...], ...] = ()
    elements: tuple[int, ...] = ()

    def __str__(self):
        return f"axiom {self.axiom}: {self.message}"


@dataclass(frozen=True)
class SRing:
    group: Group
    blocks: tuple[tuple[int, ...], ...]

    def __repr__(self):
        return f"SRing(rank={self.rank} over {self.group.spec})"

    def __eq__(self, other):
        return isinstance(other, SRing) and self.group == other.group and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    @property
    def rank(self) -> int:
        return len(self.blocks)

    @cached_property
    def block_of(self) -> np.ndarray:
        out = np.empty(self.group.n, dtype=np.int64)
        for i, blk in enumerate(self.blocks):
            for x in blk:
                out[x] = i
        out.setflags(write=False)
        return out

    @cached_property
    def inverse_pairing(self) -> tuple[int, ...]:
        inv = self.group.inv
        return tuple(int(self.block_of[inv[blk[0]]]) for blk in self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        """The multiset of block sizes, sorted ascending."""
        return tuple(sorted(len(b) for b in self.blocks))

    def block_index_of_set(self, xs: Sequence[int]) -> Optional[int]:
        key = tuple(sorted(xs))
        for i, blk in enumerate(self.blocks):
            if blk == key:
                return i
        return None

    def is_a_set(self, xs: Sequence[int]) -> bool:
        """Is the given element set a union of blocks?"""
        xs = set(xs)
        return all(set(self.blocks[b]) <= xs for b in {int(self.block_of[x]) for x in xs})


def canonical_blocks(partition: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((tuple(sorted(b)) for b in partition), key=lambda b: b[0]))


def validate_partition(G: Group, partition: Sequence[Sequence[int]]) -> Optional[AxiomViolation]:
    """Check the three S-ring axioms; None when they all hold."""
    blocks = canonical_blocks(partition)
    flat = [x for b in blocks for x in b]
    if sorted(flat) != list(range(G.n)):
        return AxiomViolation(0, "input is not a partition of the element set", blocks)
    if blocks[0] != (0,):
        return AxiomViolation(1, "the identity is not isolated in its own block", (blocks[0],))
    lookup = {b: i for i, b in enumerate(blocks)}
    block_of = np.empty(G.n, dtype=np.int64)
    for i, b in enumerate(blocks):
        for x in b:
            block_of[x] = i
    for b in blocks:
        binv = tuple(sorted(int(G.inv[x]) for x in b))
        if binv not in lookup:
            return AxiomViolation(2, f"inverse image of block {b} is not a block", (b, binv))
    counts = pair_counts(G.mul, block_of, len(blocks))
    reps = np.array([b[0] for b in blocks])
    expect = counts[:, :, reps[block_of]]
    mism = np.argwhere(counts != expect)
    if len(mism):
        bx, by, g = (int(v) for v in mism[0])
        return AxiomViolation(
            3,
            f"product of blocks {bx} and {by} is not constant on the block of element {g}",
            (blocks[bx], blocks[by]),
            (g, int(reps[block_of[g]])),
        )
    return None


def from_partition(G: Group, partition: Sequence[Sequence[int]]) -> Union[SRing, AxiomViolation]:
    """Build an S-ring from a partition, or return the axiom violation witness."""
    violation = validate_partition(G, partition)
    if violation is not None:
        return violation
    return SRing(G, canonical_blocks(partition))


def from_partition_strict(G: Group, partition: Sequence[Sequence[int]]) -> SRing:
    result = from_partition(G, partition)
    if isinstance(result, AxiomViolation):
        raise NotAnSRing(result)
    return result


def trivial(G: Group) -> SRing:
    """The rank-2 S-ring {e} | everything else (rank 1 on the trivial group)."""
    if G.n == 1:
        return SRing(G, ((0,),))
    return SRing(G, ((0,), tuple(range(1, G.n))))


def full(G: Group) -> SRing:
    """The whole group ring: all blocks singletons."""
    return SRing(G, tuple((x,) for x in range(G.n)))


def center_sring(G: Group) -> SRing:
    """The S-ring spanned by the conjugacy classes."""
    return SRing(G, canonical_blocks(conjugacy_classes(G)))


def is_central(A: SRing) -> bool:
    """True iff every block is a union of conjugacy classes."""
    for cls in conjugacy_classes(A.group):
        if len({int(A.block_of[x]) for x in cls}) != 1:
            return False
    return True


def subring_le(A_sub: SRing, A: SRing) -> bool:
    """Is every block of A_sub a union of blocks of A?"""
    if A_sub.group != A.group:
        raise ValueError("S-rings live over different groups")
    for blk in A.blocks:
        if len({int(A_sub.block_of[x]) for x in blk}) != 1:
            return False
    return True


def radical(G: Group, xs: Sequence[int]) -> Subgroup:
    """The subgroup of elements g with gX = Xg = X."""
    xset = frozenset(int(x) for x in xs)
    if not xset:
        raise ValueError("radical of the empty set is undefined")
    members = []
    for g in range(G.n):
        left = {int(G.mul[g, x]) for x in xset}
        if left != xset:
            continue
        right = {int(G.mul[x, g]) for x in xset}
        if right == xset:
            members.append(g)
    return Subgroup(tuple(sorted(members)), G)


def _minimal_a_subgroup(A: SRing, seed: set[int]) -> tuple[int, ...]:
    G = A.group
    current = set(seed) | {0}
    while True:
        H = set(generated_subgroup(G, current).elements)
        grown = set(H)
        for b in {int(A.block_of[x]) for x in H}:
            grown |= set(A.blocks[b])
        if grown == current:
            return tuple(sorted(H))
        current = grown


def a_subgroups(A: SRing) -> list[Subgroup]:
    """All subgroups that are unions of blocks, smallest first."""
    G = A.group
    if G.n > A_SUBGROUP_CAP:
        raise CapExceeded(f"a_subgroups capped at order {A_SUBGROUP_CAP}, got {G.n}")
    closures = {_minimal_a_subgroup(A, set(blk)) for blk in A.blocks}
    subs = set(closures)
    frontier = set(closures)
    while frontier:
        fresh = set()
        for s in frontier:
            for c in closures:
                if set(c) <= set(s):
                    continue
                j = _minimal_a_subgroup(A, set(s) | set(c))
                if j not in subs:
                    subs.add(j)
                    fresh.add(j)
        frontier = fresh
    return [Subgroup(s, G) for s in sorted(subs, key=lambda t: (len(t), t))]


def is_primitive(A: SRing) -> bool:
    """No proper nontrivial A-subgroups."""
    return all(len(s) in (1, A.group.n) for s in a_subgroups(A))


def power_set(G: Group, xs: Sequence[int], m: int) -> tuple[int, ...]:
    """The set {x^m : x in X}."""
    return tuple(sorted({G.power(int(x), m) for x in xs}))


def coprime_residues(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if math.gcd(m, n) == 1]


def verify_power_closure(A: SRing) -> bool:
    """Does raising blocks to every power coprime to |G| permute the blocks?"""
    G = A.group
    lookup = set(A.blocks)
    for m in coprime_residues(G.n):
        for blk in A.blocks:
            if power_set(G, blk, m) not in lookup:
                return False
    return True


@dataclass(frozen=True)
class SeparationVerdict:
    applicable: bool
    passed: Optional[bool]
    detail: str


def separation_check(A: SRing, block: Sequence[int], H: Subgroup) -> SeparationVerdict:
    """Check the separation conclusion for a block meeting a subgroup.

    Hypotheses: X meets both H and its complement, and <X n H> lies in
    rad(X \\ H).  Conclusion checked: X = <X> \\ rad(X) and rad(X) <= H.
    """
    G = A.group
    X = set(block)
    inside = X & H._member_set
    outside = X - H._member_set
    if not inside or not outside:
        return SeparationVerdict(False, None, "block does not straddle the subgroup")
    gen_inside = set(generated_subgroup(G, inside).elements)
    rad_out = set(radical(G, tuple(sorted(outside))).elements)
    if not gen_inside <= rad_out:
        return SeparationVerdict(False, None, "<X n H> is not inside rad(X \\ H)")
    gen_x = set(generated_subgroup(G, X).elements)
    rad_x = set(radical(G, tuple(sorted(X))).elements)
    ok = X == gen_x - rad_x and rad_x <= H._member_set
    return SeparationVerdict(True, ok, "conclusion holds" if ok else "conclusion fails")


# ---------------------------------------------------------------------------
# restriction, quotient, wreath
# ---------------------------------------------------------------------------


def restriction(A: SRing, U: Subgroup) -> SRing:
    """The S-ring induced on an A-subgroup, over the reindexed subgroup."""
    if not A.is_a_set(U.elements):
        raise ValueError("restriction requires an A-subgroup")
    sub, local = U.as_group()
    blocks = [tuple(int(local[x]) for x in blk) for blk in A.blocks if blk[0] in U._member_set and set(blk) <= U._member_set]
    return from_partition_strict(sub, blocks)


def quotient_sring(A: SRing, sec: Section) -> SRing:
    """The image S-ring on a section U/L whose ends are A-subgroups."""
    if not A.is_a_set(sec.U.elements):
        raise ValueError("U is not an A-subgroup")
    if not A.is_a_set(sec.L.elements):
        raise ValueError("L is not an A-subgroup")
    useg = sec.U._member_set
    images = {tuple(sorted({int(sec.epi[x]) for x in blk})) for blk in A.blocks if set(blk) <= useg}
    return from_partition_strict(sec.quotient, sorted(images))


def wreath(G: Group, H: Subgroup, B: SRing, C: SRing) -> SRing:
    """Wreath product: B's blocks inside H, preimages of C's blocks outside.

    B must be an S-ring over the reindexed subgroup H, C one over G/H, and H
    normal in G.
    """
    if not is_normal(G, H):
        raise ValueError("wreath base subgroup must be normal")
    sec = quotient_group(G, H)
    sub, local = H.as_group()
    if B.group != sub:
        raise ValueError("inner factor is not an S-ring over the subgroup")
    if C.group != sec.quotient:
        raise ValueError("outer factor is not an S-ring over the quotient")
    rev = {int(local[x]): x for x in H.elements}
    blocks = [tuple(sorted(rev[i] for i in blk)) for blk in B.blocks]
    for blk in C.blocks:
        if blk == (0,):
            continue
        want = set(int(b) for b in blk)
        blocks.append(tuple(int(x) for x in range(G.n) if int(sec.epi[x]) in want))
    return from_partition_strict(G, blocks)


def is_generalized_wreath(A: SRing, U: Subgroup, L: Subgroup) -> bool:
    """Does A decompose along the section U/L (L normal, radical condition)?"""
    G = A.group
    if not (A.is_a_set(U.elements) and A.is_a_set(L.elements)):
        return False
    if not set(L.elements) <= set(U.elements):
        return False
    if not is_normal(G, L):
        return False
    lset = L._member_set
    for blk in A.blocks:
        if set(blk) <= U._member_set:
            continue
        rad = radical(G, blk)
        if not lset <= rad._member_set:
            return False
    return True


def find_wreath_decompositions(A: SRing) -> list[tuple[Subgroup, Subgroup, bool]]:
    """All A-section pairs (U, L) satisfying the generalized-wreath condition.

    The boolean marks the nontrivial ones (L > {e} and U < G).
    """
    subs = a_subgroups(A)
    out = []
    for L in subs:
        if not is_normal(A.group, L):
            continue
        for U in subs:
            if not set(L.elements) <= set(U.elements):
                continue
            if is_generalized_wreath(A, U, L):
                out.append((U, L, len(L) > 1 and len(U) < A.group.n))
    return out


# ---------------------------------------------------------------------------
# structure constants and closure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureConstants:
    """The rank^3 integer tensor of block-product coefficients."""

    tensor: np.ndarray

    def row_sum_identity(self, sizes: Sequence[int]) -> bool:
        sizes = np.asarray(sizes)
        lhs = (self.tensor * sizes[None, None, :]).sum(axis=2)
        return bool(np.array_equal(lhs, sizes[:, None] * sizes[None, :]))


def structure_constants(A: SRing) -> StructureConstants:
    counts = pair_counts(A.group.mul, A.block_of, A.rank)
    reps = [b[0] for b in A.blocks]
    return StructureConstants(tensor=counts[:, :, reps].copy())


def stabilize_partition(
    G: Group,
    cell_of: np.ndarray,
    frozen: Optional[np.ndarray] = None,
) -> Optional[np.ndarray]:
    """Split cells until convolution values and inverses are cell-constant.

    This computes the coarsest S-ring partition refining the input (the input
    must already isolate the identity).  When ``frozen`` marks elements whose
    cells must not split, a forced split there returns None instead.
    """
    mul, inv = G.mul, G.inv
    n = G.n

    def relabel(cells: np.ndarray) -> np.ndarray:
        out = np.empty(n, dtype=np.int64)
        seen: dict[int, int] = {}
        for x in range(n):
            lab = int(cells[x])
            if lab not in seen:
                seen[lab] = len(seen)
            out[x] = seen[lab]
        return out

    cell_of = relabel(np.asarray(cell_of, dtype=np.int64))
    while True:
        k = int(cell_of.max()) + 1
        counts = pair_counts(mul, cell_of, k)
        sig = np.concatenate(
            [cell_of[:, None], cell_of[inv][:, None], counts.reshape(k * k, n).T],
            axis=1,
        )
        _, labels = np.unique(sig, axis=0, return_inverse=True)
        new_cell = relabel(labels.astype(np.int64))
        if int(new_cell.max()) + 1 == k:
            return cell_of
        if frozen is not None:
            for cid in np.unique(cell_of[frozen]):
                members = np.nonzero(cell_of == cid)[0]
                if len(np.unique(new_cell[members])) > 1:
                    return None
        cell_of = new_cell


def sring_closure(G: Group, seeds: Sequence[Sequence[int]]) -> SRing:
    """The minimal S-ring in which every seed set is a union of blocks."""
    n = G.n
    sig = np.zeros((n, len(seeds) + 1), dtype=np.int64)
    sig[0, 0] = 1
    for j, seed in enumerate(seeds):
        for x in seed:
            sig[int(x), j + 1] = 1
    _, labels = np.unique(sig, axis=0, return_inverse=True)
    cell_of = stabilize_partition(G, labels.astype(np.int64))
    assert cell_of is not None
    blocks: dict[int, list[int]] = {}
    for x in range(n):
        blocks.setdefault(int(cell_of[x]), []).append(x)
    return from_partition_strict(G, list(blocks.values()))


# ---------------------------------------------------------------------------
# Camina and dihedral structure
# ---------------------------------------------------------------------------


class DecompositionError(RuntimeError):
    """A structural decomposition the theory guarantees failed to verify."""


def camina_decomposition(A: SRing, H: Subgroup) -> tuple[Subgroup, Subgroup]:
    """Locate A-subgroups L <= H <= U with A = (A_L wr T_{U/L}) wr A_{G/U}.

    Returns (L, U) after reconstructing the double wreath and checking it
    equals A exactly; a mismatch raises DecompositionError.
    """
    G = A.group
    if A.is_a_set(H.elements):
        L = U = H
    else:
        L = U = None
        for blk in A.blocks:
            inside = set(blk) & H._member_set
            if inside and not set(blk) <= H._member_set:
                U = generated_subgroup(G, blk)
                L = radical(G, blk)
                if set(blk) != set(U.elements) - set(L.elements) or not L._member_set <= H._member_set:
                    raise DecompositionError("separation conclusion failed on a straddling block")
                break
        if U is None:
            raise DecompositionError("kernel is not an A-set yet no block straddles it")
    inner = restriction(A, L) if len(L) > 1 else trivial(L.as_group()[0])
    sec_ul = make_section(G, U, L)
    usub, _ = U.as_group()
    # rebuild A_U = A_L wr T_{U/L} inside U, then wreath with A_{G/U}
    lu_local = Subgroup(tuple(int(i) for i, x in enumerate(U.elements) if x in L._member_set), usub)
    inner_u = wreath(usub, lu_local, inner, trivial(sec_ul.quotient))
    sec_gu = quotient_group(G, U)
    outer = quotient_sring(A, sec_gu)
    rebuilt = wreath(G, U, inner_u, outer)
    if rebuilt != A:
        raise DecompositionError("double wreath reconstruction does not match")
    return L, U


@dataclass(frozen=True)
class DihedralTag:
    kind: str  # wreath-over-L-rank2 | wreath-over-L-rank3 | A-over-A1-generalized-wreath
    L: Subgroup
    quotient_rank: Optional[int] = None


def dihedral_structure(A: SRing) -> DihedralTag:
    """Classify a central S-ring over a dihedral group into the three branches."""
    G = A.group
    if not G.spec.startswith("dihedral:"):
        raise ValueError("dihedral_structure requires a group built as dihedral:2n")
    n = G.n // 2
    rotations = frozenset(range(n))
    subs = a_subgroups(A)
    inside = [s for s in subs if s._member_set <= rotations]
    seed: set[int] = {0}
    for s in inside:
        seed |= s._member_set
    L = Subgroup(_minimal_a_subgroup(A, seed), G)
    if L._member_set <= rotations and is_generalized_wreath(A, L, L):
        q = quotient_sring(A, quotient_group(G, L))
        if q.rank <= 3:
            return DihedralTag(kind=f"wreath-over-L-rank{q.rank}", L=L, quotient_rank=q.rank)
    if n % 2 == 0:
        half = Subgroup(tuple(range(0, n, 2)), G)
        cyc = Subgroup(tuple(range(n)), G)
        if A.is_a_set(cyc.elements) and A.is_a_set(half.elements) and is_generalized_wreath(A, cyc, half):
            return DihedralTag(kind="A-over-A1-generalized-wreath", L=half)
    raise DecompositionError("central dihedral S-ring matched none of the known branches")
