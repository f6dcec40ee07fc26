"""Schurity: automorphism groups of colored Cayley digraphs and verdicts.

The automorphism group of an S-ring is the group of permutations preserving
every arc color of the complete digraph col[g][h] = block(h g^-1).  It is
searched by individualization-refinement: vertices are individualized along a
canonical path; candidate images are matched by jointly refining the source
and target colorings; found automorphisms prune later branches by orbit
closure.  The identity vertex is individualized first, so the recursion hands
back generators of the point stabilizer directly, and the group order is the
product of the orbit sizes along the path.

An S-ring is schurian exactly when the orbits of that point stabilizer equal
its blocks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._kernels import refine_signatures
from .fusion import EnumerationReport, enumerate_all, enumerate_central
from .groups import Group, find_isomorphism, _factorize, _from_table
from .perms import Perm, PermGroup
from .srings import SRing, canonical_blocks, from_partition_strict

AUT_ORDER_REPLAY_LIMIT = 10**6


class NodeBudgetExceeded(RuntimeError):
    """The search node budget ran out; the caller reports 'undecided'."""


@dataclass(frozen=True)
class ColorGraph:
    """Arc coloring col[g][h] = block index of h * g^-1."""

    col: np.ndarray
    rank: int


def color_graph(A: SRing) -> ColorGraph:
    G = A.group
    col = A.block_of[G.mul[:, G.inv]].T.copy()
    col.setflags(write=False)
    return ColorGraph(col=col, rank=A.rank)


@dataclass
class AutResult:
    generators: list[Perm]
    order: int
    stabilizer_generators: list[Perm]
    stabilizer_order: int
    nodes: int


@dataclass(frozen=True)
class SchurityCertificate:
    """Replayable verdict: generators, orders, and the orbit evidence.

    For a nonschurian verdict the witness is a basic set together with the
    stabilizer orbit strictly inside it.
    """

    verdict: str  # schurian | nonschurian | undecided
    aut_order: Optional[int]
    aut_generators: tuple[Perm, ...]
    stabilizer_generators: tuple[Perm, ...]
    witness_block: Optional[tuple[int, ...]] = None
    witness_orbit: Optional[tuple[int, ...]] = None
    nodes: int = 0


class _ColorAutSearch:
    def __init__(self, col: np.ndarray, node_budget: Optional[int] = None):
        self.col = col
        self.n = col.shape[0]
        self.node_budget = node_budget
        self.nodes = 0

    def _bump(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise NodeBudgetExceeded(f"automorphism search exceeded {self.node_budget} nodes")

    # -- refinement -------------------------------------------------------

    def _refine_pair(self, a: np.ndarray, b: np.ndarray) -> Optional[tuple[np.ndarray, np.ndarray]]:
        n = self.n
        while True:
            siga = refine_signatures(self.col, a)
            sigb = refine_signatures(self.col, b)
            _, labels = np.unique(np.vstack([siga, sigb]), axis=0, return_inverse=True)
            la, lb = labels[:n].astype(np.int64), labels[n:].astype(np.int64)
            k = int(labels.max()) + 1
            if not np.array_equal(np.bincount(la, minlength=k), np.bincount(lb, minlength=k)):
                return None
            if len(np.unique(la)) == len(np.unique(a)) and len(np.unique(lb)) == len(np.unique(b)):
                return la, lb
            a, b = la, lb

    def _refine_one(self, a: np.ndarray) -> np.ndarray:
        out = self._refine_pair(a, a)
        assert out is not None
        return out[0]

    @staticmethod
    def _individualize(colors: np.ndarray, v: int) -> np.ndarray:
        out = colors.copy()
        out[v] = colors.max() + 1
        return out

    @staticmethod
    def _target_cell(colors: np.ndarray) -> Optional[int]:
        # label of the first smallest non-singleton cell
        labels, counts = np.unique(colors, return_counts=True)
        big = counts > 1
        if not big.any():
            return None
        best = np.lexsort((labels[big], counts[big]))[0]
        return int(labels[big][best])

    # -- matching ----------------------------------------------------------

    def _match(self, a: np.ndarray, b: np.ndarray) -> Optional[Perm]:
        self._bump()
        refined = self._refine_pair(a, b)
        if refined is None:
            return None
        a, b = refined
        label = self._target_cell(a)
        if label is None:
            order = np.argsort(a, kind="stable")
            f = np.empty(self.n, dtype=np.int64)
            f[order] = np.argsort(b, kind="stable")
            if np.array_equal(self.col[f][:, f], self.col):
                return tuple(int(x) for x in f)
            return None
        v = int(np.nonzero(a == label)[0][0])
        for w in np.nonzero(b == label)[0]:
            res = self._match(self._individualize(a, v), self._individualize(b, int(w)))
            if res is not None:
                return res
        return None

    # -- group generation ---------------------------------------------------

    def _orbit(self, v: int, gens: Sequence[Perm]) -> set[int]:
        orbit = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        return orbit

    def _generate(self, colors: np.ndarray) -> tuple[list[Perm], int]:
        self._bump()
        label = self._target_cell(colors)
        if label is None:
            return [], 1
        cell = np.nonzero(colors == label)[0]
        v = int(cell[0])
        src = self._refine_one(self._individualize(colors, v))
        gens, sub_order = self._generate(src)
        gens = list(gens)
        orbit = self._orbit(v, gens)
        for w in cell:
            w = int(w)
            if w == v or w in orbit:
                continue
            f = self._match(self._individualize(colors, v), self._individualize(colors, w))
            if f is not None:
                gens.append(f)
                orbit = self._orbit(v, gens)
        return gens, len(orbit) * sub_order


def color_automorphisms(A: SRing, node_budget: Optional[int] = None) -> AutResult:
    """Generators, order, and identity-stabilizer data for Aut of the color graph."""
    cg = color_graph(A)
    search = _ColorAutSearch(cg.col, node_budget)
    n = A.group.n
    colors = search._refine_one(np.zeros(n, dtype=np.int64))
    if n == 1:
        return AutResult([], 1, [], 1, search.nodes)
    # individualize the identity vertex first: the recursive call below it
    # yields generators of the point stabilizer of e
    src = search._refine_one(search._individualize(colors, 0))
    stab_gens, stab_order = search._generate(src)
    gens = list(stab_gens)
    orbit = search._orbit(0, gens)
    cell = np.nonzero(colors == colors[0])[0]
    for w in cell:
        w = int(w)
        if w == 0 or w in orbit:
            continue
        f = search._match(search._individualize(colors, 0), search._individualize(colors, w))
        if f is not None:
            gens.append(f)
            orbit = search._orbit(0, gens)
    return AutResult(gens, len(orbit) * stab_order, stab_gens, stab_order, search.nodes)


def automorphism_group(A: SRing, node_budget: Optional[int] = None) -> PermGroup:
    """Aut of the S-ring's colored Cayley digraph as a PermGroup."""
    res = color_automorphisms(A, node_budget)
    return PermGroup(A.group.n, res.generators)


def _orbit_partition(n: int, gens: Sequence[Perm]) -> tuple[tuple[int, ...], ...]:
    seen = [False] * n
    blocks = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in gens:
                z = g[y]
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        for y in orbit:
            seen[y] = True
        blocks.append(tuple(sorted(orbit)))
    return canonical_blocks(blocks)


def is_schurian(A: SRing, node_budget: Optional[int] = None) -> SchurityCertificate:
    """Decide schurity: are the blocks the orbits of the stabilizer of e in Aut?"""
    try:
        res = color_automorphisms(A, node_budget)
    except NodeBudgetExceeded:
        return SchurityCertificate(
            verdict="undecided",
            aut_order=None,
            aut_generators=(),
            stabilizer_generators=(),
            nodes=node_budget or 0,
        )
    orbits = _orbit_partition(A.group.n, res.stabilizer_generators)
    if orbits == A.blocks:
        return SchurityCertificate(
            verdict="schurian",
            aut_order=res.order,
            aut_generators=tuple(res.generators),
            stabilizer_generators=tuple(res.stabilizer_generators),
            nodes=res.nodes,
        )
    block, orbit = next(
        (blk, orb)
        for orb in orbits
        for blk in A.blocks
        if set(orb) < set(blk)
    )
    return SchurityCertificate(
        verdict="nonschurian",
        aut_order=res.order,
        aut_generators=tuple(res.generators),
        stabilizer_generators=tuple(res.stabilizer_generators),
        witness_block=block,
        witness_orbit=orbit,
        nodes=res.nodes,
    )


def verify_certificate(A: SRing, cert: SchurityCertificate) -> bool:
    """Replay a certificate: color preservation, orbits, and (small) order."""
    if cert.verdict == "undecided":
        return True
    cg = color_graph(A)
    for g in cert.aut_generators + cert.stabilizer_generators:
        f = np.array(g)
        if not np.array_equal(cg.col[f][:, f], cg.col):
            return False
    for g in cert.stabilizer_generators:
        if g[0] != 0:
            return False
    orbits = _orbit_partition(A.group.n, cert.stabilizer_generators)
    if cert.verdict == "schurian":
        if orbits != A.blocks:
            return False
    else:
        if cert.witness_block is None or cert.witness_orbit is None:
            return False
        if cert.witness_orbit not in orbits:
            return False
        if not set(cert.witness_orbit) < set(cert.witness_block):
            return False
        if cert.witness_block not in A.blocks:
            return False
    if cert.aut_order is not None and cert.aut_order <= AUT_ORDER_REPLAY_LIMIT:
        if PermGroup(A.group.n, cert.aut_generators).order() != cert.aut_order:
            return False
    return True


# ---------------------------------------------------------------------------
# group-level sweeps
# ---------------------------------------------------------------------------


@dataclass
class SchurSweepResult:
    """Outcome of running the schurity engine over a full enumeration."""

    verdict: Optional[bool]  # None when some member was undecided
    report: EnumerationReport
    certificates: list[SchurityCertificate]
    nonschurian: list[int] = field(default_factory=list)
    undecided: list[int] = field(default_factory=list)
    seconds: float = 0.0


def _sweep(report: EnumerationReport, node_budget: Optional[int]) -> SchurSweepResult:
    t0 = time.perf_counter()
    certs = []
    bad, undecided = [], []
    for i, A in enumerate(report.srings):
        cert = is_schurian(A, node_budget)
        certs.append(cert)
        report.annotations[i].schurian = {"schurian": True, "nonschurian": False}.get(cert.verdict)
        if cert.verdict == "nonschurian":
            bad.append(i)
        elif cert.verdict == "undecided":
            undecided.append(i)
    verdict: Optional[bool]
    if bad:
        verdict = False
    elif undecided:
        verdict = None
    else:
        verdict = True
    return SchurSweepResult(
        verdict=verdict,
        report=report,
        certificates=certs,
        nonschurian=bad,
        undecided=undecided,
        seconds=time.perf_counter() - t0,
    )


def is_generalized_schur(
    G: Group,
    atom_cap: int = 24,
    node_budget: Optional[int] = None,
    enum_budget: Optional[int] = None,
) -> SchurSweepResult:
    """Is every central S-ring over G schurian?"""
    return _sweep(enumerate_central(G, atom_cap=atom_cap, node_budget=enum_budget), node_budget)


def is_schur_group(
    G: Group,
    order_cap: int = 25,
    node_budget: Optional[int] = None,
    enum_budget: Optional[int] = None,
) -> SchurSweepResult:
    """Is every S-ring over G schurian?"""
    return _sweep(enumerate_all(G, order_cap=order_cap, node_budget=enum_budget), node_budget)


# ---------------------------------------------------------------------------
# regular subgroup transfer
# ---------------------------------------------------------------------------


def regular_subgroup_transfer(A: SRing, R: PermGroup, H: Group) -> SRing:
    """Move A along a regular subgroup of its automorphism group.

    R must act regularly on the elements and preserve all arc colors; the
    bijection sends g to the unique r in R with 0^r = g, composed with an
    isomorphism from R (as an abstract group) onto H.
    """
    G = A.group
    if R.degree != G.n:
        raise ValueError("regular subgroup degree does not match")
    cg = color_graph(A)
    for g in R.generators:
        f = np.array(g)
        if not np.array_equal(cg.col[f][:, f], cg.col):
            raise ValueError("subgroup does not preserve the S-ring's colors")
    if not R.is_regular():
        raise ValueError("subgroup is not regular")
    by_image: dict[int, Perm] = {}
    for p in R.elements():
        by_image[p[0]] = p
    # multiplication table transported through g <-> r_g
    mul = np.empty((G.n, G.n), dtype=np.int64)
    for g in range(G.n):
        rg = by_image[g]
        for h in range(G.n):
            mul[g, h] = by_image[h][rg[0]]
    rtab = _from_table(mul, [str(i) for i in range(G.n)], spec=f"regular-subgroup({G.spec})")
    iso = find_isomorphism(rtab, H)
    if iso is None:
        raise ValueError("regular subgroup is not isomorphic to the target group")
    f = np.array(iso)
    blocks = [tuple(sorted(int(f[x]) for x in blk)) for blk in A.blocks]
    return from_partition_strict(H, blocks)


# ---------------------------------------------------------------------------
# the cyclic Schur family predicate
# ---------------------------------------------------------------------------


def cyclic_schur_family(n: int) -> bool:
    """Does n have one of the shapes p^k, p q^k, 2 p q^k, pqr, 2pqr?

    p, q, r are distinct primes, k >= 0.  This is the closed-form number
    family characterizing the cyclic groups all of whose S-rings are
    schurian; it is consumed as a predicate, not rederived.
    """
    if n < 1:
        raise ValueError("n must be positive")
    facts = _factorize(n)
    exps = {p: e for p, e in facts}
    k = len(facts)
    if k <= 1:
        return True
    if k == 2:
        return min(exps.values()) == 1
    if k == 3:
        if n % 2 == 1:
            return all(e == 1 for e in exps.values())
        odd = [e for p, e in exps.items() if p != 2]
        return exps[2] == 1 and min(odd) == 1
    if k == 4:
        return n % 2 == 0 and all(e == 1 for e in exps.values())
    return False
