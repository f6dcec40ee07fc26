"""Enumeration of S-rings as fusions of an atom partition.

The atoms are the conjugacy classes (central mode) or the singletons (full
mode).  The search completes blocks one at a time in canonical atom order:
the block of the first unassigned atom is grown by an include/exclude DFS
over its stabilization cell, with three sound pruning rules:

* any valid extension refines the coarsest S-ring partition refining
  {completed blocks} + {unassigned mass}, computed by splitting
  stabilization, so candidate blocks never cross its cells and a forced
  split inside a completed block kills the node;
* blocks come in inverse pairs, so the partner block is forced;
* when every ring in scope is central (central mode, or any mode over an
  abelian group) the power maps x -> x^m with gcd(m, |G|) = 1 permute the
  blocks, so a block overlapping its own m-image must be m-closed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .groups import CapExceeded, Group, conjugacy_classes
from .perms import PermGroup
from .srings import (
    SRing,
    from_partition_strict,
    stabilize_partition,
)

DEFAULT_ATOM_CAP = 24
DEFAULT_ALL_ORDER_CAP = 25
BRUTE_FORCE_ATOM_CAP = 8


class EnumerationBudgetExceeded(RuntimeError):
    """The search node budget ran out before the enumeration completed."""


@dataclass(frozen=True)
class FusionAtom:
    index: int
    elements: tuple[int, ...]
    inverse_atom: int

    @property
    def size(self) -> int:
        return len(self.elements)


@dataclass
class SRingAnnotation:
    rank: int
    sizes: tuple[int, ...]
    central: bool
    primitive: Optional[bool] = None
    schurian: Optional[bool] = None
    tags: list[str] = field(default_factory=list)


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    seconds: float = 0.0


@dataclass
class EnumerationReport:
    group_spec: str
    mode: str
    srings: list[SRing]
    annotations: list[SRingAnnotation]
    stats: SearchStats

    @property
    def count(self) -> int:
        return len(self.srings)


def _atoms_central(G: Group) -> list[tuple[int, ...]]:
    return conjugacy_classes(G)


def _atoms_all(G: Group) -> list[tuple[int, ...]]:
    return [(x,) for x in range(G.n)]


def _power_atom_maps(G: Group, atoms: list[tuple[int, ...]], atom_of: np.ndarray) -> list[np.ndarray]:
    """Distinct nonidentity maps atom -> atom induced by x -> x^m, gcd(m,|G|)=1."""
    maps = {}
    for m in range(2, G.n + 1):
        if math.gcd(m, G.n) != 1:
            continue
        img = tuple(int(atom_of[G.power(a[0], m)]) for a in atoms)
        if img != tuple(range(len(atoms))):
            maps[img] = None
    return [np.array(img, dtype=np.int64) for img in sorted(maps)]


class _FusionSearch:
    def __init__(self, G: Group, atoms: list[tuple[int, ...]], use_power: bool, node_budget: Optional[int]):
        # canonical atom order: by (size, smallest element); the identity atom lands first
        self.G = G
        self.atoms = sorted(atoms, key=lambda a: (len(a), a[0]))
        assert self.atoms[0][0] == 0
        self.r = len(self.atoms)
        self.atom_of = np.empty(G.n, dtype=np.int64)
        for i, a in enumerate(self.atoms):
            for x in a:
                self.atom_of[x] = i
        self.inv_atom = np.array([int(self.atom_of[G.inv[a[0]]]) for a in self.atoms], dtype=np.int64)
        self.power_maps: list[tuple[np.ndarray, np.ndarray]] = []
        if use_power:
            for pm in _power_atom_maps(G, self.atoms, self.atom_of):
                inv = np.empty_like(pm)
                inv[pm] = np.arange(self.r)
                self.power_maps.append((pm, inv))
        self.node_budget = node_budget
        self.stats = SearchStats()
        self.found: list[SRing] = []

    # -- bookkeeping ----------------------------------------------------

    def _bump(self):
        self.stats.nodes += 1
        if self.node_budget is not None and self.stats.nodes > self.node_budget:
            raise EnumerationBudgetExceeded(f"enumeration exceeded {self.node_budget} nodes")

    def _elements_of(self, atom_ids) -> list[int]:
        out = []
        for i in atom_ids:
            out.extend(self.atoms[i])
        return out

    # -- block growing ----------------------------------------------------

    def _close(self, inc: set[int], exc: set[int], triggered: set[int], allowed: frozenset[int], self_paired: bool) -> Optional[tuple[set[int], set[int]]]:
        inc = set(inc)
        triggered = set(triggered)
        work = list(inc)
        while work:
            x = work.pop()
            if self_paired:
                img = int(self.inv_atom[x])
                if img not in inc:
                    if img not in allowed or img in exc:
                        return None
                    inc.add(img)
                    work.append(img)
            else:
                if int(self.inv_atom[x]) in inc:
                    return None
            for mi, (pm, pminv) in enumerate(self.power_maps):
                if mi in triggered:
                    for img in (int(pm[x]), int(pminv[x])):
                        if img not in inc:
                            if img not in allowed or img in exc:
                                return None
                            inc.add(img)
                            work.append(img)
                elif int(pm[x]) in inc or int(pminv[x]) in inc:
                    triggered.add(mi)
                    work.extend(inc)
                    break
        return inc, triggered

    def _grow_blocks(self, a: int, eligible: list[int], cell_of: np.ndarray) -> Iterator[tuple[list[int], Optional[list[int]]]]:
        inv_a = int(self.inv_atom[a])
        eligible_set = frozenset(eligible)
        allowed = eligible_set | {a}
        modes = []
        if inv_a == a:
            modes = [True]
        elif inv_a in eligible_set:
            modes = [True, False]
        else:
            modes = [False]
        for self_paired in modes:
            start = self._close({a}, set(), set(), allowed, self_paired)
            if start is None:
                self.stats.prunes += 1
                continue
            yield from self._grow_rec(0, eligible, start[0], set(), start[1], allowed, self_paired, cell_of)

    def _grow_rec(self, idx, eligible, inc, exc, triggered, allowed, self_paired, cell_of) -> Iterator[tuple[list[int], Optional[list[int]]]]:
        self._bump()
        if idx == len(eligible):
            block = sorted(inc)
            if self_paired:
                yield block, None
                return
            partner = sorted(int(self.inv_atom[x]) for x in inc)
            # the partner block must sit inside a single stabilization cell
            cells = {int(cell_of[self.atoms[p][0]]) for p in partner}
            if len(cells) != 1:
                self.stats.prunes += 1
                return
            yield block, partner
            return
        t = eligible[idx]
        if t in inc:
            yield from self._grow_rec(idx + 1, eligible, inc, exc, triggered, allowed, self_paired, cell_of)
            return
        if not self_paired and int(self.inv_atom[t]) in inc:
            yield from self._grow_rec(idx + 1, eligible, inc, exc | {t}, triggered, allowed, self_paired, cell_of)
            return
        yield from self._grow_rec(idx + 1, eligible, inc, exc | {t}, triggered, allowed, self_paired, cell_of)
        grown = self._close(inc | {t}, exc, triggered, allowed, self_paired)
        if grown is None:
            self.stats.prunes += 1
            return
        yield from self._grow_rec(idx + 1, eligible, grown[0], exc, grown[1], allowed, self_paired, cell_of)

    # -- main recursion ---------------------------------------------------

    def run(self) -> list[SRing]:
        if self.G.n == 1:
            self.found.append(from_partition_strict(self.G, [(0,)]))
            return self.found
        cells = (self.atom_of != 0).astype(np.int64)
        self._dfs([[0]], cells)
        return self.found

    def _dfs(self, completed: list[list[int]], cell_of: np.ndarray) -> None:
        self._bump()
        frozen = np.zeros(self.G.n, dtype=bool)
        for blk in completed:
            frozen[self._elements_of(blk)] = True
        stable = stabilize_partition(self.G, cell_of, frozen=frozen)
        if stable is None:
            self.stats.prunes += 1
            return
        assigned = set()
        for blk in completed:
            assigned.update(blk)
        unassigned = [i for i in range(self.r) if i not in assigned]
        if not unassigned:
            partition = [tuple(sorted(self._elements_of(blk))) for blk in completed]
            self.found.append(from_partition_strict(self.G, partition))
            return
        a = unassigned[0]
        cell_id = int(stable[self.atoms[a][0]])
        eligible = [i for i in unassigned[1:] if int(stable[self.atoms[i][0]]) == cell_id]
        for block, partner in self._grow_blocks(a, eligible, stable):
            child = stable.copy()
            fresh = int(stable.max()) + 1
            child[self._elements_of(block)] = fresh
            new_completed = completed + [block]
            if partner is not None:
                child[self._elements_of(partner)] = fresh + 1
                new_completed = new_completed + [partner]
            self._dfs(new_completed, child)


def _report(G: Group, mode: str, srings: list[SRing], stats: SearchStats) -> EnumerationReport:
    srings = sorted(set(srings), key=lambda A: (A.rank, A.blocks))
    from .srings import is_central, is_primitive

    annotations = []
    for A in srings:
        primitive = None
        if G.n <= 128:
            primitive = is_primitive(A)
        annotations.append(
            SRingAnnotation(rank=A.rank, sizes=A.sizes, central=is_central(A), primitive=primitive)
        )
    return EnumerationReport(group_spec=G.spec, mode=mode, srings=srings, annotations=annotations, stats=stats)


def annotate_decomposition_tags(report: EnumerationReport, group: Group) -> None:
    """Fill per-ring tags: wreath decompositions and the dihedral branch."""
    from .srings import DecompositionError, dihedral_structure, find_wreath_decompositions, is_central

    dihedral = group.spec.startswith("dihedral:")
    for A, ann in zip(report.srings, report.annotations):
        tags = []
        decs = [(U, L) for U, L, nontrivial in find_wreath_decompositions(A) if nontrivial]
        if decs:
            U, L = max(decs, key=lambda p: (len(p[1]), len(p[0])))
            tags.append(f"generalized-wreath(|U|={len(U)},|L|={len(L)})")
        if dihedral and is_central(A):
            try:
                tags.append(dihedral_structure(A).kind)
            except DecompositionError:
                tags.append("unclassified-dihedral-branch")
        ann.tags = tags


def enumerate_central(G: Group, atom_cap: int = DEFAULT_ATOM_CAP, node_budget: Optional[int] = None) -> EnumerationReport:
    """All S-rings whose blocks are unions of conjugacy classes."""
    atoms = _atoms_central(G)
    if len(atoms) > atom_cap:
        raise CapExceeded(f"{len(atoms)} conjugacy-class atoms exceed the cap {atom_cap}")
    t0 = time.perf_counter()
    search = _FusionSearch(G, atoms, use_power=True, node_budget=node_budget)
    srings = search.run()
    search.stats.seconds = time.perf_counter() - t0
    return _report(G, "central", srings, search.stats)


def enumerate_all(G: Group, order_cap: int = DEFAULT_ALL_ORDER_CAP, node_budget: Optional[int] = None) -> EnumerationReport:
    """All S-rings over G (atoms are singletons)."""
    if G.n > order_cap:
        raise CapExceeded(f"order {G.n} exceeds the full-enumeration cap {order_cap}")
    t0 = time.perf_counter()
    search = _FusionSearch(G, _atoms_all(G), use_power=G.is_abelian, node_budget=node_budget)
    srings = search.run()
    search.stats.seconds = time.perf_counter() - t0
    return _report(G, "all", srings, search.stats)


def cyclotomic(G: Group, K: PermGroup) -> SRing:
    """The S-ring whose blocks are the orbits of a group of automorphisms."""
    if K.degree != G.n:
        raise ValueError("automorphism group degree does not match the group order")
    for g in K.generators:
        if g[0] != 0:
            raise ValueError("cyclotomic generators must fix the identity")
        arr = np.array(g)
        if not np.array_equal(arr[G.mul], G.mul[arr[:, None], arr[None, :]]):
            raise ValueError("cyclotomic generator is not an automorphism")
    return from_partition_strict(G, K.orbits())


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def brute_force_partitions(G: Group, mode: str) -> EnumerationReport:
    """Independent oracle: test every set partition of the atoms.

    Only for tiny inputs (at most 8 atoms); used to validate the search.
    """
    atoms = _atoms_central(G) if mode == "central" else _atoms_all(G)
    if len(atoms) > BRUTE_FORCE_ATOM_CAP:
        raise CapExceeded(f"brute force limited to {BRUTE_FORCE_ATOM_CAP} atoms, got {len(atoms)}")
    from .srings import from_partition

    t0 = time.perf_counter()
    stats = SearchStats()
    out = []
    for part in _set_partitions(list(range(len(atoms)))):
        stats.nodes += 1
        blocks = [tuple(sorted(x for i in grp for x in atoms[i])) for grp in part]
        result = from_partition(G, blocks)
        if isinstance(result, SRing):
            out.append(result)
    stats.seconds = time.perf_counter() - t0
    return _report(G, f"brute-{mode}", out, stats)
