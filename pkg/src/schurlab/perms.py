"""Permutation groups with a deterministic base-and-strong-generating-set.

Permutations are tuples ``p`` acting by x -> p[x]; products apply the left
factor first, so ``pmul(p, q)[x] == q[p[x]]``.  The stabilizer chain uses the
fixed base order 0, 1, 2, ... (optionally rotated to put one point first),
and transversals are built by breadth-first search in sorted point order, so
orders, membership tests and certificates are reproducible run to run.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Iterator, Optional, Sequence

if TYPE_CHECKING:  # pragma: no cover
    from .groups import Group

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def pmul(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[x] for x in p)


def pinv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


class _Level:
    __slots__ = ("base", "gens", "transversal")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {base: None}  # None encodes the identity


class PermGroup:
    """A permutation group of fixed degree held as generators plus a BSGS."""

    def __init__(self, degree: int, generators: Iterable[Perm] = (), base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.generators: list[Perm] = []
        seen = set()
        for g in generators:
            t = tuple(int(x) for x in g)
            if len(t) != degree or sorted(t) != list(range(degree)):
                raise ValueError("generator is not a permutation of the right degree")
            if t not in seen and not is_identity(t):
                seen.add(t)
                self.generators.append(t)
        prefix = [int(b) for b in base_prefix]
        self._base_order = prefix + [i for i in range(degree) if i not in prefix]
        self._levels: Optional[list[_Level]] = None

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    # -- stabilizer chain ---------------------------------------------------

    def _chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = [_Level(b) for b in self._base_order]
            for g in self.generators:
                self._insert(g)
        return self._levels

    def _gens_at(self, idx: int) -> list[Perm]:
        # strong generators fixing every base point before level idx
        return [g for lv in self._levels[idx:] for g in lv.gens]

    def _rebuild_orbit(self, idx: int) -> None:
        level = self._levels[idx]
        gens = self._gens_at(idx)
        level.transversal = {level.base: None}
        frontier = [level.base]
        while frontier:
            nxt = []
            for t in sorted(frontier):
                u = level.transversal[t]
                for s in gens:
                    t2 = s[t]
                    if t2 not in level.transversal:
                        level.transversal[t2] = s if u is None else pmul(u, s)
                        nxt.append(t2)
            frontier = nxt

    def _insert(self, p: Perm) -> None:
        residue, idx = self._sift(p)
        if residue is None:
            return
        self._levels[idx].gens.append(residue)
        for j in range(idx, -1, -1):
            self._verify_level(j)

    def _verify_level(self, j: int) -> None:
        # Schreier condition at level j: every Schreier generator sifts through
        # the deeper levels.  Residues are inserted deeper and the deeper
        # levels re-verified before this one restarts.
        while True:
            self._rebuild_orbit(j)
            lv = self._levels[j]
            gens = self._gens_at(j)
            clean = True
            for t in sorted(lv.transversal):
                u = lv.transversal[t]
                for s in gens:
                    w = s if u is None else pmul(u, s)
                    back = lv.transversal[s[t]]
                    if back is not None and w == back:
                        continue
                    schreier = w if back is None else pmul(w, pinv(back))
                    residue, d = self._sift(schreier, j + 1)
                    if residue is None:
                        continue
                    self._levels[d].gens.append(residue)
                    for k in range(d, j, -1):
                        self._verify_level(k)
                    clean = False
                    break
                if not clean:
                    break
            if clean:
                return

    def _sift(self, p: Perm, start: int = 0) -> tuple[Optional[Perm], int]:
        """Reduce p through the chain; (None, -1) when it sifts to the identity.

        Otherwise returns (residue, level) where the residue fixes every base
        point before that level and maps its base outside the current orbit.
        """
        levels = self._levels
        for idx in range(start, len(levels)):
            lv = levels[idx]
            t = p[lv.base]
            if t == lv.base:
                continue
            if t not in lv.transversal:
                return p, idx
            u = lv.transversal[t]
            p = p if u is None else pmul(p, pinv(u))
        return (None, -1) if is_identity(p) else (p, len(levels))

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        out = 1
        for lv in self._chain():
            out *= len(lv.transversal)
        return out

    def contains(self, p: Perm) -> bool:
        p = tuple(int(x) for x in p)
        if len(p) != self.degree:
            return False
        self._chain()
        residue, _ = self._sift(p)
        return residue is None

    def strong_generators(self) -> list[Perm]:
        return [g for lv in self._chain() for g in lv.gens]

    def stabilizer(self, point: int) -> "PermGroup":
        """The full stabilizer of a point, via a chain rebased at that point."""
        rebased = PermGroup(self.degree, self.generators, base_prefix=(point,))
        chain = rebased._chain()
        gens = [g for lv in chain[1:] for g in lv.gens]
        return PermGroup(self.degree, gens)

    def orbits(self, domain: Optional[Iterable[int]] = None) -> list[tuple[int, ...]]:
        pts = list(domain) if domain is not None else list(range(self.degree))
        remaining = set(pts)
        out = []
        for x in pts:
            if x not in remaining:
                continue
            orbit = {x}
            stack = [x]
            while stack:
                y = stack.pop()
                for g in self.generators:
                    z = g[y]
                    if z not in orbit:
                        orbit.add(z)
                        stack.append(z)
            remaining -= orbit
            out.append(tuple(sorted(orbit)))
        out.sort(key=lambda t: t[0])
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def elements(self, limit: int = 200_000) -> Iterator[Perm]:
        """Iterate all elements (products over transversals).  Guarded by a limit."""
        if self.order() > limit:
            raise ValueError(f"group order {self.order()} exceeds enumeration limit")
        chain = self._chain()
        ident = identity_perm(self.degree)

        def rec(idx: int, acc: Perm) -> Iterator[Perm]:
            if idx == len(chain):
                yield acc
                return
            for t in sorted(chain[idx].transversal):
                u = chain[idx].transversal[t]
                yield from rec(idx + 1, acc if u is None else pmul(u, acc))

        yield from rec(0, ident)


# ---------------------------------------------------------------------------
# regular representations and transitivity modules
# ---------------------------------------------------------------------------


def right_regular(G: "Group") -> PermGroup:
    """Permutations x -> xg for g in a generating sequence of G."""
    gens = [tuple(int(v) for v in G.mul[:, g]) for g in G.generating_sequence()]
    return PermGroup(G.n, gens)


def left_regular(G: "Group") -> PermGroup:
    """Permutations x -> gx for g in a generating sequence of G."""
    gens = [tuple(int(v) for v in G.mul[g, :]) for g in G.generating_sequence()]
    return PermGroup(G.n, gens)


def right_translation(G: "Group", g: int) -> Perm:
    return tuple(int(v) for v in G.mul[:, g])


def transitivity_module(K: PermGroup, G: "Group"):
    """The S-ring whose blocks are the orbits of the stabilizer of the identity.

    Requires K to contain every right translation of G.
    """
    from .srings import from_partition

    if K.degree != G.n:
        raise ValueError("permutation group degree does not match the group order")
    for g in G.generating_sequence():
        if not K.contains(right_translation(G, g)):
            raise ValueError("group does not contain the right-regular representation")
    stab = K.stabilizer(0)
    blocks = stab.orbits()
    ring = from_partition(G, blocks)
    from .srings import SRing

    assert isinstance(ring, SRing)
    return ring
