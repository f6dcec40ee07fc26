"""Finite groups as explicit multiplication tables, with 0-based element indices.

Every group is a table over elements 0..n-1 with the identity fixed at index 0.
Constructors emit a documented deterministic element ordering so that derived
objects (partitions, certificates, reports) are bit-stable across runs:

* ``cyclic:n``            e, a, a^2, ...
* ``dihedral:2n``         a^0..a^{n-1}, then b, ab, a^2 b, ...   (a^b = a^-1)
* ``quaternion:2^k``      a^0..a^{m-1}, then a^i b with b^2 = a^{m/2}
* ``semidihedral:2^k``    a^i, a^i b with a^b = a^{m/2 - 1}
* ``modular:p^k``         a^i b^j indexed j*m + i, a^b = a^{p^{k-2}+1}
* ``elemabelian:p^k``     base-p digit vectors, least significant digit first
* ``frobenius:q:p``       (x, y) in Z_q x Z_p indexed x*p + y
* ``direct(s,t)``         pairs (x, y) indexed x*|T| + y
* ``semidirect(s,t,m)``   pairs, the generator of cyclic t acting by x -> x^m
* ``centralprod(s,t,i:j)``cosets of the central amalgam <(i, j^-1)>
* ``extraspecial:p^3:+|-``Heisenberg group / exponent-p^2 group (D8/Q8 at p=2)
* ``A4 | A5 | S4``        permutations ordered lexicographically by image tuple
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Optional, Sequence

import numpy as np

SUBGROUP_SEARCH_CAP = 64
AUTOMORPHISM_CAP = 64
ASSOCIATIVITY_EXHAUSTIVE_CAP = 128


class GroupSpecError(ValueError):
    """Malformed or invalid group construction recipe."""


class CapExceeded(RuntimeError):
    """An operation refused to run above its configured size cap."""


@dataclass(frozen=True)
class Group:
    """A finite group given by its full multiplication table.

    ``mul[x, y]`` is the index of the product xy; ``inv[x]`` the inverse of x;
    the identity is element 0.  Instances are immutable after construction.
    """

    n: int
    mul: np.ndarray
    inv: np.ndarray
    labels: tuple[str, ...]
    spec: str

    def __post_init__(self):
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)

    def __repr__(self):
        return f"Group({self.spec}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, Group) and self.n == other.n and np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash((self.n, self.mul.tobytes()))

    def power(self, x: int, m: int) -> int:
        """x^m, with negative m meaning powers of the inverse."""
        if m < 0:
            x, m = int(self.inv[x]), -m
        acc, base = 0, x
        while m:
            if m & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            m >>= 1
        return acc

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = int(self.mul[y, x])
            k += 1
        return k

    def conjugate(self, x: int, g: int) -> int:
        """g^-1 x g."""
        return int(self.mul[self.mul[self.inv[g], x], g])

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def generating_sequence(self) -> list[int]:
        """Greedy minimal generating sequence, smallest element indices first."""
        gens: list[int] = []
        span = {0}
        while len(span) < self.n:
            g = min(x for x in range(self.n) if x not in span)
            gens.append(g)
            span = _closure(self.mul, span | {g})
        return gens


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as a sorted tuple of parent element indices."""

    elements: tuple[int, ...]
    parent: Group

    def __post_init__(self):
        if 0 not in self.elements:
            raise ValueError("subgroup must contain the identity")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._member_set

    def __repr__(self):
        return f"Subgroup(order={len(self.elements)} of {self.parent.spec})"

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.elements == other.elements and self.parent == other.parent

    def __hash__(self):
        return hash(self.elements)

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.elements)

    def as_group(self) -> tuple[Group, np.ndarray]:
        """Reindexed group on this subgroup plus the parent->local index map."""
        G = self.parent
        local = -np.ones(G.n, dtype=np.int64)
        for i, x in enumerate(self.elements):
            local[x] = i
        m = len(self.elements)
        mul = np.empty((m, m), dtype=np.int64)
        for i, x in enumerate(self.elements):
            row = local[G.mul[x, list(self.elements)]]
            mul[i] = row
        labels = tuple(G.labels[x] for x in self.elements)
        sub = _from_table(mul, labels, spec=f"subgroup(order={m} of {G.spec})")
        return sub, local


@dataclass(frozen=True)
class Section:
    """A section U/L: quotient group plus the canonical epimorphism on U.

    ``epi[x]`` is the quotient index of x for x in U and -1 outside U.
    """

    U: Subgroup
    L: Subgroup
    quotient: Group
    epi: np.ndarray


# ---------------------------------------------------------------------------
# table assembly and validation
# ---------------------------------------------------------------------------


def _inverses(mul: np.ndarray) -> np.ndarray:
    n = mul.shape[0]
    inv = np.empty(n, dtype=np.int64)
    rows, cols = np.nonzero(mul == 0)
    inv[rows] = cols
    return inv


def validate_table(mul: np.ndarray, rng: Optional[np.random.Generator] = None) -> None:
    """Check Latin square, identity at 0, inverses and associativity.

    Associativity is exhaustive up to n <= 128 and sampled (10*n^2 triples)
    above that.
    """
    n = mul.shape[0]
    if mul.shape != (n, n):
        raise GroupSpecError("multiplication table must be square")
    ident = np.arange(n)
    if not np.array_equal(mul[0], ident) or not np.array_equal(mul[:, 0], ident):
        raise GroupSpecError("element 0 is not an identity")
    rows_ok = np.array_equal(np.sort(mul, axis=1), np.tile(ident, (n, 1)))
    cols_ok = np.array_equal(np.sort(mul.T, axis=1), np.tile(ident, (n, 1)))
    if not (rows_ok and cols_ok):
        raise GroupSpecError("table is not a Latin square")
    if not np.all((mul == 0).sum(axis=1) == 1):
        raise GroupSpecError("inverses are not unique")
    if n <= ASSOCIATIVITY_EXHAUSTIVE_CAP:
        if not np.array_equal(mul[mul], mul[:, mul]):
            raise GroupSpecError("table is not associative")
    else:  # pragma: no cover - catalog stays below the cap
        rng = rng or np.random.default_rng(0)
        xs, ys, zs = (rng.integers(0, n, 10 * n * n) for _ in range(3))
        if not np.all(mul[mul[xs, ys], zs] == mul[xs, mul[ys, zs]]):
            raise GroupSpecError("table failed sampled associativity")


def _from_table(mul: np.ndarray, labels: Sequence[str], spec: str) -> Group:
    mul = np.ascontiguousarray(mul, dtype=np.int64)
    validate_table(mul)
    return Group(n=mul.shape[0], mul=mul, inv=_inverses(mul), labels=tuple(labels), spec=spec)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def _pow_labels(n: int, sym: str = "a") -> list[str]:
    return ["e"] + [sym if i == 1 else f"{sym}{i}" for i in range(1, n)]


def _cyclic(n: int, spec: str) -> Group:
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    return _from_table(mul, _pow_labels(n), spec)


def _dihedral_family(order: int, kind: str, spec: str) -> Group:
    """Common table for the dihedral / quaternion / semidihedral / modular-2 shapes.

    Elements are a^i (i < m) then a^i b; the defining data is the exponent r
    with b a b^-1 = a^r and the value s with b^2 = a^s.
    """
    m = order // 2
    if kind == "dihedral":
        r, s = -1, 0
    elif kind == "quaternion":
        r, s = -1, m // 2
    else:  # semidihedral
        r, s = m // 2 - 1, 0
    mul = np.empty((order, order), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            mul[i, j] = (i + j) % m
            mul[i, m + j] = m + (i + j) % m
            mul[m + i, j] = m + (i + r * j) % m
            mul[m + i, m + j] = (i + r * j + s) % m
    labels = _pow_labels(m) + ["b"] + [("a" if i == 1 else f"a{i}") + "b" for i in range(1, m)]
    return _from_table(mul, labels, spec)


def _modular(p: int, k: int, spec: str) -> Group:
    m = p ** (k - 1)
    r = p ** (k - 2) + 1
    order = p ** k
    rpow = [pow(r, j, m) for j in range(p)]
    mul = np.empty((order, order), dtype=np.int64)
    for j1 in range(p):
        for i1 in range(m):
            x = j1 * m + i1
            for j2 in range(p):
                for i2 in range(m):
                    mul[x, j2 * m + i2] = ((j1 + j2) % p) * m + (i1 + i2 * rpow[j1]) % m
    labels = []
    for j in range(p):
        for i in range(m):
            a = "e" if i == 0 else ("a" if i == 1 else f"a{i}")
            b = "" if j == 0 else ("b" if j == 1 else f"b{j}")
            labels.append(b if i == 0 and j > 0 else (a if j == 0 else a + b))
    return _from_table(mul, labels, spec)


def _elemabelian(p: int, k: int, spec: str) -> Group:
    n = p**k
    digits = np.array([[(x // p**j) % p for j in range(k)] for x in range(n)])
    packed = (digits[:, None, :] + digits[None, :, :]) % p
    mul = sum(packed[:, :, j] * p**j for j in range(k))
    labels = ["".join(str(d) for d in digits[x]) for x in range(n)]
    return _from_table(np.asarray(mul), labels, spec)


def _heisenberg(p: int, spec: str) -> Group:
    n = p**3
    trip = [(x // (p * p), (x // p) % p, x % p) for x in range(n)]
    mul = np.empty((n, n), dtype=np.int64)
    for xi, (x1, y1, z1) in enumerate(trip):
        for yi, (x2, y2, z2) in enumerate(trip):
            mul[xi, yi] = ((x1 + x2) % p) * p * p + ((y1 + y2) % p) * p + (z1 + z2 + x1 * y2) % p
    labels = [f"({x},{y},{z})" for x, y, z in trip]
    return _from_table(mul, labels, spec)


def _frobenius(q: int, p: int, spec: str) -> Group:
    if not _is_prime(q):
        raise GroupSpecError(f"frobenius base {q} must be prime")
    if p < 2 or (q - 1) % p != 0:
        raise GroupSpecError(f"frobenius requires q = 1 mod p, got q={q}, p={p}")
    g = _primitive_root(q)
    t = pow(g, (q - 1) // p, q)
    tpow = [pow(t, y, q) for y in range(p)]
    n = q * p
    mul = np.empty((n, n), dtype=np.int64)
    for x1 in range(q):
        for y1 in range(p):
            a = x1 * p + y1
            for x2 in range(q):
                for y2 in range(p):
                    mul[a, x2 * p + y2] = ((x1 + x2 * tpow[y1]) % q) * p + (y1 + y2) % p
    labels = [f"a{x}b{y}" if x or y else "e" for x in range(q) for y in range(p)]
    return _from_table(mul, labels, spec)


def _perm_group(points: int, even_only: bool, spec: str) -> Group:
    perms = sorted(p for p in product(*[range(points)] * points) if len(set(p)) == points and (not even_only or _perm_sign(p) == 1))
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            mul[i, j] = index[tuple(b[a[k]] for k in range(points))]
    return _from_table(mul, [_cycle_label(p) for p in perms], spec)


def _perm_sign(p: Sequence[int]) -> int:
    seen, sign = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _cycle_label(p: Sequence[int]) -> str:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [i], p[i]
        seen.add(i)
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "e"


def _direct(g1: Group, g2: Group, spec: str) -> Group:
    n1, n2 = g1.n, g2.n
    mul = (g1.mul[:, None, :, None] * n2 + g2.mul[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    labels = [f"({a}|{b})" for a in g1.labels for b in g2.labels]
    return _from_table(mul, labels, spec)


def _power_map(g: Group, t: int) -> np.ndarray:
    return np.array([g.power(x, t) for x in range(g.n)], dtype=np.int64)


def _semidirect(g1: Group, g2: Group, t: int, spec: str) -> Group:
    gen2 = next((x for x in range(g2.n) if g2.element_order(x) == g2.n), None)
    if gen2 is None:
        raise GroupSpecError("semidirect acting factor must be cyclic")
    alpha = _power_map(g1, t)
    if sorted(alpha.tolist()) != list(range(g1.n)) or not np.array_equal(alpha[g1.mul], g1.mul[alpha[:, None], alpha[None, :]]):
        raise GroupSpecError(f"action x -> x^{t} is not an automorphism of {g1.spec}")
    # exponent of each element of g2 with respect to the chosen generator
    exp2 = np.empty(g2.n, dtype=np.int64)
    y, e = 0, 0
    while True:
        exp2[y] = e
        y = int(g2.mul[y, gen2])
        e += 1
        if y == 0:
            break
    powers = [np.arange(g1.n, dtype=np.int64)]
    for _ in range(g2.n - 1):
        powers.append(alpha[powers[-1]])
    if not np.array_equal(alpha[powers[-1]], powers[0]):
        raise GroupSpecError("action order does not divide the order of the acting factor")
    n1, n2 = g1.n, g2.n
    mul = np.empty((n1 * n2, n1 * n2), dtype=np.int64)
    for x1 in range(n1):
        for y1 in range(n2):
            act = powers[exp2[y1]]
            for x2 in range(n1):
                xr = g1.mul[x1, act[x2]]
                mul[x1 * n2 + y1, x2 * n2 : (x2 + 1) * n2] = xr * n2 + g2.mul[y1]
    labels = [f"({a}|{b})" for a in g1.labels for b in g2.labels]
    return _from_table(mul, labels, spec)


def _centralprod(g1: Group, g2: Group, z1: int, z2: int, spec: str) -> Group:
    zc1 = center_elements(g1)
    zc2 = center_elements(g2)
    if z1 not in zc1 or z2 not in zc2:
        raise GroupSpecError("amalgamated elements must be central")
    if g1.element_order(z1) != g2.element_order(z2):
        raise GroupSpecError("amalgamated elements must have equal order")
    n1, n2 = g1.n, g2.n
    prod = _direct(g1, g2, spec="tmp")
    # normal subgroup N = <(z1, z2^-1)> of the direct product
    gen = z1 * n2 + int(g2.inv[z2])
    nset = _closure(prod.mul, {0, gen})
    coset_of = -np.ones(n1 * n2, dtype=np.int64)
    reps = []
    for x in range(n1 * n2):
        if coset_of[x] >= 0:
            continue
        members = sorted(int(prod.mul[x, k]) for k in nset)
        cid = len(reps)
        reps.append(members[0])
        for mmb in members:
            coset_of[mmb] = cid
    order = np.argsort(np.array(reps))
    rank = np.empty(len(reps), dtype=np.int64)
    rank[order] = np.arange(len(reps))
    coset_of = rank[coset_of]
    reps = [reps[i] for i in order]
    m = len(reps)
    mul = np.empty((m, m), dtype=np.int64)
    for i, x in enumerate(reps):
        mul[i] = coset_of[prod.mul[x, reps]]
    labels = [prod.labels[x] for x in reps]
    return _from_table(mul, labels, spec)


def _parse_int(tok: str) -> int:
    if "^" in tok:
        b, e = tok.split("^", 1)
        return int(b) ** int(e)
    return int(tok)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(math.isqrt(n)) + 1))


def _prime_power(n: int) -> Optional[tuple[int, int]]:
    for p in range(2, n + 1):
        if _is_prime(p) and n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (p, k) if n == 1 else None
    return None


def _primitive_root(q: int) -> int:
    factors = {f for f, _ in _factorize(q - 1)}
    for g in range(2, q):
        if all(pow(g, (q - 1) // f, q) != 1 for f in factors):
            return g
    raise GroupSpecError(f"no primitive root mod {q}")


def _factorize(n: int) -> list[tuple[int, int]]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _split_args(body: str) -> list[str]:
    args, depth, cur = [], 0, []
    for ch in body:
        if ch == "," and depth == 0:
            args.append("".join(cur))
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    args.append("".join(cur))
    return args


def build_group(spec: str) -> Group:
    """Construct a catalog group from its recipe string."""
    s = spec.strip().replace(" ", "")
    if not s:
        raise GroupSpecError("empty group spec")
    if s in ("A4", "A5", "S4"):
        return _perm_group(4 if s != "A5" else 5, even_only=s.startswith("A"), spec=s)
    if "(" in s:
        head, rest = s.split("(", 1)
        if not rest.endswith(")"):
            raise GroupSpecError(f"unbalanced parentheses in {spec!r}")
        args = _split_args(rest[:-1])
        if head == "direct" and len(args) == 2:
            return _direct(build_group(args[0]), build_group(args[1]), spec=s)
        if head == "semidirect" and len(args) == 3:
            return _semidirect(build_group(args[0]), build_group(args[1]), _parse_int(args[2]), spec=s)
        if head == "centralprod" and len(args) == 3:
            amalgam = args[2].split(":")
            if len(amalgam) != 2:
                raise GroupSpecError("centralprod amalgam must name two element indices i:j")
            return _centralprod(build_group(args[0]), build_group(args[1]), int(amalgam[0]), int(amalgam[1]), spec=s)
        raise GroupSpecError(f"unrecognized combinator in {spec!r}")
    parts = s.split(":")
    head = parts[0]
    if head == "cyclic" and len(parts) == 2:
        n = _parse_int(parts[1])
        if n < 1:
            raise GroupSpecError("cyclic order must be positive")
        return _cyclic(n, s)
    if head == "dihedral" and len(parts) == 2:
        order = _parse_int(parts[1])
        if order < 2 or order % 2:
            raise GroupSpecError("dihedral spec names the group order 2n")
        return _dihedral_family(order, "dihedral", s)
    if head == "quaternion" and len(parts) == 2:
        order = _parse_int(parts[1])
        pk = _prime_power(order)
        if not pk or pk[0] != 2 or pk[1] < 3:
            raise GroupSpecError("quaternion order must be 2^k with k >= 3")
        return _dihedral_family(order, "quaternion", s)
    if head == "semidihedral" and len(parts) == 2:
        order = _parse_int(parts[1])
        pk = _prime_power(order)
        if not pk or pk[0] != 2 or pk[1] < 4:
            raise GroupSpecError("semidihedral order must be 2^k with k >= 4")
        return _dihedral_family(order, "semidihedral", s)
    if head == "modular" and len(parts) == 2:
        order = _parse_int(parts[1])
        pk = _prime_power(order)
        if not pk or pk[1] < 3:
            raise GroupSpecError("modular order must be p^k with k >= 3")
        return _modular(pk[0], pk[1], s)
    if head == "elemabelian" and len(parts) == 2:
        order = _parse_int(parts[1])
        pk = _prime_power(order)
        if not pk:
            raise GroupSpecError("elemabelian order must be a prime power")
        return _elemabelian(pk[0], pk[1], s)
    if head == "extraspecial" and len(parts) == 3:
        order = _parse_int(parts[1])
        sign = parts[2]
        pk = _prime_power(order)
        if not pk or pk[1] != 3 or sign not in ("+", "-"):
            raise GroupSpecError("extraspecial spec must be extraspecial:p^3:+ or :-")
        p = pk[0]
        if p == 2:
            return _dihedral_family(8, "dihedral" if sign == "+" else "quaternion", s)
        if sign == "+":
            return _heisenberg(p, s)
        g = _modular(p, 3, s)
        return g
    if head == "frobenius" and len(parts) == 3:
        return _frobenius(_parse_int(parts[1]), _parse_int(parts[2]), s)
    raise GroupSpecError(f"unrecognized group spec {spec!r}")


# ---------------------------------------------------------------------------
# structure operations
# ---------------------------------------------------------------------------


def _closure(mul: np.ndarray, seed: set[int]) -> set[int]:
    members = set(seed) | {0}
    frontier = list(members)
    while frontier:
        x = frontier.pop()
        for y in list(members):
            for z in (int(mul[x, y]), int(mul[y, x])):
                if z not in members:
                    members.add(z)
                    frontier.append(z)
    return members


def generated_subgroup(G: Group, xs: Sequence[int]) -> Subgroup:
    """Smallest subgroup containing the given elements."""
    return Subgroup(tuple(sorted(_closure(G.mul, set(xs)))), G)


def conjugacy_classes(G: Group) -> list[tuple[int, ...]]:
    """Conjugacy classes as sorted tuples; the class of the identity first.

    Classes are ordered by (size, smallest member).
    """
    seen = np.zeros(G.n, dtype=bool)
    classes = []
    for x in range(G.n):
        if seen[x]:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in range(G.n):
                z = G.conjugate(y, g)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        for y in orbit:
            seen[y] = True
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: (len(c), c[0]))
    return classes


def class_of(G: Group, h: int, H: Subgroup) -> tuple[int, ...]:
    """Conjugacy class of h taken inside the subgroup H."""
    if h not in H:
        raise ValueError(f"element {h} does not lie in the subgroup")
    orbit = {h}
    stack = [h]
    while stack:
        y = stack.pop()
        for g in H.elements:
            z = G.conjugate(y, g)
            if z not in orbit:
                orbit.add(z)
                stack.append(z)
    return tuple(sorted(orbit))


def is_normal(G: Group, H: Subgroup) -> bool:
    members = H._member_set
    return all(G.conjugate(x, g) in members for x in H.elements for g in range(G.n))


def make_section(G: Group, U: Subgroup, L: Subgroup) -> Section:
    """Build the section U/L with its canonical epimorphism.

    Requires L <= U and L normal in U.  Quotient elements are L-cosets in U,
    ordered by their smallest member (so the coset L itself comes first).
    """
    useg = U._member_set
    if not L._member_set <= useg:
        raise ValueError("L must be contained in U")
    for x in L.elements:
        for g in U.elements:
            if G.conjugate(x, g) not in L._member_set:
                raise ValueError("L is not normal in U")
    epi = -np.ones(G.n, dtype=np.int64)
    reps: list[int] = []
    lset = list(L.elements)
    for x in U.elements:
        if epi[x] >= 0:
            continue
        members = sorted(int(G.mul[x, k]) for k in lset)
        cid = len(reps)
        reps.append(members[0])
        for m in members:
            epi[m] = cid
    order = np.argsort(np.array(reps))
    rank = np.empty(len(reps), dtype=np.int64)
    rank[order] = np.arange(len(reps))
    epi = np.where(epi >= 0, rank[np.maximum(epi, 0)], -1)
    reps = [reps[i] for i in order]
    m = len(reps)
    mul = np.empty((m, m), dtype=np.int64)
    for i, x in enumerate(reps):
        mul[i] = epi[G.mul[x, reps]]
    labels = [f"[{G.labels[x]}]" for x in reps]
    quotient = _from_table(mul, labels, spec=f"quotient({G.spec} by order-{len(L)} subgroup)")
    return Section(U=U, L=L, quotient=quotient, epi=epi)


def quotient_group(G: Group, N: Subgroup) -> Section:
    """G/N for a normal subgroup N."""
    if not is_normal(G, N):
        raise ValueError("subgroup is not normal")
    whole = Subgroup(tuple(range(G.n)), G)
    return make_section(G, whole, N)


def center_elements(G: Group) -> tuple[int, ...]:
    return tuple(int(x) for x in range(G.n) if np.array_equal(G.mul[x], G.mul[:, x]))


def center(G: Group) -> Subgroup:
    return Subgroup(center_elements(G), G)


def all_subgroups(G: Group) -> list[Subgroup]:
    """Every subgroup, by closing joins of cyclic subgroups.  Capped at order 64."""
    if G.n > SUBGROUP_SEARCH_CAP:
        raise CapExceeded(f"subgroup search capped at order {SUBGROUP_SEARCH_CAP}, got {G.n}")
    cyclics = {tuple(sorted(_closure(G.mul, {x}))) for x in range(G.n)}
    subs = set(cyclics)
    frontier = set(cyclics)
    while frontier:
        fresh = set()
        for s in frontier:
            for c in cyclics:
                if set(c) <= set(s):
                    continue
                j = tuple(sorted(_closure(G.mul, set(s) | set(c))))
                if j not in subs:
                    subs.add(j)
                    fresh.add(j)
        frontier = fresh
    return [Subgroup(s, G) for s in sorted(subs, key=lambda t: (len(t), t))]


def maximal_subgroups(G: Group) -> list[Subgroup]:
    subs = [s for s in all_subgroups(G) if len(s) < G.n]
    out = []
    for s in subs:
        if not any(set(s.elements) < set(t.elements) for t in subs):
            out.append(s)
    return out


def frattini(G: Group) -> Subgroup:
    """Intersection of all maximal subgroups."""
    maxes = maximal_subgroups(G)
    if not maxes:
        return Subgroup(tuple(range(G.n)), G)
    common = set(maxes[0].elements)
    for s in maxes[1:]:
        common &= set(s.elements)
    return Subgroup(tuple(sorted(common)), G)


def normal_subgroups(G: Group) -> list[Subgroup]:
    return [s for s in all_subgroups(G) if is_normal(G, s)]


def _iso_search(G: Group, H: Group, find_all: bool) -> list[tuple[int, ...]]:
    """Isomorphisms G -> H by backtracking over generator images.

    Images of a greedy minimal generating sequence of G are restricted to
    elements of matching order in H and pruned by partial-homomorphism
    closure.
    """
    if G.n != H.n:
        return []
    gens = G.generating_sequence()
    orders_h = np.array([H.element_order(x) for x in range(H.n)])
    found: list[tuple[int, ...]] = []

    def extend(partial: np.ndarray, known: list[int], g: int, h: int) -> Optional[tuple[np.ndarray, list[int]]]:
        # grow the partial monomorphism over <known + g> mapping g -> h
        img = partial.copy()
        if img[g] >= 0:
            return (img, known) if img[g] == h else None
        img[g] = h
        domain = list(known)
        queue = [g]
        while queue:
            x = queue.pop()
            domain.append(x)
            for y in list(domain):
                for a, b in ((x, y), (y, x)):
                    z = int(G.mul[a, b])
                    w = int(H.mul[img[a], img[b]])
                    if img[z] < 0:
                        img[z] = w
                        queue.append(z)
                    elif img[z] != w:
                        return None
        used = img[img >= 0]
        if len(set(used.tolist())) != len(used):
            return None
        return img, domain

    def search(level: int, partial: np.ndarray, known: list[int]) -> bool:
        if level == len(gens):
            found.append(tuple(int(v) for v in partial))
            return not find_all
        g = gens[level]
        for h in np.nonzero(orders_h == G.element_order(g))[0]:
            res = extend(partial, known, g, int(h))
            if res is not None and search(level + 1, res[0], res[1]):
                return True
        return False

    start = -np.ones(G.n, dtype=np.int64)
    start[0] = 0
    search(0, start, [0])
    return sorted(found) if find_all else found


def automorphism_perms(G: Group) -> list[tuple[int, ...]]:
    """All automorphisms of G as permutations of element indices."""
    if G.n > AUTOMORPHISM_CAP:
        raise CapExceeded(f"automorphism search capped at order {AUTOMORPHISM_CAP}, got {G.n}")
    return _iso_search(G, G, find_all=True)


def find_isomorphism(G: Group, H: Group) -> Optional[tuple[int, ...]]:
    """One isomorphism G -> H as an index map, or None."""
    if G.n > AUTOMORPHISM_CAP:
        raise CapExceeded(f"isomorphism search capped at order {AUTOMORPHISM_CAP}, got {G.n}")
    out = _iso_search(G, H, find_all=False)
    return out[0] if out else None


def automorphism_group(G: Group):
    """Aut(G) as a permutation group on element indices."""
    from .perms import PermGroup

    return PermGroup(G.n, automorphism_perms(G))


def inner_automorphisms(G: Group):
    """Inn(G) generated by conjugation with a generating sequence of G."""
    from .perms import PermGroup

    gens = []
    for g in G.generating_sequence() or [0]:
        gens.append(tuple(G.conjugate(x, g) for x in range(G.n)))
    return PermGroup(G.n, gens)


def is_camina_pair(G: Group, H: Subgroup) -> bool:
    """True when every H-coset other than H lies inside one conjugacy class."""
    if len(H) <= 1 or len(H) >= G.n:
        raise ValueError("Camina kernel must be a proper nontrivial subgroup")
    if not is_normal(G, H):
        raise ValueError("Camina kernel must be normal")
    class_id = -np.ones(G.n, dtype=np.int64)
    for i, c in enumerate(conjugacy_classes(G)):
        for x in c:
            class_id[x] = i
    seen = np.zeros(G.n, dtype=bool)
    for x in range(G.n):
        if seen[x]:
            continue
        coset = [int(G.mul[x, k]) for k in H.elements]
        for y in coset:
            seen[y] = True
        if x in H:
            continue
        if len({int(class_id[y]) for y in coset}) != 1:
            return False
    return True


def camina_kernels(G: Group) -> list[Subgroup]:
    """All normal subgroups H with (G, H) a Camina pair."""
    out = []
    for H in normal_subgroups(G):
        if 1 < len(H) < G.n and is_camina_pair(G, H):
            out.append(H)
    return out


def has_maximal_cyclic_subgroup(G: Group) -> bool:
    """For a p-group: does some cyclic subgroup have index p?"""
    pk = _prime_power(G.n)
    if pk is None:
        raise ValueError(f"group order {G.n} is not a prime power")
    p, k = pk
    if k == 0:
        return False
    want = p ** (k - 1)
    return any(G.element_order(x) == want or G.element_order(x) == G.n for x in range(G.n))
