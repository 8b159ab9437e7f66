"""Concrete finite groups stored as full multiplication tables.

Elements are addressed by integer index everywhere; index 0 is the identity.
Subgroups are bitmasks over those indices (bit ``i`` set means element ``i``
is a member), which keeps containment, intersection and hashing cheap.

Products read left to right: ``mul[x][y]`` is "x then y", and conjugation is
``x^g = g^-1 x g``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GroupError(Exception):
    """Base class for construction and argument errors."""


class ClosureExceedsCap(GroupError):
    def __init__(self, limit: int):
        super().__init__(f"closure exceeds order cap {limit}")
        self.limit = limit


class InvalidGenerator(GroupError):
    pass


class NotNormal(GroupError):
    pass


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class FiniteGroup:
    """A group given by its element list and Cayley table.

    ``elements`` holds the concrete representatives (permutation tuples,
    2x2 matrices, coset labels, ...); they are only used for display and
    parsing. All algebra runs on the integer tables.
    """

    def __init__(self, elements: Sequence, mul_table, name: str = "G",
                 gens: Sequence[int] | None = None):
        table = np.asarray(mul_table, dtype=np.int32)
        n = len(elements)
        if table.shape != (n, n):
            raise ValueError("multiplication table shape does not match element count")
        self.elements = list(elements)
        self.table = table
        self.mul = table.tolist()
        self.name = name
        self.order = n
        ident = self.mul[0]
        if ident != list(range(n)) or [row[0] for row in self.mul] != list(range(n)):
            raise ValueError("index 0 is not the identity")
        inv = [0] * n
        for x in range(n):
            row = self.mul[x]
            inv[x] = row.index(0)
        self.inv = inv
        self.gens = tuple(gens) if gens is not None else tuple(_greedy_generators(self))

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    @cached_property
    def conj(self) -> list[list[int]]:
        """``conj[g][x] = g^-1 x g``."""
        t = self.table
        inv = np.asarray(self.inv)
        # conj[g, x] = t[t[inv[g], x], g]
        left = t[inv]  # left[g, x] = inv(g) * x
        out = np.empty_like(t)
        for g in range(self.order):
            out[g] = t[left[g], g]
        return out.tolist()

    @cached_property
    def orders(self) -> list[int]:
        return [self._order_of(x) for x in range(self.order)]

    def _order_of(self, x: int) -> int:
        k, y = 1, x
        row = self.mul
        while y != 0:
            y = row[y][x]
            k += 1
        return k

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, (1 << self.order) - 1, self.gens)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1, ())

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def power(self, x: int, k: int) -> int:
        k %= self.orders[x]
        y = 0
        for _ in range(k):
            y = self.mul[y][x]
        return y

    def commutator(self, x: int, y: int) -> int:
        """``[x, y] = x^-1 y^-1 x y``."""
        m, inv = self.mul, self.inv
        return m[m[m[inv[x]][inv[y]]][x]][y]

    @cached_property
    def classes(self) -> list[int]:
        """Conjugacy class of each element, as a mask."""
        out = [0] * self.order
        conj = self.conj
        for x in range(self.order):
            if out[x]:
                continue
            m = mask_of({conj[g][x] for g in self.gens} | {x})
            # close under the generators
            frontier = bits(m)
            while frontier:
                nxt = []
                for y in frontier:
                    for g in self.gens:
                        z = conj[g][y]
                        if not (m >> z) & 1:
                            m |= 1 << z
                            nxt.append(z)
                frontier = nxt
            for y in bits(m):
                out[y] = m
        return out

    def check_axioms(self, sample: int | None = None, seed: int = 0) -> bool:
        """Associativity (exhaustive up to 200 elements, sampled above), identity, inverses."""
        t = self.table
        n = self.order
        if sample is None and n <= 200:
            lhs = t[t, :]  # lhs[x, y, z] = (x*y)*z
            rhs = t[:, t]  # rhs[x, y, z] = x*(y*z)
            assoc = bool((lhs == rhs).all())
        else:
            rng = np.random.default_rng(seed)
            k = sample or 20000
            x, y, z = rng.integers(0, n, size=(3, k))
            assoc = bool((t[t[x, y], z] == t[x, t[y, z]]).all())
        inv = np.asarray(self.inv)
        ident = bool((t[0] == np.arange(n)).all() and (t[:, 0] == np.arange(n)).all())
        inverses = bool((t[np.arange(n), inv] == 0).all() and (t[inv, np.arange(n)] == 0).all())
        return assoc and ident and inverses


def _greedy_generators(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    m = 1
    full = (1 << g.order) - 1
    # prefer high-order elements so few generators are needed
    for x in sorted(range(1, g.order), key=lambda i: (-g.orders[i], i)):
        if m == full:
            break
        if (m >> x) & 1:
            continue
        gens.append(x)
        m = _closure(g, m, gens)
    return gens


def _closure(g: FiniteGroup, start_mask: int, gens: Sequence[int]) -> int:
    """Subgroup generated by ``gens``, seeded with the known members ``start_mask``.

    ``start_mask`` must lie inside ``<gens>``; it only saves work.
    """
    mul = g.mul
    m = start_mask | 1
    frontier = bits(m)
    gens = [x for x in gens if x]
    if not gens:
        return m
    while frontier:
        nxt = []
        for y in frontier:
            row = mul[y]
            for s in gens:
                z = row[s]
                if not (m >> z) & 1:
                    m |= 1 << z
                    nxt.append(z)
        frontier = nxt
    return m


class Subgroup:
    """A subgroup of ``group`` held as a bitmask of element indices."""

    __slots__ = ("group", "mask", "gens", "__dict__")

    def __init__(self, group: FiniteGroup, mask: int, gens: Sequence[int] | None = None):
        self.group = group
        self.mask = mask
        self.gens = tuple(gens) if gens is not None else None

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    @cached_property
    def order(self) -> int:
        return self.mask.bit_count()

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.group is self.group and other.mask == self.mask

    def __hash__(self):
        return hash((id(self.group), self.mask))

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self.mask != other.mask and self <= other

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, self.mask & other.mask)

    def __repr__(self):
        return f"Subgroup(order={self.order}, of={self.group.name!r})"

    @property
    def sort_key(self) -> tuple:
        return (self.order, self.members)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        if self.gens is not None:
            return self.gens
        gens: list[int] = []
        m = 1
        g = self.group
        for x in sorted(self.members, key=lambda i: (-g.orders[i], i)):
            if m == self.mask:
                break
            if not (m >> x) & 1:
                gens.append(x)
                m = _closure(g, m, gens)
        return tuple(gens)

    def is_trivial(self) -> bool:
        return self.mask == 1

    def is_whole(self) -> bool:
        return self.mask == (1 << self.group.order) - 1

    def as_group(self, name: str | None = None) -> tuple[FiniteGroup, list[int]]:
        """Re-index this subgroup as a standalone group.

        Returns the new group and the embedding (new index -> parent index).
        """
        emb = list(self.members)
        pos = {x: i for i, x in enumerate(emb)}
        mul = self.group.mul
        table = [[pos[mul[a][b]] for b in emb] for a in emb]
        elems = [self.group.elements[x] for x in emb]
        gens = [pos[x] for x in self.generators]
        return FiniteGroup(elems, table, name or f"{self.group.name}[{self.order}]", gens), emb


def element_order(g: FiniteGroup, x: int) -> int:
    return g.orders[x]


def subgroup_generated(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = sorted(set(gens))
    return Subgroup(g, _closure(g, 1, gens), tuple(x for x in gens if x))


def join(*subs: Subgroup) -> Subgroup:
    g = subs[0].group
    gens = [x for h in subs for x in h.generators]
    return Subgroup(g, _closure(g, subs[0].mask, gens))


def extend(h: Subgroup, x: int) -> Subgroup:
    """``<h, x>``."""
    if x in h:
        return h
    g = h.group
    base = h.generators
    return Subgroup(g, _closure(g, h.mask, list(base) + [x]), base + (x,))


def conjugate_mask(g: FiniteGroup, mask: int, x: int) -> int:
    row = g.conj[x]
    m = 0
    for a in bits(mask):
        m |= 1 << row[a]
    return m


def conjugate_subgroup(h: Subgroup, x: int) -> Subgroup:
    """``h^x = {x^-1 a x : a in h}``."""
    g = h.group
    gens = tuple(g.conj[x][a] for a in h.gens) if h.gens is not None else None
    return Subgroup(g, conjugate_mask(g, h.mask, x), gens)


def normalizes(g: FiniteGroup, mask: int, x: int) -> bool:
    row = g.conj[x]
    for a in bits(mask):
        if not (mask >> row[a]) & 1:
            return False
    return True


def is_normal_in(h: Subgroup, k: Subgroup) -> bool:
    """Whether ``h`` is normal in ``k`` (``h <= k`` assumed)."""
    g = h.group
    return all(normalizes(g, h.mask, x) for x in k.generators)


def is_normal(h: Subgroup) -> bool:
    return is_normal_in(h, h.group.whole)


def normalizer(h: Subgroup, within: Subgroup | None = None) -> Subgroup:
    g = h.group
    scope = within.members if within is not None else range(g.order)
    return Subgroup(g, mask_of(x for x in scope if normalizes(g, h.mask, x)))


def centralizer(h: Subgroup, within: Subgroup | None = None) -> Subgroup:
    g = h.group
    scope = within.members if within is not None else range(g.order)
    gens = h.generators
    mul = g.mul
    return Subgroup(g, mask_of(x for x in scope if all(mul[x][a] == mul[a][x] for a in gens)))


def center(g: FiniteGroup | Subgroup) -> Subgroup:
    if isinstance(g, Subgroup):
        return centralizer(g, within=g)
    return centralizer(g.whole)


def normal_closure(h: Subgroup, within: Subgroup | None = None) -> Subgroup:
    """Smallest normal subgroup of ``within`` (default: the whole group) containing ``h``."""
    g = h.group
    within = within if within is not None else g.whole
    m = h.mask
    gens = list(h.generators)
    while True:
        extra = 0
        for x in within.generators:
            extra |= conjugate_mask(g, m, x)
        extra &= ~m
        if not extra:
            return Subgroup(g, m)
        gens += bits(extra)
        m = _closure(g, m, gens)


def derived_subgroup(h: Subgroup) -> Subgroup:
    g = h.group
    gens = h.generators
    comms = {g.commutator(a, b) for a in gens for b in gens}
    return normal_closure(subgroup_generated(g, comms), within=h)


def product_set(a: Subgroup, b: Subgroup) -> int:
    """The set ``A*B`` as a mask; not necessarily a subgroup."""
    t = a.group.table
    ai = np.fromiter(a.members, dtype=np.intp)
    bi = np.fromiter(b.members, dtype=np.intp)
    hit = np.zeros(a.group.order, dtype=bool)
    hit[t[np.ix_(ai, bi)].ravel()] = True
    return mask_of(np.flatnonzero(hit).tolist())


def is_p_group_order(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n > 1 and prime_factors(n) == [n]


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


class QuotientGroup:
    """``base / kernel`` with its projection and lift maps.

    Cosets are ordered by their least element index, so the kernel itself is
    coset 0 and becomes the identity of ``as_group``.
    """

    def __init__(self, base: FiniteGroup, kernel: Subgroup):
        if not is_normal(kernel):
            raise NotNormal(f"subgroup of order {kernel.order} is not normal in {base.name}")
        self.base = base
        self.kernel = kernel
        proj = [-1] * base.order
        reps: list[int] = []
        cosets: list[int] = []
        mul = base.mul
        kmem = kernel.members
        for x in range(base.order):
            if proj[x] >= 0:
                continue
            c = len(reps)
            reps.append(x)
            m = 0
            for k in kmem:
                y = mul[k][x]
                proj[y] = c
                m |= 1 << y
            cosets.append(m)
        self.projection = proj
        self.reps = reps
        self.cosets = cosets
        table = [[proj[mul[a][b]] for b in reps] for a in reps]
        labels = [base.elements[r] for r in reps]
        gens = sorted({proj[x] for x in base.gens} - {0})
        self.as_group = FiniteGroup(labels, table, f"{base.name}/{kernel.order}", gens)

    def lift(self, coset: int) -> int:
        return self.cosets[coset]

    def project(self, h: Subgroup) -> Subgroup:
        """Image ``hN/N`` as a subgroup of ``as_group``."""
        proj = self.projection
        return Subgroup(self.as_group, mask_of(proj[x] for x in h.members))

    def preimage(self, h: Subgroup) -> Subgroup:
        m = 0
        for c in h.members:
            m |= self.cosets[c]
        return Subgroup(self.base, m)

    def is_homomorphism(self) -> bool:
        proj = self.projection
        qm = self.as_group.mul
        bm = self.base.mul
        n = self.base.order
        return all(proj[bm[x][y]] == qm[proj[x]][proj[y]] for x in range(n) for y in range(n))


def quotient(g: FiniteGroup, n: Subgroup) -> QuotientGroup:
    return QuotientGroup(g, n)
