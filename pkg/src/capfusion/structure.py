"""Subgroup lattices and the characteristic subgroups built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .groups import (
    FiniteGroup, GroupError, Subgroup, bits, center, centralizer, derived_subgroup,
    extend, is_normal_in, is_p_group_order, join, normal_closure, normalizes, p_part,
    prime_factors,
)

DEFAULT_LATTICE_CAP = 400


class LatticeExceedsCap(GroupError):
    def __init__(self, limit: int, order: int):
        super().__init__(f"group of order {order} exceeds lattice cap {limit}")
        self.limit = limit


class SubgroupLattice:
    """Every subgroup of ``group``, in canonical order (order, then member list)."""

    def __init__(self, group: FiniteGroup, subgroups: list[Subgroup]):
        self.group = group
        self.all = sorted(subgroups, key=lambda h: h.sort_key)
        self.by_mask = {h.mask: h for h in self.all}
        self.order_index: dict[int, list[Subgroup]] = {}
        for h in self.all:
            self.order_index.setdefault(h.order, []).append(h)
        self._normal_in: dict[int, list[Subgroup]] = {}
        self._maximal: dict[int, list[Subgroup]] = {}
        # per-ambient caches filled by the chief module
        self.covers_cache: dict[int, dict] = {}
        self.factors_cache: dict[int, list] = {}
        # verdict memo for the cap module, keyed by (variant, p, subject, ambient)
        self.memo: dict[tuple, object] = {}

    def __len__(self):
        return len(self.all)

    def __iter__(self):
        return iter(self.all)

    @cached_property
    def normal(self) -> list[Subgroup]:
        return self.normal_subgroups_of(self.group.whole)

    @cached_property
    def normal_masks(self) -> frozenset[int]:
        return frozenset(h.mask for h in self.normal)

    def is_normal(self, h: Subgroup) -> bool:
        return h.mask in self.normal_masks

    def canonical(self, h: Subgroup) -> Subgroup:
        """The lattice's own object for ``h`` (carries generators)."""
        return self.by_mask[h.mask]

    def address(self, h: Subgroup) -> tuple[int, int]:
        """``(order, k)``: ``h`` is the k-th subgroup of that order (0-based)."""
        same = self.order_index[h.order]
        return h.order, next(i for i, k in enumerate(same) if k.mask == h.mask)

    def at(self, order: int, index: int) -> Subgroup:
        return self.order_index[order][index]

    def subgroups_of(self, h: Subgroup) -> list[Subgroup]:
        m = h.mask
        return [k for k in self.all if k.mask & ~m == 0]

    def normal_subgroups_of(self, h: Subgroup) -> list[Subgroup]:
        """Subgroups normal in ``h``, canonical order; cached per ``h``."""
        got = self._normal_in.get(h.mask)
        if got is None:
            g = self.group
            hg = self.canonical(h).generators
            got = [k for k in self.subgroups_of(h)
                   if all(normalizes(g, k.mask, x) for x in hg)]
            self._normal_in[h.mask] = got
        return got

    def maximal_of(self, h: Subgroup) -> list[Subgroup]:
        """Maximal subgroups of ``h``."""
        got = self._maximal.get(h.mask)
        if got is None:
            proper = [k for k in self.subgroups_of(h) if k.mask != h.mask]
            got = _maximal_elements(proper)
            self._maximal[h.mask] = got
        return got


def _maximal_elements(subs: list[Subgroup]) -> list[Subgroup]:
    """Members not strictly contained in another member (input in canonical order)."""
    kept: list[Subgroup] = []
    for h in sorted(subs, key=lambda k: -k.order):
        if not any(h.mask & ~k.mask == 0 for k in kept):
            kept.append(h)
    return sorted(kept, key=lambda k: k.sort_key)


def minimal_elements(subs: list[Subgroup]) -> list[Subgroup]:
    kept: list[Subgroup] = []
    for h in sorted(subs, key=lambda k: k.order):
        if not any(k.mask & ~h.mask == 0 for k in kept):
            kept.append(h)
    return sorted(kept, key=lambda k: k.sort_key)


def enumerate_subgroups(g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """All subgroups by cyclic extension.

    Every subgroup is generated by its elements of prime-power order, so
    repeatedly joining known subgroups with cyclic subgroups of prime-power
    order reaches all of them.
    """
    if g.order > cap:
        raise LatticeExceedsCap(cap, g.order)
    cyclic: dict[int, Subgroup] = {}
    for x in range(g.order):
        h = extend(g.trivial, x)
        if h.mask not in cyclic:
            cyclic[h.mask] = h
    # one generator per prime-power cyclic subgroup
    steps = [h.gens[0] for h in cyclic.values()
             if h.order > 1 and len(prime_factors(h.order)) == 1]
    found: dict[int, Subgroup] = {1: g.trivial}
    frontier = [g.trivial]
    while frontier:
        nxt = []
        for h in frontier:
            m = h.mask
            for x in steps:
                if (m >> x) & 1:
                    continue
                j = extend(h, x)
                if j.mask not in found:
                    found[j.mask] = j
                    nxt.append(j)
        frontier = nxt
    for mask, h in cyclic.items():
        found.setdefault(mask, h)
    return SubgroupLattice(g, list(found.values()))


def sylow_subgroup(g: FiniteGroup, p: int, lattice: SubgroupLattice | None = None) -> Subgroup:
    """A Sylow p-subgroup.

    With a lattice: the canonically least subgroup of full p-power order.
    Without: grown from the trivial group, always adjoining the least-index
    element that keeps the result a p-group normalizing the current one.
    """
    target = p_part(g.order, p)
    if lattice is not None:
        return lattice.order_index[target][0]
    h = g.trivial
    while h.order < target:
        for x in range(1, g.order):
            if x in h or not is_p_group_order(g.orders[x], p):
                continue
            if not normalizes(g, h.mask, x):
                continue
            j = extend(h, x)
            if is_p_group_order(j.order, p):
                h = j
                break
        else:  # pragma: no cover - Sylow theory guarantees progress
            raise AssertionError("no p-element normalizing a non-Sylow p-subgroup")
    return h


def overgroups(lattice: SubgroupLattice, a: Subgroup) -> list[Subgroup]:
    m = a.mask
    return [h for h in lattice.all if m & ~h.mask == 0]


def exponent_at_most(s: Subgroup, k: int) -> bool:
    orders = s.group.orders
    return all(orders[x] <= k for x in s.members)


def is_nilpotent_subgroup(h: Subgroup, lattice: SubgroupLattice) -> bool:
    """Finite nilpotent iff every Sylow subgroup is normal, i.e. unique."""
    for p in prime_factors(h.order):
        q = p_part(h.order, p)
        count = sum(1 for k in lattice.order_index.get(q, ()) if k <= h)
        if count != 1:
            return False
    return True


def is_subnormal(h: Subgroup) -> bool:
    """Descend through iterated normal closures; ``h`` is subnormal iff this reaches ``h``."""
    cur = h.group.whole
    while True:
        nxt = normal_closure(h, within=cur)
        if nxt.mask == cur.mask:
            return nxt.mask == h.mask
        cur = nxt


def is_perfect(h: Subgroup) -> bool:
    return derived_subgroup(h).mask == h.mask


def is_quasisimple(h: Subgroup, lattice: SubgroupLattice) -> bool:
    """Perfect, with ``h/Z(h)`` simple and nontrivial."""
    if h.is_trivial() or not is_perfect(h):
        return False
    z = center(h)
    if z.mask == h.mask:
        return False
    for k in lattice.normal_subgroups_of(h):
        if z.mask & ~k.mask == 0 and k.mask not in (z.mask, h.mask):
            return False
    return True


def upper_central_series(g: FiniteGroup) -> list[Subgroup]:
    """``Z_0 = 1 < Z_1 < ...`` until it stabilizes (last term repeated once removed)."""
    mul, inv = g.mul, g.inv
    series = [g.trivial]
    while True:
        zm = series[-1].mask
        # xZ is central in G/Z iff [x, s] lies in Z for every generator s
        nxt = 0
        for x in range(g.order):
            ok = True
            for s in g.gens:
                c = mul[mul[mul[inv[x]][inv[s]]][x]][s]
                if not (zm >> c) & 1:
                    ok = False
                    break
            if ok:
                nxt |= 1 << x
        if nxt == zm:
            return series
        series.append(Subgroup(g, nxt))


@dataclass
class CharacteristicSubgroups:
    o_p: dict[int, Subgroup]
    o_p_prime: dict[int, Subgroup]
    frattini: Subgroup
    fitting: Subgroup
    gen_fitting: Subgroup
    upper_central: list[Subgroup]
    hypercentre_nilpotent: Subgroup
    components: list[Subgroup] = field(default_factory=list)


def largest_normal(lattice: SubgroupLattice, keep) -> Subgroup:
    """Largest normal subgroup whose order satisfies ``keep``; it is unique for these classes."""
    cands = [n for n in lattice.normal if keep(n.order)]
    best = max(cands, key=lambda n: n.order)
    return best


def o_p(lattice: SubgroupLattice, p: int) -> Subgroup:
    return largest_normal(lattice, lambda n: is_p_group_order(n, p))


def o_p_prime(lattice: SubgroupLattice, p: int) -> Subgroup:
    return largest_normal(lattice, lambda n: n % p != 0)


def frattini(lattice: SubgroupLattice) -> Subgroup:
    g = lattice.group
    m = g.whole.mask
    for h in lattice.maximal_of(g.whole):
        m &= h.mask
    return lattice.by_mask[m]


def fitting(lattice: SubgroupLattice) -> Subgroup:
    g = lattice.group
    parts = [o_p(lattice, p) for p in prime_factors(g.order)]
    return lattice.canonical(join(g.trivial, *parts))


def components(lattice: SubgroupLattice) -> list[Subgroup]:
    """Subnormal quasisimple subgroups."""
    return [h for h in lattice.all if is_quasisimple(h, lattice) and is_subnormal(h)]


def generalized_fitting(lattice: SubgroupLattice) -> Subgroup:
    g = lattice.group
    return lattice.canonical(join(fitting(lattice), *components(lattice), g.trivial))


def core_subgroups(g: FiniteGroup, lattice: SubgroupLattice) -> CharacteristicSubgroups:
    primes = prime_factors(g.order)
    ucs = upper_central_series(g)
    comps = components(lattice)
    fit = fitting(lattice)
    return CharacteristicSubgroups(
        o_p={p: o_p(lattice, p) for p in primes},
        o_p_prime={p: o_p_prime(lattice, p) for p in primes},
        frattini=frattini(lattice),
        fitting=fit,
        gen_fitting=lattice.canonical(join(fit, *comps, g.trivial)),
        upper_central=ucs,
        hypercentre_nilpotent=ucs[-1],
        components=comps,
    )


def pi(g: FiniteGroup) -> list[int]:
    """Prime divisors of ``|G|``."""
    return prime_factors(g.order)


__all__ = [
    "SubgroupLattice", "LatticeExceedsCap", "enumerate_subgroups", "sylow_subgroup",
    "overgroups", "exponent_at_most", "core_subgroups", "CharacteristicSubgroups",
    "upper_central_series", "is_subnormal", "is_perfect", "is_quasisimple", "pi",
    "o_p", "o_p_prime", "frattini", "fitting", "generalized_fitting", "components",
    "minimal_elements", "is_nilpotent_subgroup", "centralizer", "is_normal_in",
]
