"""Chief factors, chief series, the supersolvable hypercentre and class flags.

A chief factor of a group ``X`` is a pair ``(K, H)`` of normal subgroups of
``X`` with nothing normal strictly between them. Those pairs are exactly the
covering edges of the poset of normal subgroups, and every edge lies on some
chief series, so the edge set is the set of all chief factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import FiniteGroup, GroupError, Subgroup, is_p_group_order, is_prime, join, p_part, prime_factors
from .structure import SubgroupLattice, minimal_elements, o_p_prime, upper_central_series

DEFAULT_SERIES_CAP = 100_000


class SeriesExplosion(GroupError):
    def __init__(self, limit: int):
        super().__init__(f"more than {limit} chief series")
        self.limit = limit


@dataclass(frozen=True)
class ChiefFactor:
    lower: Subgroup
    upper: Subgroup

    @property
    def order(self) -> int:
        return self.upper.order // self.lower.order

    def __repr__(self):
        return f"ChiefFactor({self.lower.order} < {self.upper.order})"


@dataclass
class ChiefSeries:
    chain: list[Subgroup]

    @property
    def factors(self) -> list[ChiefFactor]:
        return [ChiefFactor(k, h) for k, h in zip(self.chain, self.chain[1:])]

    @property
    def factor_orders(self) -> list[int]:
        return [f.order for f in self.factors]


@dataclass
class GroupClassFlags:
    p_solvable: dict[int, bool]
    p_supersolvable: dict[int, bool]
    p_nilpotent: dict[int, bool]
    solvable: bool
    supersolvable: bool
    nilpotent: bool
    u_hypercentre: Subgroup
    chief_orders: list[int] = field(default_factory=list)


def normal_covers(lattice: SubgroupLattice, ambient: Subgroup) -> dict[int, list[Subgroup]]:
    """For each normal subgroup K of ``ambient``, the normal subgroups directly above it."""
    cache = lattice.covers_cache
    got = cache.get(ambient.mask)
    if got is None:
        normals = lattice.normal_subgroups_of(ambient)
        got = {}
        for k in normals:
            above = [h for h in normals if h.mask != k.mask and k.mask & ~h.mask == 0]
            got[k.mask] = minimal_elements(above)
        cache[ambient.mask] = got
    return got


def chief_factors_of(lattice: SubgroupLattice, ambient: Subgroup) -> list[ChiefFactor]:
    """All chief factors of the subgroup ``ambient``, cached per ambient."""
    cache = lattice.factors_cache
    got = cache.get(ambient.mask)
    if got is None:
        covers = normal_covers(lattice, ambient)
        got = [ChiefFactor(lattice.by_mask[k], h)
               for k in sorted(covers, key=lambda m: lattice.by_mask[m].sort_key)
               for h in covers[k]]
        cache[ambient.mask] = got
    return got


def all_chief_factors(g: FiniteGroup, lattice: SubgroupLattice) -> list[ChiefFactor]:
    return chief_factors_of(lattice, g.whole)


def all_chief_series(g: FiniteGroup, lattice: SubgroupLattice, cap: int = DEFAULT_SERIES_CAP,
                     ambient: Subgroup | None = None) -> list[ChiefSeries]:
    """Every maximal chain of normal subgroups from 1 to the ambient group."""
    ambient = ambient if ambient is not None else g.whole
    covers = normal_covers(lattice, ambient)
    out: list[ChiefSeries] = []
    top = ambient.mask

    def walk(chain):
        last = chain[-1]
        if last.mask == top:
            if len(out) >= cap:
                raise SeriesExplosion(cap)
            out.append(ChiefSeries(list(chain)))
            return
        for h in covers[last.mask]:
            chain.append(h)
            walk(chain)
            chain.pop()

    walk([g.trivial])
    return out


def one_chief_series(g: FiniteGroup, lattice: SubgroupLattice, ambient: Subgroup | None = None) -> ChiefSeries:
    """The canonically first chief series (always step to the least cover)."""
    ambient = ambient if ambient is not None else g.whole
    covers = normal_covers(lattice, ambient)
    chain = [g.trivial]
    while chain[-1].mask != ambient.mask:
        chain.append(covers[chain[-1].mask][0])
    return ChiefSeries(chain)


def is_pd_factor(f: ChiefFactor, p: int) -> bool:
    return f.order % p == 0


def is_u_central(f: ChiefFactor) -> bool:
    """Supersolvably central iff the factor has prime order."""
    return is_prime(f.order)


def u_hypercentre(g: FiniteGroup, lattice: SubgroupLattice, floor: Subgroup | None = None) -> Subgroup:
    """Largest normal subgroup all of whose chief factors below it have prime order.

    Iterated absorption: add every normal subgroup sitting over the current
    term with prime index, until nothing changes.
    """
    z = floor if floor is not None else g.trivial
    while True:
        new = [n for n in lattice.normal
               if z.mask & ~n.mask == 0 and is_prime(n.order // z.order)]
        nxt = lattice.canonical(join(z, *new)) if new else z
        if nxt.mask == z.mask:
            return lattice.canonical(z)
        z = nxt


def is_p_solvable_orders(orders, p):
    return all(is_p_group_order(n, p) or n % p for n in orders)


def classify(g: FiniteGroup, lattice: SubgroupLattice) -> GroupClassFlags:
    orders = one_chief_series(g, lattice).factor_orders
    primes = prime_factors(g.order)
    p_solv = {p: is_p_solvable_orders(orders, p) for p in primes}
    p_super = {p: p_solv[p] and all(n == p for n in orders if n % p == 0) for p in primes}
    p_nil = {p: g.order // o_p_prime(lattice, p).order == p_part(g.order, p) for p in primes}
    ucs = upper_central_series(g)
    return GroupClassFlags(
        p_solvable=p_solv,
        p_supersolvable=p_super,
        p_nilpotent=p_nil,
        solvable=all(is_prime(n) or len(prime_factors(n)) == 1 for n in orders),
        supersolvable=all(is_prime(n) for n in orders),
        nilpotent=ucs[-1].is_whole(),
        u_hypercentre=u_hypercentre(g, lattice),
        chief_orders=orders,
    )


def is_p_supersolvable(g: FiniteGroup, lattice: SubgroupLattice, p: int) -> bool:
    if g.order % p:
        return True
    orders = one_chief_series(g, lattice).factor_orders
    return is_p_solvable_orders(orders, p) and all(n == p for n in orders if n % p == 0)


def is_supersolvable(g: FiniteGroup, lattice: SubgroupLattice, ambient: Subgroup | None = None) -> bool:
    return all(is_prime(n) for n in one_chief_series(g, lattice, ambient).factor_orders)


def is_p_nilpotent(g: FiniteGroup, lattice: SubgroupLattice, p: int) -> bool:
    if g.order % p:
        return True
    return g.order // o_p_prime(lattice, p).order == p_part(g.order, p)
