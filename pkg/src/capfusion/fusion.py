"""Group-realized fusion systems ``F_S(G)``.

A fusion system is never materialized as a morphism category. Every query
reduces to conjugation inside ``G``: a morphism ``P -> S`` of ``F_S(G)`` is
``c_g`` restricted to ``P`` for some ``g`` with ``P^g <= S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .builders import GroupSpec, build_group
from .groups import (
    FiniteGroup, GroupError, Subgroup, bits, centralizer, conjugate_mask,
    mask_of, normalizer, quotient,
)
from .structure import SubgroupLattice, _maximal_elements, enumerate_subgroups, sylow_subgroup


class NotFullyNormalized(GroupError):
    pass


class FusionSystem:
    """``F_S(G)`` for a Sylow p-subgroup ``S`` of ``G``."""

    def __init__(self, group: FiniteGroup, sylow: Subgroup, prime: int,
                 lattice: SubgroupLattice | None = None):
        self.group = group
        self.sylow = sylow
        self.prime = prime
        self._lattice = lattice

    def __repr__(self):
        return f"FusionSystem({self.group.name!r}, |S|={self.sylow.order}, p={self.prime})"

    @property
    def lattice(self) -> SubgroupLattice:
        if self._lattice is None:
            self._lattice = enumerate_subgroups(self.group, cap=max(self.group.order, 1))
        return self._lattice

    @cached_property
    def subgroups_of_s(self) -> list[Subgroup]:
        return self.lattice.subgroups_of(self.sylow)

    def conjugates_in_s(self, q: Subgroup) -> list[int]:
        """Distinct masks ``q^g`` (g in G) that lie inside S."""
        g = self.group
        s = self.sylow.mask
        seen = {}
        for x in range(g.order):
            m = conjugate_mask(g, q.mask, x)
            if m & ~s == 0:
                seen.setdefault(m, x)
        return sorted(seen, key=lambda m: bits(m))

    @cached_property
    def strongly_closed(self) -> list[Subgroup]:
        return [q for q in self.subgroups_of_s if is_strongly_closed(self, q)]


def fusion_system(g: FiniteGroup, p: int, lattice: SubgroupLattice | None = None) -> FusionSystem:
    s = sylow_subgroup(g, p, lattice)
    return FusionSystem(g, s, p, lattice)


def is_strongly_closed(fs: FusionSystem, q: Subgroup) -> bool:
    """Every G-conjugate of an element of Q that lands in S lies in Q."""
    classes = fs.group.classes
    s, qm = fs.sylow.mask, q.mask
    return all(classes[x] & s & ~qm == 0 for x in q.members)


def is_strongly_closed_by_morphisms(fs: FusionSystem, q: Subgroup) -> bool:
    """Definition-level check: each ``P <= Q`` and each ``g`` with ``P^g <= S`` has ``P^g <= Q``."""
    g = fs.group
    s, qm = fs.sylow.mask, q.mask
    for p_sub in fs.lattice.subgroups_of(q):
        for x in range(g.order):
            m = conjugate_mask(g, p_sub.mask, x)
            if m & ~s == 0 and m & ~qm:
                return False
    return True


def strongly_closed_subgroups(fs: FusionSystem) -> list[Subgroup]:
    return list(fs.strongly_closed)


def quotient_is_cyclic(k: Subgroup, h: Subgroup) -> bool:
    """For ``K`` normal in ``H``: whether ``H/K`` is cyclic."""
    index = h.order // k.order
    if index == 1:
        return True
    mul = h.group.mul
    km = k.mask
    for x in h.members:
        y, n = x, 1
        while not (km >> y) & 1:
            y = mul[y][x]
            n += 1
        if n == index:
            return True
    return False


def _normal_in(k: Subgroup, h: Subgroup) -> bool:
    g = k.group
    return all(conjugate_mask(g, k.mask, x) == k.mask for x in h.generators)


@dataclass
class StronglyClosedChain:
    chain: list[Subgroup]

    @property
    def quotient_orders(self) -> list[int]:
        return [b.order // a.order for a, b in zip(self.chain, self.chain[1:])]

    @property
    def orders(self) -> list[int]:
        return [q.order for q in self.chain]


@dataclass
class SupersolvabilityResult:
    holds: bool
    chain: StronglyClosedChain | None = None
    # on failure: the maximal strongly closed subgroups reachable from 1 by cyclic steps
    frontier: list[Subgroup] = field(default_factory=list)

    def __bool__(self):
        return self.holds


def is_supersolvable_fusion(fs: FusionSystem) -> SupersolvabilityResult:
    """Search for ``1 = Q_0 < ... < Q_n = S``, all strongly closed, cyclic steps."""
    closed = sorted(fs.strongly_closed, key=lambda q: q.sort_key)
    top = fs.sylow.mask
    triv = fs.group.trivial
    succ: dict[int, list[Subgroup]] = {}
    for k in closed:
        succ[k.mask] = [h for h in closed
                        if h.order > k.order and k.mask & ~h.mask == 0
                        and _normal_in(k, h) and quotient_is_cyclic(k, h)]
    dead: set[int] = set()
    reached: dict[int, Subgroup] = {1: triv}
    chain = [triv]

    def walk() -> bool:
        k = chain[-1]
        if k.mask == top:
            return True
        for h in succ.get(k.mask, []):
            reached.setdefault(h.mask, h)
            if h.mask in dead:
                continue
            chain.append(h)
            if walk():
                return True
            chain.pop()
            dead.add(h.mask)
        return False

    if walk():
        return SupersolvabilityResult(True, StronglyClosedChain(list(chain)))
    return SupersolvabilityResult(False, frontier=_maximal_elements(list(reached.values())))


def is_centric(fs: FusionSystem, q: Subgroup) -> bool:
    g = fs.group
    for m in fs.conjugates_in_s(q):
        qq = Subgroup(g, m)
        if centralizer(qq, within=fs.sylow).mask & ~m:
            return False
    return True


def is_fully_normalized(fs: FusionSystem, q: Subgroup) -> bool:
    g = fs.group
    own = normalizer(q, within=fs.sylow).order
    return all(normalizer(Subgroup(g, m), within=fs.sylow).order <= own
               for m in fs.conjugates_in_s(q))


@dataclass
class AutomizerData:
    aut: FiniteGroup
    inner: Subgroup  # image of Q's own conjugation action inside aut
    out: FiniteGroup


def automizer(fs: FusionSystem, q: Subgroup) -> AutomizerData:
    """``Aut_F(Q) = N_G(Q)/C_G(Q)`` as permutations of Q's elements, and ``Out_F(Q)``."""
    g = fs.group
    members = q.members
    pos = {x: i for i, x in enumerate(members)}
    n_g = normalizer(q)
    conj = g.conj

    def act(x):
        row = conj[x]
        return tuple(pos[row[a]] for a in members)

    gens = sorted({act(x) for x in n_g.generators})
    aut = build_group(GroupSpec(f"Aut_F({q.order})", "perm", len(members), gens),
                      order_cap=max(g.order, 1))
    index = {e: i for i, e in enumerate(aut.elements)}
    inner = Subgroup(aut, mask_of(index[act(x)] for x in members))
    out = quotient(aut, inner).as_group
    out.name = f"Out_F({q.order})"
    return AutomizerData(aut, inner, out)


def aut_f(fs: FusionSystem, q: Subgroup) -> FiniteGroup:
    return automizer(fs, q).aut


def out_f(fs: FusionSystem, q: Subgroup) -> FiniteGroup:
    return automizer(fs, q).out


def has_strongly_p_embedded(x: FiniteGroup, p: int) -> bool:
    """Brute force: a proper H with p | |H| and p not dividing |H & H^y| for every y outside H."""
    if x.order % p:
        return False
    lat = enumerate_subgroups(x, cap=max(x.order, 1))
    for h in lat.all:
        if h.is_whole() or h.order % p:
            continue
        ok = True
        for y in range(x.order):
            if y in h:
                continue
            if (h.mask & conjugate_mask(x, h.mask, y)).bit_count() % p == 0:
                ok = False
                break
        if ok:
            return True
    return False


def is_essential(fs: FusionSystem, q: Subgroup) -> bool:
    if q.mask == fs.sylow.mask:
        return False
    if not is_centric(fs, q) or not is_fully_normalized(fs, q):
        return False
    return has_strongly_p_embedded(out_f(fs, q), fs.prime)


def essential_star_set(fs: FusionSystem) -> list[Subgroup]:
    """Essential subgroups of S, then S itself."""
    ess = [q for q in fs.subgroups_of_s if q.mask != fs.sylow.mask and is_essential(fs, q)]
    return ess + [fs.lattice.canonical(fs.sylow)]


def normalizer_fusion(fs: FusionSystem, q: Subgroup) -> FusionSystem:
    """``N_F(Q)`` realized as ``F_{N_S(Q)}(N_G(Q))`` on a re-indexed copy of ``N_G(Q)``."""
    if not is_fully_normalized(fs, q):
        raise NotFullyNormalized(f"subgroup of order {q.order} is not fully normalized")
    n_g = normalizer(q)
    n_s = Subgroup(fs.group, n_g.mask & fs.sylow.mask)
    sub, emb = n_g.as_group(f"N_{fs.group.name}({q.order})")
    pos = {x: i for i, x in enumerate(emb)}
    s_new = Subgroup(sub, mask_of(pos[x] for x in n_s.members))
    return FusionSystem(sub, s_new, fs.prime)


__all__ = [
    "FusionSystem", "fusion_system", "is_strongly_closed", "is_strongly_closed_by_morphisms",
    "strongly_closed_subgroups", "is_supersolvable_fusion", "is_centric", "is_fully_normalized",
    "aut_f", "out_f", "automizer", "essential_star_set", "normalizer_fusion", "quotient_is_cyclic",
    "StronglyClosedChain", "SupersolvabilityResult", "NotFullyNormalized", "has_strongly_p_embedded",
]
