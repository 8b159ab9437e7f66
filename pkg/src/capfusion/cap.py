"""Cover-avoid predicates: CAP, partial CAP, p-CAP and their strong forms.

``A`` covers a chief factor ``H/K`` when ``AH = AK`` and avoids it when
``A & H = A & K``. The strong variants demand the plain property inside every
subgroup of the ambient group containing ``A``; each such overgroup gets its
own chief factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .chief import ChiefFactor, ChiefSeries, chief_factors_of, normal_covers
from .groups import FiniteGroup, Subgroup, product_set, quotient
from .structure import SubgroupLattice, enumerate_subgroups, overgroups

Ambient = Union[FiniteGroup, Subgroup, None]

VARIANTS = ("cap", "partial_cap", "p_cap", "strong_cap", "strong_p_cap")


@dataclass(frozen=True)
class CoverAvoidVerdict:
    factor: ChiefFactor
    covers: bool
    avoids: bool


@dataclass
class CapReport:
    subject: Subgroup
    ambient: Subgroup
    variant: str
    holds: bool
    p: int | None = None
    # failure: (overgroup, factor); partial_cap success: the chief series
    witness: tuple[Subgroup, ChiefFactor] | ChiefSeries | None = None

    def __bool__(self):
        return self.holds


def covers(a: Subgroup, f: ChiefFactor) -> bool:
    """``A*H == A*K`` as element sets."""
    return product_set(a, f.upper) == product_set(a, f.lower)


def avoids(a: Subgroup, f: ChiefFactor) -> bool:
    return a.mask & f.upper.mask == a.mask & f.lower.mask


def cover_avoid(a: Subgroup, f: ChiefFactor) -> CoverAvoidVerdict:
    return CoverAvoidVerdict(f, covers(a, f), avoids(a, f))


def covers_by_order(a: Subgroup, f: ChiefFactor) -> bool:
    """Same as :func:`covers` through ``|AX| = |A||X|/|A & X|``.

    ``AK`` sits inside ``AH``, so the sets agree exactly when the sizes do.
    """
    au = (a.mask & f.upper.mask).bit_count()
    al = (a.mask & f.lower.mask).bit_count()
    return f.upper.order * al == f.lower.order * au


def _ok(a_mask: int, f: ChiefFactor) -> bool:
    """Covers or avoids, by intersection sizes; the hot path of every scan."""
    au = (a_mask & f.upper.mask).bit_count()
    al = (a_mask & f.lower.mask).bit_count()
    return au == al or f.upper.order * al == f.lower.order * au


def _ambient(lattice: SubgroupLattice, ambient: Ambient) -> Subgroup:
    if ambient is None or isinstance(ambient, FiniteGroup):
        return lattice.group.whole
    return lattice.canonical(ambient)


def first_failure(a: Subgroup, ambient: Subgroup, lattice: SubgroupLattice,
                  p: int | None = None) -> ChiefFactor | None:
    """First chief factor of ``ambient`` (of order divisible by ``p``, if given) neither covered nor avoided."""
    for f in chief_factors_of(lattice, ambient):
        if p is not None and f.order % p:
            continue
        if not _ok(a.mask, f):
            return f
    return None


def is_cap(a: Subgroup, ambient: Ambient, lattice: SubgroupLattice) -> CapReport:
    amb = _ambient(lattice, ambient)
    bad = first_failure(a, amb, lattice)
    return CapReport(a, amb, "cap", bad is None, witness=None if bad is None else (amb, bad))


def is_p_cap(a: Subgroup, ambient: Ambient, p: int, lattice: SubgroupLattice) -> CapReport:
    amb = _ambient(lattice, ambient)
    bad = first_failure(a, amb, lattice, p)
    return CapReport(a, amb, "p_cap", bad is None, p, None if bad is None else (amb, bad))


def is_partial_cap(a: Subgroup, ambient: Ambient, lattice: SubgroupLattice) -> CapReport:
    """Some chief series of the ambient has every factor covered or avoided by ``a``.

    Depth-first over the normal-subgroup poset; whether a good completion
    exists above K depends only on K, so dead ends are remembered.
    """
    amb = _ambient(lattice, ambient)
    covers_map = normal_covers(lattice, amb)
    dead: set[int] = set()
    top = amb.mask
    chain = [lattice.group.trivial]

    def walk() -> bool:
        k = chain[-1]
        if k.mask == top:
            return True
        for h in covers_map[k.mask]:
            if h.mask in dead or not _ok(a.mask, ChiefFactor(k, h)):
                continue
            chain.append(h)
            if walk():
                return True
            chain.pop()
            dead.add(h.mask)
        return False

    found = walk()
    return CapReport(a, amb, "partial_cap", found, witness=ChiefSeries(list(chain)) if found else None)


def _strong(a: Subgroup, ambient: Subgroup, lattice: SubgroupLattice, p: int | None, variant: str) -> CapReport:
    memo = lattice.memo
    key = (variant, p, a.mask, ambient.mask)
    got = memo.get(key)
    if got is not None:
        return got
    rep = CapReport(a, ambient, variant, True, p)
    for h in overgroups(lattice, a):
        if h.mask & ~ambient.mask:
            continue
        bad = first_failure(a, h, lattice, p)
        if bad is not None:
            rep.holds = False
            rep.witness = (h, bad)
            break
    memo[key] = rep
    return rep


def is_strong_cap(a: Subgroup, ambient: Ambient, lattice: SubgroupLattice) -> CapReport:
    return _strong(a, _ambient(lattice, ambient), lattice, None, "strong_cap")


def is_strong_p_cap(a: Subgroup, ambient: Ambient, p: int, lattice: SubgroupLattice) -> CapReport:
    return _strong(a, _ambient(lattice, ambient), lattice, p, "strong_p_cap")


def evaluate(variant: str, a: Subgroup, ambient: Ambient, lattice: SubgroupLattice,
             p: int | None = None) -> CapReport:
    if variant == "cap":
        return is_cap(a, ambient, lattice)
    if variant == "partial_cap":
        return is_partial_cap(a, ambient, lattice)
    if variant == "strong_cap":
        return is_strong_cap(a, ambient, lattice)
    if p is None:
        raise ValueError(f"variant {variant} needs a prime")
    if variant == "p_cap":
        return is_p_cap(a, ambient, p, lattice)
    if variant == "strong_p_cap":
        return is_strong_p_cap(a, ambient, p, lattice)
    raise ValueError(f"unknown variant {variant!r}")


def quotient_transfer(a: Subgroup, n: Subgroup, variant: str, p: int,
                      lattice: SubgroupLattice | None = None) -> CapReport:
    """Evaluate ``variant`` for ``AN/N`` inside ``G/N``.

    Raises NotNormal when ``n`` is not normal in its group.
    """
    if variant not in ("p_cap", "strong_p_cap"):
        raise ValueError("quotient transfer is defined for p_cap and strong_p_cap")
    q = quotient(a.group, n)
    qlat = enumerate_subgroups(q.as_group, cap=max(q.as_group.order, 1))
    image = qlat.canonical(q.project(a))
    return evaluate(variant, image, None, qlat, p)
