"""Theorems as (hypothesis, conclusion) predicate pairs, checked over a corpus.

Every registered statement is a proved implication, so a row whose
hypothesis holds and whose conclusion fails points at an engine defect.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Callable, Iterator

from . import cap as capmod
from .builders import build_group, fingerprint, parse_builtin
from .chief import classify, is_supersolvable, u_hypercentre
from .fusion import fusion_system, is_supersolvable_fusion
from .groups import ClosureExceedsCap, GroupError, Subgroup, is_p_group_order, p_part, prime_factors, quotient
from .structure import (
    DEFAULT_LATTICE_CAP, LatticeExceedsCap, SubgroupLattice, enumerate_subgroups,
    exponent_at_most, generalized_fitting, sylow_subgroup, upper_central_series,
)


# -- per-group evaluation context --------------------------------------------

class GroupContext:
    """One corpus group with its lattice and memoized predicates."""

    def __init__(self, name: str, lattice_cap: int = DEFAULT_LATTICE_CAP, order_cap: int = 2000):
        self.name = name
        self.group = build_group(parse_builtin(name), order_cap=order_cap)
        self.lattice = enumerate_subgroups(self.group, cap=lattice_cap)
        self._fusion: dict[int, bool] = {}

    @cached_property
    def primes(self) -> list[int]:
        return prime_factors(self.group.order)

    @cached_property
    def flags(self):
        return classify(self.group, self.lattice)

    @cached_property
    def z_u(self) -> Subgroup:
        return u_hypercentre(self.group, self.lattice)

    @cached_property
    def z_inf(self) -> Subgroup:
        return upper_central_series(self.group)[-1]

    def sylow(self, p: int) -> Subgroup:
        return sylow_subgroup(self.group, p, self.lattice)

    def fusion_supersolvable(self, p: int) -> bool:
        if p not in self._fusion:
            fs = fusion_system(self.group, p, self.lattice)
            self._fusion[p] = is_supersolvable_fusion(fs).holds
        return self._fusion[p]

    def p_supersolvable(self, p: int) -> bool:
        return self.flags.p_supersolvable.get(p, True)

    def p_nilpotent(self, p: int) -> bool:
        return self.flags.p_nilpotent.get(p, True)

    def subgroups_in(self, h: Subgroup, order: int) -> list[Subgroup]:
        return [k for k in self.lattice.order_index.get(order, ()) if k.mask & ~h.mask == 0]

    def cyclic_in(self, h: Subgroup, order: int) -> list[Subgroup]:
        return [k for k in self.subgroups_in(h, order)
                if any(self.group.orders[x] == order for x in k.members)]

    def normal_p_subgroups(self, p: int) -> list[Subgroup]:
        return [n for n in self.lattice.normal if n.order > 1 and is_p_group_order(n.order, p)]

    # memoized cover-avoid verdicts
    def strong_p_cap(self, a: Subgroup, p: int) -> bool:
        return capmod.is_strong_p_cap(a, None, p, self.lattice).holds

    def strong_cap(self, a: Subgroup) -> bool:
        return capmod.is_strong_cap(a, None, self.lattice).holds

    def strong_all_q(self, a: Subgroup) -> bool:
        return all(self.strong_p_cap(a, q) for q in self.primes)

    def cap(self, a: Subgroup) -> bool:
        return capmod.is_cap(a, None, self.lattice).holds

    def partial_cap(self, a: Subgroup) -> bool:
        key = ("partial_cap", None, a.mask, self.group.whole.mask)
        memo = self.lattice.memo
        if key not in memo:
            memo[key] = capmod.is_partial_cap(a, None, self.lattice)
        return memo[key].holds

    def address(self, h: Subgroup) -> str:
        order, k = self.lattice.address(h)
        return f"{order}#{k}"


# -- registry ----------------------------------------------------------------

@dataclass
class TheoremSpec:
    id: str
    statement: str
    bindings: Callable[[GroupContext], Iterator[dict]]
    hypothesis: Callable[..., bool]
    conclusion: Callable[..., bool]


def _over_primes(ctx):
    for p in ctx.primes:
        yield {"p": p}


def _over_sylow_orders(ctx):
    """Admissible |D|: prime powers strictly between 1 and |S|."""
    for p in ctx.primes:
        s = p_part(ctx.group.order, p)
        d = p
        while d < s:
            yield {"p": p, "d": d}
            d *= p


def _over_normal_p(ctx):
    for p in ctx.primes:
        for n in ctx.normal_p_subgroups(p):
            yield {"p": p, "P": n}


def _over_normal_p_and_d(ctx):
    for p in ctx.primes:
        for n in ctx.normal_p_subgroups(p):
            if n.order <= p:
                continue
            d = p
            while d < n.order:
                yield {"p": p, "P": n, "d": d}
                d *= p


def _over_normal_2_clauses(ctx):
    if 2 not in ctx.primes:
        return
    for n in ctx.normal_p_subgroups(2):
        for clause in (1, 2):
            yield {"P": n, "clause": clause}


def _over_normal(ctx):
    for h in ctx.lattice.normal:
        yield {"H": h}


def _abelian(h: Subgroup) -> bool:
    mul = h.group.mul
    gens = h.generators
    return all(mul[a][b] == mul[b][a] for a in gens for b in gens)


def _coprime(ctx, p):
    return gcd(p - 1, ctx.group.order) == 1


def _maximal_of_s_clause(ctx, p, pred):
    """|S| > p, every maximal subgroup of S satisfies ``pred``, and for p = 2 with S
    non-abelian every cyclic subgroup of order 4 of G does too."""
    s = ctx.sylow(p)
    if s.order <= p:
        return False
    if not all(pred(m) for m in ctx.lattice.maximal_of(s)):
        return False
    if p == 2 and not _abelian(s):
        return all(pred(c) for c in ctx.cyclic_in(ctx.group.whole, 4))
    return True


def hyp_1_5(ctx, p):
    return _maximal_of_s_clause(ctx, p, ctx.partial_cap)


def hyp_1_7(ctx, p, d):
    s = ctx.sylow(p)
    if not all(ctx.strong_cap(k) for k in ctx.subgroups_in(s, d)):
        return False
    if not _abelian(s) and d == p == 2:
        return all(ctx.strong_cap(c) for c in ctx.cyclic_in(s, 4))
    return True


def hyp_1_8(ctx, p, d):
    s = ctx.sylow(p)
    if not all(ctx.strong_p_cap(k, p) for k in ctx.subgroups_in(s, d)):
        return False
    if p == 2:
        if not exponent_at_most(s, 2):
            return False
        if not _abelian(s) and s.order // 2 > d == 2:
            return all(ctx.strong_p_cap(c, 2) for c in ctx.cyclic_in(s, 4))
    return True


def hyp_2_3(ctx, p, P):
    orders = [p, 4] if p == 2 else [p]
    return all(ctx.strong_p_cap(c, p) for o in orders for c in ctx.cyclic_in(P, o))


def hyp_2_4(ctx, p, P, d):
    if not all(ctx.strong_p_cap(k, p) for k in ctx.subgroups_in(P, d)):
        return False
    if p == 2:
        if not exponent_at_most(P, 2):
            return False
        if d == 2 < P.order // 2 and not _abelian(P):
            return all(ctx.strong_p_cap(c, 2) for c in ctx.cyclic_in(P, 4))
    return True


def hyp_2_5(ctx, P, clause):
    if clause == 1:
        return all(ctx.strong_p_cap(c, 2) for o in (2, 4) for c in ctx.cyclic_in(P, o))
    if not exponent_at_most(P, 2):
        return False
    d = 4
    while d < P.order:
        ok = all(ctx.strong_p_cap(k, 2) for k in ctx.subgroups_in(P, d))
        if ok and d < P.order // 2 and not _abelian(P):
            ok = all(ctx.strong_p_cap(c, 2) for c in ctx.cyclic_in(P, 4))
        if ok:
            return True
        d *= 2
    return False


def hyp_3_1(ctx, p):
    orders = [p, 4] if p == 2 else [p]
    g = ctx.group.whole
    return all(ctx.strong_p_cap(c, p) for o in orders for c in ctx.cyclic_in(g, o))


def _gen_fitting_of(ctx, h: Subgroup) -> Subgroup:
    sub, emb = h.as_group()
    lat = enumerate_subgroups(sub, cap=max(sub.order, 1))
    f = generalized_fitting(lat)
    from .groups import mask_of
    return ctx.lattice.by_mask[mask_of(emb[x] for x in f.members)]


def hyp_3_2(ctx, H):
    q = quotient(ctx.group, H)
    qg = q.as_group
    if not is_supersolvable(qg, enumerate_subgroups(qg, cap=max(qg.order, 1))):
        return False
    fstar = _gen_fitting_of(ctx, H)
    for p in ctx.primes:
        orders = [p, 4] if p == 2 else [p]
        if not all(ctx.strong_p_cap(c, p) for o in orders for c in ctx.cyclic_in(fstar, o)):
            return False
    return True


def hyp_3_4(ctx, p):
    return _maximal_of_s_clause(ctx, p, ctx.cap)


def hyp_3_5(ctx, p):
    return _maximal_of_s_clause(ctx, p, ctx.strong_all_q)


def hyp_4_1(ctx, p):
    s = ctx.sylow(p)
    orders = [p, 4] if p == 2 else [p]
    return all(ctx.strong_p_cap(c, p) for o in orders for c in ctx.cyclic_in(s, o))


def hyp_4_3(ctx, p, d):
    s = ctx.sylow(p)
    if not all(ctx.strong_all_q(k) for k in ctx.subgroups_in(s, d)):
        return False
    if not _abelian(s) and d == p == 2:
        return all(ctx.strong_all_q(c) for c in ctx.cyclic_in(s, 4))
    return True


def concl_p_ss(ctx, p, **_):
    return ctx.p_supersolvable(p)


def concl_fusion(ctx, p, **_):
    return ctx.fusion_supersolvable(p)


def concl_p_nil(ctx, p, **_):
    return ctx.p_nilpotent(p)


def concl_in_z_u(ctx, P, **_):
    return P.mask & ~ctx.z_u.mask == 0


def concl_in_z_inf(ctx, P, **_):
    return P.mask & ~ctx.z_inf.mask == 0


def concl_supersolvable(ctx, **_):
    return ctx.flags.supersolvable


def registry() -> list[TheoremSpec]:
    return [
        TheoremSpec("T-1.5", "|S| > p, maximal subgroups of S (and order-4 cyclic subgroups of G when p = 2, "
                    "S non-abelian) partial CAP => G p-supersolvable",
                    _over_primes, hyp_1_5, concl_p_ss),
        TheoremSpec("T-1.7", "subgroups of S of order d (and order-4 cyclic subgroups of S when S non-abelian, "
                    "d = p = 2) strong CAP => F_S(G) supersolvable",
                    _over_sylow_orders, hyp_1_7, concl_fusion),
        TheoremSpec("T-1.8", "subgroups of S of order d strong p-CAP (p = 2: exp(S) <= 2 and order-4 clause) "
                    "=> F_S(G) supersolvable",
                    _over_sylow_orders, hyp_1_8, concl_fusion),
        TheoremSpec("T-2.3", "cyclic subgroups of a normal p-subgroup P of order p or 4 strong p-CAP => P <= Z_U(G)",
                    _over_normal_p, hyp_2_3, concl_in_z_u),
        TheoremSpec("T-2.4", "subgroups of a normal p-subgroup P of order d strong p-CAP (p = 2 clauses) "
                    "=> P <= Z_U(G)",
                    _over_normal_p_and_d, hyp_2_4, concl_in_z_u),
        TheoremSpec("C-2.5", "normal 2-subgroup P with clause (1) or clause (2) => P <= Z_inf(G)",
                    _over_normal_2_clauses, hyp_2_5, concl_in_z_inf),
        TheoremSpec("T-3.1", "cyclic subgroups of G of order p or 4 (p = 2) strong p-CAP => G p-supersolvable",
                    _over_primes, hyp_3_1, concl_p_ss),
        TheoremSpec("T-3.2", "H normal, G/H supersolvable, cyclic subgroups of F*(H) of order p or 4 strong p-CAP "
                    "for every p => G supersolvable",
                    _over_normal, hyp_3_2, concl_supersolvable),
        TheoremSpec("C-3.4", "|S| > p, maximal subgroups of S (and order-4 cyclic subgroups of G) CAP "
                    "=> G p-supersolvable",
                    _over_primes, hyp_3_4, concl_p_ss),
        TheoremSpec("C-3.5", "|S| > p, maximal subgroups of S (and order-4 cyclic subgroups of G) strong q-CAP "
                    "for all q => G p-supersolvable",
                    _over_primes, hyp_3_5, concl_p_ss),
        TheoremSpec("T-4.1", "cyclic subgroups of S of order p or 4 (p = 2) strong p-CAP => F_S(G) supersolvable",
                    _over_primes, hyp_4_1, concl_fusion),
        TheoremSpec("C-4.2", "(p-1, |G|) = 1 and the T-4.1 hypothesis => G p-nilpotent",
                    _over_primes, lambda ctx, p: _coprime(ctx, p) and hyp_4_1(ctx, p), concl_p_nil),
        TheoremSpec("C-4.3", "subgroups of S of order d (and order-4 cyclic clause) strong q-CAP for all q "
                    "=> F_S(G) supersolvable",
                    _over_sylow_orders, hyp_4_3, concl_fusion),
        TheoremSpec("C-4.5", "(p-1, |G|) = 1 and the T-1.7 hypothesis => G p-nilpotent",
                    _over_sylow_orders, lambda ctx, p, d: _coprime(ctx, p) and hyp_1_7(ctx, p, d), concl_p_nil),
        TheoremSpec("C-4.6", "(p-1, |G|) = 1 and the C-4.3 hypothesis => G p-nilpotent",
                    _over_sylow_orders, lambda ctx, p, d: _coprime(ctx, p) and hyp_4_3(ctx, p, d), concl_p_nil),
        TheoremSpec("C-4.7", "(p-1, |G|) = 1 and the T-1.8 hypothesis => G p-nilpotent",
                    _over_sylow_orders, lambda ctx, p, d: _coprime(ctx, p) and hyp_1_8(ctx, p, d), concl_p_nil),
        TheoremSpec("R-1.6", "G p-supersolvable => F_S(G) supersolvable",
                    _over_primes, lambda ctx, p: ctx.p_supersolvable(p), concl_fusion),
    ]


def get_theorem(theorem_id: str) -> TheoremSpec:
    for t in registry():
        if t.id == theorem_id:
            return t
    raise KeyError(theorem_id)


# -- corpus -------------------------------------------------------------------

@dataclass
class Corpus:
    entries: list[str]
    order_cap: int = 2000
    lattice_cap: int = DEFAULT_LATTICE_CAP
    series_cap: int = 100_000
    fingerprints: dict[str, tuple] = field(default_factory=dict)


def _candidate_specs(n: int) -> list[str]:
    out = [f"C{k}" for k in range(1, n + 1)]
    # non-cyclic abelian groups of rank 2 and 3
    for a in range(2, n + 1):
        for b in range(a, n // a + 1):
            if b % a == 0:
                out.append(f"C{a} x C{b}")
                for c in range(b, n // (a * b) + 1):
                    if c % b == 0:
                        out.append(f"C{a} x C{b} x C{c}")
    out += ["C2 x C2 x C2 x C2"]
    out += [f"D{2 * k}" for k in range(3, n // 2 + 1)]
    out += [f"Q{4 * k}" for k in range(2, n // 4 + 1)]
    out += ["S3", "S4", "S5", "A4", "A5", "SL(2,3)", "SL(2,5)", "GL(2,3)"]
    for p in (5, 7, 11, 13):
        for q in range(3, p):
            if (p - 1) % q == 0:
                out.append(f"C{p}:C{q}")
    out += [
        "S3 x C3", "S3 x S3", "S3 x C4", "D8 x C3", "Q8 x C3", "Q8 x C2", "D8 x C2",
        "A4 x C2", "A4 x C3", "A4 x C4", "S4 x C2", "SL(2,3) x C2", "S3 x C5", "D10 x C3",
        "C7:C3 x C2", "C5:C4 x C2", "Q12 x C2", "S3 x C2 x C2", "A4 x C2 x C2",
        "Q8 x C5", "D8 x C5", "A5 x C2", "S4 x C3", "SL(2,3) x C3", "S3 x S3 x C2",
    ]
    return out


def _order_of_spec(spec: str) -> int:
    return build_group(parse_builtin(spec)).order


def generate_corpus(max_order: int, order_cap: int = 2000, lattice_cap: int = DEFAULT_LATTICE_CAP) -> Corpus:
    """Builtin families up to ``max_order``, deduplicated by fingerprint."""
    entries: list[str] = []
    seen: dict[tuple, str] = {}
    prints: dict[str, tuple] = {}
    for spec in _candidate_specs(max_order):
        try:
            g = build_group(parse_builtin(spec), order_cap=order_cap)
        except ClosureExceedsCap:
            continue
        if g.order > max_order:
            continue
        fp = fingerprint(g)
        if fp in seen:
            continue
        seen[fp] = spec
        name = spec.replace(" ", "")
        prints[name] = fp
        entries.append(name)
    entries.sort(key=lambda s: (prints[s][0], s))
    return Corpus(entries, order_cap, lattice_cap, fingerprints=prints)


# -- verification -------------------------------------------------------------

@dataclass
class TheoremVerdict:
    theorem_id: str
    group_name: str
    params: dict
    hypothesis_holds: bool | None
    conclusion_holds: bool | None
    elapsed_ms: int = 0
    witness: str | None = None
    skipped: str | None = None

    @property
    def violation(self) -> bool:
        return bool(self.hypothesis_holds) and self.conclusion_holds is False


def _format_params(ctx: GroupContext | None, params: dict) -> dict:
    out = {}
    for k, v in params.items():
        out[k] = ctx.address(v) if isinstance(v, Subgroup) else v
    return out


def evaluate_group(name: str, theorem_ids: list[str], lattice_cap: int = DEFAULT_LATTICE_CAP,
                   order_cap: int = 2000) -> list[TheoremVerdict]:
    """All rows of the given theorems for one group, in registry/binding order."""
    specs = [get_theorem(t) for t in theorem_ids]
    try:
        ctx = GroupContext(name, lattice_cap, order_cap)
    except (LatticeExceedsCap, ClosureExceedsCap) as exc:
        return [TheoremVerdict(t.id, name, {}, None, None, skipped=str(exc)) for t in specs]
    rows = []
    for t in specs:
        for params in t.bindings(ctx):
            t0 = time.perf_counter()
            try:
                hyp = bool(t.hypothesis(ctx, **params))
                concl = bool(t.conclusion(ctx, **params))
            except GroupError as exc:
                rows.append(TheoremVerdict(t.id, name, _format_params(ctx, params), None, None, skipped=str(exc)))
                continue
            ms = int((time.perf_counter() - t0) * 1000)
            witness = None
            if t.id in ("T-1.5",) and hyp:
                witness = f"supersolvable={ctx.flags.supersolvable}"
            rows.append(TheoremVerdict(t.id, name, _format_params(ctx, params), hyp, concl, ms, witness))
    return rows


def _eval_job(args):
    return evaluate_group(*args)


def verify(theorems: list[TheoremSpec] | TheoremSpec, corpus: Corpus, parallelism: int = 1) -> list[TheoremVerdict]:
    """Rows ordered by theorem (registry order), then corpus order, then binding order."""
    if isinstance(theorems, TheoremSpec):
        theorems = [theorems]
    ids = [t.id for t in theorems]
    jobs = [(name, ids, corpus.lattice_cap, corpus.order_cap) for name in corpus.entries]
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            per_group = list(pool.map(_eval_job, jobs))
    else:
        per_group = [_eval_job(j) for j in jobs]
    rows = []
    for tid in ids:
        for group_rows in per_group:
            rows.extend(r for r in group_rows if r.theorem_id == tid)
    return rows


@dataclass
class Summary:
    theorem_id: str
    rows: int
    hyp_true: int
    violations: int
    skipped: int
    converse_gaps: int  # conclusion true, hypothesis false


def summarize(rows: list[TheoremVerdict], theorem_ids: list[str]) -> list[Summary]:
    out = []
    for tid in theorem_ids:
        mine = [r for r in rows if r.theorem_id == tid]
        done = [r for r in mine if r.skipped is None]
        out.append(Summary(
            tid, len(done),
            sum(1 for r in done if r.hypothesis_holds),
            sum(1 for r in done if r.violation),
            len(mine) - len(done),
            sum(1 for r in done if r.conclusion_holds and not r.hypothesis_holds),
        ))
    return out


def _tf(b):
    return "t" if b else "f"


def verdict_line(r: TheoremVerdict, timing: bool = True) -> str:
    params = ",".join(f"{k}={v}" for k, v in r.params.items()) or "-"
    if r.skipped is not None:
        reason = r.skipped.replace(" ", "_")
        return f"VERDICT theorem={r.theorem_id} group={r.group_name} params={params} hyp=skip concl=skip ms=0 reason={reason}"
    ms = r.elapsed_ms if timing else 0
    return (f"VERDICT theorem={r.theorem_id} group={r.group_name} params={params} "
            f"hyp={_tf(r.hypothesis_holds)} concl={_tf(r.conclusion_holds)} ms={ms}")


def summary_line(s: Summary) -> str:
    line = f"SUMMARY theorem={s.theorem_id} rows={s.rows} hyp_true={s.hyp_true} violations={s.violations}"
    if s.skipped:
        line += f" skipped={s.skipped}"
    return line


def verdict_record(r: TheoremVerdict, timing: bool = True) -> dict:
    return {
        "kind": "verdict", "theorem": r.theorem_id, "group": r.group_name,
        "params": ",".join(f"{k}={v}" for k, v in r.params.items()),
        "hyp": r.hypothesis_holds, "concl": r.conclusion_holds,
        "ms": r.elapsed_ms if timing else 0, "skipped": r.skipped,
    }


def summary_record(s: Summary) -> dict:
    return {"kind": "summary", "theorem": s.theorem_id, "rows": s.rows, "hyp_true": s.hyp_true,
            "violations": s.violations, "skipped": s.skipped}
