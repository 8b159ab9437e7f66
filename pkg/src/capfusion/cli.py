"""Command-line frontend: ``capfusion info|cap|fusion|verify|corpus``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass

from . import cap as capmod
from .builders import DEFAULT_ORDER_CAP, GroupSpec, SpecSyntaxError, build_group, cycles_to_perm, resolve
from .chief import DEFAULT_SERIES_CAP, all_chief_series, classify, one_chief_series
from .fusion import essential_star_set, fusion_system, is_supersolvable_fusion
from .groups import GroupError, is_prime, prime_factors, subgroup_generated
from .structure import DEFAULT_LATTICE_CAP, enumerate_subgroups
from .verify import (
    generate_corpus, registry, summarize, summary_line, summary_record, verdict_line,
    verdict_record, verify,
)

FORMATS = ("text", "json-lines")

GRAMMAR = """\
C<n>          cyclic group of order n
D<2n>         dihedral group of order 2n
Q<4n>         dicyclic group of order 4n (Q8 is the quaternion group)
S<n>, A<n>    symmetric and alternating groups, n <= 6
SL(2,3) SL(2,5) GL(2,3)
C<p>:C<q>     semidirect product, q | p-1, faithful action
X x Y         direct product of any of the above
<path>        group definition file (name/perm/matrix header, one generator per line)"""


class UsageError(Exception):
    pass


@dataclass
class Config:
    order_cap: int = DEFAULT_ORDER_CAP
    lattice_cap: int = DEFAULT_LATTICE_CAP
    series_cap: int = DEFAULT_SERIES_CAP
    worker_count: int = os.cpu_count() or 1
    output_format: str = "text"

    def validate(self):
        for name in ("order_cap", "lattice_cap", "series_cap", "worker_count"):
            if getattr(self, name) <= 0:
                raise UsageError(f"{name} must be positive")
        if self.output_format not in FORMATS:
            raise UsageError(f"output_format must be one of {', '.join(FORMATS)}")
        return self


def load_config(args: argparse.Namespace, environ=None) -> Config:
    """Flags, then ``CAPF_*`` environment variables, then defaults."""
    env = os.environ if environ is None else environ
    cfg = Config()
    for name, kind in (("order_cap", int), ("lattice_cap", int), ("series_cap", int),
                       ("worker_count", int), ("output_format", str)):
        val = getattr(args, name, None)
        if val is None and f"CAPF_{name.upper()}" in env:
            raw = env[f"CAPF_{name.upper()}"]
            try:
                val = kind(raw)
            except ValueError:
                raise UsageError(f"CAPF_{name.upper()}={raw!r} is not a valid {kind.__name__}")
        if val is not None:
            setattr(cfg, name, val)
    return cfg.validate()


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, text: str, record: dict):
        if self.fmt == "json-lines":
            print(json.dumps(record, sort_keys=True), file=self.stream)
        else:
            print(text, file=self.stream)


def _addr(lattice, h) -> str:
    order, k = lattice.address(h)
    return f"{order}#{k}"


def _load(spec_text: str, cfg: Config):
    spec = resolve(spec_text)
    g = build_group(spec, order_cap=cfg.order_cap)
    lattice = enumerate_subgroups(g, cap=cfg.lattice_cap)
    return spec, g, lattice


# -- info -------------------------------------------------------------------

def cmd_info(args, cfg: Config, out: Output) -> int:
    spec, g, lat = _load(args.group, cfg)
    flags = classify(g, lat)
    out.emit(f"GROUP {g.name} order={g.order}", {"kind": "group", "name": g.name, "order": g.order})
    out.emit(f"SUBGROUPS {len(lat)}", {"kind": "subgroups", "count": len(lat)})
    normal = [n.order for n in lat.normal]
    out.emit("NORMAL " + " ".join(map(str, normal)), {"kind": "normal", "orders": " ".join(map(str, normal))})
    series = one_chief_series(g, lat)
    for f in series.factors:
        pd = [p for p in prime_factors(g.order) if f.order % p == 0]
        out.emit(f"CHIEF {f.lower.order} < {f.upper.order} order={f.order} pd={','.join(map(str, pd))}",
                 {"kind": "chief", "lower": f.lower.order, "upper": f.upper.order,
                  "order": f.order, "pd": ",".join(map(str, pd))})
    count = len(all_chief_series(g, lat, cap=cfg.series_cap))
    out.emit(f"SERIES count={count}", {"kind": "series", "count": count})
    primes = prime_factors(g.order)
    cls = {
        "solvable": flags.solvable, "supersolvable": flags.supersolvable, "nilpotent": flags.nilpotent,
        "p_supersolvable": ",".join(str(p) for p in primes if flags.p_supersolvable[p]),
        "p_nilpotent": ",".join(str(p) for p in primes if flags.p_nilpotent[p]),
        "z_u": flags.u_hypercentre.order,
    }
    text = " ".join(f"{k}={str(v).lower() if isinstance(v, bool) else (v if v != '' else '-')}"
                    for k, v in cls.items())
    out.emit(f"FLAGS {text}", {"kind": "flags", **cls})
    return 0


# -- cap --------------------------------------------------------------------

_VARIANTS = {"cap": "cap", "partial": "partial_cap", "strong-cap": "strong_cap",
             "pcap": "p_cap", "strong-pcap": "strong_p_cap"}


def parse_variant(text: str) -> tuple[str, int | None]:
    name, _, prime = text.partition(":")
    if name not in _VARIANTS:
        raise UsageError(f"unknown variant {text!r}")
    variant = _VARIANTS[name]
    needs_p = variant in ("p_cap", "strong_p_cap")
    if needs_p != bool(prime):
        raise UsageError(f"variant {name} {'needs' if needs_p else 'takes no'} prime")
    if not needs_p:
        return variant, None
    if not prime.isdigit() or not is_prime(int(prime)):
        raise UsageError(f"{prime!r} is not a prime")
    return variant, int(prime)


def parse_subgroup(text: str, spec: GroupSpec, g, lattice):
    """``order:<n>,index:<k>`` or ``gens:<g1>;<g2>...`` (cycles or ``a b c d`` matrices)."""
    m = re.fullmatch(r"order:(\d+),index:(\d+)", text.replace(" ", ""))
    if m:
        order, k = int(m[1]), int(m[2])
        same = lattice.order_index.get(order, [])
        if k >= len(same):
            raise UsageError(f"no subgroup order:{order},index:{k} ({len(same)} of that order)")
        return same[k]
    if not text.startswith("gens:"):
        raise UsageError(f"bad subgroup address {text!r}")
    index = {tuple(e): i for i, e in enumerate(g.elements)}
    gens = []
    for part in filter(None, (p.strip() for p in text[5:].split(";"))):
        if spec.kind == "perm":
            elt = cycles_to_perm(part, spec.degree)
        else:
            elt = tuple(int(x) % spec.degree for x in part.split())
        if elt not in index:
            raise UsageError(f"generator {part!r} is not an element of {g.name}")
        gens.append(index[elt])
    return lattice.canonical(subgroup_generated(g, gens))


def cmd_cap(args, cfg: Config, out: Output) -> int:
    variant, p = parse_variant(args.variant)
    spec, g, lat = _load(args.group, cfg)
    a = parse_subgroup(args.subgroup, spec, g, lat)
    rep = capmod.evaluate(variant, a, None, lat, p)
    holds = "true" if rep.holds else "false"
    out.emit(f"VERDICT {holds}", {"kind": "verdict", "holds": rep.holds, "variant": variant,
                                  "subgroup": _addr(lat, a)})
    if isinstance(rep.witness, tuple):
        over, f = rep.witness
        out.emit(f"WITNESS overgroup={_addr(lat, over)} factor={f.lower.order}-{f.upper.order}",
                 {"kind": "witness", "overgroup": _addr(lat, over),
                  "factor": f"{f.lower.order}-{f.upper.order}"})
    elif rep.witness is not None:
        orders = [h.order for h in rep.witness.chain]
        out.emit("SERIES " + " ".join(map(str, orders)), {"kind": "series", "orders": " ".join(map(str, orders))})
    return 0


# -- fusion -----------------------------------------------------------------

def cmd_fusion(args, cfg: Config, out: Output) -> int:
    p = args.p
    if not is_prime(p):
        raise UsageError(f"{p} is not a prime")
    spec, g, lat = _load(args.group, cfg)
    fs = fusion_system(g, p, lat)
    if args.strongly_closed:
        for q in fs.strongly_closed:
            order, k = lat.address(q)
            out.emit(f"SC order={order} index={k}", {"kind": "sc", "order": order, "index": k})
    if args.essentials:
        for q in essential_star_set(fs):
            order, k = lat.address(q)
            out.emit(f"ESSENTIAL order={order} index={k}", {"kind": "essential", "order": order, "index": k})
    res = is_supersolvable_fusion(fs)
    out.emit(f"SUPERSOLVABLE {'true' if res.holds else 'false'}", {"kind": "supersolvable", "holds": res.holds})
    if res.holds and args.chain:
        orders = res.chain.orders
        out.emit("CHAIN " + " ".join(map(str, orders)), {"kind": "chain", "orders": " ".join(map(str, orders))})
    return 0


# -- verify / corpus --------------------------------------------------------

def cmd_verify(args, cfg: Config, out: Output) -> int:
    specs = registry()
    if args.theorem != "all":
        specs = [t for t in specs if t.id == args.theorem]
        if not specs:
            raise UsageError(f"unknown theorem {args.theorem!r}; known: {', '.join(t.id for t in registry())}")
    if args.corpus_max_order > cfg.order_cap:
        raise UsageError(f"corpus max order {args.corpus_max_order} exceeds order cap {cfg.order_cap}")
    corpus = generate_corpus(args.corpus_max_order, cfg.order_cap, cfg.lattice_cap)
    rows = verify(specs, corpus, cfg.worker_count)
    timing = not args.no_timing
    for r in rows:
        out.emit(verdict_line(r, timing), verdict_record(r, timing))
    sums = summarize(rows, [t.id for t in specs])
    for s in sums:
        out.emit(summary_line(s), summary_record(s))
    return 1 if any(s.violations for s in sums) else 0


def cmd_corpus(args, cfg: Config, out: Output) -> int:
    for line in GRAMMAR.splitlines():
        out.emit(line, {"kind": "grammar", "line": line})
    if args.max_order is not None:
        for name in generate_corpus(args.max_order, cfg.order_cap, cfg.lattice_cap).entries:
            out.emit(f"GROUP {name}", {"kind": "group", "name": name})
    return 0


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order-cap", type=int, dest="order_cap")
    common.add_argument("--lattice-cap", type=int, dest="lattice_cap")
    common.add_argument("--series-cap", type=int, dest="series_cap")
    common.add_argument("--workers", type=int, dest="worker_count")
    common.add_argument("--format", choices=FORMATS, dest="output_format")

    ap = argparse.ArgumentParser(prog="capfusion", description="Cover-avoid subgroups and fusion systems.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="order, normal subgroups, chief series, class flags")
    p.add_argument("group")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("cap", parents=[common], help="evaluate a cover-avoid predicate")
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", required=True, help="order:<n>,index:<k> or gens:<g1>;<g2>")
    p.add_argument("--variant", required=True, help="cap|partial|pcap:<p>|strong-cap|strong-pcap:<p>")
    p.set_defaults(func=cmd_cap)

    p = sub.add_parser("fusion", parents=[common], help="fusion system queries")
    p.add_argument("--group", required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--strongly-closed", action="store_true")
    p.add_argument("--essentials", action="store_true")
    p.add_argument("--chain", action="store_true")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("verify", parents=[common], help="check theorems over the builtin corpus")
    p.add_argument("theorem", help="theorem id or 'all'")
    p.add_argument("--corpus-max-order", type=int, required=True)
    p.add_argument("--no-timing", action="store_true", help="print ms=0 so reports compare byte for byte")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", parents=[common], help="builtin family grammar")
    p.add_argument("action", choices=["list"])
    p.add_argument("--max-order", type=int, default=None, help="also list the deduplicated corpus")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = load_config(args)
        return args.func(args, cfg, Output(cfg.output_format))
    except (UsageError, SpecSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return 2
    except (GroupError, FileNotFoundError) as exc:  # caps, bad generators, missing files
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
