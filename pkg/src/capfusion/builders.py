"""Building groups from generators, builtin names and definition files.

Two carriers: permutations (tuples of images of 0..n-1) and 2x2 matrices
mod a prime q (tuples ``(a, b, c, d)``, row-major). Direct products are
realized on permutations over a disjoint union of points.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .groups import ClosureExceedsCap, FiniteGroup, GroupError, InvalidGenerator, is_prime

DEFAULT_ORDER_CAP = 2000


class SpecSyntaxError(GroupError):
    pass


@dataclass
class GroupSpec:
    """Parsed form of a builtin name or a definition file."""

    name: str
    kind: str  # "perm" or "matrix"
    degree: int  # number of points, or the modulus q for matrices
    generators: list[tuple[int, ...]] = field(default_factory=list)


# -- carriers ---------------------------------------------------------------

def _check_perm(p: tuple[int, ...], n: int):
    if len(p) != n or sorted(p) != list(range(n)):
        raise InvalidGenerator(f"not a permutation of {n} points: {p}")


def _check_matrix(m: tuple[int, ...], q: int):
    if len(m) != 4:
        raise InvalidGenerator(f"matrix needs 4 entries, got {m}")
    a, b, c, d = m
    if (a * d - b * c) % q == 0:
        raise InvalidGenerator(f"singular matrix mod {q}: {m}")


def _matmul(x, y, q):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)


def _closure_perm(gens, n, cap, name):
    ident = tuple(range(n))
    gens = [tuple(g) for g in gens]
    index = {ident: 0}
    elems = [ident]
    arr = [np.asarray(ident, dtype=np.int32)]
    i = 0
    while i < len(elems):
        x = arr[i]
        for g in gens:
            y = tuple(np.asarray(g, dtype=np.int32)[x].tolist())  # x then g
            if y not in index:
                if len(elems) >= cap:
                    raise ClosureExceedsCap(cap)
                index[y] = len(elems)
                elems.append(y)
                arr.append(np.asarray(y, dtype=np.int32))
        i += 1
    P = np.vstack(arr) if n else np.zeros((1, 0), dtype=np.int32)
    size = len(elems)
    table = np.empty((size, size), dtype=np.int32)
    for a in range(size):
        # (a then b)[i] = b[a[i]]
        rows = P[:, P[a]] if n else np.zeros((size, 0), dtype=np.int32)
        table[a] = [index[tuple(r)] for r in rows.tolist()]
    gen_idx = sorted({index[g] for g in gens} - {0})
    return FiniteGroup(elems, table, name, gen_idx)


def _closure_matrix(gens, q, cap, name):
    ident = (1, 0, 0, 1)
    index = {ident: 0}
    elems = [ident]
    i = 0
    while i < len(elems):
        for g in gens:
            y = _matmul(elems[i], g, q)
            if y not in index:
                if len(elems) >= cap:
                    raise ClosureExceedsCap(cap)
                index[y] = len(elems)
                elems.append(y)
        i += 1
    table = [[index[_matmul(x, y, q)] for y in elems] for x in elems]
    gen_idx = sorted({index[tuple(g)] for g in gens} - {0})
    return FiniteGroup(elems, table, name, gen_idx)


def build_group(spec: GroupSpec | str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Enumerate the closure of the generators; identity lands at index 0."""
    if isinstance(spec, str):
        spec = parse_builtin(spec)
    if spec.kind == "perm":
        for g in spec.generators:
            _check_perm(tuple(g), spec.degree)
        return _closure_perm(spec.generators, spec.degree, order_cap, spec.name)
    if spec.kind == "matrix":
        q = spec.degree
        if not is_prime(q):
            raise InvalidGenerator(f"matrix modulus {q} is not prime")
        gens = [tuple(x % q for x in g) for g in spec.generators]
        for g in gens:
            _check_matrix(g, q)
        return _closure_matrix(gens, q, order_cap, spec.name)
    raise SpecSyntaxError(f"unknown carrier {spec.kind!r}")


# -- builtin families -------------------------------------------------------

def cycles_to_perm(text: str, n: int) -> tuple[int, ...]:
    """``"(0 1)(2 3)"`` -> image tuple on ``n`` points."""
    img = list(range(n))
    text = text.strip()
    if text in ("", "()"):
        return tuple(img)
    if not re.fullmatch(r"(\(\s*\d+(\s*[ ,]\s*\d+)*\s*\)\s*)+", text):
        raise SpecSyntaxError(f"bad cycle notation: {text!r}")
    seen = set()
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) for t in re.split(r"[\s,]+", cyc.strip()) if t]
        for p in pts:
            if p >= n:
                raise InvalidGenerator(f"point {p} outside degree {n}")
            if p in seen:
                raise InvalidGenerator(f"point {p} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def cyclic(n: int) -> GroupSpec:
    if n == 1:
        return GroupSpec("C1", "perm", 1, [])
    return GroupSpec(f"C{n}", "perm", n, [tuple((i + 1) % n for i in range(n))])


def dihedral(order: int) -> GroupSpec:
    if order % 2:
        raise SpecSyntaxError(f"dihedral order must be even: D{order}")
    n = order // 2
    if n == 1:
        return GroupSpec("D2", "perm", 2, [(1, 0)])
    if n == 2:
        return GroupSpec("D4", "perm", 4, [(1, 0, 2, 3), (0, 1, 3, 2)])
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return GroupSpec(f"D{order}", "perm", n, [rot, ref])


def dicyclic(order: int) -> GroupSpec:
    """Q_{4n} = <a, x | a^{2n}, x^2 = a^n, a^x = a^-1> in its regular representation."""
    if order % 4 or order < 8:
        raise SpecSyntaxError(f"dicyclic order must be a multiple of 4, at least 8: Q{order}")
    n = order // 4
    m = 2 * n
    # point (k, e) <-> a^k x^e at index k + m*e; generators act by left multiplication
    def idx(k, e):
        return (k % m) + m * e
    a = [0] * order
    x = [0] * order
    for k in range(m):
        for e in (0, 1):
            a[idx(k, e)] = idx(k + 1, e)
            # x a^k x^e = a^-k x^(1+e); x^2 = a^n
            x[idx(k, e)] = idx(-k, 1) if e == 0 else idx(-k + n, 0)
    return GroupSpec(f"Q{order}", "perm", order, [tuple(a), tuple(x)])


def symmetric(n: int) -> GroupSpec:
    if n <= 1:
        return GroupSpec(f"S{n}", "perm", 1, [])
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple((i + 1) % n for i in range(n)))
    return GroupSpec(f"S{n}", "perm", n, gens)


def alternating(n: int) -> GroupSpec:
    if n <= 2:
        return GroupSpec(f"A{n}", "perm", max(n, 1), [])
    gens = []
    for k in range(2, n):
        img = list(range(n))
        img[0], img[1], img[k] = 1, k, 0  # (0 1 k)
        gens.append(tuple(img))
    return GroupSpec(f"A{n}", "perm", n, gens)


def frobenius(p: int, q: int) -> GroupSpec:
    """C_p : C_q with C_q acting faithfully by multiplication mod p."""
    if not is_prime(p) or q < 1 or (p - 1) % q:
        raise SpecSyntaxError(f"C{p}:C{q} needs p prime and q | p-1")
    # an element of multiplicative order q mod p
    r = next(r for r in range(1, p) if _mult_order(r, p) == q)
    trans = tuple((i + 1) % p for i in range(p))
    mult = tuple((r * i) % p for i in range(p))
    return GroupSpec(f"C{p}:C{q}", "perm", p, [trans, mult])


def _mult_order(r, p):
    k, y = 1, r % p
    while y != 1:
        y = (y * r) % p
        k += 1
    return k


MATRIX_BUILTINS = {
    "SL(2,3)": GroupSpec("SL(2,3)", "matrix", 3, [(1, 1, 0, 1), (0, 1, 2, 0)]),
    "SL(2,5)": GroupSpec("SL(2,5)", "matrix", 5, [(1, 1, 0, 1), (0, 1, 4, 0)]),
    "GL(2,3)": GroupSpec("GL(2,3)", "matrix", 3, [(1, 1, 0, 1), (0, 1, 2, 0), (2, 0, 0, 1)]),
}


def matrix_to_perm(spec: GroupSpec) -> GroupSpec:
    """Faithful permutation action of a 2x2 matrix group on nonzero row vectors."""
    q = spec.degree
    vecs = [(u, v) for u in range(q) for v in range(q) if (u, v) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}
    gens = []
    for a, b, c, d in spec.generators:
        # row vector times matrix
        gens.append(tuple(pos[((u * a + v * c) % q, (u * b + v * d) % q)] for u, v in vecs))
    return GroupSpec(spec.name, "perm", len(vecs), gens)


def direct_product(*specs: GroupSpec) -> GroupSpec:
    parts = [matrix_to_perm(s) if s.kind == "matrix" else s for s in specs]
    total = sum(s.degree for s in parts)
    gens = []
    offset = 0
    for s in parts:
        for g in s.generators:
            img = list(range(total))
            for i, j in enumerate(g):
                img[offset + i] = offset + j
            gens.append(tuple(img))
        offset += s.degree
    return GroupSpec(" x ".join(s.name for s in specs), "perm", max(total, 1), gens)


_PATTERNS = [
    (re.compile(r"C(\d+):C(\d+)"), lambda m: frobenius(int(m[1]), int(m[2]))),
    (re.compile(r"C(\d+)"), lambda m: cyclic(int(m[1]))),
    (re.compile(r"D(\d+)"), lambda m: dihedral(int(m[1]))),
    (re.compile(r"Q(\d+)"), lambda m: dicyclic(int(m[1]))),
    (re.compile(r"S(\d+)"), lambda m: _bounded(symmetric, int(m[1]), "S")),
    (re.compile(r"A(\d+)"), lambda m: _bounded(alternating, int(m[1]), "A")),
]


def _bounded(fn, n, letter):
    if n > 6:
        raise SpecSyntaxError(f"{letter}{n}: only n <= 6 is supported")
    return fn(n)


def parse_builtin(text: str) -> GroupSpec:
    """Parse ``C6``, ``D8``, ``Q8``, ``S4``, ``A5``, ``SL(2,5)``, ``C7:C3``, ``S3 x C2`` ..."""
    text = text.strip()
    parts = [p.strip() for p in re.split(r"\s*[x×]\s*", text)]
    if len(parts) > 1:
        spec = direct_product(*(parse_builtin(p) for p in parts))
        spec.name = text
        return spec
    key = text.replace(" ", "").upper()
    if key in MATRIX_BUILTINS:
        s = MATRIX_BUILTINS[key]
        return GroupSpec(s.name, s.kind, s.degree, list(s.generators))
    for pat, fn in _PATTERNS:
        m = pat.fullmatch(text)
        if m:
            return fn(m)
    raise SpecSyntaxError(f"unknown group spec {text!r}")


def parse_group_file(path: str | Path) -> GroupSpec:
    """Read a definition file: ``name``, ``perm <n>`` or ``matrix <q>``, one generator per line."""
    lines = [ln.strip() for ln in Path(path).read_text(encoding="utf-8").splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 2:
        raise SpecSyntaxError("group file needs a name line and a carrier line")
    m = re.fullmatch(r"name\s+(.+)", lines[0])
    if not m:
        raise SpecSyntaxError(f"expected 'name <label>', got {lines[0]!r}")
    name = m[1].strip()
    m = re.fullmatch(r"(perm|matrix)\s+(\d+)", lines[1])
    if not m:
        raise SpecSyntaxError(f"expected 'perm <degree>' or 'matrix <q>', got {lines[1]!r}")
    kind, deg = m[1], int(m[2])
    gens: list[tuple[int, ...]] = []
    for ln in lines[2:]:
        if kind == "perm":
            gens.append(cycles_to_perm(ln, deg))
        else:
            try:
                gens.append(tuple(int(t) for t in ln.split()))
            except ValueError:
                raise SpecSyntaxError(f"bad matrix line {ln!r}") from None
    return GroupSpec(name, kind, deg, gens)


def resolve(text: str) -> GroupSpec:
    """A builtin name, or a path to a definition file."""
    p = Path(text)
    if p.is_file():
        return parse_group_file(p)
    return parse_builtin(text)


def fingerprint(g: FiniteGroup) -> tuple:
    """Order, abelianization invariants and element-order histogram."""
    from .groups import derived_subgroup, quotient
    ab = quotient(g, derived_subgroup(g.whole)).as_group
    hist = {}
    for o in g.orders:
        hist[o] = hist.get(o, 0) + 1
    return (g.order, abelian_invariants(ab), tuple(sorted(hist.items())))


def abelian_invariants(a: FiniteGroup) -> tuple[int, ...]:
    """Elementary divisors (prime powers, sorted) of an abelian group."""
    from .groups import prime_factors
    out = []
    for p in prime_factors(a.order):
        # number of elements of order dividing p^k, for k = 0, 1, ...
        counts = [1]
        k = 1
        while counts[-1] < _p_part(a.order, p):
            counts.append(sum(1 for o in a.orders if (p ** k) % o == 0))
            k += 1
        # rank_k = log_p(counts[k]/counts[k-1]) counts cyclic factors of order >= p^k
        ranks = [_log(counts[i + 1] // counts[i], p) for i in range(len(counts) - 1)]
        for i, r in enumerate(ranks):
            nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
            out += [p ** (i + 1)] * (r - nxt)
    return tuple(sorted(out))


def _p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _log(n, p):
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


__all__ = [
    "GroupSpec", "build_group", "parse_builtin", "parse_group_file", "resolve",
    "cycles_to_perm", "direct_product", "fingerprint", "abelian_invariants",
]
