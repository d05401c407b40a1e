"""Root systems of the simple types in Bourbaki numbering, with exact data.

Roots are tuples of integer coordinates over the simple roots. The
invariant form is stored as the integer matrix ``form[i][j] = (a_i, a_j)``
scaled so that the shortest simple roots of each factor have length 2.
Simple roots are indexed from 0 internally; the CLI and all emitted tables
use 1-based Bourbaki labels.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in FAMILIES:
            raise RootSystemError(f"unknown family {f!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[f]
        if not ok:
            raise RootSystemError(f"invalid rank {n} for type {f}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?(\d+)\s*", text)
        if not m:
            raise RootSystemError(f"cannot parse type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


def parse_types(text: str) -> tuple[SimpleType, ...]:
    """Parse ``"A3"`` or a product such as ``"A2xB3"`` into simple factors."""
    parts = [p for p in re.split(r"[x×*+]", text) if p.strip()]
    if not parts:
        raise RootSystemError(f"empty type {text!r}")
    return tuple(SimpleType.parse(p) for p in parts)


def _dynkin(t: SimpleType) -> tuple[list[int], list[tuple[int, int]]]:
    """Half squared lengths of the simple roots and the Dynkin edges (0-based)."""
    f, n = t.family, t.rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if f == "A":
        return [1] * n, chain
    if f == "B":
        return [2] * (n - 1) + [1], chain
    if f == "C":
        return [1] * (n - 1) + [2], chain
    if f == "D":
        return [1] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if f == "E":
        edges = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return [1] * n, edges
    if f == "F":
        return [2, 2, 1, 1], chain
    return [1, 3], chain  # G2: alpha_1 short


def _block_form(t: SimpleType) -> list[list[int]]:
    d, edges = _dynkin(t)
    n = t.rank
    form = [[0] * n for _ in range(n)]
    for i in range(n):
        form[i][i] = 2 * d[i]
    for i, j in edges:
        form[i][j] = form[j][i] = -max(d[i], d[j])
    return form


def height(r: Root) -> int:
    return sum(r)


def neg(r: Root) -> Root:
    return tuple(-c for c in r)


def add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def support(r: Root) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(r) if c)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable root system; equality is identity.

    ``cartan[i][j]`` is the pairing of the i-th simple root with the j-th
    simple coroot. ``symmetrizer[j]`` is half the squared length of the j-th
    simple root, so ``form[i][j] == cartan[i][j] * symmetrizer[j]``.
    """

    types: tuple[SimpleType, ...]
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    form: tuple[tuple[int, ...], ...]
    roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    factor_of: tuple[int, ...]
    _index: dict = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def name(self) -> str:
        return "x".join(str(t) for t in self.types)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @property
    def all_simple(self) -> frozenset[int]:
        return frozenset(range(self.rank))

    @property
    def dimension(self) -> int:
        return self.rank + len(self.roots)

    @property
    def highest_root(self) -> Root:
        if len(self.types) != 1:
            raise RootSystemError("highest root is defined for simple types only")
        return self.positive_roots[-1]

    def is_root(self, v: Root) -> bool:
        return v in self._index

    def root_index(self, v: Root) -> int:
        return self._index[v]

    def inner(self, a: Iterable[int], b: Iterable[int]) -> int:
        a, b = tuple(a), tuple(b)
        return sum(
            a[i] * b[j] * self.form[i][j]
            for i in range(self.rank) if a[i]
            for j in range(self.rank) if b[j]
        )

    def pairing(self, lam: Root, beta: Root) -> int:
        """2(lam, beta)/(beta, beta) without the membership check."""
        num = 2 * self.inner(lam, beta)
        den = self.inner(beta, beta)
        q, r = divmod(num, den)
        if r:
            raise RootSystemError(f"non-integral pairing <{lam}, {beta}^v>")
        return q

    def positive_roots_in(self, s: Iterable[int]) -> tuple[Root, ...]:
        """R_S^+ in the global order."""
        s = frozenset(s)
        key = ("pos_in", s)
        if key not in self._cache:
            out = s.issuperset
            self._cache[key] = tuple(
                r for r in self.positive_roots if out(i for i, c in enumerate(r) if c)
            )
        return self._cache[key]

    def to_json(self) -> str:
        doc = {
            "type": self.name,
            "rank": self.rank,
            "numbering": "Bourbaki",
            "cartan_matrix": [list(r) for r in self.cartan],
            "symmetrizer": list(self.symmetrizer),
            "roots": [list(r) for r in self.roots],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _positive_roots(cartan: list[list[int]]) -> list[Root]:
    """Additive closure from the simple roots using root strings.

    For a positive root b and simple a_i (b != a_i), b + a_i is a root iff
    p - <b, a_i^v> > 0, where p is the length of the a_i-string below b.
    """
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    out = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for i in range(n):
                if b == simple[i]:
                    continue
                p = 0
                down = list(b)
                while True:
                    down[i] -= 1
                    if tuple(down) in known:
                        p += 1
                    else:
                        break
                pair = sum(b[k] * cartan[k][i] for k in range(n))
                if p - pair > 0:
                    up = list(b)
                    up[i] += 1
                    up = tuple(up)
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        out.extend(nxt)
        layer = nxt
    return out


def _order_key(r: Root):
    return (height(r), r)


def build_root_system(t: SimpleType | Iterable[SimpleType] | str) -> RootSystem:
    """Build a (semi)simple root system; products are block diagonal."""
    if isinstance(t, str):
        types = parse_types(t)
    elif isinstance(t, SimpleType):
        types = (t,)
    else:
        types = tuple(t)
    if not types:
        raise RootSystemError("no simple factors given")
    for st in types:
        if st.family == "D" and st.rank == 3:
            warnings.warn("D3 is isomorphic to A3; computed as given", stacklevel=2)

    n = sum(st.rank for st in types)
    form = [[0] * n for _ in range(n)]
    factor_of = []
    off = 0
    for k, st in enumerate(types):
        block = _block_form(st)
        for i in range(st.rank):
            for j in range(st.rank):
                form[off + i][off + j] = block[i][j]
        factor_of.extend([k] * st.rank)
        off += st.rank
    sym = [form[j][j] // 2 for j in range(n)]
    cartan = [[form[i][j] // sym[j] for j in range(n)] for i in range(n)]

    pos = sorted(_positive_roots(cartan), key=_order_key)
    roots = sorted(pos + [neg(r) for r in pos], key=_order_key)
    return RootSystem(
        types=types,
        cartan=tuple(tuple(r) for r in cartan),
        symmetrizer=tuple(sym),
        form=tuple(tuple(r) for r in form),
        roots=tuple(roots),
        positive_roots=tuple(pos),
        factor_of=tuple(factor_of),
        _index={r: i for i, r in enumerate(roots)},
    )


def coroot_pairing(rs: RootSystem, lam: Root, beta: Root) -> int:
    """<lam, beta^v> for beta a root and lam in the root lattice."""
    if not rs.is_root(tuple(beta)):
        raise RootSystemError(f"{beta} is not a root")
    return rs.pairing(tuple(lam), tuple(beta))


def connected_components(rs: RootSystem, s: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of s in the Dynkin graph, ordered by least index."""
    rest = set(s)
    comps = []
    while rest:
        start = min(rest)
        comp = {start}
        stack = [start]
        rest.discard(start)
        while stack:
            i = stack.pop()
            for j in list(rest):
                if rs.cartan[i][j] != 0:
                    rest.discard(j)
                    comp.add(j)
                    stack.append(j)
        comps.append(frozenset(comp))
    return comps


def is_connected(rs: RootSystem, s: Iterable[int]) -> bool:
    return len(connected_components(rs, s)) == 1


def highest_root_of(rs: RootSystem, s: Iterable[int]) -> Root:
    """Highest root of R_S for a nonempty connected s."""
    s = frozenset(s)
    if not s:
        raise RootSystemError("highest root of the empty set")
    key = ("highest", s)
    if key in rs._cache:
        return rs._cache[key]
    if not is_connected(rs, s):
        raise RootSystemError(f"subset {sorted(i + 1 for i in s)} is not connected")
    pos = rs.positive_roots_in(s)
    top = pos[-1]
    # the dominance maximum must dominate every root of R_S
    if any(any(c > t for c, t in zip(r, top)) for r in pos):
        raise RootSystemError("no dominance maximum; root data corrupted")
    rs._cache[key] = top
    return top
