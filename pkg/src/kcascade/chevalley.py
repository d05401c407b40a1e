"""Chevalley basis with integer structure constants and a brute-force index.

This module is a ground-truth oracle: it uses the root system only, never
the cascade or the closed-form index formulas.

Sign convention: for every positive non-simple root xi, the pair (a, b)
with a + b = xi and a earliest in the root order gets N_{a,b} = p + 1 > 0.
All other constants follow from the standard relations

    N_{a,b} / (c,c) = N_{b,c} / (a,a) = N_{c,a} / (b,b)   if a + b + c = 0,
    N_{-a,-b} = -N_{a,b},

and the four-root relation, solved height by height. The Jacobi identity
is checked after construction and is the arbiter of correctness.

Index oracle: for a random functional f with integer coordinates uniform in
[-FUNCTIONAL_RANGE, FUNCTIONAL_RANGE], the rank of M_ij = f([b_i, b_j])
is at most the generic rank r, and falls short only on the zero set of a
nonzero r x r minor, a polynomial of degree r in the coordinates of f.
By Schwartz-Zippel that happens with probability at most
r / (2 * FUNCTIONAL_RANGE + 1) per trial. The oracle returns
dim - (max rank over trials).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import bareiss_rank
from .rootsys import Root, RootSystem, add, neg, sub

FUNCTIONAL_RANGE = 10**6
DEFAULT_TRIALS = 5
# exhaustive Jacobi check up to this dimension, sampled above it
JACOBI_EXHAUSTIVE_DIM = 80
JACOBI_SAMPLES = 20000

Vector = dict[int, int]


class ChevalleyError(RuntimeError):
    pass


def _positive(r: Root) -> bool:
    return sum(r) > 0


class _Constants:
    """Structure constants N_{a,b} for roots a, b with a + b a root."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.pos: dict[tuple[Root, Root], int] = {}
        self._build()

    def norm(self, r: Root) -> int:
        return self.rs.inner(r, r)

    def string_below(self, a: Root, b: Root) -> int:
        """max p with b - p*a a root."""
        p = 0
        cur = sub(b, a)
        while self.rs.is_root(cur):
            p += 1
            cur = sub(cur, a)
        return p

    def n(self, a: Root, b: Root) -> int:
        pa, pb = _positive(a), _positive(b)
        if pa and pb:
            return self.pos[(a, b)]
        if not pa and not pb:
            return -self.pos[(neg(a), neg(b))]
        if not pa:
            return -self.n(b, a)
        # a positive, b negative
        s = add(a, b)
        c = neg(s)
        if _positive(s):
            val = Fraction(self.norm(c), self.norm(a)) * -self.pos[(neg(b), neg(c))]
        else:
            val = Fraction(self.norm(c), self.norm(b)) * self.pos[(c, a)]
        if val.denominator != 1:
            raise ChevalleyError(f"non-integral N for {a}, {b}")
        return int(val)

    def _build(self):
        rs = self.rs
        pos = rs.positive_roots
        for xi in pos:
            pairs = [(a, sub(xi, a)) for a in pos if rs.is_root(sub(xi, a)) and _positive(sub(xi, a))]
            if not pairs:
                continue
            alpha, beta = pairs[0]
            n_ab = self.string_below(alpha, beta) + 1
            self.pos[(alpha, beta)] = n_ab
            self.pos[(beta, alpha)] = -n_ab
            nxi = self.norm(xi)
            for gam, dlt in pairs[1:]:
                if (gam, dlt) in self.pos:
                    continue
                total = Fraction(0)
                if rs.is_root(sub(beta, gam)):
                    total += Fraction(
                        self.n(beta, neg(gam)) * self.n(alpha, neg(dlt)),
                        self.norm(sub(beta, gam)),
                    )
                if rs.is_root(sub(alpha, gam)):
                    total += Fraction(
                        self.n(neg(gam), alpha) * self.n(beta, neg(dlt)),
                        self.norm(sub(alpha, gam)),
                    )
                val = Fraction(nxi, n_ab) * total
                if val.denominator != 1:
                    raise ChevalleyError(f"non-integral N for {gam}, {dlt}")
                self.pos[(gam, dlt)] = int(val)
                self.pos[(dlt, gam)] = -int(val)


@dataclass(eq=False)
class ChevalleyAlgebra:
    """Basis h_1..h_l followed by e_a for a in ``rs.roots`` order.

    ``table[(i, j)]`` holds the nonzero bracket [b_i, b_j] as a tuple of
    (index, coefficient) pairs, for i != j.
    """

    rs: RootSystem
    labels: tuple[str, ...]
    table: dict[tuple[int, int], tuple[tuple[int, int], ...]]
    _n: dict = field(repr=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def e(self, root: Sequence[int]) -> int:
        return self.rs.rank + self.rs.root_index(tuple(root))

    def h(self, i: int) -> int:
        return i

    def root_of(self, idx: int) -> Root | None:
        if idx < self.rs.rank:
            return None
        return self.rs.roots[idx - self.rs.rank]

    def structure_constant(self, a: Sequence[int], b: Sequence[int]) -> int:
        """N_{a,b}, zero when a + b is not a root."""
        out = dict(self.table.get((self.e(a), self.e(b)), ()))
        s = tuple(x + y for x, y in zip(a, b))
        if not self.rs.is_root(s):
            return 0
        return out.get(self.e(s), 0)

    def bracket_basis(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        return self.table.get((i, j), ())

    def bracket(self, u: Mapping[int, int], v: Mapping[int, int]) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            if not a:
                continue
            for j, b in v.items():
                if not b:
                    continue
                for k, c in self.table.get((i, j), ()):
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c}


def build_chevalley(rs: RootSystem, verify: bool = True, seed: int = 0) -> ChevalleyAlgebra:
    key = ("chevalley", verify)
    if key in rs._cache:
        return rs._cache[key]
    consts = _Constants(rs)
    l = rs.rank
    roots = rs.roots
    labels = tuple(f"h{i + 1}" for i in range(l)) + tuple(f"e{list(r)}" for r in roots)
    idx = {r: l + k for k, r in enumerate(roots)}
    table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}

    def put(i, j, vec):
        vec = tuple((k, c) for k, c in vec if c)
        if vec:
            table[(i, j)] = vec
            table[(j, i)] = tuple((k, -c) for k, c in vec)

    simple = rs.simple_roots
    d = rs.symmetrizer
    for r in roots:
        for i in range(l):
            put(i, idx[r], [(idx[r], rs.pairing(r, simple[i]))])
    for r in rs.positive_roots:
        half = rs.inner(r, r) // 2
        # coroot of r over the simple coroots
        coroot = []
        for j in range(l):
            q, rem = divmod(r[j] * d[j], half)
            if rem:
                raise ChevalleyError(f"non-integral coroot for {r}")
            coroot.append((j, q))
        put(idx[r], idx[neg(r)], coroot)
    for a, b in itertools.combinations(roots, 2):
        s = add(a, b)
        if rs.is_root(s):
            put(idx[a], idx[b], [(idx[s], consts.n(a, b))])

    alg = ChevalleyAlgebra(rs, labels, table)
    if verify:
        _check_string_lengths(alg, consts)
        check_jacobi(alg, seed=seed)
    rs._cache[key] = alg
    return alg


def _check_string_lengths(alg: ChevalleyAlgebra, consts: _Constants) -> None:
    rs = alg.rs
    for a, b in itertools.product(rs.roots, repeat=2):
        if rs.is_root(add(a, b)):
            if abs(consts.n(a, b)) != consts.string_below(a, b) + 1:
                raise ChevalleyError(f"|N_{{{a},{b}}}| is not p+1")


def jacobiator(alg: ChevalleyAlgebra, i: int, j: int, k: int) -> Vector:
    x, y, z = {i: 1}, {j: 1}, {k: 1}
    out: Vector = {}
    for term in (
        alg.bracket(alg.bracket(x, y), z),
        alg.bracket(alg.bracket(y, z), x),
        alg.bracket(alg.bracket(z, x), y),
    ):
        for key, c in term.items():
            out[key] = out.get(key, 0) + c
    return {key: c for key, c in out.items() if c}


def check_jacobi(alg: ChevalleyAlgebra, seed: int = 0) -> None:
    n = alg.dim
    if n <= JACOBI_EXHAUSTIVE_DIM:
        triples: Iterable = itertools.combinations(range(n), 3)
    else:
        rng = random.Random(seed)
        triples = (tuple(rng.sample(range(n), 3)) for _ in range(JACOBI_SAMPLES))
    for i, j, k in triples:
        if jacobiator(alg, i, j, k):
            raise ChevalleyError(
                f"Jacobi identity fails on ({alg.labels[i]}, {alg.labels[j]}, {alg.labels[k]})"
            )


KINDS = ("full", "parabolic", "nilradical", "opposite_nilradical", "custom")


@dataclass(frozen=True, eq=False)
class SubalgebraSelection:
    parent: ChevalleyAlgebra
    members: tuple[int, ...]
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown subalgebra kind {self.kind!r}")
        inside = set(self.members)
        for i in self.members:
            for j in self.members:
                for k, _ in self.parent.bracket_basis(i, j):
                    if k not in inside:
                        raise ChevalleyError(
                            f"{self.kind} selection not closed: "
                            f"[{self.parent.labels[i]}, {self.parent.labels[j]}]"
                        )

    @property
    def dim(self) -> int:
        return len(self.members)


def _in_span(r: Root, s: frozenset[int]) -> bool:
    return all(c == 0 or i in s for i, c in enumerate(r))


def select(alg: ChevalleyAlgebra, kind: str, s: Iterable[int] = ()) -> SubalgebraSelection:
    """p_S, u_S, u_S^- or the whole algebra as a basis selection."""
    rs = alg.rs
    s = frozenset(s)
    l = rs.rank
    if kind == "full":
        members = range(alg.dim)
    elif kind == "parabolic":
        members = list(range(l)) + [
            alg.e(r) for r in rs.roots if _positive(r) or _in_span(r, s)
        ]
    elif kind == "nilradical":
        members = [alg.e(r) for r in rs.positive_roots if not _in_span(r, s)]
    elif kind == "opposite_nilradical":
        members = [alg.e(neg(r)) for r in rs.positive_roots if not _in_span(r, s)]
    else:
        raise ValueError(f"use span_of for kind {kind!r}")
    return SubalgebraSelection(alg, tuple(sorted(members)), kind)


def span_of(alg: ChevalleyAlgebra, roots: Iterable[Root]) -> SubalgebraSelection:
    """Span of root vectors e_a for the given roots (must be a subalgebra)."""
    return SubalgebraSelection(alg, tuple(sorted(alg.e(r) for r in roots)), "custom")


def skew_matrix(sel: SubalgebraSelection, f: Sequence[int]) -> list[list[int]]:
    """M_ij = f([b_i, b_j]) with f given by coordinates on ``sel.members``."""
    pos = {m: k for k, m in enumerate(sel.members)}
    n = sel.dim
    mat = [[0] * n for _ in range(n)]
    br = sel.parent.bracket_basis
    for a, i in enumerate(sel.members):
        for b in range(a + 1, n):
            val = sum(c * f[pos[k]] for k, c in br(i, sel.members[b]))
            mat[a][b] = val
            mat[b][a] = -val
    return mat


def random_functional(n: int, rng: random.Random) -> list[int]:
    return [rng.randint(-FUNCTIONAL_RANGE, FUNCTIONAL_RANGE) for _ in range(n)]


def skew_ranks(sel: SubalgebraSelection, trials: int, seed: int) -> list[int]:
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    return [bareiss_rank(skew_matrix(sel, random_functional(sel.dim, rng))) for _ in range(trials)]


def index_oracle(sel: SubalgebraSelection, trials: int = DEFAULT_TRIALS, seed: int = 0) -> int:
    """dim(sel) minus the largest skew-form rank seen over the trials."""
    return sel.dim - max(skew_ranks(sel, trials, seed))


@dataclass(frozen=True)
class AdditivityResult:
    ok: bool
    type: str
    subset: tuple[int, ...]
    chi_g: int
    chi_p: int
    chi_u: int
    chi_u_minus: int
    seed: int


def additivity_check(
    rs: RootSystem, s: Iterable[int], trials: int = DEFAULT_TRIALS, seed: int = 0
) -> AdditivityResult:
    """g = p_S + u_S^-: compare oracle(g) with oracle(p_S) + oracle(u_S^-)."""
    s = frozenset(s)
    alg = build_chevalley(rs)
    chi_g = index_oracle(select(alg, "full"), trials, seed)
    chi_p = index_oracle(select(alg, "parabolic", s), trials, seed)
    chi_u = index_oracle(select(alg, "nilradical", s), trials, seed)
    chi_um = index_oracle(select(alg, "opposite_nilradical", s), trials, seed)
    ok = chi_g == chi_p + chi_um and chi_u == chi_um
    return AdditivityResult(
        ok, rs.name, tuple(sorted(i + 1 for i in s)), chi_g, chi_p, chi_u, chi_um, seed
    )
