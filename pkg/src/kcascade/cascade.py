"""Kostant's cascade of strongly orthogonal roots."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .rootsys import (
    Root,
    RootSystem,
    SimpleType,
    build_root_system,
    connected_components,
    highest_root_of,
)


@dataclass(frozen=True)
class CascadeElement:
    """A connected support K, its highest root and the Heisenberg set."""

    support: frozenset[int]
    eps: Root
    gamma: frozenset[Root]
    parent: Optional[frozenset[int]] = None

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.support)

    def labels(self) -> list[int]:
        return sorted(i + 1 for i in self.support)


@dataclass(frozen=True)
class Cascade:
    base: frozenset[int]
    elements: tuple[CascadeElement, ...]

    @property
    def supports(self) -> frozenset[frozenset[int]]:
        return frozenset(e.support for e in self.elements)

    @property
    def cascade_roots(self) -> tuple[Root, ...]:
        return tuple(e.eps for e in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def to_dict(self) -> dict:
        return {
            "base": sorted(i + 1 for i in self.base),
            "elements": [
                {"support": e.labels(), "eps": list(e.eps), "gamma_size": len(e.gamma)}
                for e in self.elements
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def gamma_set(rs: RootSystem, k: CascadeElement | Iterable[int]) -> frozenset[Root]:
    """Roots of R_K pairing positively with the coroot of eps_K."""
    supp = k.support if isinstance(k, CascadeElement) else frozenset(k)
    key = ("gamma", supp)
    if key not in rs._cache:
        eps = highest_root_of(rs, supp)
        rs._cache[key] = frozenset(
            a for a in rs.positive_roots_in(supp) if rs.pairing(a, eps) > 0
        )
    return rs._cache[key]


def _connected_cascade(rs: RootSystem, s: frozenset[int], parent) -> list[CascadeElement]:
    eps = highest_root_of(rs, s)
    head = CascadeElement(s, eps, gamma_set(rs, s), parent)
    # <a, eps^v> = 2 for a = eps forces at least one simple root out of s_hat
    s_hat = frozenset(i for i in s if rs.pairing(rs.simple_roots[i], eps) == 0)
    out = [head]
    for comp in connected_components(rs, s_hat):
        out.extend(_connected_cascade(rs, comp, s))
    return out


def cascade(rs: RootSystem, s: Iterable[int]) -> Cascade:
    """K(S): union over components, each contributing itself and K(S_hat)."""
    s = frozenset(s)
    key = ("cascade", s)
    if key not in rs._cache:
        elems: list[CascadeElement] = []
        for comp in connected_components(rs, s):
            ckey = ("conn_cascade", comp)
            if ckey not in rs._cache:
                rs._cache[ckey] = tuple(_connected_cascade(rs, comp, None))
            elems.extend(rs._cache[ckey])
        rs._cache[key] = Cascade(s, tuple(elems))
    return rs._cache[key]


def full_cascade(rs: RootSystem) -> Cascade:
    return cascade(rs, rs.all_simple)


def cardinality_of_full_cascade(t: SimpleType | str) -> int:
    return len(full_cascade(build_root_system(t)))


def find_enclosing_cascade_element(
    rs: RootSystem, component: Iterable[int]
) -> CascadeElement:
    """The K in K(Pi) whose Heisenberg set contains the highest root of a
    connected subset."""
    eps = highest_root_of(rs, component)
    hits = [k for k in full_cascade(rs) if eps in k.gamma]
    if len(hits) != 1:
        raise AssertionError(f"{len(hits)} cascade elements contain {eps}")
    return hits[0]
