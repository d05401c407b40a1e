"""Closed-form index of p_S and u_S, and the equality classification.

Every quantity is computed over the whole (possibly semisimple) system at
once. All counts are additive over simple factors and the inequality
``chi_p + chi_u >= rk`` holds factor by factor, so global equality holds
exactly when it holds on every factor.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Iterator

from .cascade import Cascade, CascadeElement, cascade, full_cascade
from .linalg import bareiss_rank
from .rootsys import Root, RootSystem, SimpleType, build_root_system, connected_components


class InternalConsistencyError(AssertionError):
    """Two independent evaluations of the same quantity disagree."""


class TheoremCounterexample(AssertionError):
    def __init__(self, msg: str, payload: dict):
        super().__init__(msg)
        self.payload = payload


@dataclass(frozen=True)
class ParabolicSpec:
    rs: RootSystem
    s: frozenset[int]
    k_s: Cascade
    k_pi: Cascade
    t_s: frozenset[int]
    k_t: Cascade
    e_s: tuple[CascadeElement, ...]
    q_s: frozenset[Root]
    dim_v_s: int
    dim_p: int
    dim_u: int
    dim_levi: int


@dataclass(frozen=True)
class IndexReport:
    type: str
    subset: tuple[int, ...]
    chi_p: int
    chi_u: int
    sum: int
    rank: int
    equality: bool
    cond_i: bool
    cond_ii: bool
    terms: dict

    def to_dict(self) -> dict:
        d = asdict(self)
        d["subset"] = list(self.subset)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _in_lattice(r: Root, s: frozenset[int]) -> bool:
    return all(c == 0 or i in s for i, c in enumerate(r))


def dim_v(rs: RootSystem, s: Iterable[int]) -> int:
    """Rank of the cascade roots of S together with those of Pi."""
    rows = list(cascade(rs, s).cascade_roots) + list(full_cascade(rs).cascade_roots)
    return bareiss_rank(rows)


def t_subset(rs: RootSystem, s: frozenset[int]) -> frozenset[int]:
    out: set[int] = set()
    for k in full_cascade(rs):
        if k.support <= s:
            out |= k.support
    return frozenset(out)


def parabolic_spec(rs: RootSystem, s: Iterable[int]) -> ParabolicSpec:
    s = frozenset(s)
    k_pi = full_cascade(rs)
    k_s = cascade(rs, s)
    t = t_subset(rs, s)
    k_t = cascade(rs, t)

    e_s = tuple(k for k in k_pi if not _in_lattice(k.eps, s))
    lemma = k_pi.supports - k_t.supports
    if {k.support for k in e_s} != lemma:
        raise InternalConsistencyError(
            f"E_S by definition and by K(Pi) minus K(T_S) differ for S={_labels(s)}"
        )

    pos_s = rs.positive_roots_in(s)
    escaped: set[Root] = set()
    for k in e_s:
        escaped |= k.gamma
    q_s = frozenset(r for r in pos_s if r in escaped)

    npos, nps = len(rs.positive_roots), len(pos_s)
    return ParabolicSpec(
        rs=rs,
        s=s,
        k_s=k_s,
        k_pi=k_pi,
        t_s=t,
        k_t=k_t,
        e_s=e_s,
        q_s=q_s,
        dim_v_s=dim_v(rs, s),
        dim_p=rs.rank + npos + nps,
        dim_u=npos - nps,
        dim_levi=rs.rank + 2 * nps,
    )


def chi_parabolic(spec: ParabolicSpec) -> int:
    chi = spec.rs.rank + len(spec.k_pi) + len(spec.k_s) - 2 * spec.dim_v_s
    if chi < 0:
        raise InternalConsistencyError(f"negative parabolic index {chi}")
    return chi


def chi_nilradical(spec: ParabolicSpec) -> int:
    """Index of u_S, evaluated both through Q_S and through the Gamma sizes."""
    n_e = len(spec.e_s)
    via_gamma = n_e + sum(len(k.gamma) for k in spec.e_s) - spec.dim_u
    via_q = n_e + len(spec.q_s)
    if via_gamma != via_q:
        raise InternalConsistencyError(
            f"nilradical index forms disagree: {via_gamma} != {via_q}"
        )
    return via_q


def sum_formula(spec: ParabolicSpec) -> int:
    """chi(p_S) + chi(u_S) written through K(S), K(T_S), dim V_S and Q_S."""
    return (
        spec.rs.rank
        + len(spec.k_s)
        - len(spec.k_t)
        + 2 * (len(spec.k_pi) - spec.dim_v_s)
        + len(spec.q_s)
    )


def condition_i(spec: ParabolicSpec) -> bool:
    return len(spec.k_s.supports | spec.k_pi.supports) == spec.dim_v_s


def condition_ii(spec: ParabolicSpec) -> bool:
    pi = spec.k_pi.supports
    return all(
        comp in pi or len(comp - spec.t_s) == 1
        for comp in connected_components(spec.rs, spec.s)
    )


def _labels(s: Iterable[int]) -> list[int]:
    return sorted(i + 1 for i in s)


def index_report(rs: RootSystem, s: Iterable[int]) -> IndexReport:
    spec = parabolic_spec(rs, s)
    chi_p = chi_parabolic(spec)
    chi_u = chi_nilradical(spec)
    total = sum_formula(spec)
    if total != chi_p + chi_u:
        raise InternalConsistencyError(
            f"sum formula {total} != {chi_p} + {chi_u} for S={_labels(spec.s)}"
        )
    return IndexReport(
        type=rs.name,
        subset=tuple(_labels(spec.s)),
        chi_p=chi_p,
        chi_u=chi_u,
        sum=total,
        rank=rs.rank,
        equality=total == rs.rank,
        cond_i=condition_i(spec),
        cond_ii=condition_ii(spec),
        terms={
            "kS": len(spec.k_s),
            "kTS": len(spec.k_t),
            "kPi": len(spec.k_pi),
            "dimVS": spec.dim_v_s,
            "QS": len(spec.q_s),
        },
    )


MAX_ENUM_RANK = 16


def subsets(rs: RootSystem) -> Iterator[frozenset[int]]:
    """All subsets of Pi in numeric bit-mask order."""
    n = rs.rank
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


def check_theorem(report: IndexReport) -> None:
    if report.sum < report.rank:
        raise TheoremCounterexample(
            f"{report.type} S={list(report.subset)}: sum {report.sum} < rank",
            report.to_dict(),
        )
    if report.equality != (report.cond_i and report.cond_ii):
        raise TheoremCounterexample(
            f"{report.type} S={list(report.subset)}: equality={report.equality} "
            f"but cond_i={report.cond_i}, cond_ii={report.cond_ii}",
            report.to_dict(),
        )


def enumerate_equality(rs: RootSystem) -> list[tuple[frozenset[int], IndexReport]]:
    """Reports for every subset; raises on any counterexample to the
    equality criterion."""
    if rs.rank > MAX_ENUM_RANK:
        raise ValueError(f"rank {rs.rank} too large to enumerate (max {MAX_ENUM_RANK})")
    out = []
    for s in subsets(rs):
        rep = index_report(rs, s)
        check_theorem(rep)
        out.append((s, rep))
    return out


def equality_subsets(rs: RootSystem) -> list[frozenset[int]]:
    return [s for s, rep in enumerate_equality(rs) if rep.equality]


@dataclass(frozen=True)
class MinimalRow:
    type: str
    i: int
    branch: str  # "in_cascade", "dimV=k+1" or "dimV=k"
    sum: int
    rank: int
    equality: bool


def minimal_parabolic_classification(t: SimpleType | str) -> list[MinimalRow]:
    rs = build_root_system(t)
    k_pi = full_cascade(rs)
    rows = []
    for i in range(rs.rank):
        s = frozenset([i])
        rep = index_report(rs, s)
        dv = rep.terms["dimVS"]
        if s in k_pi.supports:
            branch = "in_cascade"
        elif dv == len(k_pi) + 1:
            branch = "dimV=k+1"
        elif dv == len(k_pi):
            branch = "dimV=k"
        else:
            raise InternalConsistencyError(f"dim V_S = {dv} for a single root")
        expected = rs.rank + (2 if branch == "dimV=k" else 0)
        if rep.sum != expected:
            raise InternalConsistencyError(
                f"{rs.name} i={i + 1}: branch {branch} predicts {expected}, got {rep.sum}"
            )
        rows.append(MinimalRow(rs.name, i + 1, branch, rep.sum, rs.rank, rep.equality))
    return rows


def maximal_parabolic_equality(t: SimpleType | str) -> list[int]:
    """Labels i such that S = Pi minus {alpha_i} gives equality."""
    rs = build_root_system(t)
    return [
        i + 1
        for i in range(rs.rank)
        if index_report(rs, rs.all_simple - {i}).equality
    ]
