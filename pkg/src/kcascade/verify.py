"""Verification suites behind ``kcascade verify``.

Each suite returns a list of failure records (plain dicts) so that a run
can report every problem at once. Internal-consistency errors raised by
the index module are not caught here; they abort the run.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass

from . import chevalley as chv
from .cascade import cascade
from .index import (
    TheoremCounterexample,
    check_theorem,
    index_report,
    parabolic_spec,
    subsets,
)
from .linalg import bareiss_rank
from .rootsys import RootSystem, SimpleType, add, build_root_system, connected_components, sub

DEFAULT_TYPES = "A1..A8,B2..B8,C2..C8,D4..D8,E6,E7,E8,F4,G2"
DEFAULT_SPOT_TYPES = "F4,A5,D5"


def expand_types(expr: str) -> list[SimpleType]:
    """Expand ``"A1..A3,E6"`` into simple types, keeping first occurrences."""
    out: list[SimpleType] = []
    for part in (p.strip() for p in expr.split(",")):
        if not part:
            continue
        m = re.fullmatch(r"([A-Ga-g])(\d+)\s*\.\.\s*([A-Ga-g])?(\d+)", part)
        if m:
            fam, lo, fam2, hi = m.group(1).upper(), int(m.group(2)), m.group(3), int(m.group(4))
            if fam2 and fam2.upper() != fam:
                raise ValueError(f"range {part!r} mixes families")
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            items = [SimpleType(fam, n) for n in range(lo, hi + 1)]
        else:
            items = [SimpleType.parse(part)]
        for t in items:
            if t not in out:
                out.append(t)
    return out


@dataclass
class RunConfig:
    types: str = DEFAULT_TYPES
    max_enum_rank: int = 8
    oracle_rank_cap: int = 4
    oracle_spot_types: str = DEFAULT_SPOT_TYPES
    oracle_spot_samples: int = 10
    trials: int = chv.DEFAULT_TRIALS
    seed: int = 0
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self):
        for name in ("max_enum_rank", "oracle_rank_cap", "trials"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.oracle_spot_samples < 0:
            raise ValueError("oracle_spot_samples must be non-negative")
        if self.output_format not in ("json", "csv", "markdown"):
            raise ValueError(f"unknown format {self.output_format!r}")
        expand_types(self.types)
        expand_types(self.oracle_spot_types)


def _labels(s) -> list[int]:
    return sorted(i + 1 for i in s)


def _fail(suite: str, rs: RootSystem, s, msg: str, **extra) -> dict:
    return {"suite": suite, "type": rs.name, "subset": _labels(s), "message": msg, **extra}


def check_lemma(rs: RootSystem, s) -> list[dict]:
    """Nesting, partition, Heisenberg and sum rules for the cascade of S,
    plus strong orthogonality of its highest roots."""
    s = frozenset(s)
    fails = []
    ks = cascade(rs, s)
    elems = ks.elements
    # i) nested, or the two are the components of their union
    for a, b in itertools.combinations(elems, 2):
        ka, kb = a.support, b.support
        if ka <= kb or kb <= ka:
            continue
        if set(connected_components(rs, ka | kb)) != {ka, kb}:
            fails.append(_fail("lemma", rs, s, f"supports {_labels(ka)}, {_labels(kb)} neither nested nor separated"))
    # ii) the Heisenberg sets partition R_S^+
    owner: dict = {}
    for k in elems:
        if k.eps not in k.gamma or len(k.gamma) % 2 != 1:
            fails.append(_fail("lemma", rs, s, f"bad Heisenberg set for {_labels(k.support)}"))
        zero = {b for b in rs.positive_roots_in(k.support) if rs.pairing(b, k.eps) == 0}
        if set(k.gamma) != set(rs.positive_roots_in(k.support)) - zero:
            fails.append(_fail("lemma", rs, s, f"Gamma differs from R_K^+ minus orthogonal roots for {_labels(k.support)}"))
        for r in k.gamma:
            if r in owner:
                fails.append(_fail("lemma", rs, s, f"root {list(r)} in two Heisenberg sets"))
            owner[r] = k
    pos = rs.positive_roots_in(s)
    if set(owner) != set(pos) or len(owner) != len(pos):
        fails.append(_fail("lemma", rs, s, "Heisenberg sets do not partition R_S^+"))
        return fails
    # iii) and iv)
    for a, b in itertools.product(pos, repeat=2):
        c = add(a, b)
        if not rs.is_root(c):
            continue
        ka, kb = owner[a], owner[b]
        if ka is kb:
            if c != ka.eps:
                fails.append(_fail("lemma", rs, s, f"{list(a)}+{list(b)} in one Gamma but not eps"))
        elif not (
            (ka.support <= kb.support and c in kb.gamma)
            or (kb.support <= ka.support and c in ka.gamma)
        ):
            fails.append(_fail("lemma", rs, s, f"{list(a)}+{list(b)} violates the sum rule"))
    # strongly orthogonal, independent cascade roots
    for a, b in itertools.combinations(ks.cascade_roots, 2):
        if rs.is_root(add(a, b)) or rs.is_root(sub(a, b)) or rs.pairing(a, b) != 0:
            fails.append(_fail("lemma", rs, s, f"{list(a)}, {list(b)} not strongly orthogonal"))
    if bareiss_rank(ks.cascade_roots) != len(ks):
        fails.append(_fail("lemma", rs, s, "cascade roots linearly dependent"))
    return fails


def check_index(rs: RootSystem, s) -> list[dict]:
    """Bounds, equality criterion and the structural identities around them."""
    s = frozenset(s)
    fails = []
    rep = index_report(rs, s)
    spec = parabolic_spec(rs, s)
    try:
        check_theorem(rep)
    except TheoremCounterexample as exc:
        fails.append(_fail("theorem", rs, s, str(exc), report=exc.payload))
    if rep.sum > spec.dim_levi:
        fails.append(_fail("theorem", rs, s, f"sum {rep.sum} exceeds dim l = {spec.dim_levi}"))
    if rep.chi_p < 0 or rep.chi_u < 0:
        fails.append(_fail("theorem", rs, s, "negative index"))
    if spec.dim_p + spec.dim_u != rs.dimension or spec.dim_p - spec.dim_u != spec.dim_levi:
        fails.append(_fail("theorem", rs, s, "dimension bookkeeping"))
    kpi, ks = len(spec.k_pi), len(spec.k_s)
    if not kpi <= spec.dim_v_s <= kpi + ks:
        fails.append(_fail("theorem", rs, s, f"dim V_S = {spec.dim_v_s} out of range"))
    if ks < len(spec.k_t):
        fails.append(_fail("theorem", rs, s, "#K(S) < #K(T_S)"))
    contained = spec.k_s.supports <= spec.k_pi.supports
    if (not spec.q_s) != contained or contained != (spec.s == spec.t_s):
        fails.append(_fail("theorem", rs, s, "Q_S empty / K(S) in K(Pi) / S = T_S not equivalent"))
    if contained and not rep.equality:
        fails.append(_fail("theorem", rs, s, "K(S) in K(Pi) without equality"))
    if len(rs.types) == 1 and kpi == rs.rank:
        if rep.cond_i != contained or (rep.cond_i and not rep.cond_ii):
            fails.append(_fail("theorem", rs, s, "cond (i) not equivalent to K(S) in K(Pi)"))
    if not s and not rep.equality:
        fails.append(_fail("borel", rs, s, f"Borel sum {rep.sum} != rank"))
    return fails


def _sample_subsets(t: SimpleType, count: int, seed: int) -> list[frozenset[int]]:
    rng = random.Random(f"{seed}:{t}")
    masks = sorted(rng.sample(range(1 << t.rank), min(count, 1 << t.rank)))
    return [frozenset(i for i in range(t.rank) if m >> i & 1) for m in masks]


def oracle_subsets(cfg: RunConfig) -> list[tuple[SimpleType, list[frozenset[int]]]]:
    """Subsets for the oracle sweep: exhaustive up to the rank cap, plus
    seeded samples for the spot types."""
    spot = expand_types(cfg.oracle_spot_types)
    plan = []
    for t in expand_types(cfg.types):
        if t not in spot and t.rank <= cfg.oracle_rank_cap:
            plan.append((t, list(subsets(build_root_system(t)))))
    for t in spot:
        plan.append((t, _sample_subsets(t, cfg.oracle_spot_samples, cfg.seed)))
    return plan


def check_oracle(rs: RootSystem, s, trials: int, seed: int) -> tuple[list[dict], bool]:
    """Formula against brute force for p_S and u_S; returns (failures, equality)."""
    s = frozenset(s)
    rep = index_report(rs, s)
    alg = chv.build_chevalley(rs)
    p = chv.index_oracle(chv.select(alg, "parabolic", s), trials, seed)
    u = chv.index_oracle(chv.select(alg, "nilradical", s), trials, seed)
    fails = []
    if (p, u) != (rep.chi_p, rep.chi_u):
        fails.append(_fail(
            "oracle", rs, s, "formula and oracle disagree",
            formula={"chi_p": rep.chi_p, "chi_u": rep.chi_u},
            oracle={"chi_p": p, "chi_u": u},
            seed=seed,
        ))
    return fails, rep.equality


def check_additivity(rs: RootSystem, s, trials: int, seed: int) -> list[dict]:
    res = chv.additivity_check(rs, s, trials, seed)
    if res.ok:
        return []
    return [_fail(
        "additivity", rs, s, "index additivity fails",
        chi_g=res.chi_g, chi_p=res.chi_p, chi_u=res.chi_u, chi_u_minus=res.chi_u_minus, seed=seed,
    )]


def run_verify(cfg: RunConfig) -> dict:
    """Run every suite; the summary contains no timings so it is byte-stable."""
    suites = {name: {"checked": 0, "failures": []} for name in ("lemma", "theorem", "oracle", "additivity")}
    enum_types = [t for t in expand_types(cfg.types) if t.rank <= cfg.max_enum_rank]
    for t in enum_types:
        rs = build_root_system(t)
        for s in subsets(rs):
            suites["lemma"]["checked"] += 1
            suites["lemma"]["failures"] += check_lemma(rs, s)
            suites["theorem"]["checked"] += 1
            for f in check_index(rs, s):
                key = "theorem" if f["suite"] == "borel" else f["suite"]
                suites[key]["failures"].append(f)
    for t, chosen in oracle_subsets(cfg):
        rs = build_root_system(t)
        for s in chosen:
            suites["oracle"]["checked"] += 1
            fails, equal = check_oracle(rs, s, cfg.trials, cfg.seed)
            suites["oracle"]["failures"] += fails
            if equal:
                suites["additivity"]["checked"] += 1
                suites["additivity"]["failures"] += check_additivity(rs, s, cfg.trials, cfg.seed)
    ok = all(not v["failures"] for v in suites.values())
    return {
        "config": {
            "types": [str(t) for t in expand_types(cfg.types)],
            "max_enum_rank": cfg.max_enum_rank,
            "oracle_rank_cap": cfg.oracle_rank_cap,
            "oracle_spot_types": [str(t) for t in expand_types(cfg.oracle_spot_types)],
            "oracle_spot_samples": cfg.oracle_spot_samples,
            "trials": cfg.trials,
            "seed": cfg.seed,
        },
        "numbering": "Bourbaki",
        "suites": suites,
        "ok": ok,
    }

