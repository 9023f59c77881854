"""Social choice functions and exhaustive checks of the Arrow axioms.

Rules are either named families (dictator, constant, Borda, plurality,
Copeland), which make sense for any number of voters and any subset of
alternatives, or explicit tables over the full profile domain.  Scoring
rules break ties by alternative index, lower first, so every output is a
strict ranking.
"""

from __future__ import annotations

import functools
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import InputError, InvalidTable, UnsupportedRule
from .prefs import (
    Profile,
    Ranking,
    check_names,
    check_profile,
    check_ranking,
    default_names,
    enumerate_profiles,
    profile_count,
    profile_from_names,
    profile_to_names,
    ranking_from_names,
    ranking_to_names,
    restrict_profile,
    restrict_ranking,
)

NAMED_KINDS = ("dictator", "constant", "borda-lex", "plurality-lex", "copeland-lex")
KINDS = NAMED_KINDS + ("table",)

DEFAULT_MAX_WITNESSES = 10


@dataclass(frozen=True)
class ScfRule:
    kind: str
    n: int
    m: int
    voter: int | None = None
    ranking: Ranking | None = None
    # table rules only: sorted (profile, ranking) pairs
    entries: tuple[tuple[Profile, Ranking], ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown rule kind {self.kind!r}")
        if self.n < 1 or self.m < 1:
            raise InputError("a rule needs n >= 1 voters and m >= 1 alternatives")
        if self.kind == "dictator" and (self.voter is None or not 0 <= self.voter < self.n):
            raise InputError(f"dictator index {self.voter} outside [0, {self.n})")
        if self.kind == "constant":
            if self.ranking is None:
                raise InputError("constant rule needs a ranking")
            check_ranking(self.ranking, self.m)
        if self.kind == "table" and self.entries is None:
            raise InputError("table rule needs entries")

    @classmethod
    def dictator(cls, i: int, n: int, m: int) -> ScfRule:
        return cls("dictator", n, m, voter=i)

    @classmethod
    def constant(cls, ranking: Sequence[int], n: int) -> ScfRule:
        r = check_ranking(ranking)
        return cls("constant", n, len(r), ranking=r)

    @classmethod
    def borda(cls, n: int, m: int) -> ScfRule:
        return cls("borda-lex", n, m)

    @classmethod
    def plurality(cls, n: int, m: int) -> ScfRule:
        return cls("plurality-lex", n, m)

    @classmethod
    def copeland(cls, n: int, m: int) -> ScfRule:
        return cls("copeland-lex", n, m)

    @classmethod
    def table(cls, entries: Iterable[tuple[Profile, Ranking]], n: int, m: int) -> ScfRule:
        """Build a table rule, checking it is total over all (m!)^n profiles."""
        mapping: dict[Profile, Ranking] = {}
        for p, r in entries:
            p = check_profile(p, n, m)
            if p in mapping:
                raise InvalidTable(f"duplicate table entry for profile {p}")
            mapping[p] = check_ranking(r, m)
        expected = profile_count(n, m)
        if len(mapping) != expected:
            raise InvalidTable(f"table has {len(mapping)} entries, domain has {expected}")
        return cls("table", n, m, entries=tuple(sorted(mapping.items())))

    @property
    def is_named(self) -> bool:
        return self.kind in NAMED_KINDS

    @functools.cached_property
    def _lookup(self) -> dict[Profile, Ranking]:
        return dict(self.entries or ())

    def describe(self) -> str:
        if self.kind == "dictator":
            return f"dictator({self.voter})"
        if self.kind == "constant":
            return f"constant{self.ranking}"
        return self.kind

    def restrict_voters(self, keep: Sequence[int]) -> ScfRule:
        """The same family on the sub-society ``keep`` (voters renumbered densely).

        A dictator stays the dictator when kept; if removed, the lowest
        surviving voter takes the role.
        """
        if not self.is_named:
            raise UnsupportedRule("table rules have no sub-society semantics")
        keep = list(keep)
        if not keep or sorted(set(keep)) != keep or keep[-1] >= self.n or keep[0] < 0:
            raise InputError(f"bad sub-society {keep} for n={self.n}")
        if self.kind == "dictator":
            voter = keep.index(self.voter) if self.voter in keep else 0
            return ScfRule("dictator", len(keep), self.m, voter=voter)
        return ScfRule(self.kind, len(keep), self.m, voter=None, ranking=self.ranking)

    def restrict_alternatives(self, removed: Iterable[int]) -> ScfRule:
        if not self.is_named:
            raise UnsupportedRule("table rules have no restricted-alternative semantics")
        removed = frozenset(removed)
        ranking = self.ranking
        if ranking is not None:
            ranking, _ = restrict_ranking(ranking, removed)
        m = self.m - len(removed)
        if m < 2:
            raise InputError("restriction must leave at least 2 alternatives")
        return ScfRule(self.kind, self.n, m, voter=self.voter, ranking=ranking)


def _rank_by_score(scores: Sequence[float]) -> Ranking:
    return tuple(sorted(range(len(scores)), key=lambda x: (-scores[x], x)))


def borda_scores(p: Profile) -> list[int]:
    m = len(p[0])
    scores = [0] * m
    for r in p:
        for pos, x in enumerate(r):
            scores[x] += m - 1 - pos
    return scores


def plurality_scores(p: Profile) -> list[int]:
    scores = [0] * len(p[0])
    for r in p:
        scores[r[0]] += 1
    return scores


def copeland_scores(p: Profile) -> list[int]:
    m = len(p[0])
    positions = [{x: pos for pos, x in enumerate(r)} for r in p]
    scores = [0] * m
    for a, b in itertools.combinations(range(m), 2):
        margin = sum(1 if pos[a] < pos[b] else -1 for pos in positions)
        if margin > 0:
            scores[a] += 1
            scores[b] -= 1
        elif margin < 0:
            scores[a] -= 1
            scores[b] += 1
    return scores


_SCORERS = {
    "borda-lex": borda_scores,
    "plurality-lex": plurality_scores,
    "copeland-lex": copeland_scores,
}


def evaluate(rule: ScfRule, p: Profile) -> Ranking:
    if len(p) != rule.n or any(len(r) != rule.m for r in p):
        raise InputError(f"profile shape does not match rule (n={rule.n}, m={rule.m})")
    if rule.kind == "dictator":
        return p[rule.voter]
    if rule.kind == "constant":
        return rule.ranking
    if rule.kind == "table":
        try:
            return rule._lookup[p]
        except KeyError:
            raise InvalidTable(f"table has no entry for profile {p}") from None
    return _rank_by_score(_SCORERS[rule.kind](p))


def _evaluate_chunk(args):
    rule, profiles = args
    return [evaluate(rule, p) for p in profiles]


@functools.lru_cache(maxsize=32)
def _tabulate_serial(rule: ScfRule) -> tuple[tuple[Profile, Ranking], ...]:
    return tuple((p, evaluate(rule, p)) for p in enumerate_profiles(rule.n, rule.m))


def tabulate(rule: ScfRule, jobs: int = 1) -> tuple[tuple[Profile, Ranking], ...]:
    """``(profile, social ranking)`` for every profile, in enumeration order."""
    if jobs <= 1:
        return _tabulate_serial(rule)
    profiles = list(enumerate_profiles(rule.n, rule.m))
    size = max(1, len(profiles) // (4 * jobs))
    chunks = [(rule, profiles[i:i + size]) for i in range(0, len(profiles), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        socials = [s for part in pool.map(_evaluate_chunk, chunks) for s in part]
    return tuple(zip(profiles, socials))


def _above(r: Ranking, a: int, b: int) -> bool:
    return r.index(a) < r.index(b)


@dataclass(frozen=True)
class Witness:
    """One counterexample; which fields are set depends on the axiom."""

    pair: tuple[int, int] | None = None
    profiles: tuple[Profile, ...] = ()
    socials: tuple[Ranking, ...] = ()
    removed: tuple[int, ...] | None = None
    voter: int | None = None


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    holds: bool
    witnesses: tuple[Witness, ...]
    violations: int
    scanned: int

    def __post_init__(self):
        assert self.holds == (not self.witnesses)


def _report(axiom, witnesses, violations, scanned):
    return AxiomReport(axiom, not witnesses, tuple(witnesses), violations, scanned)


def check_pareto(rule: ScfRule, max_witnesses: int | None = DEFAULT_MAX_WITNESSES, jobs: int = 1) -> AxiomReport:
    """Scan every profile and ordered pair for a unanimous preference the rule reverses."""
    if rule.n > 4 or rule.m > 4:
        raise InputError("check_pareto is limited to n <= 4, m <= 4")
    pairs = list(itertools.permutations(range(rule.m), 2))
    witnesses, violations = [], 0
    for p, social in tabulate(rule, jobs):
        for a, b in pairs:
            if all(_above(r, a, b) for r in p) and not _above(social, a, b):
                violations += 1
                if max_witnesses is None or len(witnesses) < max_witnesses:
                    witnesses.append(Witness(pair=(a, b), profiles=(p,), socials=(social,)))
    return _report("pareto", witnesses, violations, profile_count(rule.n, rule.m))


def check_iia_pairwise(rule: ScfRule, max_witnesses: int | None = DEFAULT_MAX_WITNESSES, jobs: int = 1) -> AxiomReport:
    """Binary independence: the social a-vs-b order is a function of the voters' a-vs-b orders.

    Profiles are grouped by their pattern of individual comparisons on each
    pair; a witness pairs the first profile of a group with a later profile
    whose social comparison differs.
    """
    if rule.n > 4 or rule.m > 4:
        raise InputError("check_iia_pairwise is limited to n <= 4, m <= 4")
    table = tabulate(rule, jobs)
    witnesses, violations = [], 0
    for a, b in itertools.combinations(range(rule.m), 2):
        first: dict[tuple[bool, ...], tuple[Profile, Ranking]] = {}
        for p, social in table:
            key = tuple(_above(r, a, b) for r in p)
            if key not in first:
                first[key] = (p, social)
                continue
            p0, s0 = first[key]
            if _above(s0, a, b) != _above(social, a, b):
                violations += 1
                if max_witnesses is None or len(witnesses) < max_witnesses:
                    witnesses.append(Witness(pair=(a, b), profiles=(p0, p), socials=(s0, social)))
    return _report("iia-pairwise", witnesses, violations, len(table))


def check_iia_restriction(rule: ScfRule, max_witnesses: int | None = DEFAULT_MAX_WITNESSES, jobs: int = 1) -> AxiomReport:
    """Literal IIA: removing alternatives commutes with aggregation."""
    if not rule.is_named:
        raise UnsupportedRule("check_iia_restriction needs a named rule family")
    if rule.n > 3 or rule.m > 3:
        raise InputError("check_iia_restriction is limited to n <= 3, m <= 3")
    witnesses, violations, scanned = [], 0, 0
    table = tabulate(rule, jobs)
    for size in range(1, rule.m - 1):
        for removed in itertools.combinations(range(rule.m), size):
            sub = rule.restrict_alternatives(removed)
            for p, social in table:
                scanned += 1
                lhs, _ = restrict_ranking(social, removed)
                rhs = evaluate(sub, restrict_profile(p, removed)[0])
                if lhs != rhs:
                    violations += 1
                    if max_witnesses is None or len(witnesses) < max_witnesses:
                        witnesses.append(Witness(removed=removed, profiles=(p,), socials=(lhs, rhs)))
    return _report("iia-restriction", witnesses, violations, scanned)


def find_dictatorship(rule: ScfRule, jobs: int = 1) -> int | None:
    """The voter whose ranking the rule always returns, if there is one."""
    if rule.n > 4 or rule.m > 4:
        raise InputError("find_dictatorship is limited to n <= 4, m <= 4")
    candidates = set(range(rule.n))
    for p, social in tabulate(rule, jobs):
        candidates = {i for i in candidates if p[i] == social}
        if not candidates:
            return None
    # with m == 1 every voter qualifies; report the lowest
    return min(candidates)


def check_non_dictatorship(rule: ScfRule, jobs: int = 1) -> AxiomReport:
    i = find_dictatorship(rule, jobs)
    witnesses = [] if i is None else [Witness(voter=i)]
    return _report("dictatorship", witnesses, len(witnesses), profile_count(rule.n, rule.m))


CHECKS = {
    "pareto": check_pareto,
    "iia-pairwise": check_iia_pairwise,
    "iia-restriction": check_iia_restriction,
}


def replay_witness(rule: ScfRule, axiom: str, w: Witness) -> bool:
    """Re-evaluate a witness from scratch; True iff it is a genuine violation."""
    if axiom == "pareto":
        (p,), (a, b) = w.profiles, w.pair
        social = evaluate(rule, p)
        return social == w.socials[0] and all(_above(r, a, b) for r in p) and not _above(social, a, b)
    if axiom == "iia-pairwise":
        (p, q), (a, b) = w.profiles, w.pair
        sp, sq = evaluate(rule, p), evaluate(rule, q)
        same_votes = all(_above(r, a, b) == _above(s, a, b) for r, s in zip(p, q))
        return (sp, sq) == tuple(w.socials) and same_votes and _above(sp, a, b) != _above(sq, a, b)
    if axiom == "iia-restriction":
        (p,) = w.profiles
        lhs, _ = restrict_ranking(evaluate(rule, p), w.removed)
        rhs = evaluate(rule.restrict_alternatives(w.removed), restrict_profile(p, w.removed)[0])
        return (lhs, rhs) == tuple(w.socials) and lhs != rhs
    if axiom == "dictatorship":
        return find_dictatorship(rule) == w.voter
    raise InputError(f"unknown axiom {axiom!r}")


# -- JSON -------------------------------------------------------------------

def rule_to_dict(rule: ScfRule, names: Sequence[str] | None = None) -> dict[str, Any]:
    names = list(names) if names is not None else default_names(rule.m)
    d: dict[str, Any] = {"kind": rule.kind, "n": rule.n, "alternatives": names}
    if rule.kind == "dictator":
        d["i"] = rule.voter
    elif rule.kind == "constant":
        d["ranking"] = ranking_to_names(rule.ranking, names)
    elif rule.kind == "table":
        d["entries"] = [
            {"profile": profile_to_names(p, names), "ranking": ranking_to_names(r, names)}
            for p, r in rule.entries
        ]
    return d


def rule_from_dict(d: dict[str, Any]) -> tuple[ScfRule, list[str]]:
    """Parse rule JSON; returns the rule and its alternative names."""
    try:
        kind = d["kind"]
        n = int(d["n"])
        names = check_names(d["alternatives"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"rule JSON needs kind, n and alternatives: {exc}") from exc
    m = len(names)
    if kind == "dictator":
        if "i" not in d:
            raise InputError("dictator rule JSON needs 'i'")
        return ScfRule.dictator(int(d["i"]), n, m), names
    if kind == "constant":
        return ScfRule.constant(ranking_from_names(d.get("ranking", []), names), n), names
    if kind == "table":
        entries = []
        for e in d.get("entries", []):
            try:
                entries.append((profile_from_names(e["profile"], names), ranking_from_names(e["ranking"], names)))
            except (KeyError, TypeError) as exc:
                raise InvalidTable(f"malformed table entry {e!r}") from exc
        return ScfRule.table(entries, n, m), names
    return ScfRule(kind, n, m), names


def witness_to_dict(w: Witness, names: Sequence[str]) -> dict[str, Any]:
    d: dict[str, Any] = {}
    if w.pair is not None:
        d["pair"] = [names[x] for x in w.pair]
    if w.profiles:
        d["profiles"] = [profile_to_names(p, names) for p in w.profiles]
    if w.removed is not None:
        d["removed"] = [names[x] for x in w.removed]
        survivors = [x for i, x in enumerate(names) if i not in w.removed]
        d["socials"] = [ranking_to_names(s, survivors) for s in w.socials]
    elif w.socials:
        d["socials"] = [ranking_to_names(s, names) for s in w.socials]
    if w.voter is not None:
        d["voter"] = w.voter
    return d


def witness_from_dict(d: dict[str, Any], names: Sequence[str]) -> Witness:
    index = {x: i for i, x in enumerate(names)}
    removed = tuple(index[x] for x in d["removed"]) if "removed" in d else None
    social_names = [x for i, x in enumerate(names) if removed is None or i not in removed]
    return Witness(
        pair=tuple(index[x] for x in d["pair"]) if "pair" in d else None,
        profiles=tuple(profile_from_names(p, names) for p in d.get("profiles", [])),
        socials=tuple(ranking_from_names(s, social_names) for s in d.get("socials", [])),
        removed=removed,
        voter=d.get("voter"),
    )


def report_to_dict(report: AxiomReport, names: Sequence[str]) -> dict[str, Any]:
    return {
        "axiom": report.axiom,
        "holds": report.holds,
        "violations": report.violations,
        "scanned": report.scanned,
        "witnesses": [witness_to_dict(w, names) for w in report.witnesses],
    }


def report_from_dict(d: dict[str, Any], names: Sequence[str]) -> AxiomReport:
    return AxiomReport(
        d["axiom"], d["holds"], tuple(witness_from_dict(w, names) for w in d["witnesses"]),
        d["violations"], d["scanned"],
    )
