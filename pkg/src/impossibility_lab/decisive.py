"""Decisive coalitions and a constructive dictator search.

Starting from the whole society (decisive by Pareto), a decisive coalition
is repeatedly split into its lowest member and the rest; one part is
always decisive again when the rule satisfies Pareto and pairwise IIA.
Every claim along the way is confirmed by an exhaustive scan over the
profile domain, and the scans are recorded in a certificate that can be
replayed later.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import AxiomViolation, InputError, PreconditionFailed
from .prefs import Profile, default_names, profile_from_names, profile_to_names
from .scf import ScfRule, check_iia_pairwise, check_pareto, tabulate

Coalition = frozenset


def _above(r, a, b):
    return r.index(a) < r.index(b)


@dataclass(frozen=True)
class PairCheck:
    """Outcome of one exhaustive (a, b)-decisiveness scan."""

    coalition: frozenset[int]
    pair: tuple[int, int]
    decisive: bool
    scanned: int
    witness: Profile | None = None

    def __bool__(self):
        return self.decisive


@dataclass(frozen=True)
class ContractionStep:
    parent: frozenset[int]
    left: frozenset[int]
    right: frozenset[int]
    survivor: frozenset[int]
    pivotal_pair: tuple[int, int]
    # profile in the test family where the left part was overruled, if any
    family_witness: Profile | None = None


@dataclass(frozen=True)
class DecisiveCertificate:
    coalition: frozenset[int]
    verified_pairs: tuple[tuple[int, int, int], ...]  # (a, b, profiles scanned)
    chain: tuple[ContractionStep, ...] = ()


def _coalition(rule: ScfRule, D: Iterable[int]) -> frozenset[int]:
    D = frozenset(D)
    if not D:
        raise InputError("coalition must be non-empty")
    if any(not 0 <= i < rule.n for i in D):
        raise InputError(f"coalition {sorted(D)} out of range for n={rule.n}")
    return D


def _check_alts(rule, *alts):
    if any(not 0 <= x < rule.m for x in alts):
        raise InputError(f"alternatives {alts} out of range for m={rule.m}")
    if len(set(alts)) != len(alts):
        raise InputError(f"alternatives {alts} must be distinct")


def _limits(rule):
    if rule.n > 4 or rule.m > 4:
        raise InputError("decisiveness scans are limited to n <= 4, m <= 4")


def is_pair_decisive(rule: ScfRule, D: Iterable[int], a: int, b: int) -> PairCheck:
    """Whenever every member of D ranks a over b, does society too?"""
    D = _coalition(rule, D)
    _check_alts(rule, a, b)
    _limits(rule)
    scanned = 0
    for p, social in tabulate(rule):
        if all(_above(p[i], a, b) for i in D):
            scanned += 1
            if not _above(social, a, b):
                return PairCheck(D, (a, b), False, scanned, p)
    return PairCheck(D, (a, b), True, scanned)


def _verify_axioms(rule: ScfRule):
    for check in (check_pareto, check_iia_pairwise):
        report = check(rule, max_witnesses=1)
        if not report.holds:
            raise PreconditionFailed(f"{rule.describe()} fails {report.axiom}", witness=report)


def expand_decisive(rule: ScfRule, D: Iterable[int], seed_pair: tuple[int, int],
                    verify_axioms: bool = True) -> DecisiveCertificate:
    """Confirm that an (a, b)-decisive coalition is decisive for every ordered pair.

    With ``verify_axioms=False`` the caller vouches for Pareto and IIA; a
    rule that secretly violates them then surfaces as an AxiomViolation.
    """
    D = _coalition(rule, D)
    seed = is_pair_decisive(rule, D, *seed_pair)
    if not seed:
        raise PreconditionFailed(f"{sorted(D)} is not {seed_pair}-decisive", witness=seed.witness)
    if verify_axioms:
        _verify_axioms(rule)
    verified = []
    for a, b in itertools.permutations(range(rule.m), 2):
        check = seed if (a, b) == tuple(seed_pair) else is_pair_decisive(rule, D, a, b)
        if not check:
            raise AxiomViolation(
                f"{sorted(D)} is {tuple(seed_pair)}-decisive but not ({a}, {b})-decisive",
                pair=(a, b), witness=check.witness,
            )
        verified.append((a, b, check.scanned))
    return DecisiveCertificate(D, tuple(verified))


def is_decisive(rule: ScfRule, D: Iterable[int]) -> bool:
    return all(is_pair_decisive(rule, D, a, b) for a, b in itertools.permutations(range(rule.m), 2))


def _family_overrule(rule, left, right, a, b, c):
    """Search the contraction test family for a profile where society ranks c over a.

    Family: members of ``left`` rank a over b and a over c, members of
    ``right`` rank a over b and c over b, everyone else is unconstrained.
    """
    for p, social in tabulate(rule):
        if all(_above(p[i], a, b) and _above(p[i], a, c) for i in left) and \
           all(_above(p[j], a, b) and _above(p[j], c, b) for j in right):
            if not _above(social, a, c):
                return p
    return None


def contract_decisive(rule: ScfRule, D: Iterable[int], verify_axioms: bool = True,
                      check_parent: bool = True) -> tuple[frozenset[int], ContractionStep]:
    """Split a decisive coalition and return the part that is still decisive."""
    D = _coalition(rule, D)
    _limits(rule)
    if len(D) < 2:
        raise InputError("cannot contract a singleton coalition")
    if rule.m < 3:
        raise InputError("contraction needs at least 3 alternatives")
    if check_parent and not is_decisive(rule, D):
        raise PreconditionFailed(f"{sorted(D)} is not decisive")
    if verify_axioms:
        _verify_axioms(rule)
    left = frozenset([min(D)])
    right = D - left
    a, b, c = 0, 1, 2
    overruled = _family_overrule(rule, left, right, a, b, c)
    if overruled is None:
        survivor, pivot = left, (a, c)
    else:
        survivor, pivot = right, (c, b)
    check = is_pair_decisive(rule, survivor, *pivot)
    if not check:
        raise AxiomViolation(
            f"neither {sorted(left)} nor {sorted(right)} is decisive",
            pair=pivot, witness=check.witness,
        )
    expand_decisive(rule, survivor, pivot, verify_axioms=False)
    return survivor, ContractionStep(D, left, right, survivor, pivot, overruled)


def find_dictator(rule: ScfRule) -> tuple[int, DecisiveCertificate]:
    """Locate the dictator of a Pareto + IIA rule by repeated contraction."""
    if rule.m < 3:
        raise InputError("find_dictator needs at least 3 alternatives")
    _limits(rule)
    _verify_axioms(rule)
    D = frozenset(range(rule.n))
    expand_decisive(rule, D, (0, 1), verify_axioms=False)
    chain = []
    while len(D) > 1:
        # D was certified decisive by the previous expansion
        D, step = contract_decisive(rule, D, verify_axioms=False, check_parent=False)
        chain.append(step)
    (i,) = D
    cert = expand_decisive(rule, D, (0, 1), verify_axioms=False)
    for p, social in tabulate(rule):
        if p[i] != social:
            raise AxiomViolation(f"voter {i} is decisive but not a dictator", witness=p)
    return i, DecisiveCertificate(D, cert.verified_pairs, tuple(chain))


def replay_certificate(rule: ScfRule, cert: DecisiveCertificate) -> bool:
    """Redo every scan a certificate claims; True iff all of them agree."""
    pairs = list(itertools.permutations(range(rule.m), 2))
    if [(a, b) for a, b, _ in cert.verified_pairs] != pairs:
        return False
    for a, b, scanned in cert.verified_pairs:
        check = is_pair_decisive(rule, cert.coalition, a, b)
        if not check or check.scanned != scanned:
            return False
    expected_parent = frozenset(range(rule.n))
    for step in cert.chain:
        if step.parent != expected_parent or not step.survivor < step.parent:
            return False
        try:
            survivor, redo = contract_decisive(rule, step.parent, verify_axioms=False)
        except (AxiomViolation, PreconditionFailed):
            return False
        if redo != step:
            return False
        expected_parent = survivor
    return not cert.chain or cert.chain[-1].survivor == cert.coalition


# -- JSON -------------------------------------------------------------------

def certificate_to_dict(cert: DecisiveCertificate, names: Sequence[str] | None = None) -> dict[str, Any]:
    m = 1 + max((max(a, b) for a, b, _ in cert.verified_pairs), default=0)
    names = list(names) if names is not None else default_names(m)

    def profile(p):
        return None if p is None else profile_to_names(p, names)

    return {
        "coalition": sorted(cert.coalition),
        "verified_pairs": [{"pair": [names[a], names[b]], "scanned": s} for a, b, s in cert.verified_pairs],
        "chain": [
            {
                "parent": sorted(s.parent),
                "partition": [sorted(s.left), sorted(s.right)],
                "survivor": sorted(s.survivor),
                "pivotal_pair": [names[x] for x in s.pivotal_pair],
                "family_witness": profile(s.family_witness),
            }
            for s in cert.chain
        ],
    }


def certificate_from_dict(d: dict[str, Any], names: Sequence[str]) -> DecisiveCertificate:
    index = {x: i for i, x in enumerate(names)}
    chain = []
    for s in d["chain"]:
        w = s.get("family_witness")
        chain.append(ContractionStep(
            frozenset(s["parent"]), frozenset(s["partition"][0]), frozenset(s["partition"][1]),
            frozenset(s["survivor"]), tuple(index[x] for x in s["pivotal_pair"]),
            None if w is None else profile_from_names(w, names),
        ))
    pairs = tuple((index[e["pair"][0]], index[e["pair"][1]], e["scanned"]) for e in d["verified_pairs"])
    return DecisiveCertificate(frozenset(d["coalition"]), pairs, tuple(chain))
