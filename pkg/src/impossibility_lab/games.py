"""Coloring games on a triangulated simplex.

``play_sperner_game`` is the two-player game in which whoever completes a
panchromatic cell loses.  ``play_social_choice_game`` pits voter ``i``
(player A) against the rest of society (player B): each round both are
compared with the social ranking, and the player that matches colors a
vertex.  ``panchromatic_from_dictator`` runs the other direction: a
dictator colors the whole board, and a panchromatic cell is read off.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, Sequence

from .decisive import find_dictator
from .errors import IllegalMove, InputError, InternalInvariantBroken, PreconditionFailed, UnsupportedRule
from .prefs import Profile, Ranking, default_names, profile_from_names, profile_to_names, ranking_from_names, ranking_to_names
from .scf import ScfRule, check_iia_pairwise, check_pareto, evaluate, rule_from_dict, rule_to_dict
from .sperner import Labeling, Triangulation, find_panchromatic_path, is_panchromatic, structural_problems

A, B = "A", "B"


class Move(NamedTuple):
    vertex: int
    label: int
    mover: str


@dataclass(frozen=True)
class GameState:
    triangulation: Triangulation
    labels: tuple[tuple[int, str] | None, ...]
    mover: str = A
    history: tuple[Move, ...] = ()

    @classmethod
    def fresh(cls, t: Triangulation) -> GameState:
        return cls(t, (None,) * len(t.vertices))

    def play(self, vertex: int, label: int) -> GameState:
        if (vertex, label) not in legal_moves(self):
            raise IllegalMove(f"({vertex}, {label}) is not legal")
        labels = list(self.labels)
        labels[vertex] = (label, self.mover)
        return GameState(self.triangulation, tuple(labels), B if self.mover == A else A,
                         self.history + (Move(vertex, label, self.mover),))

    def label_of(self, v: int) -> int | None:
        entry = self.labels[v]
        return None if entry is None else entry[0]

    @property
    def complete(self) -> bool:
        return all(x is not None for x in self.labels)

    def panchromatic_at(self, vertex: int) -> list[int]:
        """Fully labeled panchromatic cells through ``vertex``, ascending."""
        t = self.triangulation
        out = []
        for ci in t.vertex_cells[vertex]:
            labs = {self.label_of(v) for v in t.cells[ci]}
            if None not in labs and len(labs) == t.dim + 1:
                out.append(ci)
        return out


def legal_moves(s: GameState) -> list[tuple[int, int]]:
    t = s.triangulation
    return [(v, lab) for v in range(len(t.vertices)) if s.labels[v] is None for lab in sorted(t.carriers[v])]


# policies: (state, legal moves, rng) -> move

def first_legal(state, moves, rng):
    return moves[0]


def uniform_random(state, moves, rng):
    return moves[rng.randrange(len(moves))]


def avoid_losing(state, moves, rng):
    """First legal move that does not complete a panchromatic cell, else the first move."""
    for move in moves:
        if not state.play(*move).panchromatic_at(move[0]):
            return move
    return moves[0]


POLICIES: dict[str, Callable] = {
    "first-legal": first_legal,
    "uniform-random": uniform_random,
    "avoid-losing": avoid_losing,
}


@dataclass(frozen=True)
class GameResult:
    loser: str | None
    completing_cell: int | None
    state: GameState
    losing_move: int | None = None  # index into state.history


def play_sperner_game(t: Triangulation, strategy_a: Callable, strategy_b: Callable, seed: int = 0) -> GameResult:
    problems = structural_problems(t)
    if problems:
        raise InputError("invalid triangulation: " + problems[0])
    rng = random.Random(seed)
    state = GameState.fresh(t)
    while True:
        moves = legal_moves(state)
        if not moves:
            raise InternalInvariantBroken("board filled without a panchromatic cell")
        policy = strategy_a if state.mover == A else strategy_b
        move = policy(state, moves, rng)
        if tuple(move) not in moves:
            raise IllegalMove(f"policy for {state.mover} chose illegal move {move!r}")
        mover = state.mover
        state = state.play(*move)
        completed = state.panchromatic_at(move[0])
        if completed:
            return GameResult(mover, completed[0], state, len(state.history) - 1)


def replay_loss(result: GameResult) -> bool:
    """Check that the completing cell turns panchromatic exactly at the losing move."""
    t = result.state.triangulation
    cell = result.completing_cell
    state = GameState.fresh(t)
    for idx, (v, lab, mover) in enumerate(result.state.history):
        before = state
        state = state.play(v, lab)
        now = {state.label_of(u) for u in t.cells[cell]}
        done = None not in now and len(now) == t.dim + 1
        if done:
            was = {before.label_of(u) for u in t.cells[cell]}
            return idx == result.losing_move and mover == result.loser and (None in was or len(was) <= t.dim)
    return False


# -- social choice game -------------------------------------------------------

class Round(NamedTuple):
    profile: Profile
    a_ranking: Ranking
    b_ranking: Ranking
    social: Ranking
    action: str  # "A-colors", "B-colors" or "skip"
    vertex: int | None
    label: int | None


@dataclass(frozen=True)
class GameTranscript:
    family: ScfRule
    player: int  # voter index of player A
    triangulation: Triangulation
    rounds: tuple[Round, ...]
    labels: tuple[int | None, ...]
    colorers: tuple[str | None, ...]  # current owner of each vertex

    @property
    def tally(self) -> dict[str, int]:
        """Number of coloring events each player performed."""
        moves = [r.action for r in self.rounds if r.vertex is not None]
        return {A: moves.count("A-colors"), B: moves.count("B-colors")}


def play_social_choice_game(family: ScfRule, i: int, profiles: Sequence[Profile], t: Triangulation) -> GameTranscript:
    """Run one round per profile.

    Exactly one player matching the social ranking colors; both matching
    gives the move to A; neither matching skips.  A mover colors the
    lowest-index free vertex with its lowest legal label; once the board
    is full the mover colors over the lowest vertex held by the opponent,
    and does nothing if it already holds every vertex.  Every profile is
    played, so the outcome does not hinge on which profiles come first.
    """
    if not family.is_named:
        raise UnsupportedRule("the social choice game needs a named rule family")
    if family.n < 2:
        raise InputError("the social choice game needs at least 2 voters")
    if not 0 <= i < family.n:
        raise InputError(f"player index {i} outside [0, {family.n})")
    problems = structural_problems(t)
    if problems:
        raise InputError("invalid triangulation: " + problems[0])
    rest = [j for j in range(family.n) if j != i]
    sub = family.restrict_voters(rest)
    labels: list[int | None] = [None] * len(t.vertices)
    colorers: list[str | None] = [None] * len(t.vertices)
    rounds = []
    for p in profiles:
        social = evaluate(family, p)
        a_rank = p[i]
        b_rank = evaluate(sub, tuple(p[j] for j in rest))
        a_match, b_match = a_rank == social, b_rank == social
        mover = A if a_match else B if b_match else None
        vertex = label = None
        if mover is not None:
            free = [v for v, c in enumerate(colorers) if c is None]
            taken = [v for v, c in enumerate(colorers) if c is not None and c != mover]
            target = free or taken
            if target:
                vertex = target[0]
                label = min(t.carriers[vertex])
                labels[vertex], colorers[vertex] = label, mover
        action = "skip" if mover is None else f"{mover}-colors"
        rounds.append(Round(p, a_rank, b_rank, social, action, vertex, label))
    return GameTranscript(family, i, t, tuple(rounds), tuple(labels), tuple(colorers))


def dictator_from_transcript(tr: GameTranscript) -> int | None:
    """Player A's voter index if A single-handedly colored every vertex."""
    if tr.colorers and all(c == A for c in tr.colorers) and tr.tally[B] == 0:
        return tr.player
    return None


def transcript_to_dict(tr: GameTranscript, names: Sequence[str] | None = None) -> dict[str, Any]:
    names = list(names) if names is not None else default_names(tr.family.m)

    def rk(r):
        return ranking_to_names(r, names)

    return {
        "family": rule_to_dict(tr.family, names),
        "player": tr.player,
        "rounds": [
            {
                "profile": profile_to_names(r.profile, names),
                "a_ranking": rk(r.a_ranking),
                "b_ranking": rk(r.b_ranking),
                "social": rk(r.social),
                "action": r.action,
                "vertex": r.vertex,
                "label": r.label,
            }
            for r in tr.rounds
        ],
        "labels": list(tr.labels),
        "colorers": list(tr.colorers),
        "tally": tr.tally,
    }


def replay_transcript(d: dict[str, Any], t: Triangulation) -> bool:
    """Re-run a serialized transcript from its profiles; True iff every round matches."""
    family, names = rule_from_dict(d["family"])
    profiles = [profile_from_names(r["profile"], names) for r in d["rounds"]]
    again = transcript_to_dict(play_social_choice_game(family, d["player"], profiles, t), names)
    return again == d


# -- dictator colors the board --------------------------------------------------

def first_label(vertex: int, choices: Sequence[int], rng: random.Random) -> int:
    return choices[0]


def random_label(vertex: int, choices: Sequence[int], rng: random.Random) -> int:
    return choices[rng.randrange(len(choices))]


LABELERS = {"first-legal": first_label, "uniform-random": random_label}


def panchromatic_from_dictator(family: ScfRule, t: Triangulation, labeler: Callable = first_label,
                               seed: int = 0) -> tuple[int, Labeling]:
    """Let the rule's dictator color every vertex, then find a panchromatic cell."""
    for check in (check_pareto, check_iia_pairwise):
        report = check(family, max_witnesses=1)
        if not report.holds:
            raise PreconditionFailed(f"{family.describe()} fails {report.axiom}", witness=report)
    find_dictator(family)
    rng = random.Random(seed)
    labels = tuple(labeler(v, sorted(c), rng) for v, c in enumerate(t.carriers))
    result = find_panchromatic_path(t, labels)
    if not is_panchromatic(t, labels, result.cell):
        raise InternalInvariantBroken("path search returned a non-panchromatic cell")
    return result.cell, labels
