"""Exit criteria.  Each test prints one PASS/FAIL line with its runtime budget."""

import random
import time
from contextlib import contextmanager

from conftest import ACCEPTANCE_LINES
from impossibility_lab.decisive import find_dictator, replay_certificate
from impossibility_lab.fixed_point import approx_fixed_point, constant_map, rotate_map
from impossibility_lab.games import (
    dictator_from_transcript,
    panchromatic_from_dictator,
    play_social_choice_game,
    play_sperner_game,
    random_label,
    replay_loss,
    uniform_random,
)
from impossibility_lab.prefs import enumerate_profiles
from impossibility_lab.scf import ScfRule, check_iia_pairwise, check_pareto, replay_witness
from impossibility_lab.sperner import (
    find_panchromatic_all,
    find_panchromatic_path,
    kuhn_triangulation,
    random_sperner_labeling,
    validate_labeling,
)


@contextmanager
def criterion(name, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget
        status = "PASS" if ok and within else "FAIL"
        line = f"[{status}] {name}: {elapsed:.3f}s (budget {budget}s)"
        ACCEPTANCE_LINES.append(line)
        print("\n" + line)
    assert within, f"{name} took {elapsed:.3f}s, budget {budget}s"


def test_1_paper_figure(paper_fig):
    with criterion("1 paper figure: 3 panchromatic cells, path cell among them", 0.1):
        t, labels = paper_fig
        assert (len(t.vertices), len(t.cells)) == (9, 8)
        assert validate_labeling(t, labels).valid
        cells = find_panchromatic_all(t, labels)
        assert len(cells) == 3
        assert find_panchromatic_path(t, labels).cell in cells


def test_2_sperner_parity_and_oracle():
    with criterion("2 Sperner parity + path/brute-force agreement", 10):
        grids = [(2, 2), (2, 4), (2, 6), (2, 8), (3, 2), (3, 3), (3, 4)]
        rng = random.Random(2024)
        runs = 0
        for d, k in grids:
            t = kuhn_triangulation(d, k)
            for _ in range(30):
                labels = random_sperner_labeling(t, rng)
                cells = find_panchromatic_all(t, labels)
                assert len(cells) % 2 == 1
                assert find_panchromatic_path(t, labels).cell in cells
                runs += 1
        assert runs >= 200


def test_3_arrow_constructive():
    with criterion("3 dictators pass Pareto/IIA and are found by contraction", 5):
        for n in (2, 3):
            for i in range(n):
                rule = ScfRule.dictator(i, n, 3)
                assert check_pareto(rule).holds
                assert check_iia_pairwise(rule).holds
                j, cert = find_dictator(rule)
                assert j == i
                assert len(cert.chain) <= n - 1
                assert replay_certificate(rule, cert)


def test_4_falsification():
    with criterion("4 Borda/plurality/Copeland each fail Pareto or IIA, witnesses replay", 30):
        for kind in ("borda-lex", "plurality-lex", "copeland-lex"):
            for n in (2, 3):
                rule = ScfRule(kind, n, 3)
                failed = [r for r in (check_pareto(rule), check_iia_pairwise(rule)) if not r.holds]
                assert failed, f"{kind} n={n} passed both axioms"
                for report in failed:
                    assert report.witnesses
                    assert all(replay_witness(rule, report.axiom, w) for w in report.witnesses)


def test_5_no_draw():
    with criterion("5 100 random Sperner games on kuhn(2,4): always a loser", 5):
        t = kuhn_triangulation(2, 4)
        for seed in range(100):
            r = play_sperner_game(t, uniform_random, uniform_random, seed)
            assert r.loser in ("A", "B")
            assert replay_loss(r)
            final = [s[0] if s else min(t.carriers[v]) for v, s in enumerate(r.state.labels)]
            assert validate_labeling(t, final).valid


def test_6_bridge_game_to_dictator():
    with criterion("6 social choice game flags exactly the dictator", 5):
        t = kuhn_triangulation(2, 2)
        profiles = list(enumerate_profiles(3, 3))
        assert len(profiles) == 216
        for i in range(3):
            rule = ScfRule.dictator(i, 3, 3)
            for player in range(3):
                found = dictator_from_transcript(play_social_choice_game(rule, player, profiles, t))
                assert found == (i if player == i else None)


def test_7_bridge_dictator_to_panchromatic():
    with criterion("7 dictator coloring yields an oracle-confirmed panchromatic cell", 2):
        t = kuhn_triangulation(2, 4)
        for seed in range(20):
            cell, labels = panchromatic_from_dictator(ScfRule.dictator(0, 3, 3), t, random_label, seed)
            assert cell in find_panchromatic_all(t, labels)


def test_8a_rotation_fixed_point():
    with criterion("8a rotation map converges near the barycenter", 5):
        r = approx_fixed_point(rotate_map(2), 1e-3)
        assert r.converged and r.residual <= 1e-3
        assert max(abs(x - 1 / 3) for x in r.point) <= 2e-3


def test_8b_constant_fixed_point():
    with criterion("8b constant map converges near its value", 5):
        c = (0.2, 0.3, 0.5)
        r = approx_fixed_point(constant_map(c), 1e-2)
        assert r.converged and r.residual <= 1e-2
        # residual of a constant map is exactly the distance to its value
        assert max(abs(x - y) for x, y in zip(r.point, c)) <= 1e-2
