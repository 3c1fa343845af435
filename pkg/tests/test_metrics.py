import random
import statistics

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nhbot.envs.base import CharacterSpec
from nhbot.evaluation.metrics import (
    compare,
    death_tables,
    depth_frequencies,
    metric_tuple,
    percentile_linear,
    role_stats,
)
from nhbot.evaluation.records import EpisodeEvent, EpisodeRecord, MetricTuple
from nhbot.state.types import Outcome


def record(score=0, outcome=Outcome.DEATH, role="Valkyrie", depth=1,
           death="", cause=None, events=()):
    return EpisodeRecord(
        character=CharacterSpec(role, "human", "lawful", "female"),
        score=score,
        turns=100,
        max_dungeon_level=depth,
        experience_level_at_end=1,
        gold=0,
        max_ac_change=0,
        outcome=outcome,
        death=death,
        cause=cause,
        events=set(events),
    )


def test_metric_tuple_even_count_median():
    records = [record(score=s) for s in (1, 2, 3, 4)]
    m = metric_tuple(records)
    assert m.median_score == 2.5
    assert m.mean_score == 2.5
    assert m.ascensions == 0


def test_ascension_counted_at_threshold_score():
    records = [record(score=12_200, outcome=Outcome.ASCENSION), record(score=5)]
    assert metric_tuple(records).ascensions == 1


def test_all_zero_scores():
    m = metric_tuple([record(score=0) for _ in range(5)])
    assert (m.ascensions, m.median_score, m.mean_score) == (0, 0.0, 0.0)


def test_empty_records_rejected():
    with pytest.raises(ValueError):
        metric_tuple([])


def test_metric_matches_sort_oracle_on_random_multisets():
    rng = random.Random(99)
    for _ in range(1000):
        scores = [rng.randrange(0, 10_000) for _ in range(rng.randint(1, 40))]
        ascend = [rng.random() < 0.05 for _ in scores]
        records = [
            record(score=max(s, 12_200) if a else s,
                   outcome=Outcome.ASCENSION if a else Outcome.DEATH)
            for s, a in zip(scores, ascend)
        ]
        m = metric_tuple(records)
        values = sorted(r.score for r in records)
        assert m.ascensions == sum(ascend)
        assert m.mean_score == pytest.approx(sum(values) / len(values))
        assert m.median_score == pytest.approx(statistics.median(values))


def test_ordering_example_ascension_dominates():
    assert MetricTuple(1, 100, 100) > MetricTuple(0, 9999, 9999)
    assert compare(MetricTuple(1, 100, 100), MetricTuple(0, 9999, 9999)) == 1


def test_ordering_example_median_beats_mean():
    assert MetricTuple(0, 5300, 4000) > MetricTuple(0, 1800, 9000)


def test_equal_tuples_compare_equal():
    assert compare(MetricTuple(0, 5.0, 5.0), MetricTuple(0, 5.0, 5.0)) == 0


metric_st = st.builds(
    MetricTuple,
    ascensions=st.integers(0, 3),
    median_score=st.floats(0, 100, allow_nan=False),
    mean_score=st.floats(0, 100, allow_nan=False),
)


@given(metric_st, metric_st)
def test_compare_antisymmetric(a, b):
    assert compare(a, b) == -compare(b, a)


@given(metric_st, metric_st, metric_st)
def test_compare_transitive(a, b, c):
    if compare(a, b) <= 0 and compare(b, c) <= 0:
        assert compare(a, c) <= 0


def test_percentile_linear_against_documented_formula():
    scores = list(range(1, 101))
    assert percentile_linear(scores, 5) == pytest.approx(5.95)
    assert percentile_linear(scores, 95) == pytest.approx(95.05)
    assert percentile_linear(scores, 50) == pytest.approx(50.5)


def test_percentile_matches_numpy_linear():
    rng = random.Random(4)
    for _ in range(50):
        data = sorted(rng.randrange(0, 1000) for _ in range(rng.randint(1, 60)))
        for p in (5, 25, 50, 75, 95):
            assert percentile_linear(data, p) == pytest.approx(
                float(np.percentile(data, p, method="linear"))
            )


def test_role_stats_single_record_collapses():
    stats = role_stats([record(score=42)])
    rs = stats["Valkyrie"]
    assert rs.p5 == rs.q1 == rs.median == rs.q3 == rs.p95 == 42


def test_role_stats_ordering_invariant_on_random_data():
    rng = random.Random(12)
    records = [
        record(score=rng.randrange(0, 5000),
               role=rng.choice(["Valkyrie", "Wizard", "Monk"]))
        for _ in range(300)
    ]
    for rs in role_stats(records).values():
        assert rs.p5 <= rs.q1 <= rs.median <= rs.q3 <= rs.p95
        assert all(o < rs.p5 or o > rs.p95 for o in rs.outliers)


def test_depth_frequencies_basics():
    records = [record(depth=1), record(depth=2), record(depth=2), record(depth=4)]
    freq = depth_frequencies(records)
    assert freq[1] == 1.0
    assert freq[2] == 0.75
    assert freq[3] == 0.25
    assert freq[4] == 0.25
    values = [freq[d] for d in sorted(freq)]
    assert values == sorted(values, reverse=True)


def test_depth_frequencies_monotone_on_random_data():
    rng = random.Random(5)
    records = [record(depth=rng.randint(1, 12)) for _ in range(200)]
    freq = depth_frequencies(records)
    values = [freq[d] for d in sorted(freq)]
    assert values == sorted(values, reverse=True)
    assert freq[1] == 1.0


def test_death_tables_counting():
    records = [
        record(death="a jackal"),
        record(death="a jackal", cause="fainted from lack of food"),
        record(death="a soldier ant"),
        record(events={EpisodeEvent.STARVED}),
    ]
    deaths, causes, events = death_tables(records)
    assert deaths["a jackal"] == 2
    assert causes["fainted from lack of food"] == 1
    assert list(causes) == ["fainted from lack of food"]  # absent ones excluded
    assert events["Starved"] == 1


def test_aggregates_permutation_invariant():
    rng = random.Random(77)
    records = [record(score=rng.randrange(0, 999), depth=rng.randint(1, 5),
                      role=rng.choice(["Monk", "Rogue"])) for _ in range(60)]
    shuffled = records[:]
    rng.shuffle(shuffled)
    assert metric_tuple(records) == metric_tuple(shuffled)
    assert depth_frequencies(records) == depth_frequencies(shuffled)
    assert role_stats(records) == role_stats(shuffled)
