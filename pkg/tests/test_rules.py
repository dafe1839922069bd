import numpy as np
import pytest

from lhc.rules import binarize, mine_rules

from conftest import view_from_dense
from oracles import apriori_oracle


def to_tuples(view, rules):
    key = {c: j for j, c in enumerate(view.col_keys)}
    return sorted(
        (
            tuple(sorted(key[f] for f in r.antecedent)),
            key[r.consequent],
            r.support,
            r.confidence,
        )
        for r in rules
    )


def test_universal_pair_rule():
    view = view_from_dense([[1, 1], [1, 1], [1, 1]])
    rules = mine_rules(view, minsup=0.5, minconf=0.5)
    assert {(r.antecedent, r.consequent, r.support, r.confidence) for r in rules} == {
        ((("t:p", "t:c00"),), ("t:p", "t:c01"), 1.0, 1.0),
        ((("t:p", "t:c01"),), ("t:p", "t:c00"), 1.0, 1.0),
    }


def test_minsup_one_without_universal_pair():
    view = view_from_dense([[1, 0], [0, 1]])
    assert mine_rules(view, minsup=1.0, minconf=0.1) == []


def test_matches_exhaustive_enumeration():
    rng = np.random.default_rng(41)
    for _ in range(30):
        n_rows = int(rng.integers(3, 13))
        n_cols = int(rng.integers(2, 7))
        dense = (rng.random((n_rows, n_cols)) < 0.45).astype(float)
        # every transaction needs at least one feature (rows come from statements)
        for i in range(n_rows):
            if not dense[i].any():
                dense[i][int(rng.integers(n_cols))] = 1.0
        view = view_from_dense(dense.tolist())
        minsup = float(rng.choice([0.2, 0.25, 0.4]))
        minconf = float(rng.choice([0.5, 0.6, 0.75]))
        rules = mine_rules(view, minsup, minconf)
        transactions = binarize(view)
        expected = apriori_oracle(transactions, minsup, minconf)
        assert to_tuples(view, rules) == expected


def test_counts_reverify_exactly():
    rng = np.random.default_rng(42)
    dense = (rng.random((12, 6)) < 0.5).astype(float)
    for i in range(12):
        if not dense[i].any():
            dense[i][0] = 1.0
    view = view_from_dense(dense.tolist())
    rules = mine_rules(view, minsup=0.25, minconf=0.6)
    transactions = binarize(view)
    key = {c: j for j, c in enumerate(view.col_keys)}
    n = len(transactions)
    for r in rules:
        antecedent = frozenset(key[f] for f in r.antecedent)
        both = antecedent | {key[r.consequent]}
        support_count = sum(1 for t in transactions if both <= t)
        antecedent_count = sum(1 for t in transactions if antecedent <= t)
        assert r.support == support_count / n
        assert r.confidence == support_count / antecedent_count
        assert r.support >= 0.25
        assert r.confidence >= 0.6
        assert r.consequent not in r.antecedent


def test_output_ordering():
    rng = np.random.default_rng(43)
    dense = (rng.random((10, 5)) < 0.6).astype(float)
    for i in range(10):
        if not dense[i].any():
            dense[i][0] = 1.0
    view = view_from_dense(dense.tolist())
    rules = mine_rules(view, minsup=0.2, minconf=0.5)
    keys = [(-r.confidence, -r.support, r.antecedent, r.consequent) for r in rules]
    assert keys == sorted(keys)
