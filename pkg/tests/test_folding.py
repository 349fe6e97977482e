import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helix11 import dna, folding, sigma
from helix11.errors import BadArgument, BudgetExceeded, EmptyInput, NotInAlphabet

MODEL = folding.DEFAULT_MODEL
FIG1 = "ATTCAAAATGGATCCGTAATGGAT"

dna_seqs = st.text(alphabet="ACGT", min_size=1, max_size=14)


def stem_brute(seq):
    """Oracle: walk every chain start directly, no DP reuse."""
    n = len(seq)
    best = 0
    for i in range(n):
        for j in range(i + 1, n):
            # count consecutive negative pairs from (i, j) inward
            length = 0
            a, b = i, j
            while a < b and MODEL.mu(seq[a], seq[b]) < 0:
                length += 1
                a, b = a + 1, b - 1
            best = max(best, length)
    return best


def max_at_matching(seq, memo=None, i=0, j=None):
    """Oracle: maximum number of non-crossing A/T pairs."""
    if j is None:
        j = len(seq) - 1
        memo = {}
    if i >= j:
        return 0
    key = (i, j)
    if key in memo:
        return memo[key]
    best = max_at_matching(seq, memo, i + 1, j)
    for k in range(i + 1, j + 1):
        if {seq[i], seq[k]} == {"A", "T"}:
            inner = max_at_matching(seq, memo, i + 1, k - 1)
            rest = max_at_matching(seq, memo, k + 1, j)
            best = max(best, 1 + inner + rest)
    memo[key] = best
    return best


def test_energy_block_values():
    for block in sigma.S_BLOCKS:
        expected = -4 if block == "TCA" else 0
        assert folding.min_free_energy(block) == expected


def test_energy_tca_repeats():
    for k in range(1, 9):
        assert folding.min_free_energy("TCA" * k) == -4 * k


def test_energy_empty_raises():
    with pytest.raises(EmptyInput):
        folding.min_free_energy("")


@given(dna_seqs)
def test_energy_nonpositive(s):
    assert folding.min_free_energy(s) <= 0


@given(dna_seqs)
def test_energy_reverse_invariant(s):
    assert folding.min_free_energy(s[::-1]) == folding.min_free_energy(s)


@given(st.lists(st.text(alphabet="ACGT", min_size=2, max_size=12),
                min_size=1, max_size=8))
def test_energy_batch_matches_scalar(seqs):
    n = min(len(s) for s in seqs)
    seqs = [s[:n] for s in seqs]
    arr = np.stack([dna.seq_to_codes(s) for s in seqs])
    batch = folding.min_free_energy_batch(arr)
    for s, e in zip(seqs, batch):
        assert folding.min_free_energy(s) == e


def test_arbitrary_sequence_energy_floor():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(2, 13))
        s = "".join(rng.choice(list("ACGT"), n))
        assert folding.min_free_energy(s) >= -5 * (n // 2)


def test_energy_equals_at_matching_for_blocks():
    # over the alphabet only A/T pairs carry energy, each worth -4
    for word in itertools.product(range(11), repeat=2):
        s = sigma.phi(word)
        assert folding.min_free_energy(s) == -4 * max_at_matching(s)
    rng = np.random.default_rng(5)
    for _ in range(30):
        s = sigma.phi(tuple(rng.integers(0, 11, 3)))
        assert folding.min_free_energy(s) == -4 * max_at_matching(s)


def test_stem_fig1():
    length, witness = folding.max_stem_length(FIG1)
    assert length >= 5
    # witness is a nested chain of negative pairs stepping by one
    for t, (i, j) in enumerate(witness):
        assert MODEL.mu(FIG1[i - 1], FIG1[j - 1]) < 0
        if t:
            assert (i, j) == (witness[t - 1][0] + 1, witness[t - 1][1] - 1)


def test_stem_no_pairs():
    assert folding.max_stem_length("CCC") == (0, None)


def test_stem_nested_pair_example():
    length, witness = folding.max_stem_length("CCATCCCCATCC")
    assert length == 2
    assert witness == [(3, 10), (4, 9)]


@given(dna_seqs)
def test_stem_matches_brute_force(s):
    length, _ = folding.max_stem_length(s)
    assert length == stem_brute(s)


@given(dna_seqs)
def test_stem_batch_matches_scalar(s):
    arr = dna.seq_to_codes(s).reshape(1, -1)
    assert folding.max_stem_batch(arr)[0] == folding.max_stem_length(s)[0]


def test_disjoint_sc_examples():
    found, _ = folding.has_disjoint_sc_subsequence(FIG1, 5)
    assert found
    assert folding.has_disjoint_sc_subsequence("CCCCCC", 1) == (False, None)
    assert folding.has_disjoint_sc_subsequence("CCATCCCCATCC", 2) == \
        (True, (3, 9))


def test_disjoint_sc_bad_length():
    with pytest.raises(BadArgument):
        folding.has_disjoint_sc_subsequence("ACGT", 3)


@given(st.text(alphabet="ACGT", min_size=4, max_size=14))
def test_stem_implies_sc_subsequence(s):
    length, _ = folding.max_stem_length(s)
    if 1 <= length <= len(s) // 2:
        found, _ = folding.has_disjoint_sc_subsequence(s, length)
        assert found


def test_certify_window_one():
    rep = folding.certify_concatenations(list(sigma.S_BLOCKS), 1)
    assert rep.max_stem_found == 1
    assert rep.witness_word == (10,)  # only TCA pairs internally
    assert rep.enumerated_count == 11


def test_certify_window_two():
    rep = folding.certify_concatenations(list(sigma.S_BLOCKS), 2)
    assert rep.max_stem_found == 1
    assert rep.enumerated_count == 121


def test_certify_single_block_alphabet():
    rep = folding.certify_concatenations(["CCC"], 6, l_max=2)
    assert rep.max_stem_found == 0
    assert rep.within_l_max is True


def test_certify_budget_and_resume():
    with pytest.raises(BudgetExceeded) as exc:
        folding.certify_concatenations(list(sigma.S_BLOCKS), 2, budget=60)
    token = exc.value.resume_token
    assert token == 60
    partial = exc.value.partial
    rest = folding.certify_concatenations(list(sigma.S_BLOCKS), 2, start=token)
    full = folding.certify_concatenations(list(sigma.S_BLOCKS), 2)
    assert max(partial.max_stem_found, rest.max_stem_found) == \
        full.max_stem_found


def test_certify_workers_match_serial():
    serial = folding.certify_concatenations(list(sigma.S_BLOCKS), 3)
    parallel = folding.certify_concatenations(list(sigma.S_BLOCKS), 3,
                                              workers=2, batch_size=200)
    assert parallel.max_stem_found == serial.max_stem_found
    assert parallel.witness_index == serial.witness_index


def test_check_energy_bound():
    assert folding.check_energy_bound("TCA" * 4)
    assert folding.check_energy_bound("CCCCCC")
    with pytest.raises(NotInAlphabet):
        folding.check_energy_bound("GGG")
    with pytest.raises(NotInAlphabet):
        folding.check_energy_bound("ACGT")


def test_fold_report():
    rep = folding.fold("TCATCA")
    assert rep.min_free_energy == -8
    assert rep.max_stem_length >= 1
