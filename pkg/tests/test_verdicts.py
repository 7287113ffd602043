"""Verdict semantics, tail selection, and rejection sets."""

from fractions import Fraction
from itertools import product

import pytest

from randaudit import (
    BINOMIAL,
    BinarySequence,
    CapExceededError,
    ONE_SIDED,
    RUNS,
    TWO_SIDED_DOUBLED,
    binomial_test,
    parse_sequence,
    rejection_set,
    runs_test,
    statistic_domain,
    statistic_pvalue,
)

ALPHA = Fraction(1, 20)


class TestRunsVerdicts:
    def test_mixed_sequence_not_rejected(self):
        v = runs_test(parse_sequence("HTTHTHHHT"), ALPHA)
        assert (v.statistic, v.tail_used, v.p, v.rejected) == (6, "upper", Fraction(186, 512), False)

    def test_blocky_sequence_rejected(self):
        v = runs_test(parse_sequence("HHHHHTTTT"), ALPHA)
        assert (v.statistic, v.tail_used, v.p, v.rejected) == (2, "lower", Fraction(18, 512), True)

    def test_constant_sequence_rejected(self):
        v = runs_test(parse_sequence("HHHHHHHHH"), ALPHA)
        assert (v.statistic, v.p, v.rejected) == (1, Fraction(2, 512), True)

    def test_single_outcome_p_is_one(self):
        v = runs_test(parse_sequence("H"), ALPHA)
        assert v.p == 1
        assert not v.rejected
        assert runs_test(parse_sequence("H"), Fraction(1)).rejected

    def test_center_tie_uses_equal_tails(self):
        # 110011001 has 5 runs, dead center for n = 9; both tails agree.
        seq = BinarySequence((1, 1, 0, 0, 1, 1, 0, 0, 1))
        v = runs_test(seq, ALPHA)
        assert v.statistic == 5
        assert v.tail_used == "lower"
        assert v.p == Fraction(326, 512)

    def test_vocab_copied_and_ignored(self):
        v = runs_test(parse_sequence("HHHHHTTTT", vocab="teads/hails"), ALPHA)
        assert v.vocab == "teads/hails"
        assert v.p == runs_test(parse_sequence("HHHHHTTTT"), ALPHA).p

    def test_alpha_comparison_is_exact(self):
        seq = parse_sequence("HHHHHTTTT")  # p = 18/512 exactly
        assert runs_test(seq, Fraction(18, 512)).rejected
        assert not runs_test(seq, Fraction(17, 512)).rejected


class TestBinomialVerdicts:
    def test_five_heads_of_nine(self):
        for text in ("HTTHTHHHT", "HHHHHTTTT"):
            v = binomial_test(parse_sequence(text), ALPHA)
            assert (v.statistic, v.tail_used, v.p, v.rejected) == (5, "upper", Fraction(1, 2), False)

    def test_all_tails_rejected_one_sided(self):
        v = binomial_test(parse_sequence("TTTTTTTTT"), ALPHA, ONE_SIDED)
        assert (v.statistic, v.tail_used, v.p, v.rejected) == (0, "lower", Fraction(1, 512), True)

    def test_doubled_convention_tail_label(self):
        v = binomial_test(parse_sequence("TTTTTTTTT"), ALPHA, TWO_SIDED_DOUBLED)
        assert (v.tail_used, v.p, v.rejected) == ("doubled", Fraction(2, 512), True)

    def test_exact_half_count_uses_upper_tail(self):
        v = binomial_test(parse_sequence("HHTT"), ALPHA)
        assert v.statistic == 2
        assert v.tail_used == "upper"


class TestRejectionSets:
    def test_runs_n9(self):
        # Frozen from enumerating all 512 sequences: both extremes of
        # each tail reject, including r = 8 whose upper tail equals the
        # r = 2 lower tail (18/512) by symmetry.
        result = rejection_set(RUNS, 9, ALPHA)
        assert result.statistic_values == (1, 2, 8, 9)
        assert result.exact_size == Fraction(36, 512)

    def test_runs_n9_explicit_sequences(self):
        result = rejection_set(RUNS, 9, ALPHA, include_sequences=True)
        assert result.sequences is not None
        assert len(result.sequences) == 36
        assert result.exact_size == Fraction(len(result.sequences), 512)

    def test_runs_n2_empty(self):
        result = rejection_set(RUNS, 2, ALPHA)
        assert result.statistic_values == ()
        assert result.exact_size == 0

    def test_binomial_n9(self):
        # P(K <= 1) = 10/512 <= 1/20 but P(K <= 2) = 46/512 > 1/20.
        result = rejection_set(BINOMIAL, 9, ALPHA, ONE_SIDED)
        assert result.statistic_values == (0, 1, 8, 9)
        assert result.exact_size == Fraction(20, 512)

    def test_alpha_extremes(self):
        assert rejection_set(RUNS, 9, Fraction(0)).statistic_values == ()
        assert rejection_set(RUNS, 9, Fraction(1)).statistic_values == tuple(range(1, 10))
        assert rejection_set(RUNS, 9, Fraction(1)).exact_size == 1

    def test_explicit_cap(self):
        with pytest.raises(CapExceededError):
            rejection_set(RUNS, 9, ALPHA, include_sequences=True, cap=8)

    @pytest.mark.parametrize("test", [RUNS, BINOMIAL])
    @pytest.mark.parametrize("n", range(1, 11))
    def test_consistency_with_verdicts(self, test, n):
        values = frozenset(rejection_set(test, n, ALPHA).statistic_values)
        for bits in product((0, 1), repeat=n):
            seq = BinarySequence(bits)
            verdict = runs_test(seq, ALPHA) if test == RUNS else binomial_test(seq, ALPHA)
            assert verdict.rejected == (verdict.statistic in values)

    @pytest.mark.parametrize("test", [RUNS, BINOMIAL])
    @pytest.mark.parametrize("n", range(1, 13))
    def test_exact_size_matches_enumeration(self, test, n):
        result = rejection_set(test, n, ALPHA)
        hits = 0
        for bits in product((0, 1), repeat=n):
            seq = BinarySequence(bits)
            verdict = runs_test(seq, ALPHA) if test == RUNS else binomial_test(seq, ALPHA)
            hits += verdict.rejected
        assert result.exact_size == Fraction(hits, 2**n)


class TestStatisticHelpers:
    def test_domains(self):
        assert list(statistic_domain(RUNS, 4)) == [1, 2, 3, 4]
        assert list(statistic_domain(BINOMIAL, 4)) == [0, 1, 2, 3, 4]
        with pytest.raises(ValueError):
            statistic_domain("median", 4)

    def test_statistic_pvalue_matches_verdicts(self):
        tail, p = statistic_pvalue(RUNS, 9, 6)
        assert (tail, p) == ("upper", Fraction(186, 512))
        tail, p = statistic_pvalue(BINOMIAL, 9, 0, TWO_SIDED_DOUBLED)
        assert (tail, p) == ("doubled", Fraction(2, 512))
        with pytest.raises(ValueError):
            statistic_pvalue(RUNS, 9, 0)
