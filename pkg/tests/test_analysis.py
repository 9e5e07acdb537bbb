from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bandorbump.analysis import (
    Finding,
    LogConcavityResult,
    PayoffSpec,
    ScanReport,
    band_logconcavity_scan,
    bump_logconcavity_scan,
    log_concavity,
    moments,
    nonvacuity_scan,
    payoff_ev,
)
from bandorbump.distribution import GameParams, joint_distribution
from bandorbump.exactnum import to_decimal

SUIT_GAME = GameParams(4, 13, 5, 8)
RANK_GAME = GameParams(13, 4, 1, 3)


class TestMoments:
    def test_suit_game_published_statistics(self):
        report = moments(joint_distribution(SUIT_GAME))
        assert to_decimal(report.mean, 6) == "23.9151"
        assert report.sd == "2.33806"
        assert to_decimal(report.band.mean, 6) == "23.8664"
        assert report.band.sd == "2.00364"
        assert to_decimal(report.bump.mean, 6) == "23.9899"
        assert report.bump.sd == "2.77314"
        assert to_decimal(report.band.marginal, 6) == "0.605984"
        assert to_decimal(report.bump.marginal, 6) == "0.394016"

    def test_single_atom(self):
        report = moments(joint_distribution(GameParams(2, 3, 0, 0)))
        assert report.mean == 1
        assert report.variance == 0
        assert report.sd == "0"
        assert report.bump.mean == 1
        assert report.band.mean is None  # no band mass at all

    def test_zero_marginal_flagged_with_none(self):
        # coupon corner: bumps are impossible
        report = moments(joint_distribution(GameParams(3, 2, 1, 2)))
        assert report.bump.marginal == 0
        assert report.bump.mean is None
        assert report.bump.variance is None
        assert report.bump.sd is None
        assert report.band.marginal == 1

    def test_law_of_total_expectation(self):
        for shape in [(2, 3, 1, 2), (4, 13, 5, 8), (3, 4, 1, 3), (2, 2, 1, 1)]:
            dist = joint_distribution(GameParams(*shape))
            report = moments(dist)
            total = Fraction(0)
            for oc in (report.band, report.bump):
                if oc.mean is not None:
                    total += oc.marginal * oc.mean
            assert total == report.mean, shape

    def test_variance_matches_direct_sum(self):
        dist = joint_distribution(GameParams(3, 4, 1, 3))
        report = moments(dist)
        direct = sum(
            ((n - report.mean) ** 2 * (band + bump) for n, band, bump in dist.rows),
            Fraction(0),
        )
        assert report.variance == direct

    def test_sig_figs_threads_through(self):
        report = moments(joint_distribution(SUIT_GAME), sig_figs=3)
        assert report.sd == "2.34"
        assert report.sig_figs == 3


class TestPayoff:
    def test_parse_is_exact_decimal(self):
        spec = PayoffSpec.parse("0.10", "-3")
        assert spec.band == Fraction(1, 10)
        assert spec.bump == Fraction(-3)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            PayoffSpec.parse("two dollars", "1")

    def test_rank_game_headline_value(self):
        # +2 on a bump, -3 on a band: small positive edge
        dist = joint_distribution(RANK_GAME)
        ev = payoff_ev(dist, PayoffSpec.parse("-3", "2"))
        assert Fraction(4, 100) < ev < Fraction(5, 100)

    def test_suit_game_headline_value(self):
        # +2 on a band, -3 on a bump: smaller positive edge
        dist = joint_distribution(SUIT_GAME)
        ev = payoff_ev(dist, PayoffSpec.parse("2", "-3"))
        assert Fraction(25, 1000) < ev < Fraction(35, 1000)

    def test_zero_spec(self):
        dist = joint_distribution(GameParams(2, 3, 1, 2))
        assert payoff_ev(dist, PayoffSpec.parse("0", "0")) == 0

    def test_linearity(self):
        dist = joint_distribution(GameParams(2, 3, 1, 2))
        base = PayoffSpec(Fraction(7, 3), Fraction(-11, 5))
        scaled = PayoffSpec(base.band * 6, base.bump * 6)
        assert payoff_ev(dist, scaled) == 6 * payoff_ev(dist, base)
        other = PayoffSpec(Fraction(1, 2), Fraction(9))
        combined = PayoffSpec(base.band + other.band, base.bump + other.bump)
        assert payoff_ev(dist, combined) == payoff_ev(dist, base) + payoff_ev(dist, other)

    def test_marginal_recovery(self):
        # indicator payoffs read the marginals straight off
        dist = joint_distribution(SUIT_GAME)
        assert payoff_ev(dist, PayoffSpec(Fraction(1), Fraction(0))) == dist.band_marginal


class TestLogConcavity:
    def test_smooth_hump(self):
        result = log_concavity([1, 2, 3, 2, 1])
        assert result.ok
        assert result.violations == ()

    def test_support_gap(self):
        result = log_concavity([1, 0, 1])
        assert not result.ok
        assert result.violations == (1,)

    def test_wide_gap_reports_every_hole(self):
        result = log_concavity([1, 0, 0, 1])
        assert not result.ok
        assert result.violations == (1, 2)

    def test_inequality_violation(self):
        # 1*4 > 1**2 at index 1
        result = log_concavity([1, 1, 4])
        assert not result.ok
        assert result.violations == (1,)

    def test_leading_trailing_zeros_are_fine(self):
        assert log_concavity([0, 0, 1, 2, 1, 0]).ok

    def test_short_sequences(self):
        assert log_concavity([]).ok
        assert log_concavity([5]).ok
        assert log_concavity([Fraction(1, 3), Fraction(1, 7)]).ok

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            log_concavity([1, -1, 1])

    def test_geometric_is_log_concave(self):
        seq = [Fraction(1, 2) ** i for i in range(10)]
        assert log_concavity(seq).ok

    @given(
        data=st.data(),
        length=st.integers(min_value=2, max_value=8),
    )
    @settings(max_examples=80)
    def test_product_of_log_concave_is_log_concave(self, data, length):
        # a positive sequence is log-concave iff successive ratios are
        # non-increasing, so build two from sorted ratio lists and check the
        # elementwise product
        def build():
            ratios = [
                Fraction(
                    data.draw(st.integers(min_value=1, max_value=20)),
                    data.draw(st.integers(min_value=1, max_value=20)),
                )
                for _ in range(length - 1)
            ]
            ratios.sort(reverse=True)
            seq = [Fraction(1)]
            for r in ratios:
                seq.append(seq[-1] * r)
            return seq

        a = build()
        b = build()
        assert log_concavity(a).ok
        assert log_concavity(b).ok
        assert log_concavity([x * y for x, y in zip(a, b)]).ok

    def test_band_sequence_of_suit_game(self):
        dist = joint_distribution(SUIT_GAME)
        seq = [dist.band_mass(n) for n in range(20, 30)]
        assert log_concavity(seq).ok

    def test_bump_sequence_of_suit_game(self):
        dist = joint_distribution(SUIT_GAME)
        seq = [dist.bump_mass(n) for n in range(9, 30)]
        assert log_concavity(seq).ok


class TestScans:
    def test_nonvacuity_small_grid(self):
        report = nonvacuity_scan((2, 4), (2, 6))
        assert report.ok
        assert report.kind == "nonvacuity"
        assert report.findings == ()
        # number of general-case cells: sum over s of C(s-1, 2) pairs per m
        expected_cells = 3 * sum((s - 1) * (s - 2) // 2 for s in range(2, 7))
        assert report.cells == expected_cells
        assert report.checks > report.cells

    def test_nonvacuity_rank_game_cell(self):
        report = nonvacuity_scan((13, 13), (4, 4))
        assert report.ok
        assert report.cells == 3  # (l,u) in {(1,2), (1,3), (2,3)}

    def test_band_logconcavity_small_grid(self):
        report = band_logconcavity_scan((2, 4), (2, 6))
        assert report.ok
        assert report.kind == "band-logconcavity"

    def test_bump_logconcavity_small_grid(self):
        report = bump_logconcavity_scan((2, 4), (2, 6))
        assert report.ok
        assert report.kind == "bump-logconcavity"

    def test_empty_grid(self):
        report = nonvacuity_scan((3, 2), (2, 2))
        assert report.ok
        assert report.cells == 0
        assert report.checks == 0

    def test_json_shape(self):
        report = nonvacuity_scan((2, 2), (3, 3))
        d = report.to_json_dict()
        assert d["kind"] == "nonvacuity"
        assert d["m_range"] == [2, 2]
        assert d["s_range"] == [3, 3]
        assert d["ok"] is True
        assert d["findings"] == []
        assert isinstance(d["cells"], int)
        assert isinstance(d["checks"], int)

    def test_finding_serialization(self):
        report = ScanReport(
            kind="nonvacuity",
            m_range=(2, 2),
            s_range=(2, 2),
            cells=1,
            checks=1,
            findings=(Finding(2, 3, 1, 2, 3, 1, None, "demo"),),
        )
        assert not report.ok
        d = report.to_json_dict()
        assert d["ok"] is False
        assert d["findings"] == [
            {"m": 2, "s": 3, "l": 1, "u": 2, "n": 3, "k": 1, "kpp": None, "note": "demo"}
        ]
