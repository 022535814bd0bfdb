import io
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from landau_lab.errors import CoverageError, DomainError, IncompleteError, ValidationError, ZeroFileParseError
from landau_lab.zeros import (
    ZeroSource,
    ZeroTable,
    certify_table,
    compute_zeros,
    count_zeros,
    format_zero_table,
    gram_points,
    main_term,
    parse_zero_file,
    riemann_siegel_theta,
    riemann_siegel_Z,
)

# Frozen from tests/oracles.py (mpmath, 30 digits)
G0 = 17.8455995404108608
THETA_100 = 87.9721652317872196
FIRST = 14.1347251417346936
SECOND = 21.0220396387715553


# -- parse_zero_file ---------------------------------------------------------


def test_parse_two_ordinates():
    table = parse_zero_file(io.BytesIO(b"14.134725142\n21.022039639\n"))
    assert len(table) == 2
    assert table.source is ZeroSource.INGESTED
    assert table.precision == 1e-8
    # agrees with the oracle's zeros at the file's 9 decimals
    assert table.ordinates[0] == pytest.approx(FIRST, abs=1e-9)
    assert table.ordinates[1] == pytest.approx(SECOND, abs=1e-9)


def test_parse_empty_file():
    table = parse_zero_file(io.BytesIO(b""))
    assert len(table) == 0
    assert count_zeros(table, 100.0) == 0
    assert count_zeros(table, 1e9) == 0


def test_parse_rejects_low_first_value():
    with pytest.raises(ValidationError):
        parse_zero_file(io.BytesIO(b"5.0\n"))


def test_parse_reports_line_number():
    with pytest.raises(ZeroFileParseError) as info:
        parse_zero_file(io.StringIO("# header\n14.5\nabc\n"))
    assert info.value.line == 3


def test_parse_non_monotone_after_offset():
    with pytest.raises(ValidationError):
        parse_zero_file(io.StringIO("3.0\n2.0\n"), base_offset=100.0)


def test_parse_base_line_and_comments():
    table = parse_zero_file(io.StringIO("# comment\nBASE 1000\n0.5\n# mid\n1.25\n"))
    np.testing.assert_array_equal(table.ordinates, [1000.5, 1001.25])
    assert table.base_offset == 1000.0
    same = parse_zero_file(io.StringIO("0.5\n1.25\n"), base_offset=1000.0)
    np.testing.assert_array_equal(same.ordinates, table.ordinates)


def test_parse_conflicting_base():
    with pytest.raises(ZeroFileParseError):
        parse_zero_file(io.StringIO("BASE 10\n5\n"), base_offset=20.0)


def test_serialize_roundtrip(table):
    head = table.head(5000)
    back = parse_zero_file(io.StringIO(format_zero_table(head)), precision=head.precision)
    assert np.max(np.abs(back.ordinates - head.ordinates)) <= head.precision
    assert back.precision == head.precision


def test_serialize_with_offset():
    t = parse_zero_file(io.StringIO("BASE 5000\n0.25\n0.75\n"))
    back = parse_zero_file(io.StringIO(format_zero_table(t)))
    assert back.base_offset == 5000.0
    np.testing.assert_array_equal(back.ordinates, t.ordinates)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(14_500_000, 99_000_000), min_size=0, max_size=40, unique=True))
def test_serialize_roundtrip_property(micros):
    # ordinates on a 1e-6 grid stay distinct after 12-decimal formatting
    t = ZeroTable(np.sort(micros) / 1e6 + 1e-7 / 3, ZeroSource.INGESTED, 1e-9)
    back = parse_zero_file(io.StringIO(format_zero_table(t)), precision=t.precision)
    assert len(back) == len(t)
    assert np.all(np.abs(back.ordinates - t.ordinates) <= 5e-13)


# -- theta and Z ---------------------------------------------------------------


def test_theta_root_at_first_gram_point():
    assert riemann_siegel_theta(G0) == pytest.approx(0.0, abs=1e-10)
    assert gram_points([0])[0] == pytest.approx(G0, abs=1e-10)


def test_theta_at_100():
    assert riemann_siegel_theta(100.0) == pytest.approx(THETA_100, abs=1e-10)
    assert round(riemann_siegel_theta(100.0) / math.pi + 1) == 29


@pytest.mark.parametrize("t", [10.0, 12.5, 33.3, 250.0, 1e3, 2e4, 74920.0])
def test_theta_against_oracle(t):
    assert riemann_siegel_theta(t) == pytest.approx(float(oracles.theta(t)), abs=1e-10)


def test_theta_small_t_uses_loggamma():
    for t in (0.5, 3.0, 9.9):
        assert riemann_siegel_theta(t) == pytest.approx(float(oracles.theta(t)), abs=1e-12)


def test_theta_domain():
    with pytest.raises(DomainError):
        riemann_siegel_theta(0.0)
    with pytest.raises(DomainError):
        riemann_siegel_Z(-1.0)
    with pytest.raises(DomainError):
        riemann_siegel_Z(5.0)


def test_z_at_first_zero():
    assert abs(riemann_siegel_Z(14.134725)) <= 1e-5


def test_z_sign_at_20_matches_euler_maclaurin():
    ref = oracles.Z(20)
    assert np.sign(riemann_siegel_Z(20.0)) == np.sign(float(ref))


def test_no_zero_between_17_and_18():
    assert riemann_siegel_Z(17.0) * riemann_siegel_Z(18.0) > 0


@pytest.mark.parametrize("t", [10.0, 14.0, 47.3, 99.9, 512.0, 999.0, 1000.5, 7005.25, 31337.0, 74920.0, 99990.0])
def test_z_accuracy(t):
    assert riemann_siegel_Z(t) == pytest.approx(float(mp.siegelz(t)), abs=1e-6)


def test_z_accuracy_em_oracle():
    for t in (21.0, 100.0, 640.0):
        assert riemann_siegel_Z(t) == pytest.approx(float(oracles.Z(t)), abs=1e-10)


# -- compute_zeros / count_zeros ----------------------------------------------------


def test_compute_one():
    t = compute_zeros(1)
    assert t.ordinates[0] == pytest.approx(FIRST, abs=1e-9)
    assert t.source is ZeroSource.COMPUTED


def test_compute_zero_count():
    assert len(compute_zeros(0)) == 0


def test_compute_rejects_big_counts():
    with pytest.raises(DomainError):
        compute_zeros(1_000_001)


def test_first_hundred_against_zetazero(table, reference100):
    assert np.max(np.abs(table.ordinates[:100] - reference100)) <= 1e-9


def test_first_two_against_bisection_oracle(table):
    assert table.ordinates[0] == pytest.approx(float(oracles.bisect_zero(14, 14.3)), abs=1e-9)
    assert table.ordinates[1] == pytest.approx(float(oracles.bisect_zero(21, 21.1)), abs=1e-9)


def test_last_of_first_hundred_thousand(table):
    # the a = 1 trace recipe runs tau up to 74920 - pi
    assert len(table) == 100_000
    assert table.ordinates[-1] == pytest.approx(74920.8, abs=0.05)


def test_gram_failure_needs_subdivision():
    # Gram's law first fails at g_126, so depth 0 must report that block
    with pytest.raises(IncompleteError) as info:
        compute_zeros(200, max_depth=0)
    assert info.value.block[0] <= 126 <= info.value.block[1]


def test_certificate(table):
    cert = certify_table(table)
    assert cert.ok
    assert cert.gram_index.size > 80_000
    small = compute_zeros(3000)
    assert small.certificate.ok
    assert small.certificate.refined_blocks > 0


def test_count_examples(table):
    assert count_zeros(table, 14.0) == 0
    assert count_zeros(table, 15.0) == 1
    assert count_zeros(table, 100.0) == 29


def test_count_100_matches_sign_change_oracle():
    assert oracles.sign_change_count(10, 100, mp.mpf("0.05")) == 29


def test_count_coverage(table):
    with pytest.raises(CoverageError):
        count_zeros(table.head(10), 100.0)


def test_main_term_examples():
    assert main_term(2 * math.pi) == pytest.approx(-1.0, abs=1e-15)
    assert main_term(2 * math.pi * math.e) == pytest.approx(0.0, abs=1e-14)
    assert abs(29 - main_term(100.0)) <= 3 * math.log(100.0)
    with pytest.raises(DomainError):
        main_term(0.0)


def test_counting_function_tracks_main_term(table):
    grid = np.linspace(100, table.max_ordinate, 1000)
    n = np.searchsorted(table.ordinates, grid, side="right")
    assert np.all(np.abs(n - main_term(grid)) <= 3 * np.log(grid))


def test_count_matches_definition_everywhere(table):
    rng = np.random.default_rng(1)
    for T in rng.uniform(14, table.max_ordinate, 50):
        assert count_zeros(table, T) == int(np.sum(table.ordinates <= T))


def test_table_invariants():
    with pytest.raises(ValidationError):
        ZeroTable([20.0, 19.0])
    with pytest.raises(ValidationError):
        ZeroTable([14.2, 14.2])
    # a table that skips zeros cannot match N(T)
    with pytest.raises(ValidationError):
        ZeroTable(np.linspace(15, 5000, 100))
    t = ZeroTable.synthetic([1.25])
    assert t.ordinates.flags.writeable is False


def test_ingest_matches_compute(table):
    """First 10^4 computed ordinates vs an mpmath-refined reference file."""
    path = __import__("pathlib").Path(__file__).parent / "data" / "reference_zeros_1e4.txt"
    if not path.exists():
        pytest.skip("reference file not generated")
    with open(path, "rb") as fh:
        ref = parse_zero_file(fh, precision=1e-8)
    n = len(ref)
    assert n == 10_000
    err = np.max(np.abs(ref.ordinates - table.ordinates[:n]))
    assert err <= ref.precision
    # bisection stops at 1e-9 and the reference is truncated at 1e-12
    assert err <= 1e-9 + 1e-12
