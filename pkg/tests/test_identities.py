import pytest

from superdenom.identities import (
    ShellError,
    VerificationReport,
    check_support_isotropy,
    d_illdefined_probe,
    extract_Y,
    extract_Y_report,
    f_closed_form,
    finite_denominator_check,
    jacobi_check,
    jacobi_divisor_side,
    lemma_form_check,
    partition_numbers,
    pochhammer_q,
    r8_convolution,
    r8_direct,
    resolve_family,
    rhat_rho,
    sl_f_closed_form,
    straighten,
    translation_sum,
    verify_affine_identity,
    verify_classical_weyl,
)
from superdenom.lattice import build_root_system
from superdenom.products import act, build_R, expand
from superdenom.series import compare, q_coefficients, support_weights
from superdenom.weyl import enumerate_translations, translation, v_pairing

GRID = [("gl", 1, 20), ("gl", 2, 16), ("gl", 3, 12), ("d", 1, 12), ("d21a", 1, 12), ("d", 2, 10)]


def test_partition_oracle():
    assert partition_numbers(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_q_pochhammer_pentagonal():
    assert pochhammer_q(-1, 12) == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]
    assert sl_f_closed_form(2, 7) == [1, -1, -1, 0, 0, 1, 0, 1]


def test_f_closed_form_d_is_partitions():
    rs = build_root_system("d", 1)
    f = f_closed_form(rs, 5 * rs.delta_height)
    assert q_coefficients(f)[:6] == [1, 1, 2, 3, 5, 7]


def test_f_closed_form_gl2_low_terms():
    rs = build_root_system("gl", 2)
    f = f_closed_form(rs, 16)
    coeff = {w: c for w, c in support_weights(f)}
    assert coeff[rs.zero()] == 1
    q = -rs.delta
    assert coeff[q - rs.str_] == -1 and coeff[q + rs.str_] == -1


def test_resolve_family():
    assert resolve_family("d21a", 1) is resolve_family("d", 1)
    assert resolve_family("sl", 2) is resolve_family("gl", 2)
    for bad in (("gl", 0), ("d21a", 2), ("x", 1)):
        with pytest.raises(ValueError):
            resolve_family(*bad)


@pytest.mark.parametrize("family,n,order", GRID)
def test_leading_q_degree_per_translation(family, n, order):
    rs = resolve_family(family, n)
    R = build_R(rs).shifted(rs.rho)
    for mu in enumerate_translations(rs, order):
        s = expand(rs, act(rs, translation(rs, mu), R), min(order, 6))
        degrees = [rs.rho.imag - w.imag for w, c in support_weights(s) if c]
        assert min(degrees) == -v_pairing(rs, mu)


@pytest.mark.parametrize("family,n,order", [("gl", 1, 8), ("gl", 2, 10), ("d", 1, 10), ("d21a", 1, 8)])
def test_verify_small(family, n, order):
    rep = verify_affine_identity(family, n, order)
    assert rep.passed and rep.mismatch_count == 0 and rep.lhs_terms == rep.rhs_terms > 0


def test_sl_report():
    rep = verify_affine_identity("sl", 2, 12)
    assert rep.passed and rep.family == "sl"
    assert rep.details["sl_f"] == ["1", "-1", "-1"]
    rep = extract_Y_report("sl", 1, 12)
    assert rep.passed and rep.details["sl_f"] == [str(x) for x in sl_f_closed_form(1, 4)]


def test_negative_control_detects_missing_factor():
    rs = build_root_system("gl", 2)
    lhs = rhat_rho(rs, 10)  # f omitted on purpose
    _, mm = compare(lhs, translation_sum(rs, 10))
    assert mm


def test_extract_Y_examples():
    rs = build_root_system("d", 1)
    Y = extract_Y("d", 1, 12)
    assert q_coefficients(Y) == [1, 1, 2, 3]
    Y2 = extract_Y("gl", 2, 12)
    coeff = {w: c for w, c in support_weights(Y2)}
    g = build_root_system("gl", 2)
    assert coeff[g.zero()] == 1
    assert coeff[-g.delta - g.str_] == coeff[-g.delta + g.str_] == -1


def test_isotropy_small():
    assert check_support_isotropy("gl", 2, 10).passed
    assert check_support_isotropy("d", 1, 10).passed


@pytest.mark.parametrize("family,n", [("gl", 1), ("gl", 2), ("gl", 3), ("d", 1), ("d", 2)])
def test_finite_identity(family, n):
    rep = finite_denominator_check(family, n)
    assert rep.passed and rep.details["explicit_orbit_sum"]


def test_finite_identity_over_w_prime():
    assert finite_denominator_check("gl", 2, group="W'").passed


def test_straighten():
    rs = build_root_system("gl", 3)
    simple = [rs.eps(1) - rs.eps(2), rs.eps(2) - rs.eps(3)]
    # (1, 0, 2) -> (1, 2, 0) -> (2, 1, 0): two transpositions
    assert straighten(rs.eps(3, 2) + rs.eps(1), simple) == (1, rs.eps(1, 2) + rs.eps(2))
    assert straighten(rs.eps(2, 2) + rs.eps(1), simple) == (-1, rs.eps(1, 2) + rs.eps(2))
    assert straighten(rs.eps(1) + rs.eps(2), simple)[1] is None


@pytest.mark.parametrize("family,n,which", [("gl", 2, "prime"), ("gl", 3, "doubleprime"), ("d", 1, "prime"), ("d", 2, "doubleprime")])
def test_classical_weyl_small(family, n, which):
    rep = verify_classical_weyl(build_root_system(family, n), which)
    assert rep.passed


def test_lemma_form_small():
    assert lemma_form_check("gl", 2, 8).passed
    assert lemma_form_check("d", 1, 6).passed


def test_probe_examples():
    rep = d_illdefined_probe(2, 3)
    assert rep.verdict == "info"
    assert rep.details["del_translations"][0]["tS_positive"]
    assert rep.details["v_witnesses"] == 3
    with pytest.raises(ValueError):
        d_illdefined_probe(2, 0)


def test_jacobi_examples():
    rep = jacobi_check(30)
    assert rep.passed and rep.details["head"][:2] == ["1", "16"]
    assert jacobi_divisor_side(2)[1] == 16
    assert r8_direct(6) == r8_convolution(6)
    with pytest.raises(ValueError):
        jacobi_check(0)


def test_report_schema_and_determinism():
    a = verify_affine_identity("gl", 2, 8).to_dict(timing=False)
    b = verify_affine_identity("gl", 2, 8).to_dict(timing=False)
    assert a == b
    assert {"identity", "family", "n", "order", "verdict", "lhs_terms", "rhs_terms", "mismatch_count", "mismatches"} <= set(a)


def test_mismatch_cap():
    rep = VerificationReport("x", "gl", 1, 0)
    rep.add_mismatches([(i, 0, 1) for i in range(80)])
    assert rep.mismatch_count == 80 and len(rep.mismatches) == 50 and rep.verdict == "fail"


def test_shell_error_is_assertion():
    assert issubclass(ShellError, AssertionError)
