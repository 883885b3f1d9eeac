import pickle
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superdenom.lattice import Weight, bilinear, build_root_system, height, to_affine_simple_coords

SYSTEMS = [("gl", n) for n in range(1, 5)] + [("d", n) for n in range(1, 4)]


@pytest.fixture(params=SYSTEMS, ids=lambda p: f"{p[0]}{p[1]}")
def rs(request):
    return build_root_system(*request.param)


def test_rejects_n_zero():
    with pytest.raises(ValueError):
        build_root_system("gl", 0)
    with pytest.raises(ValueError):
        build_root_system("b", 2)


def test_gl2_counts_and_rho():
    rs = build_root_system("gl", 2)
    assert len(rs.pos_even) == 2 and len(rs.pos_odd) == 4
    assert rs.rho == Weight.make((Fraction(-1, 2),) * 2, (Fraction(1, 2),) * 2)


def test_d21_odd_roots():
    rs = build_root_system("d", 1)
    e1, e2, d1 = rs.eps(1), rs.eps(2), rs.del_(1)
    assert set(rs.pos_odd) == {e1 - d1, d1 - e2, d1 + e1, d1 + e2}
    assert rs.rho.is_zero()


def test_form_examples():
    rs = build_root_system("gl", 3)
    assert bilinear(rs, rs.eps(1), rs.eps(1)) == -1
    assert bilinear(rs, rs.del_(2), rs.del_(2)) == 1
    assert bilinear(rs, rs.delta, rs.delta) == 0
    assert bilinear(rs, rs.str_, rs.str_) == 0
    with pytest.raises(ValueError):
        bilinear(rs, build_root_system("gl", 2).eps(1), rs.eps(1))


def test_root_counts(rs):
    n = rs.n
    if rs.family == "gl":
        assert (len(rs.pos_even), len(rs.pos_odd)) == (n * (n - 1), n * n)
        assert rs.rank + 2 * len(rs.pos_even) - 2 * len(rs.pos_odd) == 0
    else:
        assert (len(rs.pos_even), len(rs.pos_odd)) == (n * (n + 1) + n * n, 2 * n * (n + 1))
        assert rs.rank + 2 * len(rs.pos_even) - 2 * len(rs.pos_odd) == 1


def test_blocks_are_separated(rs):
    assert all(not any(a.eps2) for a in rs.pos_even_prime)
    assert all(not any(a.del2) for a in rs.pos_even_doubleprime)


def test_positive_roots_in_q_plus(rs):
    for a in rs.pos_even + rs.pos_odd:
        c = rs.coords(a)
        assert c is not None and min(c) >= 0 and a.imag == 0


def test_rho_on_simple_roots(rs):
    for a in rs.simple_roots:
        assert 2 * rs.form(rs.rho, a) == rs.form(a, a)


def test_isotropic_set(rs):
    for b in rs.iso_set:
        assert rs.form(rs.rho, b) == 0
        for c in rs.iso_set:
            assert rs.form(b, c) == 0


def test_str_orthogonal_to_roots():
    for n in range(1, 5):
        rs = build_root_system("gl", n)
        for a in rs.pos_even + rs.pos_odd:
            assert rs.form(rs.str_, a) == 0


def test_marks_and_delta(rs):
    assert all(k > 0 for k in rs.marks)
    assert rs.from_coords(rs.marks) == rs.delta
    assert rs.coords(rs.delta) == rs.marks
    expected = 2 * rs.n if rs.family == "gl" else 4 * rs.n
    assert height(rs, rs.delta) == expected >= 2


def test_affine_simple_are_unit_vectors(rs):
    for i, a in enumerate(rs.affine_simple):
        c = rs.coords(a)
        assert sum(c) == 1 and c[i] == 1
        assert height(rs, a) == 1
    assert height(rs, rs.zero()) == 0


def test_str_coords_gl2():
    rs = build_root_system("gl", 2)
    assert rs.coords(rs.str_) == (0, 1, 0, 1)


def test_non_lattice_weights():
    rs = build_root_system("gl", 2)
    assert to_affine_simple_coords(rs, rs.rho) is None
    assert to_affine_simple_coords(rs, rs.eps(1)) is None  # eps_1 alone is not a root-lattice vector
    with pytest.raises(ValueError):
        height(rs, rs.rho)


def test_pickle_returns_cached_instance(rs):
    assert pickle.loads(pickle.dumps(rs)) is rs


@settings(max_examples=300)
@given(st.sampled_from(SYSTEMS), st.data())
def test_sums_of_positive_affine_roots_are_in_q_plus(system, data):
    rs = build_root_system(*system)
    finite = list(rs.pos_even + rs.pos_odd)
    affine = finite + [rs.delta]
    for k in range(1, 3):
        affine += [a.shift_imag(k) for a in finite] + [(-a).shift_imag(k) for a in finite]
    chosen = data.draw(st.lists(st.sampled_from(affine), max_size=6))
    total = rs.zero()
    for a in chosen:
        total = total + a
    c = rs.coords(total)
    assert c is not None and min(c) >= 0
    assert rs.from_coords(c) == total


@settings(max_examples=300)
@given(st.sampled_from(SYSTEMS), st.data())
def test_coords_round_trip(system, data):
    rs = build_root_system(*system)
    r = len(rs.affine_simple)
    c = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=r, max_size=r)))
    assert rs.coords(rs.from_coords(c)) == c


def test_weight_json_round_trip():
    w = Weight.make((Fraction(1, 2), -3), (2,), -5)
    assert w.to_json() == {"eps": [1, -6], "del": [4], "imag": -5}
    assert Weight.from_json(w.to_json()) == w
    with pytest.raises(ValueError):
        Weight.make((Fraction(1, 3),), ())
