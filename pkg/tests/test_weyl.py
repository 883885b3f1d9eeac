import pytest
from hypothesis import given, settings, strategies as st

from superdenom.lattice import Weight, build_root_system, form4
from superdenom.products import monomial
from superdenom.weyl import (
    GroupElement,
    act_weight,
    compose,
    compute_v,
    enumerate_finite_group,
    enumerate_translations,
    fsum,
    group_order,
    identity,
    inverse,
    translation,
    translation_lattice_shell,
    v_pairing,
)
from superdenom.products import expand

SYSTEMS = [("gl", n) for n in range(1, 5)] + [("d", n) for n in range(1, 4)]


@st.composite
def element(draw, rs):
    pe = draw(st.sampled_from(enumerate_finite_group(rs, "W''")))
    pd = draw(st.sampled_from(enumerate_finite_group(rs, "W'")))
    k = draw(st.lists(st.integers(-3, 3), min_size=rs.n, max_size=rs.n))
    if rs.family == "gl":
        k[-1] -= sum(k)
    return GroupElement(pe.perm_eps, pd.perm_del, Weight.make((0,) * rs.m, k))


@st.composite
def lattice_weight(draw, rs):
    c = draw(st.lists(st.integers(-3, 3), min_size=len(rs.affine_simple), max_size=len(rs.affine_simple)))
    return rs.from_coords(c)


@st.composite
def setup(draw):
    rs = build_root_system(*draw(st.sampled_from(SYSTEMS[:3] + SYSTEMS[4:6])))
    return rs, draw(element(rs)), draw(element(rs)), draw(lattice_weight(rs)), draw(lattice_weight(rs))


pytestmark = pytest.mark.property


@settings(max_examples=500)
@given(setup())
def test_group_laws(s):
    rs, g, h, w, _ = s
    assert act_weight(rs, compose(g, h), w) == act_weight(rs, g, act_weight(rs, h, w))
    assert act_weight(rs, compose(g, inverse(g)), w) == w
    assert compose(g, inverse(g)) == identity(rs)
    assert act_weight(rs, identity(rs), w) == w


@settings(max_examples=500)
@given(setup())
def test_sign_is_a_homomorphism(s):
    rs, g, h, _, _ = s
    assert compose(g, h).sign == g.sign * h.sign
    assert inverse(g).sign == g.sign


@settings(max_examples=500)
@given(setup())
def test_form_preserved(s):
    rs, g, _, w1, w2 = s
    assert form4(act_weight(rs, g, w1), act_weight(rs, g, w2)) == form4(w1, w2)


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda p: f"{p[0]}{p[1]}")
def test_translations_have_sign_one(system):
    rs = build_root_system(*system)
    for k in translation_lattice_shell(rs, 4):
        g = translation(rs, k)
        assert g.sign == 1 and g.is_translation
        assert act_weight(rs, g, rs.delta) == rs.delta


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda p: f"{p[0]}{p[1]}")
def test_v_bounds_on_shells(system):
    rs = build_root_system(*system)
    shell = translation_lattice_shell(rs, 8)
    assert shell and all(sum(abs(x) for x in k) <= 8 for k in shell)
    for k in shell:
        mu = Weight.make((0,) * rs.m, k)
        p = v_pairing(rs, mu)
        assert p <= 0
        if rs.family == "d":
            assert p <= -sum(abs(x) for x in k)
        else:
            assert sum(k) == 0
            assert p <= sum(x for x in k if x < 0)


def test_t_delta1_on_odd_root():
    rs = build_root_system("d", 1)
    b = rs.eps(1) - rs.del_(1)
    assert act_weight(rs, translation(rs, [1]), b) == b.shift_imag(1)
    assert act_weight(rs, translation(rs, [0]), b) == b


def test_v_examples():
    rs = build_root_system("d", 1)
    mu = rs.del_(1)
    assert compute_v(rs, mu) == -rs.del_(1) - rs.eps(1)
    assert v_pairing(rs, mu) == -1
    assert compute_v(rs, rs.zero()).is_zero()
    for n in (1, 2, 3):
        rs = build_root_system("d", n)
        for k in range(1, 6):
            assert compute_v(rs, rs.eps(1, -2 * k)).is_zero()


def test_enumerate_translations_examples():
    rs = build_root_system("gl", 2)
    assert enumerate_translations(rs, 0) == [rs.zero()]
    assert enumerate_translations(rs, 1) == [Weight.make((0, 0), k) for k in [(-1, 1), (0, 0), (1, -1)]]
    d = build_root_system("d", 1)
    assert enumerate_translations(d, 2) == [Weight.make((0, 0), (k,)) for k in range(-2, 3)]
    with pytest.raises(ValueError):
        enumerate_translations(d, -1)


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda p: f"{p[0]}{p[1]}")
def test_enumerate_translations_is_exact(system):
    rs = build_root_system(*system)
    N = 6
    got = set(enumerate_translations(rs, N))
    # nothing in a wider shell is missed
    for k in translation_lattice_shell(rs, 3 * N if rs.family == "gl" else 2 * N):
        mu = Weight.make((0,) * rs.m, k)
        assert (mu in got) == (-v_pairing(rs, mu) <= N)


def test_finite_group_examples():
    gl2 = build_root_system("gl", 2)
    assert sorted(g.sign for g in enumerate_finite_group(gl2, "W'")) == [-1, 1]
    d1 = build_root_system("d", 1)
    wp = enumerate_finite_group(d1, "W'")
    assert len(wp) == 2 and {g.perm_del: g.sign for g in wp} == {(1,): 1, (-1,): -1}
    assert len(enumerate_finite_group(d1, "W''")) == 4
    with pytest.raises(ValueError):
        enumerate_finite_group(d1, "W")


@pytest.mark.parametrize("system", [("gl", 3), ("d", 2)])
@pytest.mark.parametrize("which", ["W'", "W''"])
def test_finite_group_closed(system, which):
    rs = build_root_system(*system)
    els = enumerate_finite_group(rs, which)
    assert len(els) == group_order(rs, which) == len(set(els))
    s = set(els)
    for g in els:
        for h in els[:6]:
            assert compose(g, h) in s


def test_fsum_identity_element():
    rs = build_root_system("d", 2)
    p = monomial(rs, rs.affine_simple[0] * -1)
    assert fsum(rs, [identity(rs)], p, 3) == expand(rs, p, 3)
