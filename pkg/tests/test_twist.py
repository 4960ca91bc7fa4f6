import pytest

from twistss import (
    TwistError,
    apply_D,
    make_twist,
    parse_twist,
    twisted_cohomology,
)
from twistss.cdga import Form
from twistss.models import bundled_model, standard_pairs
from twistss.twist import ParityComplex


@pytest.fixture(scope="module")
def torus3():
    return bundled_model("torus3")


def test_make_twist_top_form(torus3):
    H = parse_twist(torus3, "e1^e2^e3")
    assert H.degrees == (3,)
    assert not H.is_zero


def test_empty_twist(torus3):
    H = make_twist(torus3, [])
    assert H.is_zero
    assert parse_twist(torus3, "").is_zero


def test_non_closed_part_rejected():
    m = bundled_model("cascade3")
    with pytest.raises(TwistError, match="not closed"):
        make_twist(m, [m.basis_form("v")])


def test_degree_one_part_rejected(torus3):
    with pytest.raises(TwistError, match="degree >= 3"):
        make_twist(torus3, [torus3.basis_form("e1")])


def test_even_degree_part_rejected():
    m = bundled_model("mixed5")
    with pytest.raises(TwistError, match="even"):
        make_twist(m, [m.basis_form("a").wedge(m.basis_form("x"))])


def test_apply_D_unit(torus3):
    H = parse_twist(torus3, "e1^e2^e3")
    assert apply_D(H, torus3.unit_form()) == torus3.parse_form("e1^e2^e3")


def test_apply_D_untwisted_is_d():
    m = bundled_model("heisenberg")
    H = make_twist(m, [])
    c = m.basis_form("c")
    assert apply_D(H, c) == c.d()


def test_apply_D_su3():
    m = bundled_model("su3")
    H = parse_twist(m, "x3")
    x5 = m.basis_form("x5")
    assert apply_D(H, x5) == m.parse_form("x3^x5")


def test_parity_complex_d_squared(torus3):
    H = parse_twist(torus3, "e1^e2^e3")
    pc = ParityComplex(torus3, H)
    assert (pc.d_odd_to_even @ pc.d_even_to_odd).is_zero()


def test_untwisted_recovers_de_rham():
    for name in ("torus3", "heisenberg", "su3", "mixed5"):
        m = bundled_model(name)
        tc = twisted_cohomology(m, make_twist(m, []))
        even = sum(m.betti(p) for p in range(0, m.top_degree + 1, 2))
        odd = sum(m.betti(p) for p in range(1, m.top_degree + 1, 2))
        assert tc.dims == (even, odd)


def test_torus3_twisted_dims(torus3):
    tc = twisted_cohomology(torus3, parse_twist(torus3, "e1^e2^e3"))
    assert tc.dims == (3, 3)


def test_su3_twisted_dims():
    m = bundled_model("su3")
    tc = twisted_cohomology(m, parse_twist(m, "x3"))
    assert tc.dims == (0, 0)


def test_twisted_representatives_are_cocycles():
    m = bundled_model("mixed5")
    H = parse_twist(m, "a + b")
    tc = twisted_cohomology(m, H)
    for parity in (0, 1):
        for rep in tc.representatives(parity):
            assert apply_D(H, rep).is_zero


def test_euler_characteristic_invariant_under_twisting():
    for name, expr in standard_pairs():
        m = bundled_model(name)
        tc = twisted_cohomology(m, parse_twist(m, expr))
        chi = sum((-1) ** p * m.betti(p) for p in range(m.top_degree + 1))
        assert tc.dims[0] - tc.dims[1] == chi


def test_cohomologous_twists_same_dims():
    # shift the twist by an exact form d(beta), beta of even degree >= 2
    m = bundled_model("mixed5")
    H = parse_twist(m, "a + b")
    tc = twisted_cohomology(m, H)
    for p in range(2, m.top_degree, 2):
        for i in range(m.dim(p)):
            beta = m.basis_form(m.label_of(p, i))
            dbeta = beta.d()
            if dbeta.is_zero:
                continue
            parts = [H.component_form(k) for k in H.degrees]
            shifted = [dbeta.homogeneous_part(q) for q in dbeta.degrees if q >= 3]
            H2 = make_twist(m, parts + shifted)
            assert twisted_cohomology(m, H2).dims == tc.dims
