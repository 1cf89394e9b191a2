"""Field arithmetic and the polynomial layer."""

import pytest
from hypothesis import given, settings, strategies as st

from erasure_lab.codes import parse_code_spec
from erasure_lab.galois import GF, Poly, cyclotomic_coset, cyclotomic_cosets

# one field per characteristic/extension shape the package actually exercises
FIELDS = [GF(2), GF(3), GF(11), GF(17), GF(23), GF(2, 4), GF(2, 5), GF(3, 3)]

CODE_SPECS = [
    "golay23",
    "egolay24",
    "tgolay11",
    "rs8",
    "mds15",
    "rs:10,5,11,2",
    "rs:11,5,23,2",
    "rs:13,4,27,9",
    "lrc:15,8,dl=3",
    "lrc:15,8,dl=5",
    "bch:31,zeros=7+15",
    "bch:31,zeros=7+11+15",
    "bch:63,delta=21",
    "hamming:4",
]


@st.composite
def field_and_elements(draw, count=3, nonzero=False):
    field = draw(st.sampled_from(FIELDS))
    lo = 1 if nonzero else 0
    vals = [draw(st.integers(lo, field.q - 1)) for _ in range(count)]
    return field, vals


@given(field_and_elements())
def test_field_ring_axioms(fv):
    field, (a, b, c) = fv
    assert field.add(a, b) == field.add(b, a)
    assert field.mul(a, b) == field.mul(b, a)
    assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
    assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
    assert field.mul(a, field.add(b, c)) == field.add(
        field.mul(a, b), field.mul(a, c)
    )
    assert field.add(a, 0) == a
    assert field.mul(a, 1) == a
    assert field.add(a, field.neg(a)) == 0


@given(field_and_elements(count=2, nonzero=True))
def test_field_inverses_and_division(fv):
    field, (a, b) = fv
    assert field.mul(a, field.inv(a)) == 1
    assert field.mul(field.div(a, b), b) == a


@given(field_and_elements(count=1, nonzero=True), st.integers(0, 300))
def test_pow_matches_repeated_multiplication(fv, e):
    field, (a,) = fv
    acc = 1
    for _ in range(e):
        acc = field.mul(acc, a)
    assert field.pow(a, e) == acc


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f"GF({f.p}^{f.m})")
def test_primitive_element_generates_multiplicative_group(field):
    assert field.element_order(field.alpha) == field.q - 1
    seen = {field.pow(field.alpha, e) for e in range(field.q - 1)}
    assert len(seen) == field.q - 1
    assert 0 not in seen


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f"GF({f.p}^{f.m})")
def test_exp_log_roundtrip(field):
    for a in range(1, min(field.q, 64)):
        assert field.exp_alpha(field.log_alpha(a)) == a


def test_prime_subfield_membership():
    field = GF(2, 4)
    subfield = [v for v in range(field.q) if field.in_prime_subfield(v)]
    assert subfield == [0, 1]
    field3 = GF(3, 3)
    assert sum(field3.in_prime_subfield(v) for v in range(field3.q)) == 3


def test_field_constructor_rejects_bad_parameters():
    with pytest.raises(ValueError):
        GF(4)  # characteristic must be prime
    with pytest.raises(ValueError):
        GF(2, 0)
    with pytest.raises(ValueError):
        GF(2, 17)  # beyond the log/antilog table limit
    with pytest.raises(ValueError):
        GF(7, modulus=(1, 1))  # prime fields take no modulus


@st.composite
def poly_pairs(draw):
    field = draw(st.sampled_from(FIELDS))
    coeffs = st.lists(st.integers(0, field.q - 1), min_size=1, max_size=8)
    a = Poly(field, draw(coeffs))
    b = Poly(field, draw(coeffs))
    return a, b


@given(poly_pairs())
def test_poly_divmod_roundtrip(pair):
    a, b = pair
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(poly_pairs())
def test_poly_ring_identities(pair):
    a, b = pair
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == Poly.zero(a.field)


def test_poly_from_roots_vanishes_at_roots():
    field = GF(2, 4)
    roots = [field.pow(field.alpha, e) for e in (1, 2, 3)]
    p = Poly.from_roots(field, roots)
    assert p.degree == 3
    for r in roots:
        assert p.eval(r) == 0
    assert p.eval(field.pow(field.alpha, 5)) != 0


def test_poly_gcd_divides_both():
    field = GF(17)
    a = Poly.from_roots(field, [2, 3, 5])
    b = Poly.from_roots(field, [3, 5, 7])
    g = a.gcd(b)
    assert (a % g).is_zero() and (b % g).is_zero()
    assert g.monic() == Poly.from_roots(field, [3, 5])


@pytest.mark.parametrize("spec", CODE_SPECS)
def test_generator_times_check_is_x_n_minus_one(spec):
    code = parse_code_spec(spec)
    m = code.rotation_period  # cyclic length; the extension column never rotates
    field = code.field
    x_n_minus_1 = Poly.x_pow(field, m) - Poly.one(field)
    assert code.g * code.h == x_n_minus_1
    assert code.g.degree + code.h.degree == m


@pytest.mark.parametrize("spec", CODE_SPECS)
def test_generator_vanishes_exactly_on_declared_zeros(spec):
    code = parse_code_spec(spec)
    fs = code.splitting_field
    lifted = code.g if fs == code.field else Poly(fs, code.g.coeffs)
    assert fs.element_order(code.omega) == code.rotation_period
    for e in range(code.rotation_period):
        val = lifted.eval(fs.pow(code.omega, e))
        assert (val == 0) == (e in code.zero_exponents), f"exponent {e}"


@pytest.mark.parametrize("n,q", [(23, 2), (31, 2), (63, 2), (11, 3), (15, 2)])
def test_cyclotomic_cosets_partition_and_close(n, q):
    cosets = cyclotomic_cosets(n, q)
    flat = [e for c in cosets for e in c]
    assert sorted(flat) == list(range(n))
    for c in cosets:
        assert set((e * q) % n for e in c) == set(c)
        assert c[0] == min(c)
        assert c == cyclotomic_coset(n, q, c[0])


def test_field_element_operators_match_integer_methods():
    field = GF(2, 4)
    a, b = field.element(9), field.element(13)
    assert int(a + b) == field.add(9, 13)
    assert int(a * b) == field.mul(9, 13)
    assert int(a / b) == field.div(9, 13)
    assert int(a**3) == field.pow(9, 3)
    assert int(-a) == field.neg(9)
    assert bool(field.element(0)) is False
