from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from hopfmerge.linear import FormalSum, bilinear, tensor


def test_arithmetic_and_cancellation():
    a = FormalSum.term("x", 2) + FormalSum.term("y")
    b = FormalSum.term("x", -2)
    assert (a + b) == FormalSum.term("y")
    assert len(a + b) == 1
    assert (a - a) == FormalSum() and not (a - a)


def test_rational_coefficients_stay_exact():
    a = Fraction(1, 3) * FormalSum.term("x")
    assert (a + a + a) == FormalSum.term("x")
    assert a.coeff("x") == Fraction(1, 3)
    assert isinstance((3 * FormalSum.term("x")).coeff("x"), Fraction)


def test_string_and_order_are_deterministic():
    s = FormalSum([("b", 1), ("a", -2), ("c", Fraction(1, 2))])
    assert str(s) == "-2*a + b + 1/2*c"
    assert [k for k, _ in s.items()] == ["a", "b", "c"]
    assert str(FormalSum()) == "0"


def test_json_shape():
    s = FormalSum([("a", Fraction(-3, 4))])
    assert s.to_json() == [{"coeff": {"num": -3, "den": 4}, "term": "a"}]
    t = tensor(FormalSum.term("a"), FormalSum.term("b"))
    assert t.to_json() == [{"coeff": {"num": 1, "den": 1}, "term_pair": ["a", "b"]}]


def test_bilinear_and_map():
    a = FormalSum([("x", 1), ("y", 2)])
    b = FormalSum([("z", 3)])
    prod = bilinear(lambda u, v: u + v, a, b)
    assert prod == FormalSum([("xz", 3), ("yz", 6)])
    assert a.map(lambda k: FormalSum.term(k.upper(), 2)) == FormalSum([("X", 2), ("Y", 4)])


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
sums = st.lists(st.tuples(st.sampled_from("abcd"), coeffs), max_size=6).map(FormalSum)


@given(sums, sums, sums)
def test_vector_space_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + (-a) == FormalSum()
    assert 2 * (a + b) == 2 * a + 2 * b
