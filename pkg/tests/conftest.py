import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from semiconj.ratfun import Polynomial, RationalFunction  # noqa: E402

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_ints = st.integers(min_value=-3, max_value=3)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polynomials(draw, max_degree=3, coeffs=small_ints):
    d = draw(st.integers(min_value=0, max_value=max_degree))
    cs = draw(st.lists(coeffs, min_size=d + 1, max_size=d + 1))
    return Polynomial(cs)


@st.composite
def rational_functions(draw, min_degree=1, max_degree=3, coeffs=small_ints):
    num = draw(polynomials(max_degree, coeffs))
    den = draw(polynomials(max_degree, coeffs).filter(lambda p: not p.is_zero()))
    f = RationalFunction.from_polys(num, den)
    from hypothesis import assume

    assume(min_degree <= f.degree <= max_degree)
    return f


@st.composite
def mobius_maps(draw):
    from hypothesis import assume

    a, b, c, d = (draw(small_ints) for _ in range(4))
    assume(a * d - b * c != 0)
    return RationalFunction.mobius(a, b, c, d)

