import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from resheight.bigpoly import SparsePoly, Universe

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL_U = Universe(3, 4)


def polys(universe=SMALL_U, max_terms=5, max_exp=3, coeffs=st.integers(-50, 50)):
    mon = st.tuples(*[st.integers(0, max_exp)] * universe.arity)
    return st.dictionaries(mon, coeffs, max_size=max_terms).map(lambda d: SparsePoly(universe, d))
