import random

from hypothesis import HealthCheck, settings, strategies as st

from vkernets.generate import random_term, random_weakenings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def terms(draw, max_size=25):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_term(random.Random(seed), max_size)


@st.composite
def terms_with_weakenings(draw, max_size=25):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return random_term(rng, max_size), random_weakenings(rng)
