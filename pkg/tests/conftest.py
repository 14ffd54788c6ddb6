import random

from hypothesis import HealthCheck, settings, strategies as st

from derlab.core import iter_functors
from derlab.shapes import random_category, small_categories

settings.register_profile(
    "derlab", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("derlab")

CORPUS = small_categories(3)
CORPUS2 = small_categories(2)


def corpus_categories(max_objects=3):
    return st.sampled_from(CORPUS if max_objects >= 3 else CORPUS2)


@st.composite
def random_categories(draw, max_objects=4, max_morphisms=10):
    seed = draw(st.integers(0, 10**6))
    return random_category(random.Random(seed), max_objects, max_morphisms)


FUNCTORS = [F for A in CORPUS for B in CORPUS for F in iter_functors(A, B)]


def corpus_functors():
    return st.sampled_from(FUNCTORS)
