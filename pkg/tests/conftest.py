import pytest

from floergrowth.freegroup import Endomorphism


@pytest.fixture
def identity2():
    return Endomorphism.from_images_text(["a", "b"])


@pytest.fixture
def doubling():
    """Degree-2 circle map a -> a^2."""
    return Endomorphism.from_images_text(["a a"])


@pytest.fixture
def golden():
    """a -> ab, b -> a; abelianization [[1,1],[1,0]], growth (1+sqrt 5)/2."""
    return Endomorphism.from_images_text(["a b", "a"])


@pytest.fixture
def swap():
    return Endomorphism.from_images_text(["b", "a"])


@pytest.fixture
def corpus(identity2, doubling, golden, swap):
    return {
        "identity2": identity2,
        "doubling": doubling,
        "golden": golden,
        "swap": swap,
    }
