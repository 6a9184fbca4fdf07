import pytest

from nliouville import dimension_constants


@pytest.fixture(params=[2, 3, 4], ids=lambda n: f"n{n}")
def dim(request):
    return dimension_constants(request.param)


def rel(a, b):
    return abs(a - b) / abs(b)
