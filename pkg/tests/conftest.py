import pytest

from triwaring.fields import make_field

# every supported prime power q <= 49 (extension degree capped at 4,
# so q = 32 = 2^5 is out of scope)
PRIME_POWERS_49 = [
    (2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1),
    (13, 1), (2, 4), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3), (29, 1),
    (31, 1), (37, 1), (41, 1), (43, 1), (47, 1), (7, 2),
]

ODD_PRIME_POWERS_49 = [(p, m) for (p, m) in PRIME_POWERS_49 if p != 2]


@pytest.fixture(scope="session")
def all_fields():
    return [make_field(p, m) for (p, m) in PRIME_POWERS_49]


@pytest.fixture(scope="session")
def odd_fields():
    return [make_field(p, m) for (p, m) in ODD_PRIME_POWERS_49]


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F7():
    return make_field(7)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def F13():
    return make_field(13)
