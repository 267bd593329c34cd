import pytest

from gradedmorita import QQ, cyclic_group, group_algebra, symmetric_group

import fixture_lib


@pytest.fixture(scope="session")
def c2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def c3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def oc2(c2):
    return group_algebra(c2, QQ)


@pytest.fixture(scope="session")
def oc3(c3):
    return group_algebra(c3, QQ)


@pytest.fixture(scope="session")
def m2():
    return fixture_lib.m2_graded()


@pytest.fixture(scope="session")
def oc2_map():
    return fixture_lib.oc2_structure_map()


@pytest.fixture(scope="session")
def regular_oc2(oc2_map):
    from gradedmorita import regular_bimodule
    return regular_bimodule(oc2_map)


@pytest.fixture(scope="session")
def row():
    """(bimodule, left map, right map) for the row-vector fixture."""
    return fixture_lib.row_fixture()


@pytest.fixture(scope="session")
def column():
    return fixture_lib.column_fixture()


@pytest.fixture(scope="session")
def row_induction(row):
    """Heavy: the full wreath induction of the row fixture at n = 2."""
    from gradedmorita import wreath_induction
    return wreath_induction(row[0], 2)


@pytest.fixture(scope="session")
def regular_induction(regular_oc2):
    from gradedmorita import wreath_induction
    return wreath_induction(regular_oc2, 2)
