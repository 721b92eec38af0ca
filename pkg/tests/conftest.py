import pathlib

import pytest

from rgdkit import blueprints

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def bp_m2():
    return blueprints.builtin("rank2:m2")


@pytest.fixture(scope="session")
def bp_m3():
    return blueprints.builtin("rank2:m3")


@pytest.fixture(scope="session")
def bp_m4():
    return blueprints.builtin("rank2:m4")


@pytest.fixture(scope="session")
def bp_m6():
    return blueprints.builtin("rank2:m6lr")


@pytest.fixture(scope="session")
def bp_m6_mirror():
    return blueprints.builtin("rank2:m6rl")


@pytest.fixture(scope="session")
def bp_universal3():
    return blueprints.ingest_path(str(FIXTURES / "universal3_allempty.bp"))


@pytest.fixture(scope="session")
def bp_product_b2():
    return blueprints.ingest_path(str(FIXTURES / "rank3_b2_product.bp"))


@pytest.fixture(scope="session")
def bp_product_a2():
    return blueprints.ingest_path(str(FIXTURES / "rank3_a2_product.bp"))


@pytest.fixture(scope="session")
def bp_product_g2():
    return blueprints.ingest_path(str(FIXTURES / "rank3_g2_product.bp"))


@pytest.fixture(scope="session")
def bp_rightangled3():
    return blueprints.ingest_path(str(FIXTURES / "rightangled3_allempty.bp"))


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)
