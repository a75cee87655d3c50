from __future__ import annotations

import pytest

from parakit.catalog import (catalog_paramonoids, induced_catalog, n_table,
                             paracategory_catalog, random_table_algebras,
                             z3_01)


@pytest.fixture(scope="session")
def induced_algebras():
    return induced_catalog()


@pytest.fixture(scope="session")
def paramonoids():
    return catalog_paramonoids()


@pytest.fixture(scope="session")
def random_tables():
    return random_table_algebras()


@pytest.fixture(scope="session")
def paracategories():
    return paracategory_catalog()


@pytest.fixture()
def z3_halves():
    return z3_01()


@pytest.fixture()
def table_n():
    return n_table()
