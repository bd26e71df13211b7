import pytest

from woz.envmap import load_environment
from woz.inventory import load_inventory
from woz.reference import (reference_environment_document,
                           reference_inventory_document)


@pytest.fixture(scope="session")
def reference_doc():
    return reference_inventory_document()


@pytest.fixture(scope="session")
def reference_registry(reference_doc):
    return load_inventory(reference_doc)


@pytest.fixture(scope="session")
def reference_env():
    return load_environment(reference_environment_document())
