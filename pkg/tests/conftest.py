import pytest

from cellform.catalog import Catalog


@pytest.fixture(scope="session")
def shared_catalog(tmp_path_factory) -> Catalog:
    """One catalog for the whole run so computed coefficient terms are reused."""
    path = tmp_path_factory.mktemp("cache") / "catalog.json"
    return Catalog(path)
