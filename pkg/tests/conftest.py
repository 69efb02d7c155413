import pytest

from extracta.standard_basis import certificates


@pytest.fixture(autouse=True, scope="session")
def _verify_certificates():
    # Every Mora normal form computed anywhere in the suite carries its unit
    # and quotients, and unit*f - sum(q*G) - r is checked to be zero.
    certificates.enabled = True
    yield
    certificates.enabled = False
