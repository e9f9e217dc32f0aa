import pytest

from symmetroid.cli import load_pencil


@pytest.fixture(scope="session")
def thm_pencil():
    return load_pencil("thm_example")[0]


@pytest.fixture(scope="session")
def q3_pencil():
    return load_pencil("prop_q3")[0]


@pytest.fixture(scope="session")
def cor_pencil():
    return load_pencil("cor_easy")[0]


@pytest.fixture(scope="session")
def thm_regularity(thm_pencil):
    from symmetroid.pencil import regularity_certificate
    cert = regularity_certificate(thm_pencil, 7)
    assert cert.certified
    return cert


@pytest.fixture(scope="session")
def q3_regularity(q3_pencil):
    from symmetroid.pencil import regularity_certificate
    cert = regularity_certificate(q3_pencil, 7)
    assert cert.certified
    return cert


@pytest.fixture(scope="session")
def cor_regularity(cor_pencil):
    from symmetroid.pencil import regularity_certificate
    cert = regularity_certificate(cor_pencil, 11)
    assert cert.certified
    return cert
