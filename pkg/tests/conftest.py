import pytest

from riderpoly.geometry import BoardPolygon, piece_from_text


@pytest.fixture(scope="session")
def square():
    return BoardPolygon.square()


@pytest.fixture(scope="session")
def queen():
    return piece_from_text("queen")


@pytest.fixture(scope="session")
def rook():
    return piece_from_text("rook")


@pytest.fixture(scope="session")
def bishop():
    return piece_from_text("bishop")


@pytest.fixture(scope="session")
def nightrider():
    return piece_from_text("nightrider")


@pytest.fixture(scope="session")
def semiqueen():
    return piece_from_text("semiqueen")
