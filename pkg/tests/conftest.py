import pytest

from colorsurf import (
    Color,
    build_artifact,
    build_hexagonal_torus,
    build_square_octagon_torus,
)


@pytest.fixture(scope="session")
def hex33():
    return build_hexagonal_torus(3, 3)


@pytest.fixture(scope="session")
def hex63():
    return build_hexagonal_torus(6, 3)


@pytest.fixture(scope="session")
def hex66():
    return build_hexagonal_torus(6, 6)


@pytest.fixture(scope="session")
def sqoct2():
    return build_square_octagon_torus(2)


@pytest.fixture(scope="session")
def sqoct4():
    return build_square_octagon_torus(4)


@pytest.fixture(scope="session")
def all_lattices(hex33, hex63, hex66, sqoct2, sqoct4):
    return {
        "hex33": hex33,
        "hex63": hex63,
        "hex66": hex66,
        "sqoct2": sqoct2,
        "sqoct4": sqoct4,
    }


@pytest.fixture(scope="session")
def hex33_art(hex33):
    return build_artifact(hex33, Color.R)


@pytest.fixture(scope="session")
def hex66_art(hex66):
    return build_artifact(hex66, Color.R)


@pytest.fixture(scope="session")
def sqoct2_art(sqoct2):
    return build_artifact(sqoct2, Color.R)


@pytest.fixture(scope="session")
def default_artifacts(all_lattices):
    """Default-convention artifacts for every lattice and color."""
    out = {}
    for name, g in all_lattices.items():
        for c in (Color.R, Color.G, Color.B):
            out[(name, c.value)] = build_artifact(g, c)
    return out
