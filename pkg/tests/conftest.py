import json
import logging
from pathlib import Path

import numpy as np
import pytest

from mubkit.enums import Method
from mubkit.models.mub_file import MubFileV1
from mubkit.models.mub_set import MubSet
from mubkit.models.spectral import SpectralConfig
from mubkit.services.finite_field import FpPoly
from mubkit.services.mub_prime import prime_mub
from mubkit.services.mub_primepower import primepower_mub

# The four matrices over F_2 of the d = 4 reference family, in order
D4_FAMILY = [
    [[0, 0], [0, 0]],
    [[1, 0], [0, 1]],
    [[0, 1], [1, 1]],
    [[1, 1], [1, 0]],
]

# The eight matrices of the d = 8 example family
D8_FAMILY = [
    [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 1, 0], [1, 1, 1], [0, 1, 1]],
    [[0, 0, 1], [0, 1, 1], [1, 1, 0]],
    [[1, 1, 0], [1, 0, 1], [0, 1, 0]],
    [[1, 0, 1], [0, 0, 1], [1, 1, 1]],
    [[0, 1, 1], [1, 0, 0], [1, 0, 1]],
    [[1, 1, 1], [1, 1, 0], [1, 0, 0]],
]

# Generators of the d = 8 example family
D8_GENERATORS = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 1, 0], [1, 1, 1], [0, 1, 1]],
    [[0, 0, 1], [0, 1, 1], [1, 1, 0]],
]


@pytest.fixture(scope="session")
def d4_family():
    """The d = 4 example family as int arrays."""
    return [np.array(a, dtype=np.int64) for a in D4_FAMILY]


@pytest.fixture(scope="session")
def d8_family():
    """A_1..A_8 of the d = 8 example as int arrays."""
    return [np.array(a, dtype=np.int64) for a in D8_FAMILY]


@pytest.fixture(scope="session")
def d8_generators():
    return [np.array(a, dtype=np.int64) for a in D8_GENERATORS]


@pytest.fixture(scope="session")
def mub2() -> MubSet:
    return prime_mub(2)


@pytest.fixture(scope="session")
def mub3() -> MubSet:
    return prime_mub(3)


@pytest.fixture(scope="session")
def mub4() -> MubSet:
    """primepower_mub(2, 2) with the p2 family."""
    return primepower_mub(2, 2, Method.P2_QUADRATIC, SpectralConfig(rng_seed=0))


@pytest.fixture(scope="session")
def mub9() -> MubSet:
    """d = 9 with the modulus x^2 + x + 2."""
    return primepower_mub(
        3,
        2,
        Method.WOOTTERS_FIELDS,
        SpectralConfig(rng_seed=42),
        modulus_poly=FpPoly((2, 1, 1), 3),
    )


@pytest.fixture
def write_mub_file(tmp_path: Path):
    """Write a MubSet as a mub/1 file and return its path."""

    def _write(mub_set: MubSet, name: str = "set.json") -> str:
        path = tmp_path / name
        path.write_text(MubFileV1.from_mub_set(mub_set).model_dump_json())
        return str(path)

    return _write


@pytest.fixture
def read_json():
    def _read(path: str):
        return json.loads(Path(path).read_text())

    return _read


@pytest.fixture(autouse=True)
def reset_logging():
    """Detach the structured handlers main() installs on the captured stderr."""
    yield
    for name in ("", "mubkit", "mubkit.services.monitoring"):
        log = logging.getLogger(name)
        for handler in list(log.handlers):
            log.removeHandler(handler)
        log.propagate = True
