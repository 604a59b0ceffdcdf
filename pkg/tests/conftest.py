import pytest

from cascade_lab.verify import Ensembles

TRIALS = 10_000
SEED = 1


@pytest.fixture(scope="session")
def ensembles():
    # shared by the Monte Carlo unit tests and the acceptance suite
    return Ensembles(TRIALS, SEED)
