import pytest

from o1ppg.fixtures import fix_bowtie, fix_k4, fix_min9
from o1ppg.generator import grow_quadrangulations
from o1ppg.model import build_o1ppg, validate_quadrangulation
from o1ppg.surface import EmbeddedGraph


@pytest.fixture(scope="session")
def k4():
    return fix_k4()


@pytest.fixture(scope="session")
def bowtie():
    return fix_bowtie()


@pytest.fixture(scope="session")
def min9():
    return fix_min9()


@pytest.fixture(scope="session")
def corpus10(k4):
    """Quadrangulation corpus up to 10 vertices, seeded from FIX-K4."""
    return grow_quadrangulations([k4], n_max=10)


@pytest.fixture(scope="session")
def instances10(corpus10):
    """All instances (polyhedral, n >= 9) in the n <= 10 corpus."""
    from o1ppg.generator import short_key
    out = []
    for n, items in corpus10.items():
        if n < 9:
            continue
        for key, srs in items:
            g = EmbeddedGraph(srs)
            try:
                q = validate_quadrangulation(g)
            except Exception:
                continue
            out.append(build_o1ppg(q, key=f"q{n}-{short_key(srs)}"))
    return out


@pytest.fixture(scope="session")
def inst9(instances10):
    return next(i for i in instances10 if i.n == 9)


@pytest.fixture(scope="session")
def inst10(instances10):
    return next(i for i in instances10 if i.n == 10)
