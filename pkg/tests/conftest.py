import pytest

from dqpcy import AInfinityStructure, load_bundled


@pytest.fixture(scope="session")
def bundled():
    return {name: load_bundled(name) for name in ("qp2", "qp3", "dp3")}


@pytest.fixture(scope="session")
def structures(bundled):
    out = {name: AInfinityStructure(af.bracket) for name, af in bundled.items()}
    out["dp3_tau1"] = AInfinityStructure(bundled["dp3"].bracket.with_tau(1))
    return out
