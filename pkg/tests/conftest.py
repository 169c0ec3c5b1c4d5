import sys
from pathlib import Path

import pytest

import tensortopsis as tt

sys.path.insert(0, str(Path(__file__).parent))

HDI_DIRECTIONS = {"c1": "max", "c2": "max", "c3": "max"}
HDI_WEIGHTS = (0.333, 0.333, 0.333)


@pytest.fixture(scope="session")
def hdi_tensor() -> tt.DecisionTensor:
    return tt.load_panel(tt.bundled_path("hdi.csv"), HDI_DIRECTIONS)


@pytest.fixture(scope="session")
def hdi_features(hdi_tensor) -> tt.FeatureTensor:
    return tt.extract(hdi_tensor)


@pytest.fixture(scope="session")
def strategy5_sampler() -> tt.FeatureWeightSampler:
    return tt.FeatureWeightSampler(
        (
            tt.RemainderWeight(),
            tt.UniformWeight(0.1, 0.2),
            tt.UniformWeight(0.1, 0.2),
            tt.UniformWeight(0.1, 0.2),
        )
    )
