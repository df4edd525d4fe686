import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from crtdesign import CostModel, DesignSpace, EffectSpec, ParameterSpace


@pytest.fixture
def cost_k10() -> CostModel:
    return CostModel(100000, 500, 50)


@pytest.fixture
def cost_k20() -> CostModel:
    return CostModel(100000, 2000, 100)


@pytest.fixture
def reference_space() -> ParameterSpace:
    return ParameterSpace((0.005, 0.2), (0.1, 1.0))


@pytest.fixture
def default_design_space() -> DesignSpace:
    return DesignSpace()


@pytest.fixture
def effect_02() -> EffectSpec:
    return EffectSpec(beta_ate=0.2, beta_hte=0.2)
