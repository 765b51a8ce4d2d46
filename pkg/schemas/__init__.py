"""
Pydantic schemas for measurement configurations and design targets.
"""
from .models import (
    BUILD_KINDS,
    BuildConfig,
    ChainConfig,
    ChainStage,
    GtomConfig,
    GtomTarget,
    MatrixSpec,
    PlateStack,
    SastomConfig,
    SastomTarget,
    SolidStateConfig,
    UnitarySpec,
    build_config_adapter,
    identity_spec,
    parse_build_config,
)

__all__ = [
    'PlateStack', 'MatrixSpec', 'UnitarySpec', 'identity_spec', 'SastomConfig', 'GtomConfig',
    'SolidStateConfig', 'ChainStage', 'ChainConfig', 'SastomTarget', 'GtomTarget', 'BuildConfig',
    'BUILD_KINDS', 'build_config_adapter', 'parse_build_config',
]
