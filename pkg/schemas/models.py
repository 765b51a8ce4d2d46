"""
Pydantic models for measurement configurations and inverse-design targets.
"""
import math
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator, model_validator

from qmat import IDENTITY, Complex2x2

_CONFIG = ConfigDict(frozen=True, populate_by_name=True)


class PlateStack(BaseModel):
    """Model for a quarter-half-quarter wave plate stack (fast-axis angles in radians)."""
    model_config = _CONFIG

    type: Literal["plates"] = "plates"
    quarter1_angle: float = Field(alias="q1", description="First quarter-wave plate angle")
    half_angle: float = Field(alias="h", description="Half-wave plate angle")
    quarter2_angle: float = Field(alias="q2", description="Second quarter-wave plate angle")

    @field_validator("quarter1_angle", "half_angle", "quarter2_angle")
    @classmethod
    def _fold_angle(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("plate angle must be finite")
        folded = math.fmod(value, math.pi)
        return folded + math.pi if folded < 0 else folded


class MatrixSpec(BaseModel):
    """Model for an explicitly given unitary."""
    model_config = _CONFIG

    type: Literal["matrix"] = "matrix"
    m: Complex2x2 = Field(description="Row-major [[re, im] x 4] matrix")


UnitarySpec = Annotated[Union[PlateStack, MatrixSpec], Field(discriminator="type")]


def _wrap_raw_matrix(value):
    # bare [[re, im] x 4] lists and Complex2x2 values are shorthand for a MatrixSpec
    if isinstance(value, (list, tuple, Complex2x2)):
        return {"type": "matrix", "m": value}
    return value


def identity_spec() -> MatrixSpec:
    return MatrixSpec(m=IDENTITY)


class SastomConfig(BaseModel):
    """Model for the single beam splitter interferometer with two wave plate stacks."""
    model_config = _CONFIG

    kind: Literal["sastom"] = "sastom"
    r: float = Field(ge=0.0, le=1.0, description="Real reflection coefficient")
    u1: UnitarySpec = Field(default_factory=identity_spec, description="Unitary on the |H> path")
    u2: UnitarySpec = Field(default_factory=identity_spec, description="Unitary on the |V> path")
    pre: Optional[UnitarySpec] = Field(default=None, description="Unitary applied before the polarizing beam splitter")

    @field_validator("u1", "u2", "pre", mode="before")
    @classmethod
    def _accept_raw_matrix(cls, value):
        return _wrap_raw_matrix(value)

    @property
    def t(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.r ** 2))


class GtomConfig(BaseModel):
    """Model for a SASTOM followed by the recombining beam splitter r'."""
    model_config = _CONFIG

    kind: Literal["gtom"] = "gtom"
    sastom: SastomConfig
    r_prime: float = Field(alias="rPrime", ge=0.0, le=1.0, description="Second beam splitter reflection coefficient")

    @property
    def t_prime(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.r_prime ** 2))


class SolidStateConfig(BaseModel):
    """Model for the ancilla-assisted (partial) CNOT measurement."""
    model_config = _CONFIG

    kind: Literal["solidstate"] = "solidstate"
    alpha: float = Field(ge=0.0, le=1.0, description="Ancilla amplitude on |0>")
    xi: float = Field(default=math.pi / 2, description="Partial CNOT angle in radians")
    basis: Literal["computational", "diagonal"] = Field(
        default="computational", description="Embedding of the measured |+>, |-> basis"
    )

    @field_validator("xi")
    @classmethod
    def _finite_xi(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("xi must be finite")
        return value

    @property
    def beta(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.alpha ** 2))


ChainStage = Annotated[Union[GtomConfig, SolidStateConfig], Field(discriminator="kind")]


class ChainConfig(BaseModel):
    """Model for a cascade of N-1 two-outcome stages."""
    model_config = _CONFIG

    kind: Literal["chain"] = "chain"
    stages: list[ChainStage] = Field(min_length=1, description="Stages in measurement order")
    pre_rotations: Optional[list[Optional[UnitarySpec]]] = Field(
        default=None, alias="preRotations", description="Direction change applied to each stage"
    )
    exit_ports: Optional[list[Literal[1, 2]]] = Field(
        default=None, alias="exitPorts", description="Output port that terminates at each stage"
    )

    @field_validator("pre_rotations", mode="before")
    @classmethod
    def _accept_raw_matrices(cls, value):
        if value is None:
            return value
        return [None if item is None else _wrap_raw_matrix(item) for item in value]

    @model_validator(mode="after")
    def _check_lengths(self):
        n = len(self.stages)
        if self.pre_rotations is not None and len(self.pre_rotations) != n:
            raise ValueError(f"preRotations has {len(self.pre_rotations)} entries for {n} stages")
        if self.exit_ports is not None and len(self.exit_ports) != n:
            raise ValueError(f"exitPorts has {len(self.exit_ports)} entries for {n} stages")
        return self

    @property
    def n_outcomes(self) -> int:
        return len(self.stages) + 1

    def rotation(self, index: int):
        return None if self.pre_rotations is None else self.pre_rotations[index]

    def exit_port(self, index: int) -> int:
        return 1 if self.exit_ports is None else self.exit_ports[index]


class SastomTarget(BaseModel):
    """Model for a desired SASTOM strength and direction."""
    model_config = _CONFIG

    epsilon: float = Field(ge=0.0, le=1.0)
    theta: float = Field(default=0.0, ge=0.0, le=math.pi)
    phi: float = 0.0


class GtomTarget(BaseModel):
    """Model for a desired general two-outcome measurement."""
    model_config = _CONFIG

    p: float = Field(ge=0.0, le=1.0)
    q: float = Field(ge=0.0, le=1.0)
    theta: float = Field(default=0.0, ge=0.0, le=math.pi)
    phi: float = 0.0


BuildConfig = Annotated[
    Union[SastomConfig, GtomConfig, SolidStateConfig, ChainConfig], Field(discriminator="kind")
]

BUILD_KINDS = ("sastom", "gtom", "solidstate", "chain")

build_config_adapter = TypeAdapter(BuildConfig)


def parse_build_config(data: dict):
    """Validate a config mapping, dispatching on its `kind` field."""
    return build_config_adapter.validate_python(data)
