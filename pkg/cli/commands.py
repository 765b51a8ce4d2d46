"""
Subcommand dispatch: build, sample, invert, curves and validate.
"""
import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from chain import build_chain
from config import DEFAULT_CURVE_EPSILONS, DEFAULT_CURVE_GRID, DEFAULT_RNG, DEFAULT_SEED, SHOT_BATCH_SIZE
from gtom import build_gtom
from inverse import decompose_povm_to_chain, solve_gtom_params, solve_sastom_params
from qmat import Complex2x2
from qubit import resolve_state
from sampler import (
    born_probabilities,
    chain_outcome_probabilities,
    chi_square,
    expected_measurement_count,
    run_batches,
    run_chain_shots,
    sample_outcomes,
)
from sastom import build_sastom
from schemas import BUILD_KINDS, ChainConfig, GtomTarget, SastomTarget, parse_build_config
from solidstate import partial_cnot_measurement
from utils.errors import PovmForgeError, UsageError
from utils.helpers import parse_key_values

from .artifacts import build_artifact, validate_artifact
from .curves import emit_theta_curves, write_curves_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2

SASTOM_TARGET_KEYS = {"eps", "theta", "phi"}
GTOM_TARGET_KEYS = {"p", "q", "theta", "phi"}


class CommandRequest(BaseModel):
    """Model for one parsed command line."""
    model_config = ConfigDict(frozen=True)

    subcommand: Literal["build", "sample", "invert", "curves", "validate"]
    config_path: Optional[Path] = None
    output_path: Optional[Path] = None
    seed: int = DEFAULT_SEED
    shots: int = Field(default=1000, ge=0)
    state: str = "H"
    rng: str = DEFAULT_RNG
    batch_size: int = Field(default=SHOT_BATCH_SIZE, ge=1)
    target: Optional[str] = None
    povm_path: Optional[Path] = None
    eps: list[float] = Field(default_factory=lambda: list(DEFAULT_CURVE_EPSILONS))
    grid: int = DEFAULT_CURVE_GRID
    summary_only: bool = False
    pretty: bool = False

    @model_validator(mode="after")
    def _check_inputs(self):
        if self.subcommand in ("build", "sample", "validate") and self.config_path is None:
            raise ValueError(f"'{self.subcommand}' needs a config file (-c)")
        if self.subcommand == "invert" and (self.target is None) == (self.povm_path is None):
            raise ValueError("'invert' needs exactly one of --target or --povm")
        return self


def _error_line(report: dict) -> None:
    sys.stderr.write(json.dumps(report) + "\n")


def _dump(data, request: CommandRequest) -> str:
    return json.dumps(data, indent=2 if request.pretty else None)


@contextmanager
def _output(request: CommandRequest):
    if request.output_path is None:
        yield sys.stdout
    else:
        with open(request.output_path, "w", encoding="utf-8") as handle:
            yield handle


def _load_json(path: Path):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as e:
        raise UsageError(f"cannot read '{path}': {e.strerror or e}")
    except json.JSONDecodeError as e:
        raise UsageError(f"'{path}' is not valid JSON: {e}")


def load_config(path: Path):
    """
    Read a build config, dispatching on its `kind`.

    Raises:
        UsageError: If the file is unreadable or the kind is unknown
        ValidationError: If the fields do not validate
    """
    data = _load_json(path)
    if not isinstance(data, dict):
        raise UsageError(f"'{path}' does not hold a JSON object")
    if data.get("kind") not in BUILD_KINDS:
        raise UsageError(f"unknown config kind '{data.get('kind')}' (expected one of {', '.join(BUILD_KINDS)})")
    return parse_build_config(data)


def _resolve_state_arg(text: str):
    if text.strip().startswith("{"):
        try:
            return resolve_state(json.loads(text))
        except json.JSONDecodeError as e:
            raise UsageError(f"--state is not valid JSON: {e}")
    return resolve_state(text)


def _two_outcome_operators(cfg) -> list[Complex2x2]:
    if cfg.kind == "sastom":
        return build_sastom(cfg).operators
    if cfg.kind == "gtom":
        return build_gtom(cfg).operators
    return partial_cnot_measurement(cfg).operators


def run_build(request: CommandRequest) -> int:
    cfg = load_config(request.config_path)
    artifact = build_artifact(cfg)
    with _output(request) as out:
        out.write(_dump(artifact, request) + "\n")
    return EXIT_OK


def run_sample(request: CommandRequest) -> int:
    """
    Sample outcomes for a config and print one JSON line per shot plus a summary.

    Chains run stage by stage; the summary compares the observed counts with the
    chain's outcome probabilities and the direct POVM probabilities.
    """
    cfg = load_config(request.config_path)
    state = _resolve_state_arg(request.state)

    if isinstance(cfg, ChainConfig):
        povm = build_chain(cfg)
        outcomes, n_meas = run_batches(
            request.shots, lambda n, rng: run_chain_shots(state, povm, n, rng),
            seed=request.seed, algorithm=request.rng, batch_size=request.batch_size,
        )
        probs = chain_outcome_probabilities(state, povm)
        direct = born_probabilities(state, povm.k_ops)
        n_outcomes = povm.n_outcomes
    else:
        operators = _two_outcome_operators(cfg)
        outcomes = run_batches(
            request.shots, lambda n, rng: sample_outcomes(state, operators, n, rng),
            seed=request.seed, algorithm=request.rng, batch_size=request.batch_size,
        )
        n_meas = np.ones_like(outcomes)
        probs = born_probabilities(state, operators)
        direct = probs
        n_outcomes = len(operators)

    counts = np.bincount(outcomes.astype(int), minlength=n_outcomes)
    stat, p_value = chi_square(counts, probs)
    shots = max(request.shots, 1)
    summary = {
        "shots": request.shots,
        "seed": request.seed,
        "rng": request.rng,
        "counts": counts.tolist(),
        "frequencies": (counts / shots).tolist(),
        "probabilities": probs,
        "povmProbabilities": direct,
        "chiSquare": stat if np.isfinite(stat) else None,
        "pValue": p_value if np.isfinite(p_value) else None,
        "meanMeasurements": float(n_meas.mean()) if request.shots else 0.0,
        "expectedMeasurements": expected_measurement_count(probs) if isinstance(cfg, ChainConfig) else 1.0,
    }
    logger.info("sampled %d shots of a %s config: chi2=%.4g p=%.4g", request.shots, cfg.kind, stat, p_value)

    with _output(request) as out:
        if not request.summary_only:
            for k, m in zip(outcomes.tolist(), n_meas.tolist()):
                out.write(f'{{"outcome":{k},"nMeas":{m}}}\n')
        out.write(_dump({"summary": summary}, request) + "\n")
    return EXIT_OK


def _parse_target(text: str):
    try:
        values = parse_key_values(text)
    except ValueError as e:
        raise UsageError(f"malformed --target: {e}")
    if "epsilon" in values:
        values["eps"] = values.pop("epsilon")
    keys = set(values)
    if "eps" in keys and keys <= SASTOM_TARGET_KEYS:
        return SastomTarget(epsilon=values["eps"], theta=values.get("theta", 0.0), phi=values.get("phi", 0.0))
    if {"p", "q"} <= keys and keys <= GTOM_TARGET_KEYS:
        return GtomTarget(p=values["p"], q=values["q"], theta=values.get("theta", 0.0), phi=values.get("phi", 0.0))
    raise UsageError(f"--target needs eps=..[,theta=..,phi=..] or p=..,q=..[,theta=..,phi=..], got {sorted(keys)}")


def _load_povm(path: Path) -> list[Complex2x2]:
    data = _load_json(path)
    if isinstance(data, dict):
        data = data.get("K", data.get("povm"))
    if not isinstance(data, list) or not data:
        raise UsageError(f"'{path}' must hold a list of matrices or an object with a 'K' list")
    matrices = []
    for index, item in enumerate(data):
        try:
            matrices.append(Complex2x2.from_json(item))
        except (TypeError, ValueError) as e:
            raise UsageError(f"'{path}' entry {index} is not a 2x2 matrix: {e}")
    return matrices


def run_invert(request: CommandRequest) -> int:
    if request.target is not None:
        target = _parse_target(request.target)
        cfg = solve_sastom_params(target) if isinstance(target, SastomTarget) else solve_gtom_params(target)
    else:
        cfg = decompose_povm_to_chain(_load_povm(request.povm_path))
    with _output(request) as out:
        out.write(_dump(cfg.model_dump(mode="json", by_alias=True, exclude_none=True), request) + "\n")
    return EXIT_OK


def run_curves(request: CommandRequest) -> int:
    curves = emit_theta_curves(request.eps, request.grid)
    with _output(request) as out:
        write_curves_csv(curves, out)
    return EXIT_OK


def run_validate(request: CommandRequest) -> int:
    report = validate_artifact(_load_json(request.config_path))
    with _output(request) as out:
        out.write(_dump(report, request) + "\n")
    return EXIT_OK


_HANDLERS = {
    "build": run_build,
    "sample": run_sample,
    "invert": run_invert,
    "curves": run_curves,
    "validate": run_validate,
}


def run_command(request: CommandRequest) -> int:
    """
    Run one subcommand.

    Errors go to stderr as single-line JSON.

    Args:
        request: Parsed command line

    Returns:
        0 on success, 1 when a check or validation fails, 2 on a usage error
    """
    try:
        return _HANDLERS[request.subcommand](request)
    except UsageError as e:
        _error_line(e.to_dict())
        return EXIT_USAGE
    except PovmForgeError as e:
        logger.warning("%s failed: %s", request.subcommand, e)
        _error_line(e.to_dict())
        return EXIT_INVALID
    except ValidationError as e:
        _error_line({
            "error": f"{e.error_count()} validation error(s): "
                     + "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()),
            "kind": "ValidationError",
            "invariant": "valid configuration",
        })
        return EXIT_INVALID
    except OSError as e:
        _error_line({"error": str(e), "kind": type(e).__name__, "invariant": "command usage"})
        return EXIT_USAGE
