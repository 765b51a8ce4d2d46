"""
Build artifacts: operator sets serialized next to the config they came from.
"""
import logging

from chain import build_chain, check_conservation
from config import VALIDATION_TOL
from gtom import build_gtom
from qmat import Complex2x2, completeness_residual
from sastom import build_sastom
from schemas import ChainConfig, GtomConfig, SastomConfig, SolidStateConfig, parse_build_config
from solidstate import partial_cnot_measurement
from utils.errors import InvalidConfig, InvariantViolation

logger = logging.getLogger(__name__)


def _matrices(ops) -> list:
    return [m.to_json() for m in ops]


def _sastom_fields(cfg: SastomConfig) -> tuple[dict, list[Complex2x2]]:
    pair = build_sastom(cfg)
    char = pair.characterization
    fields = {
        "M1": pair.m1.to_json(),
        "M2": pair.m2.to_json(),
        "V1": pair.v1.to_json(),
        "V2": pair.v2.to_json(),
        "epsilon": char.epsilon,
        "theta": char.theta,
        "phi": char.phi,
        "w": None if char.w is None else [char.w.real, char.w.imag],
    }
    return fields, pair.operators


def _gtom_fields(cfg: GtomConfig) -> tuple[dict, list[Complex2x2]]:
    result = build_gtom(cfg)
    char = result.characterization
    fields = {
        "M1": result.m1.to_json(),
        "M2": result.m2.to_json(),
        "sGate": result.s_gate.to_json(),
        "sKind": result.s_kind,
        "p": result.p,
        "q": result.q,
        "delta": result.delta,
        "epsilon": char.epsilon,
        "theta": char.theta,
        "phi": char.phi,
    }
    return fields, result.operators


def _solidstate_fields(cfg: SolidStateConfig) -> tuple[dict, list[Complex2x2]]:
    result = partial_cnot_measurement(cfg)
    fields = {
        "M0": result.m0.to_json(),
        "M1": result.m1.to_json(),
        "correction0": result.correction0.to_json(),
        "correction1": result.correction1.to_json(),
        "alphaPrime": result.alpha_prime,
    }
    return fields, result.operators


def _chain_fields(cfg: ChainConfig) -> tuple[dict, list[Complex2x2]]:
    povm = build_chain(cfg)
    check_conservation(povm)
    fields = {
        "K": _matrices(povm.k_ops),
        "Y": _matrices(povm.y_ops),
        "W": _matrices(povm.w_ops),
        "stageKinds": povm.stage_kinds,
    }
    return fields, povm.k_ops


_BUILDERS = {
    "sastom": _sastom_fields,
    "gtom": _gtom_fields,
    "solidstate": _solidstate_fields,
    "chain": _chain_fields,
}


def build_artifact(cfg) -> dict:
    """
    Operators of any build config as a JSON-ready dictionary.

    The config itself is embedded under "config" so the artifact can be re-derived.
    """
    fields, _ = _BUILDERS[cfg.kind](cfg)
    artifact = {"kind": cfg.kind, "config": cfg.model_dump(mode="json", by_alias=True, exclude_none=True)}
    artifact.update(fields)
    return artifact


def _matrix_keys(fields: dict) -> list[str]:
    return [key for key, value in fields.items()
            if isinstance(value, list) and value and isinstance(value[0], list)]


def validate_artifact(data: dict, tol: float = VALIDATION_TOL) -> dict:
    """
    Re-derive an artifact from its embedded config and check every invariant.

    Args:
        data: Parsed artifact JSON
        tol: Largest accepted deviation

    Returns:
        Report with the kind, completeness residual and largest stored-matrix deviation

    Raises:
        InvalidConfig: If the artifact carries no usable config
        InvariantViolation: If a stored matrix disagrees with the rebuild
        PovmForgeError: Any invariant failure of the rebuild itself
    """
    if not isinstance(data, dict) or "config" not in data:
        raise InvalidConfig("artifact has no embedded 'config'")
    cfg = parse_build_config(data["config"])
    if data.get("kind", cfg.kind) != cfg.kind:
        raise InvalidConfig(f"artifact kind '{data.get('kind')}' does not match its config '{cfg.kind}'")

    fields, operators = _BUILDERS[cfg.kind](cfg)
    worst = 0.0
    for key in _matrix_keys(fields):
        if key not in data:
            raise InvariantViolation(f"artifact is missing '{key}'", invariant="artifact contents")
        stored, rebuilt = data[key], fields[key]
        if key in ("K", "Y", "W"):
            if len(stored) != len(rebuilt):
                raise InvariantViolation(f"artifact lists {len(stored)} '{key}' matrices, expected {len(rebuilt)}",
                                         invariant="artifact contents")
            pairs = zip(stored, rebuilt)
        else:
            pairs = [(stored, rebuilt)]
        for old, new in pairs:
            worst = max(worst, Complex2x2.from_json(old).max_abs_diff(Complex2x2.from_json(new)))
    if worst > tol:
        raise InvariantViolation(f"stored operators differ from the rebuild (residual {worst:.3e})",
                                 invariant="artifact reproducibility", residual=worst)

    residual = completeness_residual(operators)
    if residual > tol:
        raise InvariantViolation(f"operators are incomplete (residual {residual:.3e})",
                                 invariant="completeness", residual=residual)
    logger.debug("validated %s artifact: deviation %.3e, completeness %.3e", cfg.kind, worst, residual)
    return {"valid": True, "kind": cfg.kind, "completenessResidual": residual, "maxDeviation": worst}
