"""
Configuration module for environment variables and numerical defaults.
"""
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Validation tolerances
VALIDATION_TOL = float(os.getenv("POVM_FORGE_TOL", "1e-10"))
INVERSE_TOL = float(os.getenv("POVM_FORGE_INVERSE_TOL", "1e-8"))
PROJECTOR_TOL = 1e-8
STATE_NORM_TOL = 1e-12
ZERO_STRENGTH_TOL = 1e-12

# Opt-in dual-path (polar decomposition vs. closed form) validation
DUAL_PATH_CHECK = os.getenv("POVM_FORGE_DUAL_PATH", "0").lower() in ("1", "true", "yes", "on")

# Root finding
ROOT_XTOL = 1e-14
ROOT_MAX_ITER = 200

# Sampling
DEFAULT_SEED = int(os.getenv("POVM_FORGE_SEED", "0"))
DEFAULT_RNG = os.getenv("POVM_FORGE_RNG", "philox")
AVAILABLE_RNGS = ["philox", "pcg64"]
SHOT_BATCH_SIZE = int(os.getenv("POVM_FORGE_BATCH", "10000"))

# Theta curve emission
DEFAULT_CURVE_EPSILONS = [0.3, 0.6, 0.9]
DEFAULT_CURVE_GRID = 400

LOG_LEVEL = os.getenv("POVM_FORGE_LOG_LEVEL", "WARNING").upper()
