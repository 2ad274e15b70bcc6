import os
from dotenv import load_dotenv
from common.logger import log

# Load environment variables from a .env file into the system's environment
load_dotenv()

# --- Run Defaults (overridable per command on the CLI) ---
DEFAULT_SEED = int(os.getenv("VAALER_SEED", 0))
DEFAULT_SAMPLES = int(os.getenv("VAALER_SAMPLES", 10000))
# Monte Carlo budget for solid angles and ball volumes in dimension >= 4
MC_SAMPLES = int(os.getenv("VAALER_MC_SAMPLES", 200000))
DEFAULT_MODE = os.getenv("VAALER_DEFAULT_MODE", "vaaler").lower()

# --- Input Limits ---
MAX_DIM = int(os.getenv("VAALER_MAX_DIM", 8))

VALID_MODES = ("vaaler", "rogers")


def validate_config():
    """
    Validates the run defaults loaded from the environment.
    If any value is out of range, it logs an error and raises an exception.
    """
    problems = []
    if DEFAULT_SAMPLES < 1:
        problems.append(f"VAALER_SAMPLES must be >= 1, got {DEFAULT_SAMPLES}")
    if MC_SAMPLES < 1:
        problems.append(f"VAALER_MC_SAMPLES must be >= 1, got {MC_SAMPLES}")
    if not 1 <= MAX_DIM <= 8:
        problems.append(f"VAALER_MAX_DIM must be within 1..8, got {MAX_DIM}")
    if DEFAULT_SEED < 0:
        problems.append(f"VAALER_SEED must be non-negative, got {DEFAULT_SEED}")
    if DEFAULT_MODE not in VALID_MODES:
        problems.append(f"Invalid VAALER_DEFAULT_MODE: '{DEFAULT_MODE}'. Must be 'vaaler' or 'rogers'.")

    if problems:
        error_message = "Invalid configuration: " + "; ".join(problems)
        log.error(error_message)
        raise ValueError(error_message)

    log.info("Configuration loaded and validated successfully.")
    log.info(f"Default seed: {DEFAULT_SEED}, samples: {DEFAULT_SAMPLES}, MC samples: {MC_SAMPLES}")
    log.info(f"Default hypothesis mode: '{DEFAULT_MODE}', max dimension: {MAX_DIM}")
