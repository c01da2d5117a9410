from typing import Dict

from matchingframes import (
    DECIDE_EPSILON,
    DEFAULT_EPSILON,
    SOLVER_CONFIG_KEYS,
    SUPPORTED_FORMATS,
    SUPPORTED_MODES,
)
from matchingframes.errors import InvalidInputError


class SolverConfigValidators:
    """
    Responsible for validating and normalizing solver configurations.
    """

    def __init__(self):
        pass

    @staticmethod
    def _validate_keys(raw_config: Dict) -> None:

        provided_keys = set(raw_config.keys())

        if "mode" not in provided_keys:
            raise InvalidInputError("Missing solver config key: mode")

        extra = provided_keys - SOLVER_CONFIG_KEYS
        if extra:
            raise InvalidInputError(f"Unknown solver config keys: {extra}")

    @staticmethod
    def _parse_epsilon(value) -> float:
        try:
            epsilon = float(value)
        except (TypeError, ValueError):
            raise InvalidInputError(f"Invalid epsilon: {value}")

        if not (0.0 < epsilon < 1.0):
            raise InvalidInputError(f"epsilon must lie in (0,1), got {epsilon}")
        return epsilon

    @staticmethod
    def parse_solver_configs(raw_config: Dict) -> Dict:
        SolverConfigValidators._validate_keys(raw_config)

        cfg: Dict = {}

        # --- MODE ---
        mode = str(raw_config["mode"]).lower()
        if mode not in SUPPORTED_MODES:
            raise InvalidInputError(f"Invalid mode: {mode}, supported modes include: {SUPPORTED_MODES}")
        cfg["mode"] = mode

        # --- EPSILON ---
        if mode == "decide":
            cfg["epsilon"] = DECIDE_EPSILON
        elif mode == "approx":
            cfg["epsilon"] = SolverConfigValidators._parse_epsilon(raw_config.get("epsilon", DEFAULT_EPSILON))
        else:
            cfg["epsilon"] = None

        # --- THREADS ---
        threads = raw_config.get("threads", 1)
        if isinstance(threads, bool) or not isinstance(threads, int) or threads < 1:
            raise InvalidInputError(f"threads must be an integer >= 1, got {threads!r}")
        cfg["threads"] = threads

        # --- FORMAT ---
        fmt = str(raw_config.get("format", "raw")).lower()
        if fmt not in SUPPORTED_FORMATS:
            raise InvalidInputError(f"Invalid format: {fmt}, supported formats include: {SUPPORTED_FORMATS}")
        cfg["format"] = fmt

        # --- PROGRESS ---
        progress = raw_config.get("progress", False)
        if not isinstance(progress, bool):
            raise InvalidInputError(f"progress must be true or false, got {progress!r}")
        cfg["progress"] = progress

        return cfg
