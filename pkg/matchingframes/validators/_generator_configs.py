from typing import Dict

from matchingframes import (
    GENERATOR_CONFIG_KEYS,
    SUPPORTED_GENERATORS,
    Frame,
    make_frame,
    make_frame_from_dict,
    make_frame_from_str,
)
from matchingframes.errors import InvalidInputError


class GeneratorConfigValidators:
    """
    Responsible for validating and normalizing instance generator configurations.
    """

    def __init__(self):
        pass

    @staticmethod
    def _validate_keys(raw_config: Dict) -> None:

        required_keys = {"kind", "n"}
        provided_keys = set(raw_config.keys())

        missing = required_keys - provided_keys
        if missing:
            raise InvalidInputError(f"Missing generator config keys: {missing}")

        extra = provided_keys - GENERATOR_CONFIG_KEYS
        if extra:
            raise InvalidInputError(f"Unknown generator config keys: {extra}")

    @staticmethod
    def _parse_positive(name: str, value) -> int:
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise InvalidInputError(f"{name} must be an integer, got {value!r}")

        if number < 1:
            raise InvalidInputError(f"{name} must be >= 1, got {number}")
        return number

    @staticmethod
    def _parse_frame(value) -> Frame:
        """Accepts 'u,d,l,r', a dict or a 4-sequence."""

        if isinstance(value, Frame):
            return value
        if isinstance(value, str):
            return make_frame_from_str(value)
        if isinstance(value, dict):
            return make_frame_from_dict(value)
        try:
            return make_frame(*value)
        except TypeError:
            raise InvalidInputError(f"Invalid frame: {value!r}")

    @staticmethod
    def parse_generator_configs(raw_config: Dict) -> Dict:
        GeneratorConfigValidators._validate_keys(raw_config)

        cfg: Dict = {}

        # --- KIND ---
        kind = str(raw_config["kind"]).lower()
        if kind not in SUPPORTED_GENERATORS:
            raise InvalidInputError(f"Invalid generator: {kind}, supported generators include: {SUPPORTED_GENERATORS}")
        cfg["kind"] = kind

        # --- SIZE ---
        cfg["n"] = GeneratorConfigValidators._parse_positive("n", raw_config["n"])

        if kind == "little-endian":
            cfg["m"] = None     # derived from n
        else:
            if raw_config.get("m") is None:
                raise InvalidInputError(f"Generator {kind} needs m")
            cfg["m"] = GeneratorConfigValidators._parse_positive("m", raw_config["m"])

        # --- ALPHABET / SEED ---
        cfg["alphabet"] = GeneratorConfigValidators._parse_positive("alphabet", raw_config.get("alphabet", 2))

        seed = raw_config.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise InvalidInputError(f"seed must be an integer, got {seed!r}")
        cfg["seed"] = seed

        # --- PLANTED FRAME ---
        if kind == "planted":
            if raw_config.get("frame") is None:
                raise InvalidInputError("The planted generator needs a frame u,d,l,r")

            frame = GeneratorConfigValidators._parse_frame(raw_config["frame"])
            if frame.d > cfg["n"] or frame.r > cfg["m"]:
                raise InvalidInputError(f"Planted frame {tuple(frame)} is larger than the {cfg['n']}x{cfg['m']} matrix")
            cfg["frame"] = frame
        else:
            cfg["frame"] = None

        return cfg
