"""
Engine Configuration
====================
Loads run-wide settings from environment variables with validation before
any computation starts. Command-line flags override the per-run values
(bounds, seed, trials); everything else lives here.

Notes:
- Validate once at CLI start-up and fail fast with exit code 2
- Tensor caps bound the dense word spaces V^{⊗m}; they are the only memory guard
- Timings are off by default so reports are byte-identical between runs
"""

import os
from typing import List, Tuple


def _flag(name: str, default: str = 'false') -> bool:
    return os.getenv(name, default).strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Centralized configuration with reproducible defaults"""

    VERSION: str = '1.0.0'

    # Logging Configuration
    LOG_LEVEL: str = os.getenv('KOSZUL_LOG_LEVEL', 'WARNING')

    # Randomized suites
    SEED: int = int(os.getenv('KOSZUL_SEED', '20240611'))
    TRIALS: int = int(os.getenv('KOSZUL_TRIALS', '200'))  # per parity case
    HOMOTOPY_TRIALS: int = int(os.getenv('KOSZUL_HOMOTOPY_TRIALS', '50'))
    NDIFF_TRIALS: int = int(os.getenv('KOSZUL_NDIFF_TRIALS', '100'))

    # Resource caps (largest word length m for which V^{⊗m} is built densely)
    TENSOR_CAP_G1: int = int(os.getenv('KOSZUL_TENSOR_CAP_G1', '64'))
    TENSOR_CAP_G2: int = int(os.getenv('KOSZUL_TENSOR_CAP_G2', '14'))
    TENSOR_CAP_G3: int = int(os.getenv('KOSZUL_TENSOR_CAP_G3', '9'))
    MAX_GENERATORS: int = int(os.getenv('KOSZUL_MAX_GENERATORS', '6'))
    BAR_WEIGHT_CAP: int = int(os.getenv('KOSZUL_BAR_WEIGHT_CAP', '6'))  # infinite A only

    # Checks
    STRICT_MEMBERSHIP: bool = _flag('KOSZUL_STRICT_MEMBERSHIP')
    RECORD_TIMINGS: bool = _flag('KOSZUL_RECORD_TIMINGS')

    ALLOWED_LOG_LEVELS = {'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'}

    @classmethod
    def tensor_cap(cls, g: int) -> int:
        """
        Largest word length built densely for g generators.

        Args:
            g: Number of generators

        Returns:
            Maximum word length m
        """
        if g <= 1:
            return cls.TENSOR_CAP_G1
        if g == 2:
            return cls.TENSOR_CAP_G2
        if g == 3:
            return cls.TENSOR_CAP_G3
        budget = 3 ** cls.TENSOR_CAP_G3
        m = 0
        while g ** (m + 1) <= budget:
            m += 1
        return m

    @classmethod
    def default_bounds(cls, g: int) -> Tuple[int, int]:
        """
        Default (p_max, w_max) for an algebra on g generators.

        Args:
            g: Number of generators

        Returns:
            Tuple of (p_max, w_max)
        """
        if g <= 1:
            return 6, 12
        if g == 2:
            return 5, 9
        return 4, min(7, cls.tensor_cap(g))

    @classmethod
    def validate(cls) -> None:
        """
        Validate every setting.
        Raises ValueError listing all problems at once.

        This is called by the CLI before any computation.
        """
        problems: List[str] = []

        if cls.LOG_LEVEL.upper() not in cls.ALLOWED_LOG_LEVELS:
            problems.append(f'KOSZUL_LOG_LEVEL={cls.LOG_LEVEL!r}')
        if cls.SEED < 0:
            problems.append('KOSZUL_SEED must be non-negative')
        for name in ('TRIALS', 'HOMOTOPY_TRIALS', 'NDIFF_TRIALS'):
            if getattr(cls, name) < 1:
                problems.append(f'KOSZUL_{name} must be positive')
        for name in ('TENSOR_CAP_G1', 'TENSOR_CAP_G2', 'TENSOR_CAP_G3'):
            if getattr(cls, name) < 2:
                problems.append(f'KOSZUL_{name} must be at least 2')
        if cls.MAX_GENERATORS < 1:
            problems.append('KOSZUL_MAX_GENERATORS must be positive')
        if cls.BAR_WEIGHT_CAP < 2:
            problems.append('KOSZUL_BAR_WEIGHT_CAP must be at least 2')

        if problems:
            raise ValueError(
                f"Invalid configuration: {'; '.join(problems)}. "
                "Fix the KOSZUL_* environment variables."
            )
