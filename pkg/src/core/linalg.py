"""
Dense symmetric positive definite solves with a diagonal jitter ladder.
"""
import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from src.config import settings
from src.core.exceptions import IllConditionedError

logger = logging.getLogger(__name__)


def cholesky_with_jitter(
    matrix: np.ndarray,
    ladder: Optional[Sequence[float]] = None,
    what: str = "matrix",
) -> Tuple[Tuple[np.ndarray, bool], float]:
    """
    Factor a symmetric positive (semi)definite matrix.

    Each ladder entry is a shift relative to trace/size that is added to the
    diagonal before retrying. Returns the scipy cho_factor pair and the
    absolute shift that succeeded.
    """
    ladder = settings.spd_jitter_ladder if ladder is None else ladder
    size = matrix.shape[0]
    scale = float(np.trace(matrix)) / max(size, 1)
    if not np.isfinite(scale):
        raise IllConditionedError(f"{what} contains non-finite entries")
    if scale <= 0.0:
        scale = 1.0

    for rel in ladder:
        shift = rel * scale
        try:
            shifted = matrix + shift * np.eye(size) if shift else matrix
            factor = linalg.cho_factor(shifted, lower=True, check_finite=False)
            if not np.all(np.isfinite(factor[0])):
                raise linalg.LinAlgError("non-finite factor")
            if shift:
                logger.debug(f"Factored {what} ({size}x{size}) with jitter {shift:.3e}")
            return factor, shift
        except linalg.LinAlgError:
            continue

    raise IllConditionedError(f"ill-conditioned {what}: Cholesky failed after jitter ladder {list(ladder)}")


def spd_solve(matrix: np.ndarray, rhs: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Solve matrix @ x = rhs for a symmetric positive definite matrix."""
    if matrix.shape[0] == 0:
        return np.zeros_like(rhs)
    factor, _ = cholesky_with_jitter(matrix, what=what)
    return linalg.cho_solve(factor, rhs, check_finite=False)
