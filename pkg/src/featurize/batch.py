"""
Batch featurization: one dense row per diagram, computed in parallel with joblib.
"""

import os
from typing import List, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from loguru import logger

from ..basis import BasisConfig
from ..diagrams import SignedDiagram
from ..errors import PairMismatchError
from .vectorize import vectorize

log = logger.bind(module="batch")


def default_workers() -> int:
    return int(os.getenv("PD_SCHAUDER_WORKERS", "1"))


def _row(config: BasisConfig, diagram: SignedDiagram) -> np.ndarray:
    return vectorize(config, diagram).to_dense(config.size)


def batch_vectorize(
    config: BasisConfig, diagrams: Sequence[SignedDiagram], n_jobs: Optional[int] = None
) -> np.ndarray:
    """Matrix whose row i is the dense vectorization of diagrams[i], in basis-index column order."""
    for i, diagram in enumerate(diagrams):
        if diagram.pair != config.pair:
            raise PairMismatchError(
                f"diagram {i} lives on {diagram.pair.describe()}, basis on {config.pair.describe()}"
            )
    size = config.size
    if not diagrams:
        return np.zeros((0, size))
    workers = default_workers() if n_jobs is None else n_jobs
    log.info(f"vectorizing {len(diagrams)} diagrams into {size} columns with {workers} worker(s)")
    if workers == 1:
        rows: List[np.ndarray] = [_row(config, d) for d in diagrams]
    else:
        rows = Parallel(n_jobs=workers)(delayed(_row)(config, d) for d in diagrams)
    return np.vstack(rows)
