"""Convertibility tests between Schmidt spectra.

Deterministic convertibility is a family of partial-sum comparisons; the
optimal conclusive conversion probability is the worst ratio of the two
spectra's tail sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectra import SchmidtSpectrum, pad_to_common

# Inputs carry SVD-scale noise (~1e-13); strict comparisons would misclassify
# the exact-equality boundary at the full sum.
PARTIAL_SUM_TOL = 1e-10


@dataclass(frozen=True)
class ConvertibilityVerdict:
    """Outcome of a deterministic-convertibility test.

    ``margin`` is the smallest partial-sum gap (target minus source) over all
    prefixes; ``failing_index`` is the first 1-indexed prefix whose gap drops
    below -PARTIAL_SUM_TOL, or None when none does.
    """

    deterministic: bool
    failing_index: int | None
    margin: float


def _heads(alpha: SchmidtSpectrum, beta: SchmidtSpectrum) -> tuple[np.ndarray, np.ndarray]:
    a, b = pad_to_common(alpha, beta)
    return np.cumsum(a.as_array()), np.cumsum(b.as_array())


def _tails(alpha: SchmidtSpectrum, beta: SchmidtSpectrum) -> tuple[np.ndarray, np.ndarray]:
    a, b = pad_to_common(alpha, beta)
    return (
        np.cumsum(a.as_array()[::-1])[::-1],
        np.cumsum(b.as_array()[::-1])[::-1],
    )


def majorizes(alpha: SchmidtSpectrum, beta: SchmidtSpectrum) -> ConvertibilityVerdict:
    """Can alpha be converted into beta deterministically?

    True exactly when every leading partial sum of alpha stays at or below
    the corresponding partial sum of beta (within PARTIAL_SUM_TOL).
    """
    ca, cb = _heads(alpha, beta)
    gaps = cb - ca
    margin = float(gaps.min())
    deterministic = margin >= -PARTIAL_SUM_TOL
    failing = None
    if not deterministic:
        failing = int(np.argmax(gaps < -PARTIAL_SUM_TOL)) + 1
    return ConvertibilityVerdict(deterministic, failing, margin)


def weak_submajorizes(alpha: SchmidtSpectrum, beta: SchmidtSpectrum, p: float) -> bool:
    """Can alpha reach beta conclusively with success probability p?

    Holds when every tail sum of alpha dominates the p-scaled tail sum of
    beta (within PARTIAL_SUM_TOL).  The predicate is downward-closed in p;
    its supremum over p in [0, 1] is ``conclusive_probability``.
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability out of range [0, 1]: {p!r}")
    ta, tb = _tails(alpha, beta)
    return bool(np.all(ta >= p * tb - PARTIAL_SUM_TOL))


def conclusive_probability(alpha: SchmidtSpectrum, beta: SchmidtSpectrum) -> float:
    """Best probability of converting alpha into exactly beta.

    min over levels l of tail(alpha, l) / tail(beta, l), clamped to [0, 1].
    Levels where beta's tail vanishes impose no constraint; a vanishing alpha
    tail against a positive beta tail forces probability 0.
    """
    ta, tb = _tails(alpha, beta)
    mask = tb > 0.0
    ratios = ta[mask] / tb[mask]
    return float(min(1.0, max(0.0, ratios.min())))
