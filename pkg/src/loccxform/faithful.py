"""Optimal deterministic approximation of one entangled spectrum by another.

When a source state cannot reach a target exactly, the best reachable state
is found by scanning tail-sum ratios of the two spectra from the bottom of
the spectrum upward.  Each scan picks the level minimizing the ratio of the
remaining tail masses; the levels between consecutive picks form a block on
which the target spectrum is rescaled by that block's mass ratio.  The
rescaled target is the closest state the source can reach, and the achieved
overlap is (sum over blocks of sqrt(source mass * target mass))**2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .majorization import conclusive_probability, majorizes
from .spectra import SchmidtSpectrum, pad_to_common, trace_distance_from_fidelity

# Numerically equal tail ratios must resolve to the smaller level
# deterministically.
RATIO_TIE_TOL = 1e-12
# Fidelity gaps below the spectra's own normalization tolerance are rounding
# artifacts; collapsing them to exact unity keeps 2*sqrt(1-f) from amplifying
# sub-ulp noise into ~1e-8 phantom distances.
FIDELITY_SNAP = 1e-12


@dataclass(frozen=True)
class Segment:
    """One block of the construction.

    ``start`` is the 1-indexed lowest level of the block (the block runs from
    ``start`` up to the previous segment's start minus one); ``ratio`` is the
    factor applied to the target spectrum there; ``source_mass`` and
    ``target_mass`` are the two spectra's total weight on the block.
    """

    start: int
    ratio: float
    source_mass: float
    target_mass: float


@dataclass(frozen=True)
class Staircase:
    """Blocks of the optimal-conversion construction, in build order.

    Block starts decrease strictly down to 1; ratios increase strictly; the
    masses of either kind telescope to 1.
    """

    segments: tuple[Segment, ...]
    dimension: int

    def __post_init__(self) -> None:
        segs = tuple(self.segments)
        if not segs:
            raise ValueError("staircase needs at least one segment")
        if segs[-1].start != 1:
            raise ValueError("last segment must start at level 1")
        if segs[0].start > self.dimension:
            raise ValueError("first segment exceeds the dimension")
        for prev, cur in zip(segs, segs[1:]):
            if cur.start >= prev.start:
                raise ValueError("segment starts must decrease strictly")
            if cur.ratio <= prev.ratio - RATIO_TIE_TOL:
                raise ValueError("segment ratios must increase")
        for seg in segs:
            if seg.source_mass < -RATIO_TIE_TOL or seg.target_mass <= 0.0:
                raise ValueError("segment masses out of range")
        if abs(math.fsum(s.source_mass for s in segs) - 1.0) > 1e-9:
            raise ValueError("source masses must telescope to 1")
        if abs(math.fsum(s.target_mass for s in segs) - 1.0) > 1e-9:
            raise ValueError("target masses must telescope to 1")
        object.__setattr__(self, "segments", segs)


@dataclass(frozen=True)
class TransformReport:
    """Bundled answer for one source/target pair."""

    f_opt: float
    xi: SchmidtSpectrum
    trace_distance: float
    conclusive_p: float
    deterministic: bool
    staircase: Staircase


def _trimmed(alpha: SchmidtSpectrum, beta: SchmidtSpectrum) -> tuple[np.ndarray, np.ndarray, int]:
    """Pad to common length, then drop levels where both spectra vanish."""
    a, b = pad_to_common(alpha, beta)
    if b.nonzero_count == 0:
        raise ValueError("target spectrum is all zero")
    n = max(a.nonzero_count, b.nonzero_count)
    return a.as_array(), b.as_array(), n


def _scan_segments(ta: np.ndarray, tb: np.ndarray, n: int) -> list[Segment]:
    """Iterated minimization of tail-ratio differences, bottom of spectrum up.

    ta, tb hold the tail sums for levels 1..n (0-indexed by level-1).  Each
    round minimizes (ta[l] - ta[prev]) / (tb[l] - tb[prev]) over levels below
    the previous pick, skipping levels where the denominator vanishes, and
    breaks numerical ties toward the smaller level.
    """
    segments: list[Segment] = []
    prev = n + 1
    ta_prev = 0.0
    tb_prev = 0.0
    while prev > 1:
        num = ta[: prev - 1] - ta_prev
        den = tb[: prev - 1] - tb_prev
        ratios = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), np.inf)
        rmin = ratios.min()
        level = int(np.argmax(ratios <= rmin + RATIO_TIE_TOL)) + 1
        source_mass = float(num[level - 1])
        target_mass = float(den[level - 1])
        segments.append(Segment(level, source_mass / target_mass, source_mass, target_mass))
        prev = level
        ta_prev = float(ta[level - 1])
        tb_prev = float(tb[level - 1])
    return segments


def _build(alpha: SchmidtSpectrum, beta: SchmidtSpectrum) -> tuple[Staircase, np.ndarray, np.ndarray]:
    a, b, n = _trimmed(alpha, beta)
    ta = np.cumsum(a[:n][::-1])[::-1]
    tb = np.cumsum(b[:n][::-1])[::-1]
    return Staircase(tuple(_scan_segments(ta, tb, n)), n), a, b


def build_staircase(alpha: SchmidtSpectrum, beta: SchmidtSpectrum) -> Staircase:
    """Block decomposition governing the optimal conversion of alpha to beta.

    Spectra are padded to a common length and trimmed to the larger count of
    nonzero coefficients before scanning.  When alpha has fewer nonzero
    entries than beta, the first block carries ratio 0 exactly (the dilution
    regime).
    """
    return _build(alpha, beta)[0]


def _rescaled_target(staircase: Staircase, b: np.ndarray, out_len: int) -> SchmidtSpectrum:
    gamma = np.zeros(out_len)
    prev = staircase.dimension + 1
    for seg in staircase.segments:
        gamma[seg.start - 1 : prev - 1] = seg.ratio * b[seg.start - 1 : prev - 1]
        prev = seg.start
    return SchmidtSpectrum(tuple(float(g) for g in gamma))


def optimal_state(alpha: SchmidtSpectrum, beta: SchmidtSpectrum) -> SchmidtSpectrum:
    """The closest state to beta reachable from alpha deterministically.

    Each block of the staircase rescales beta's coefficients by the block
    ratio; the result is nonincreasing, normalized, and dominates alpha's
    partial sums, so the conversion into it is always possible.
    """
    staircase, a, b = _build(alpha, beta)
    return _rescaled_target(staircase, b, len(a))


def optimal_fidelity(alpha: SchmidtSpectrum, beta: SchmidtSpectrum) -> TransformReport:
    """Best fidelity of any deterministic local conversion of alpha toward beta.

    The value is (sum over blocks of sqrt(source_mass * target_mass))**2 and
    coincides with the aligned fidelity between the reachable state and beta.
    """
    staircase, a, b = _build(alpha, beta)
    amp = math.fsum(
        math.sqrt(seg.source_mass * seg.target_mass) for seg in staircase.segments
    )
    f_opt = min(1.0, amp * amp)
    if 1.0 - f_opt < FIDELITY_SNAP:
        f_opt = 1.0
    xi = _rescaled_target(staircase, b, len(a))
    return TransformReport(
        f_opt=f_opt,
        xi=xi,
        trace_distance=trace_distance_from_fidelity(f_opt),
        conclusive_p=conclusive_probability(alpha, beta),
        deterministic=majorizes(alpha, beta).deterministic,
        staircase=staircase,
    )
