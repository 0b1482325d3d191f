"""
Local contrast k = (neighbour - pixel) / mean of the pair, measured on tables
and predicted in closed form for the simple and t-image fusions.
"""
import typing as ty

import numpy as np

from complexfusion.errors import (
    DegenerateDenominator,
    InvalidOffset,
    OutOfBounds,
    RangeViolation,
    ZeroBrightnessPair,
)
from complexfusion.types.fusion import Ordering
from complexfusion.types.metrics import ContrastMap, ContrastReport, PixelPair
from complexfusion.types.raster import BrightnessTable
from complexfusion.utils.logging import logger

CONTRAST_LIMIT = 2.0
DEGENERATE_TOLERANCE = 1e-12


def pair_contrast(a: float, b: float) -> float:
    """Contrast of neighbour value b against pixel value a; 0 for a black pair."""
    total = a + b
    if total == 0.0:
        return 0.0
    return 2.0 * (b - a) / total


def _require_inside(table: BrightnessTable, xy: ty.Tuple[int, int]):
    x, y = xy
    if not (0 <= x < table.width and 0 <= y < table.height):
        raise OutOfBounds(f"Pixel {xy} is outside the {table.width}x{table.height} table")


def local_contrast(table: BrightnessTable, pair: PixelPair) -> float:
    _require_inside(table, pair.p)
    _require_inside(table, pair.q)
    return pair_contrast(table[pair.p], table[pair.q])


def contrast_map(table: BrightnessTable, offset: ty.Tuple[int, int]) -> ContrastMap:
    """
    Contrast of every pixel against its neighbour at offset (dx, dy). Pixels
    whose neighbour falls outside the table are set to 0 and counted.
    """
    dx, dy = int(offset[0]), int(offset[1])
    if (dx, dy) == (0, 0) or abs(dx) >= table.width or abs(dy) >= table.height:
        raise InvalidOffset(
            f"Offset ({dx}, {dy}) is invalid for a {table.width}x{table.height} table"
        )
    h, w = table.shape
    values = table.values
    # rows/cols of p whose neighbour q = p + offset stays inside
    p_rows = slice(max(0, -dy), h - max(0, dy))
    p_cols = slice(max(0, -dx), w - max(0, dx))
    q_rows = slice(max(0, dy), h - max(0, -dy))
    q_cols = slice(max(0, dx), w - max(0, -dx))

    a = values[p_rows, p_cols]
    b = values[q_rows, q_cols]
    total = a + b
    k = np.divide(
        2.0 * (b - a), total, out=np.zeros_like(total), where=total != 0.0
    )
    out = np.zeros((h, w), dtype=np.float64)
    out[p_rows, p_cols] = k

    boundary = h * w - k.size
    logger.debug(f"contrast_map offset ({dx}, {dy}): {boundary} boundary pixels zero-filled")
    return ContrastMap(
        table=BrightnessTable(out, tag=table.tag, value_range=(-CONTRAST_LIMIT, CONTRAST_LIMIT)),
        offset=(dx, dy),
        boundary_pixels=boundary,
    )


def _require_contrast(*ks: float):
    for k in ks:
        if abs(k) > CONTRAST_LIMIT:
            raise RangeViolation(f"Local contrast must lie in [-2, 2], got {k}")


def predict_t_contrast(
    k_a: float, k_b: float, ordering: Ordering = Ordering.NEG
) -> ty.Tuple[float, float]:
    """
    Contrast of the t-image from the partial-image contrasts.

    Returns:
        (exact, approx): exact ratio algebra and its first-order expansion
        k_b - k_a. The POS ordering negates both.
    """
    _require_contrast(k_a, k_b)
    denominator = 1.0 - k_a * k_b / 4.0
    if abs(denominator) < DEGENERATE_TOLERANCE:
        raise DegenerateDenominator(
            f"1 - k_a*k_b/4 vanishes for k_a={k_a}, k_b={k_b}"
        )
    exact = (k_b - k_a) / denominator
    approx = k_b - k_a
    if Ordering(ordering) == Ordering.POS:
        return -exact, -approx
    return exact, approx


def approximation_bound(k_a: float, k_b: float) -> float:
    """Upper bound of |exact - approx| for the t-image contrast prediction."""
    x = abs(k_a * k_b / 4.0)
    if x >= 1.0:
        raise DegenerateDenominator(f"No approximation bound for |k_a*k_b/4| = {x} >= 1")
    exact, _ = predict_t_contrast(k_a, k_b)
    return abs(exact) * x / (1.0 - x)


def predict_simple_contrast(u_p: float, u_q: float, v_p: float, v_q: float) -> ContrastReport:
    if min(u_p, u_q, v_p, v_q) < 0:
        raise RangeViolation("Brightness values of a contrast pair must be non-negative")
    u_mean = (u_p + u_q) / 2.0
    v_mean = (v_p + v_q) / 2.0
    if u_mean + v_mean == 0.0:
        raise ZeroBrightnessPair("Both channels are black at the pair; k^S is undefined")

    k_a = pair_contrast(u_p, u_q)
    k_b = pair_contrast(v_p, v_q)
    omega_u = u_mean / (u_mean + v_mean)
    omega_v = v_mean / (u_mean + v_mean)

    try:
        k_t_exact, k_t_approx = predict_t_contrast(k_a, k_b, Ordering.NEG)
    except DegenerateDenominator:
        logger.warning(f"t-image contrast prediction is degenerate for k_a={k_a}, k_b={k_b}")
        k_t_exact, k_t_approx = None, None

    return ContrastReport(
        k_a=k_a,
        k_b=k_b,
        k_t_exact=k_t_exact,
        k_t_approx=k_t_approx,
        # equals omega_u*k_a + omega_v*k_b and stays within [-2, 2] after rounding
        k_s=pair_contrast(u_p + v_p, u_q + v_q),
        omega_u=omega_u,
        omega_v=omega_v,
    )


def measure_contrast(
    u: BrightnessTable,
    v: BrightnessTable,
    pair: PixelPair,
    fused: ty.Optional[BrightnessTable] = None,
) -> ContrastReport:
    """
    Measured partial-image contrasts at a designated pair together with the
    closed-form predictions and, when given, the fused image's contrast.
    """
    k_a = local_contrast(u, pair)
    k_b = local_contrast(v, pair)
    try:
        report = predict_simple_contrast(u[pair.p], u[pair.q], v[pair.p], v[pair.q])
    except ZeroBrightnessPair:
        logger.warning(f"Pair {pair.to_list()} is black in both channels")
        report = ContrastReport(k_a=k_a, k_b=k_b)

    k_fused = local_contrast(fused, pair) if fused is not None else None
    return report.model_copy(update={"k_fused": k_fused, "pair": pair.to_list()})
