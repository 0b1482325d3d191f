import os
import time
import typing as ty

import numpy as np

from complexfusion.errors import DataError, DimensionMismatch, InvalidOffset, IoFailure, MethodError
from complexfusion.fusion import brightness_weights, fuse_rgb, run_method
from complexfusion.fusion.methods import FusionMethod, FusionOutcome, MethodTag, numerator_image
from complexfusion.fusion.phase import ratio_terms
from complexfusion.metrics import (
    assess,
    brightness_profile,
    contrast_map,
    histogram,
    mean_abs_difference,
    measure_contrast,
    pearson_correlation,
)
from complexfusion.protocol import (
    CompareReport,
    CompareRow,
    ContrastMapSummary,
    MethodDescriptor,
    ProfileReport,
    RunReport,
)
from complexfusion.raster import load_image, load_planes, save_image, save_rgb_image
from complexfusion.raster.ops import luminance_table
from complexfusion.synth import TARGET_EDGE, model_pair_default
from complexfusion.types.fusion import Epsilon
from complexfusion.types.raster import BrightnessTable, ChannelTag, require_same_shape
from complexfusion.utils.logging import logger
from .report import print_compare_table, write_compare_csv, write_histogram_csv

SYNTH_RENDERINGS = (
    ("simple", MethodTag.SIMPLE, 0.0, False),
    ("t_neg", MethodTag.T_NEG, 0.0, False),
    ("t_pos", MethodTag.T_POS, 0.0, False),
    ("t_neg_inverted", MethodTag.T_NEG, 0.0, True),
    ("phi_neg", MethodTag.PHI_NEG, 0.0, False),
    ("phi_pos", MethodTag.PHI_POS, 0.0, False),
    ("phi_neg_inverted", MethodTag.PHI_NEG, 0.0, True),
)


class Stopwatch:
    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self.start = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self.start if self.enabled else 0.0


def _event(config, message: str):
    if config.events_logger is not None:
        config.events_logger.event(message)


def _makedirs(path: str):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as e:
        raise IoFailure(f"Cannot create directory {path}: {e}") from e


def load_pair(config) -> ty.Tuple[BrightnessTable, BrightnessTable]:
    u = load_image(config.u_path, tag=ChannelTag.VISIBLE_A)
    v = load_image(config.v_path, tag=ChannelTag.INFRARED_B)
    require_same_shape(u, v)
    return u, v


def resolve_weights(
    method: FusionMethod, config, u: BrightnessTable, v: BrightnessTable
) -> FusionMethod:
    """Replace the placeholder weights when --weights auto was given."""
    if getattr(config, "channel_weights", True) is not None:
        return method
    weights = brightness_weights(u, v)
    logger.info(f"Brightness weights: {weights.w_a:.6f}, {weights.w_b:.6f}")
    return method.model_copy(update={"weights": weights})


def fuse(method: FusionMethod, u: BrightnessTable, v: BrightnessTable) -> FusionOutcome:
    """run_method with fusion-time data errors reported as method errors."""
    try:
        return run_method(method, u, v)
    except DimensionMismatch:
        raise
    except DataError as e:
        raise MethodError(f"{method.name} failed: {e}") from e


def contrast_summaries(
    table: BrightnessTable, offsets: ty.Sequence[ty.Tuple[int, int]], strict: bool = True
) -> ty.List[ContrastMapSummary]:
    """strict=False skips offsets that do not fit the table (the default pair of offsets)."""
    summaries = []
    for offset in offsets:
        try:
            cmap = contrast_map(table, offset)
        except InvalidOffset:
            if strict:
                raise
            logger.debug(f"Skipping contrast map offset {offset} on a {table.width}x{table.height} table")
            continue
        magnitudes = abs(cmap.table.values)
        summaries.append(
            ContrastMapSummary(
                offset=list(cmap.offset),
                boundary_pixels=cmap.boundary_pixels,
                max_abs=float(magnitudes.max()),
                mean_abs=float(magnitudes.mean()),
            )
        )
    return summaries


def _save(table: BrightnessTable, path: str, config):
    save_image(table, path, bit_depth=config.bit_depth, plain=config.plain)


def _fuse_gray(config, method: FusionMethod) -> RunReport:
    u, v = load_pair(config)
    method = resolve_weights(method, config, u, v)
    outcome = fuse(method, u, v)
    _save(outcome.display, config.out, config)

    profile = None
    if config.profile_line is not None:
        profile = ProfileReport(
            line=str(config.profile_line),
            source="raw",
            values=brightness_profile(outcome.raw, config.profile_line),
        )
    contrast = None
    if config.pixel_pair is not None:
        contrast = measure_contrast(u, v, config.pixel_pair, outcome.metric_table)

    return RunReport(
        command="fuse",
        method=MethodDescriptor.from_method(method),
        inputs=[config.u_path, config.v_path],
        output=config.out,
        input_quality=[assess(u, config.bins), assess(v, config.bins)],
        output_quality=assess(outcome.display, config.bins),
        contrast=contrast,
        profile=profile,
        contrast_maps=contrast_summaries(outcome.display, config.offsets, config.offsets_given),
        indeterminate_pixels=outcome.indeterminate_pixels,
    )


def _fuse_rgb(config, method: FusionMethod) -> RunReport:
    u_planes = load_planes(config.u_path, tag=ChannelTag.VISIBLE_A)
    v_planes = load_planes(config.v_path, tag=ChannelTag.INFRARED_B)
    require_same_shape(*u_planes, *v_planes)
    u = luminance_table(u_planes, ChannelTag.VISIBLE_A)
    v = luminance_table(v_planes, ChannelTag.INFRARED_B)
    method = resolve_weights(method, config, u, v)
    try:
        outcomes = fuse_rgb(method, u_planes, v_planes)
    except DimensionMismatch:
        raise
    except DataError as e:
        raise MethodError(f"{method.name} failed: {e}") from e

    displays = [o.display for o in outcomes]
    save_rgb_image(displays, config.out, bit_depth=config.bit_depth, plain=config.plain)
    fused = luminance_table(displays)

    profile = None
    if config.profile_line is not None:
        profile = ProfileReport(
            line=str(config.profile_line),
            source="display",
            values=brightness_profile(fused, config.profile_line),
        )
    contrast = None
    if config.pixel_pair is not None:
        contrast = measure_contrast(u, v, config.pixel_pair, fused)

    return RunReport(
        command="fuse",
        method=MethodDescriptor.from_method(method),
        inputs=[config.u_path, config.v_path],
        output=config.out,
        input_quality=[assess(u, config.bins), assess(v, config.bins)],
        output_quality=assess(fused, config.bins),
        contrast=contrast,
        profile=profile,
        contrast_maps=contrast_summaries(fused, config.offsets, config.offsets_given),
        indeterminate_pixels=sum(o.indeterminate_pixels for o in outcomes),
    )


def cmd_fuse(config) -> RunReport:
    watch = Stopwatch(not config.no_timing)
    method = config.fusion_method
    logger.info(f"Fusing {config.u_path} + {config.v_path} with {method.name}")
    if config.mode == "rgb":
        report = _fuse_rgb(config, method)
    else:
        report = _fuse_gray(config, method)
    report.wall_time_s = watch.elapsed()
    _event(
        config,
        f"fuse | {method.name} | {config.out} | entropy {report.output_quality.entropy_bits:.6f}",
    )
    return report


def require_defined_ratio(method: FusionMethod, u: BrightnessTable, v: BrightnessTable):
    """epsilon = 0 is only accepted when no denominator pixel of the ratio is black."""
    _, denominator = ratio_terms(u, v, method.ordering)
    zeros = int(np.count_nonzero(denominator == 0.0))
    if zeros:
        Epsilon(value=0.0).require_regularizing(
            f"{method.tag.value} with {zeros} black denominator pixels"
        )


def sweep_file_name(method: FusionMethod, epsilon: float) -> str:
    """Distinct epsilons get distinct names: the label is the shortest round-trip repr."""
    label = repr(float(epsilon))
    if label.endswith(".0"):
        label = label[:-2]
    return f"{method.tag.value.lower()}_eps{label}.pgm"


def cmd_sweep(config) -> ty.List[RunReport]:
    """One rendering and report per epsilon of a T*/Phi* method."""
    method = config.fusion_method
    u, v = load_pair(config)
    method = resolve_weights(method, config, u, v)
    if 0.0 in config.epsilon_list:
        require_defined_ratio(method, u, v)
    numerator = numerator_image(method, u, v)
    _makedirs(config.out)

    reports = []
    previous = None
    for epsilon in config.epsilon_list:
        watch = Stopwatch(not config.no_timing)
        current = method.with_epsilon(epsilon)
        outcome = fuse(current, u, v)
        path = os.path.join(config.out, sweep_file_name(current, epsilon))
        _save(outcome.display, path, config)

        max_raw = float(outcome.raw.values.max())
        if previous and epsilon > previous[0] and max_raw > reports[-1].max_raw:
            logger.warning(
                f"Max raw brightness rose from {reports[-1].max_raw} to {max_raw} at epsilon {epsilon}"
            )
        contrast = None
        if config.pixel_pair is not None:
            contrast = measure_contrast(u, v, config.pixel_pair, outcome.raw)

        report = RunReport(
            command="sweep",
            method=MethodDescriptor.from_method(current),
            inputs=[config.u_path, config.v_path],
            output=path,
            output_quality=assess(outcome.display, config.bins),
            contrast=contrast,
            indeterminate_pixels=outcome.indeterminate_pixels,
            max_raw=max_raw,
            numerator_correlation=pearson_correlation(outcome.raw, numerator),
            mean_abs_diff_previous=(
                mean_abs_difference(outcome.display, previous[1]) if previous else None
            ),
        )
        report.wall_time_s = watch.elapsed()
        reports.append(report)
        previous = (epsilon, outcome.display)
        logger.debug(f"epsilon {epsilon:g}: max raw {max_raw}")

    _event(config, f"sweep | {method.name} | {len(reports)} epsilons | {config.out}")
    return reports


def cmd_assess(config) -> RunReport:
    watch = Stopwatch(not config.no_timing)
    table = load_image(config.img_path)
    quality = assess(table, config.bins)
    if config.out:
        write_histogram_csv(config.out, histogram(table, config.bins))

    profile = None
    if config.profile_line is not None:
        profile = ProfileReport(
            line=str(config.profile_line),
            source="input",
            values=brightness_profile(table, config.profile_line),
        )
    report = RunReport(
        command="assess",
        inputs=[config.img_path],
        histogram_csv=config.out,
        input_quality=[quality],
        profile=profile,
        contrast_maps=contrast_summaries(table, config.offsets, config.offsets_given),
    )
    report.wall_time_s = watch.elapsed()
    _event(config, f"assess | {config.img_path} | entropy {quality.entropy_bits:.6f}")
    return report


def cmd_compare(config) -> CompareReport:
    watch = Stopwatch(not config.no_timing)
    u, v = load_pair(config)
    if config.out:
        _makedirs(config.out)

    rows = []
    for method in config.method_list:
        method = resolve_weights(method, config, u, v)
        outcome = fuse(method, u, v)
        output = None
        if config.out:
            output = os.path.join(config.out, f"{method.tag.value.lower()}.pgm")
            _save(outcome.display, output, config)
        quality = assess(outcome.display, config.bins)
        contrast = None
        if config.pixel_pair is not None:
            contrast = measure_contrast(u, v, config.pixel_pair, outcome.metric_table).k_fused
        rows.append(
            CompareRow(
                method=MethodDescriptor.from_method(method),
                output=output,
                entropy_bits=quality.entropy_bits,
                occupied_bins=quality.occupied_bins,
                contrast=contrast,
            )
        )

    report = CompareReport(
        inputs=[config.u_path, config.v_path],
        bins=config.bins,
        pair=config.pixel_pair.to_list() if config.pixel_pair else None,
        input_quality=[assess(u, config.bins), assess(v, config.bins)],
        rows=rows,
    )
    if config.out:
        report.table_csv = os.path.join(config.out, "compare.csv")
        write_compare_csv(report.table_csv, report)
    print_compare_table(report)
    report.wall_time_s = watch.elapsed()
    _event(config, f"compare | {len(rows)} methods | {config.u_path} + {config.v_path}")
    return report


def synth_renderings(
    u: BrightnessTable, v: BrightnessTable
) -> ty.List[ty.Tuple[str, FusionOutcome]]:
    return [
        (name, run_method(FusionMethod(tag=tag, epsilon=eps, invert_output=inverted), u, v))
        for name, tag, eps, inverted in SYNTH_RENDERINGS
    ]


def cmd_synth(config) -> RunReport:
    """Write the model pair and its renderings as golden images."""
    watch = Stopwatch(not config.no_timing)
    _makedirs(config.out)
    u, v = model_pair_default()

    files = []
    for name, table in [("model_u", u), ("model_v", v)] + [
        (name, outcome.display) for name, outcome in synth_renderings(u, v)
    ]:
        path = os.path.join(config.out, f"{name}.pgm")
        _save(table, path, config)
        files.append(path)

    simple = run_method(FusionMethod(tag=MethodTag.SIMPLE), u, v)
    report = RunReport(
        command="synth",
        output=config.out,
        files=files,
        input_quality=[assess(u), assess(v)],
        contrast=measure_contrast(u, v, TARGET_EDGE, simple.raw),
    )
    report.wall_time_s = watch.elapsed()
    _event(config, f"synth | {len(files)} files | {config.out}")
    return report
