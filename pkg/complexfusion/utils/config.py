import os
import argparse
import typing as ty

import dotenv

from complexfusion.errors import UsageError
from complexfusion.fusion.methods import DEFAULT_EPSILON, SWEEP_METHODS, FusionMethod, MethodTag
from complexfusion.metrics.quality import DEFAULT_BINS
from complexfusion.synth.model import TARGET_EDGE
from complexfusion.types.fusion import ChannelWeights, as_epsilon
from complexfusion.types.metrics import PixelPair, ProfileLine
from .logging import logger, setup_events_logger

dotenv.load_dotenv()

# Optional; only supply defaults for the logging flags.
LOGGING_DIR = os.getenv("COMPLEXFUSION_LOGGING_DIR")
EVENTS_RETENTION_SIZE = int(os.getenv("COMPLEXFUSION_EVENTS_RETENTION_SIZE", 16 * 1024 * 1024))

DEFAULT_OFFSETS = [(1, 0), (0, 1)]
DEFAULT_SWEEP_EPSILONS = [1e-5, 0.01, 0.2, 1.0, 2.0]
AUTO_WEIGHTS = "auto"
TARGET_PAIR = "target"


def _split(text: str, what: str, cast=float) -> list:
    try:
        return [cast(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"Cannot parse {what} from {text!r}")


def parse_weights(text: ty.Optional[str]) -> ty.Optional[ChannelWeights]:
    """
    "wA,wB" scaled onto the unit circle, or None for "auto" (derived later
    from the channel brightness).
    """
    if text is None:
        return ChannelWeights.default()
    if text == AUTO_WEIGHTS:
        return None
    values = _split(text, "weights")
    if len(values) != 2:
        raise UsageError(f"--weights needs two values wA,wB, got {text!r}")
    try:
        weights, renormalized = ChannelWeights.normalized(*values)
    except ValueError as e:
        raise UsageError(f"Invalid --weights {text!r}: {e}")
    if renormalized:
        logger.warning(
            f"Weights {values[0]},{values[1]} renormalized to {weights.w_a:.6f},{weights.w_b:.6f}"
        )
    return weights


def parse_offset(text: str) -> ty.Tuple[int, int]:
    values = _split(text, "offset", int)
    if len(values) != 2:
        raise UsageError(f"--offset needs dx,dy, got {text!r}")
    return (values[0], values[1])


def parse_pair(text: ty.Optional[str]) -> ty.Optional[PixelPair]:
    if text is None:
        return None
    if text == TARGET_PAIR:
        return TARGET_EDGE
    try:
        return PixelPair.parse(text)
    except ValueError as e:
        raise UsageError(str(e))


def parse_method(tag: str, config) -> FusionMethod:
    try:
        method_tag = MethodTag(tag)
    except ValueError:
        choices = ", ".join(m.value for m in MethodTag)
        raise UsageError(f"Unknown method {tag!r}; choose one of {choices}")
    weights = getattr(config, "channel_weights", None) or ChannelWeights.default()
    return FusionMethod(
        tag=method_tag,
        epsilon=getattr(config, "epsilon", DEFAULT_EPSILON),
        weights=weights,
        invert_output=getattr(config, "invert", False),
    )


def check_config(config: argparse.Namespace) -> argparse.Namespace:
    r"""Checks/validates the parsed namespace and adds the parsed values."""
    if getattr(config, "epsilon", None) is not None:
        try:
            as_epsilon(config.epsilon)
        except ValueError as e:
            raise UsageError(str(e))

    if hasattr(config, "weights"):
        config.channel_weights = parse_weights(config.weights)
    if hasattr(config, "pair"):
        config.pixel_pair = parse_pair(config.pair)
    if getattr(config, "profile", None) is not None:
        config.profile_line = ProfileLine.parse(config.profile)
    else:
        config.profile_line = None
    if hasattr(config, "offset"):
        config.offsets = [parse_offset(config.offset)] if config.offset else DEFAULT_OFFSETS
        config.offsets_given = bool(config.offset)
    if getattr(config, "bins", None) is not None and config.bins < 2:
        raise UsageError(f"--bins must be at least 2, got {config.bins}")

    if getattr(config, "epsilons", None) is not None:
        config.epsilon_list = _split(config.epsilons, "epsilons")
        if not config.epsilon_list:
            raise UsageError("--epsilons needs at least one value")
        for eps in config.epsilon_list:
            try:
                as_epsilon(eps)
            except ValueError as e:
                raise UsageError(str(e))
        if len(set(config.epsilon_list)) != len(config.epsilon_list):
            raise UsageError(f"--epsilons repeats a value: {config.epsilons}")
    if getattr(config, "methods", None) is not None:
        config.method_list = [
            parse_method(tag, config) for tag in _split(config.methods, "methods", str)
        ]
        if not config.method_list:
            raise UsageError("--methods needs at least one method")
    if getattr(config, "method", None) is not None:
        config.fusion_method = parse_method(config.method, config)
        if config.command == "sweep" and config.fusion_method.tag not in SWEEP_METHODS:
            raise UsageError(
                f"sweep runs TNeg, TPos, PhiNeg or PhiPos, not {config.method}"
            )

    config.events_logger = None
    if config.logging_dir:
        full_path = os.path.expanduser(config.logging_dir)
        config.events_logger = setup_events_logger(full_path, config.events_retention_size)
    return config


def add_args(parser):
    """
    Adds the arguments every command shares.
    """

    parser.add_argument(
        "--logging.debug",
        dest="debug",
        action="store_true",
        help="Log debug messages to standard error.",
        default=False,
    )

    parser.add_argument(
        "--logging.trace",
        dest="trace",
        action="store_true",
        help="Log trace messages to standard error.",
        default=False,
    )

    parser.add_argument(
        "--logging.logging_dir",
        dest="logging_dir",
        type=str,
        help="Directory for the events log. Events are not saved when unset.",
        default=LOGGING_DIR,
    )

    parser.add_argument(
        "--logging.events_retention_size",
        dest="events_retention_size",
        type=int,
        help="Events log size in bytes before rotation.",
        default=EVENTS_RETENTION_SIZE,
    )

    parser.add_argument(
        "--no-timing",
        dest="no_timing",
        action="store_true",
        help="Report wall time as 0 so reports are byte-identical across runs.",
        default=False,
    )


def add_output_args(parser):
    parser.add_argument(
        "--bit-depth",
        dest="bit_depth",
        type=int,
        choices=(8, 16),
        help="Sample depth of written images.",
        default=8,
    )

    parser.add_argument(
        "--plain",
        action="store_true",
        help="Write ASCII (P2/P3) instead of binary Netpbm files.",
        default=False,
    )


def add_fusion_args(parser, with_method: bool = True):
    """Add the flags that choose and parametrize a fusion method."""

    parser.add_argument("u_path", help="Visible-channel image (channel A).")
    parser.add_argument("v_path", help="Infrared image (channel B).")

    if with_method:
        parser.add_argument(
            "--method",
            type=str,
            help="Fusion method: " + ", ".join(m.value for m in MethodTag),
            default=MethodTag.T_NEG.value,
        )

    parser.add_argument(
        "--epsilon",
        type=float,
        help="Denominator offset of the T*/Phi* methods.",
        default=DEFAULT_EPSILON,
    )

    parser.add_argument(
        "--weights",
        type=str,
        help="Channel weights wA,wB (renormalized to unit norm) or 'auto'.",
        default=None,
    )

    parser.add_argument(
        "--invert",
        action="store_true",
        help="Invert the rendering (x -> 1 - x).",
        default=False,
    )

    parser.add_argument(
        "--mode",
        choices=("gray", "rgb"),
        help="Fuse luminance, or each of R, G, B on its own.",
        default="gray",
    )

    parser.add_argument(
        "--pair",
        type=str,
        help="Pixel pair x1,y1,x2,y2 for the contrast report, or 'target' for the model target edge.",
        default=None,
    )

    parser.add_argument(
        "--bins",
        type=int,
        help="Histogram bins.",
        default=DEFAULT_BINS,
    )

    add_output_args(parser)


def add_fuse_args(parser):
    add_fusion_args(parser)
    parser.add_argument("--out", required=True, help="Fused image path (.pgm, .ppm or .png).")
    parser.add_argument(
        "--profile",
        type=str,
        help="Brightness profile line col:N or row:N of the output.",
        default=None,
    )
    parser.add_argument(
        "--offset",
        type=str,
        help="Contrast-map offset dx,dy. Default: both 1,0 and 0,1.",
        default=None,
    )


def add_sweep_args(parser):
    add_fusion_args(parser)
    parser.add_argument(
        "--epsilons",
        type=str,
        help="Comma separated epsilon values.",
        default=",".join(str(e) for e in DEFAULT_SWEEP_EPSILONS),
    )
    parser.add_argument("--out", required=True, help="Output directory.")


def add_assess_args(parser):
    parser.add_argument("img_path", help="Image to assess.")
    parser.add_argument("--bins", type=int, help="Histogram bins.", default=DEFAULT_BINS)
    parser.add_argument(
        "--profile",
        type=str,
        help="Brightness profile line col:N or row:N.",
        default=None,
    )
    parser.add_argument(
        "--offset",
        type=str,
        help="Contrast-map offset dx,dy. Default: both 1,0 and 0,1.",
        default=None,
    )
    parser.add_argument("--out", help="Histogram CSV path.", default=None)


def add_compare_args(parser):
    add_fusion_args(parser, with_method=False)
    parser.add_argument(
        "--methods",
        type=str,
        help="Comma separated methods to compare.",
        default="Simple,TNeg,PhiNeg,Amplitude",
    )
    parser.add_argument("--out", help="Directory for the CSV table and renderings.", default=None)


def add_synth_args(parser):
    parser.add_argument("--out", required=True, help="Output directory.")
    add_output_args(parser)
