import argparse
import sys
import typing as ty

import complexfusion
from complexfusion.errors import ComplexFusionError, UsageError
from complexfusion.protocol import ErrorReport
from complexfusion.utils import config as cfg
from complexfusion.utils.logging import logger, setup_logging
from . import commands
from .report import emit


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


COMMANDS = {
    "fuse": (cfg.add_fuse_args, commands.cmd_fuse, "Fuse a visible and an infrared image."),
    "sweep": (cfg.add_sweep_args, commands.cmd_sweep, "Run a T*/Phi* method over several epsilons."),
    "assess": (cfg.add_assess_args, commands.cmd_assess, "Histogram, entropy and profile of one image."),
    "compare": (cfg.add_compare_args, commands.cmd_compare, "Entropy and contrast of several methods."),
    "synth": (cfg.add_synth_args, commands.cmd_synth, "Write the model image pair and its renderings."),
}


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="complexfusion",
        description="Complex-function fusion of visible and infrared images.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {complexfusion.__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    for name, (add_args, _, help_text) in COMMANDS.items():
        subparser = subparsers.add_parser(name, help=help_text)
        cfg.add_args(subparser)
        add_args(subparser)
    return parser


def run(argv: ty.Optional[ty.Sequence[str]] = None, stream: ty.Optional[ty.TextIO] = None) -> int:
    """
    Parse, dispatch and emit. Returns the process exit code: 0 success,
    1 usage error, 2 data error, 3 internal error.
    """
    setup_logging()
    try:
        config = build_parser().parse_args(argv)
        setup_logging(debug=config.debug, trace=config.trace)
        cfg.check_config(config)

        _, command, _ = COMMANDS[config.command]
        result = command(config)
        for document in result if isinstance(result, list) else [result]:
            emit(document, stream)
        return 0
    except ComplexFusionError as e:
        logger.error(f"{e.category}: {e}")
        emit(ErrorReport.from_exception(e), stream)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Internal error: {e}")
        emit(ErrorReport.from_exception(e), stream)
        return 3


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
