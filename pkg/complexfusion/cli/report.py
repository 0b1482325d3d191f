import csv
import json
import sys
import typing as ty

from rich.console import Console
from rich.table import Table

from complexfusion.errors import IoFailure
from complexfusion.protocol import CompareReport, Document
from complexfusion.utils.logging import logger

HISTOGRAM_HEADER = ("bin_index", "lower_edge", "count")
COMPARE_HEADER = ("method", "epsilon", "entropy_bits", "occupied_bins", "contrast")


def emit(document: Document, stream: ty.Optional[ty.TextIO] = None):
    """Write one document as a single JSON line."""
    stream = stream or sys.stdout
    stream.write(json.dumps(document.deserialize()) + "\n")
    stream.flush()


def _write_rows(path: str, header: ty.Sequence[str], rows: ty.Iterable[ty.Sequence]):
    try:
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise IoFailure(f"Cannot write {path}: {e}") from e
    logger.debug(f"Wrote {path}")


def write_histogram_csv(path: str, counts: ty.Sequence[int]):
    bins = len(counts)
    _write_rows(
        path,
        HISTOGRAM_HEADER,
        ((i, repr(i / bins), int(count)) for i, count in enumerate(counts)),
    )


def _compare_rows(report: CompareReport):
    for row in report.rows:
        epsilon = "" if row.method.epsilon is None else repr(row.method.epsilon)
        contrast = "" if row.contrast is None else repr(row.contrast)
        yield (row.method.tag, epsilon, repr(row.entropy_bits), row.occupied_bins, contrast)


def write_compare_csv(path: str, report: CompareReport):
    _write_rows(path, COMPARE_HEADER, _compare_rows(report))


def print_compare_table(report: CompareReport, console: ty.Optional[Console] = None):
    """Human-readable copy of the comparison on standard error."""
    console = console or Console(stderr=True)
    table = Table(title=f"Methods on {', '.join(report.inputs)} ({report.bins} bins)")
    for column in COMPARE_HEADER:
        table.add_column(column, justify="left" if column == "method" else "right")
    for method, epsilon, entropy, occupied, contrast in _compare_rows(report):
        table.add_row(
            method,
            epsilon,
            f"{float(entropy):.4f}",
            str(occupied),
            f"{float(contrast):+.6f}" if contrast else "",
        )
    console.print(table)
