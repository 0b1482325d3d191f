# The MIT License (MIT)
# Copyright © 2026 complexfusion developers

# Permission is hereby granted, free of charge, to any person obtaining a copy of this software and associated
# documentation files (the “Software”), to deal in the Software without restriction, including without limitation
# the rights to use, copy, modify, merge, publish, distribute, sublicense, and/or sell copies of the Software,
# and to permit persons to whom the Software is furnished to do so, subject to the following conditions:

# The above copyright notice and this permission notice shall be included in all copies or substantial portions of
# the Software.

# THE SOFTWARE IS PROVIDED “AS IS”, WITHOUT WARRANTY OF ANY KIND, EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO
# THE WARRANTIES OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
# THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION
# OF CONTRACT, TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER
# DEALINGS IN THE SOFTWARE.

import io
import json
import math
import typing as ty

import numpy as np
from rich.console import Console
from rich.text import Text

from complexfusion.cli.main import run
from complexfusion.types.raster import BrightnessTable, ChannelTag


class CLOSE_IN_VALUE:
    value: float
    tolerance: float

    def __init__(self, value: float, tolerance: float = 0.0) -> None:
        self.value = value
        self.tolerance = tolerance

    def __eq__(self, __o: float) -> bool:
        # True if __o \in [value - tolerance, value + tolerance]
        return (self.value - self.tolerance) <= __o <= (self.value + self.tolerance)

    def __repr__(self) -> str:
        return f"{self.value} ± {self.tolerance}"


def table(rows, tag: ChannelTag = ChannelTag.FUSED) -> BrightnessTable:
    """Build a table from nested row lists."""
    return BrightnessTable(np.array(rows, dtype=np.float64), tag=tag)


def visible(rows) -> BrightnessTable:
    return table(rows, ChannelTag.VISIBLE_A)


def infrared(rows) -> BrightnessTable:
    return table(rows, ChannelTag.INFRARED_B)


def random_table(
    seed: int,
    shape: ty.Tuple[int, int] = (16, 12),
    low: float = 0.0,
    high: float = 1.0,
    tag: ChannelTag = ChannelTag.FUSED,
) -> BrightnessTable:
    rng = np.random.default_rng(seed)
    return BrightnessTable(rng.uniform(low, high, size=shape), tag=tag)


def dyadic_table(seed: int, shape: ty.Tuple[int, int] = (9, 7)) -> BrightnessTable:
    """Values k/256 with k in [1, 255]; scaling them by 10 stays exact."""
    rng = np.random.default_rng(seed)
    return BrightnessTable(rng.integers(1, 256, size=shape) / 256.0)


def write_plain_pgm(path, rows, maxval: int = 255):
    """Hand-written P2 file, independent of the package's encoder."""
    height, width = len(rows), len(rows[0])
    lines = ["P2", "# written by the test suite", f"{width} {height}", str(maxval)]
    lines += [" ".join(str(s) for s in row) for row in rows]
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def run_cli(*argv: str) -> ty.Tuple[int, ty.List[dict]]:
    """Run the command line in-process and parse the emitted documents."""
    stream = io.StringIO()
    code = run([str(a) for a in argv], stream=stream)
    documents = [json.loads(line) for line in stream.getvalue().splitlines() if line]
    return code, documents


def oracle_entropy(values: np.ndarray, bins: int) -> float:
    """Direct quantize-and-count entropy, no numpy histogram routines."""
    counts: ty.Dict[int, int] = {}
    flat = [float(x) for x in np.asarray(values).ravel()]
    for x in flat:
        index = min(int(x * bins), bins - 1)
        counts[index] = counts.get(index, 0) + 1
    total = len(flat)
    p = np.array([counts[index] / total for index in sorted(counts)])
    return max(0.0, -math.fsum(p * np.log2(p)))


class MockConsole:
    """
    Mocks the console object for print.
    Captures the last print output as a string.
    """

    captured_print = None

    def print(self, *args, **kwargs):
        console = Console(
            width=1000, no_color=True, markup=False
        )  # set width to 1000 to avoid truncation
        console.begin_capture()
        console.print(*args, **kwargs)
        self.captured_print = console.end_capture()

    @staticmethod
    def remove_rich_syntax(text: str) -> str:
        """
        Removes rich syntax from the given text.
        Removes markup and ansi syntax.
        """
        output_no_syntax = Text.from_ansi(Text.from_markup(text).plain).plain

        return output_no_syntax
