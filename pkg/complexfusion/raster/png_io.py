import typing as ty

import numpy as np
import png

from complexfusion.errors import MalformedImage, UnsupportedBitDepth


def read(path: str) -> ty.Tuple[np.ndarray, int]:
    """
    Read an 8/16-bit grayscale or colour PNG.

    Palette images are expanded by pypng; alpha planes are dropped.

    Returns:
        (samples, maxval): samples of shape (height, width) for grayscale
        input or (height, width, 3) for colour input.
    """
    try:
        width, height, rows, info = png.Reader(filename=path).asDirect()
        grid = np.array([np.asarray(row, dtype=np.int64) for row in rows], dtype=np.int64)
    except png.Error as e:
        raise MalformedImage(f"Invalid PNG {path}: {e}") from e

    bitdepth = info["bitdepth"]
    if bitdepth not in (8, 16):
        raise UnsupportedBitDepth(f"PNG bit depth {bitdepth} is not supported (8 or 16 only)")

    planes = info["planes"]
    grid = grid.reshape(height, width, planes)
    if info["greyscale"]:
        samples = grid[..., 0]
    else:
        samples = grid[..., :3]
    return samples, 2**bitdepth - 1


def write(path: str, samples: np.ndarray, bitdepth: int):
    samples = np.asarray(samples)
    height, width = samples.shape[:2]
    greyscale = samples.ndim == 2
    writer = png.Writer(width=width, height=height, greyscale=greyscale, bitdepth=bitdepth)
    rows = samples.reshape(height, -1).astype(np.int64).tolist()
    with open(path, "wb") as f:
        writer.write(f, rows)
