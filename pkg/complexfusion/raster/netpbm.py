"""
Netpbm grayscale (P2/P5) and colour (P3/P6) codec.

Samples are returned as integer numpy arrays of shape (height, width) for
graymaps and (height, width, 3) for pixmaps, together with the file's maxval.
"""
import typing as ty

import numpy as np

from complexfusion.errors import MalformedImage, UnsupportedBitDepth

# magic -> (planes, binary)
MAGIC_LAYOUT = {
    b"P2": (1, False),
    b"P5": (1, True),
    b"P3": (3, False),
    b"P6": (3, True),
}
SUPPORTED_MAXVALS = (255, 65535)
WHITESPACE = b" \t\r\n\v\f"
PLAIN_VALUES_PER_LINE = 10


def _next_token(data: bytes, pos: int) -> ty.Tuple[bytes, int]:
    while pos < len(data):
        if data[pos : pos + 1] == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        elif data[pos] in WHITESPACE:
            pos += 1
        else:
            break
    start = pos
    while pos < len(data) and data[pos] not in WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise MalformedImage("Netpbm header ended before width, height and maxval were read")
    return data[start:pos], pos


def decode(data: bytes) -> ty.Tuple[np.ndarray, int]:
    magic = data[:2]
    if magic not in MAGIC_LAYOUT:
        raise MalformedImage(f"Unknown Netpbm magic number {magic!r}")
    planes, binary = MAGIC_LAYOUT[magic]

    header = []
    pos = 2
    for _ in range(3):
        token, pos = _next_token(data, pos)
        try:
            header.append(int(token))
        except ValueError:
            raise MalformedImage(f"Non-numeric Netpbm header field {token!r}")
    width, height, maxval = header
    if width < 1 or height < 1:
        raise MalformedImage(f"Invalid Netpbm dimensions {width}x{height}")
    if maxval not in SUPPORTED_MAXVALS:
        raise UnsupportedBitDepth(f"Netpbm maxval {maxval} is not one of {SUPPORTED_MAXVALS}")

    count = width * height * planes
    if binary:
        # exactly one whitespace byte separates the header from the raster
        pos += 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        raster = data[pos : pos + count * dtype.itemsize]
        if len(raster) < count * dtype.itemsize:
            raise MalformedImage(
                f"Raster truncated: expected {count * dtype.itemsize} bytes, got {len(raster)}"
            )
        samples = np.frombuffer(raster, dtype=dtype).astype(np.int64)
    else:
        body = data[pos:].split()
        if len(body) < count:
            raise MalformedImage(f"Plain raster truncated: expected {count} samples, got {len(body)}")
        try:
            samples = np.array([int(s) for s in body[:count]], dtype=np.int64)
        except ValueError:
            raise MalformedImage("Plain raster contains a non-numeric sample")

    if samples.min() < 0 or samples.max() > maxval:
        raise MalformedImage(f"Sample outside [0, {maxval}]")
    shape = (height, width) if planes == 1 else (height, width, 3)
    return samples.reshape(shape), maxval


def read(path: str) -> ty.Tuple[np.ndarray, int]:
    with open(path, "rb") as f:
        return decode(f.read())


def encode(samples: np.ndarray, maxval: int, plain: bool = False) -> bytes:
    if maxval not in SUPPORTED_MAXVALS:
        raise UnsupportedBitDepth(f"Cannot write maxval {maxval}")
    samples = np.asarray(samples)
    if samples.ndim == 2:
        magic = b"P2" if plain else b"P5"
    elif samples.ndim == 3 and samples.shape[2] == 3:
        magic = b"P3" if plain else b"P6"
    else:
        raise MalformedImage(f"Cannot encode samples of shape {samples.shape}")
    height, width = samples.shape[:2]
    header = magic + f"\n{width} {height}\n{maxval}\n".encode("ascii")

    if plain:
        flat = samples.reshape(height, -1)
        lines = []
        for row in flat:
            for i in range(0, len(row), PLAIN_VALUES_PER_LINE):
                lines.append(" ".join(str(int(s)) for s in row[i : i + PLAIN_VALUES_PER_LINE]))
        return header + ("\n".join(lines) + "\n").encode("ascii")

    dtype = ">u2" if maxval > 255 else "u1"
    return header + samples.astype(dtype).tobytes()


def write(path: str, samples: np.ndarray, maxval: int, plain: bool = False):
    payload = encode(samples, maxval, plain=plain)
    with open(path, "wb") as f:
        f.write(payload)
