"""Image-frame features: one mean pixel vector per sample.

A sample's frames are read from its image directory in lexicographic
filename order, flattened row-major to 2500 values, and averaged.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from modhate.errors import NoFramesError
from modhate.ingest import IMAGE_SIZE, ImageFrame, read_image_frame

N_IMAGE_FEATURES = IMAGE_SIZE * IMAGE_SIZE
IMAGE_FEATURE_NAMES = tuple(f"px{i:04d}" for i in range(N_IMAGE_FEATURES))


def flatten_frame(frame: ImageFrame) -> np.ndarray:
    """Row-major flattening; value at (r, c) lands at index 50*r + c."""
    return frame.pixels.reshape(N_IMAGE_FEATURES).copy()


def aggregate_sample_frames(frames: list[ImageFrame]) -> np.ndarray:
    """Element-wise mean of the flattened frames."""
    if not frames:
        raise NoFramesError("sample has no image frames")
    return np.mean([flatten_frame(f) for f in frames], axis=0)


def load_sample_frames(image_dir: str | Path) -> list[ImageFrame]:
    """Read every *.pgm under image_dir, sorted by filename."""
    image_dir = Path(image_dir)
    paths = sorted(p for p in image_dir.glob("*.pgm") if p.is_file())
    if not paths:
        raise NoFramesError(f"no .pgm frames in {image_dir}")
    return [read_image_frame(p) for p in paths]


def extract_image_features(image_dir: str | Path) -> np.ndarray:
    return aggregate_sample_frames(load_sample_frames(image_dir))
