import time
import wave
from pathlib import Path

import numpy as np
import pytest


@pytest.fixture(scope="session")
def demo_pipeline(tmp_path_factory):
    """The frozen acceptance pipeline: gen-demo seed 42 -> extract -> logreg -> evaluate.

    Shared across test modules; returns paths plus stage wall times.
    """
    from modhate.cli import main

    root = tmp_path_factory.mktemp("demo42")
    corpus = root / "corpus"
    work = root / "work"
    t0 = time.perf_counter()
    assert main(["gen-demo", "--out", str(corpus), "--seed", "42", "--count", "300"]) == 0
    t1 = time.perf_counter()
    assert main(["extract", "--manifest", str(corpus / "manifest.csv"),
                 "--out", str(work), "--seed", "42"]) == 0
    assert main(["train", "--out", str(work), "--manifest", str(corpus / "manifest.csv"),
                 "--algo", "logreg"]) == 0
    assert main(["evaluate", "--out", str(work), "--manifest", str(corpus / "manifest.csv"),
                 "--algo", "logreg"]) == 0
    t2 = time.perf_counter()
    return {
        "corpus": corpus,
        "work": work,
        "gen_seconds": t1 - t0,
        "pipeline_seconds": t2 - t1,
        "total_seconds": t2 - t0,
    }


def write_wav(path: Path, samples: np.ndarray, rate: int = 22050, channels: int = 1) -> None:
    """Write int16 samples with the stdlib writer (independent of the package's reader)."""
    ints = np.asarray(samples, dtype="<i2")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(channels)
        w.setsampwidth(2)
        w.setframerate(rate)
        w.writeframes(ints.tobytes())


def write_pgm(path: Path, grid: np.ndarray) -> None:
    arr = np.asarray(grid, dtype=np.uint8)
    h, w = arr.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + arr.tobytes())


@pytest.fixture
def wav_writer():
    return write_wav


@pytest.fixture
def pgm_writer():
    return write_pgm
