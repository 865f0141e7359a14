"""Short-term audio analysis: framing plus time- and frequency-domain features.

A clip is cut into frames of 512 samples advanced by a hop of 256; every
feature below is computed per frame and the clip-level vector is the mean
across frames, in the fixed 33-value layout of AUDIO_FEATURE_NAMES:

    energy, zcr, energy_entropy, centroid_hz, spread_hz, spectral_entropy,
    flux, rolloff_hz, mfcc_00..mfcc_12, chroma_00..chroma_11

Time-domain features see the raw frame; frequency-domain features see the
magnitude spectrum of the Hann-windowed frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from modhate.errors import (
    BadFractionError,
    BadSubframeCountError,
    LengthMismatchError,
    UsageError,
)
from modhate.ingest import AudioClip

LOG_FLOOR = 1e-10
N_MFCC_FILTERS = 26
N_MFCC_COEFFS = 13
N_CHROMA = 12
ENERGY_ENTROPY_SUBFRAMES = 8
SPECTRAL_ENTROPY_BANDS = 16
ROLLOFF_FRACTION = 0.90
CHROMA_MIN_HZ = 20.0

AUDIO_FEATURE_NAMES = (
    ["energy", "zcr", "energy_entropy", "centroid_hz", "spread_hz",
     "spectral_entropy", "flux", "rolloff_hz"]
    + [f"mfcc_{i:02d}" for i in range(N_MFCC_COEFFS)]
    + [f"chroma_{i:02d}" for i in range(N_CHROMA)]
)
N_AUDIO_FEATURES = len(AUDIO_FEATURE_NAMES)   # 33


@dataclass(frozen=True)
class FrameConfig:
    frame_length: int = 512
    hop_length: int = 256
    sample_rate: int = 22050

    def __post_init__(self):
        if not (0 < self.hop_length <= self.frame_length):
            raise UsageError(
                f"need 0 < hop ({self.hop_length}) <= frame length ({self.frame_length})"
            )


class Spectrum(NamedTuple):
    """Single-sided magnitude spectrum: bin k sits at k*sample_rate/frame_length Hz."""
    freqs: np.ndarray
    mags: np.ndarray


def frame_signal(clip: AudioClip, cfg: FrameConfig) -> np.ndarray:
    """Cut the clip into overlapping frames, zero-padding the tail.

    Frame i covers samples [i*hop, i*hop + frame_length); the frame count is
    ceil(max(n - frame_length, 0) / hop) + 1. Returns (n_frames, frame_length).
    """
    x = np.asarray(clip.samples, dtype=np.float64)
    n = x.shape[0]
    wl, hop = cfg.frame_length, cfg.hop_length
    count = int(np.ceil(max(n - wl, 0) / hop)) + 1
    padded = np.zeros((count - 1) * hop + wl, dtype=np.float64)
    padded[:n] = x
    return np.lib.stride_tricks.sliding_window_view(padded, wl)[::hop].copy()


def energy(frame: np.ndarray) -> float:
    """Mean of squared amplitudes (sum of signal squares over frame length)."""
    frame = np.asarray(frame, dtype=np.float64)
    return float(np.sum(frame * frame) / frame.shape[0])


def zero_crossing_rate(frame: np.ndarray) -> float:
    """Fraction of adjacent sample pairs whose signs differ; sign(0) = +1."""
    frame = np.asarray(frame, dtype=np.float64)
    signs = np.where(frame >= 0.0, 1, -1)
    return float(np.count_nonzero(signs[1:] != signs[:-1]) / frame.shape[0])


def energy_entropy(frame: np.ndarray, n_sub: int = ENERGY_ENTROPY_SUBFRAMES) -> float:
    """Shannon entropy (bits) of the energy distribution over equal sub-frames.

    A zero-energy frame falls back to the uniform distribution, giving
    log2(n_sub) bits.
    """
    frame = np.asarray(frame, dtype=np.float64)
    if n_sub < 1 or frame.shape[0] % n_sub != 0:
        raise BadSubframeCountError(f"{n_sub} sub-frames do not divide length {frame.shape[0]}")
    sub = frame.reshape(n_sub, -1)
    e = np.sum(sub * sub, axis=1)
    total = e.sum()
    if total == 0.0:
        p = np.full(n_sub, 1.0 / n_sub)
    else:
        p = e / total
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def magnitude_spectrum(frame: np.ndarray, sample_rate: int = 22050) -> Spectrum:
    """Magnitudes of the real DFT, bins 0..len(frame)//2."""
    frame = np.asarray(frame, dtype=np.float64)
    mags = np.abs(np.fft.rfft(frame))
    freqs = np.fft.rfftfreq(frame.shape[0], 1.0 / sample_rate)
    return Spectrum(freqs=freqs, mags=mags)


def spectral_centroid_spread(spectrum: Spectrum) -> tuple[float, float]:
    """Magnitude-weighted mean frequency and its standard deviation, in Hz.

    An all-zero spectrum returns (0, 0) by convention.
    """
    m = spectrum.mags
    total = m.sum()
    if total == 0.0:
        return 0.0, 0.0
    centroid = float((spectrum.freqs * m).sum() / total)
    spread = float(np.sqrt((((spectrum.freqs - centroid) ** 2) * m).sum() / total))
    return centroid, spread


def spectral_entropy(spectrum: Spectrum, n_bands: int = SPECTRAL_ENTROPY_BANDS) -> float:
    """Shannon entropy (bits) of spectral energy over contiguous bands.

    Band j spans bins [j*L//n_bands, (j+1)*L//n_bands); a zero spectrum
    falls back to the uniform distribution.
    """
    power = spectrum.mags * spectrum.mags
    length = power.shape[0]
    bounds = [length * j // n_bands for j in range(n_bands + 1)]
    e = np.array([power[bounds[j]:bounds[j + 1]].sum() for j in range(n_bands)])
    total = e.sum()
    if total == 0.0:
        p = np.full(n_bands, 1.0 / n_bands)
    else:
        p = e / total
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def spectral_flux(current: Spectrum, previous: Spectrum) -> float:
    """Squared difference of unit-sum-normalized magnitudes between frames."""
    a, b = current.mags, previous.mags
    if a.shape != b.shape:
        raise LengthMismatchError(f"spectra of lengths {a.shape[0]} and {b.shape[0]}")

    def normed(m: np.ndarray) -> np.ndarray:
        s = m.sum()
        if s == 0.0:
            return np.full(m.shape[0], 1.0 / m.shape[0])
        return m / s

    d = normed(a) - normed(b)
    return float(np.sum(d * d))


def spectral_rolloff(spectrum: Spectrum, fraction: float = ROLLOFF_FRACTION) -> float:
    """Frequency below which `fraction` of the spectral energy lies.

    Smallest bin K with cumulative squared magnitude >= fraction * total;
    0 Hz for a zero spectrum.
    """
    if not 0.0 < fraction < 1.0:
        raise BadFractionError(f"rolloff fraction must be in (0, 1), got {fraction}")
    power = spectrum.mags * spectrum.mags
    cum = np.cumsum(power)
    total = cum[-1]
    if total == 0.0:
        return 0.0
    k = int(np.searchsorted(cum, fraction * total))
    return float(spectrum.freqs[k])


def hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def _mel_filterbank(n_filters: int, freqs: np.ndarray) -> np.ndarray:
    """Triangular filters with centers equally spaced on the mel scale."""
    edges_hz = mel_to_hz(np.linspace(hz_to_mel(0.0), hz_to_mel(freqs[-1]), n_filters + 2))
    bank = np.zeros((n_filters, freqs.shape[0]))
    for j in range(n_filters):
        lo, mid, hi = edges_hz[j], edges_hz[j + 1], edges_hz[j + 2]
        rising = (freqs - lo) / (mid - lo)
        falling = (hi - freqs) / (hi - mid)
        bank[j] = np.clip(np.minimum(rising, falling), 0.0, None)
    return bank


def _dct2_ortho(x: np.ndarray, n_out: int) -> np.ndarray:
    n = x.shape[0]
    k = np.arange(n_out)[:, None]
    j = np.arange(n)[None, :]
    basis = np.cos(np.pi * k * (2 * j + 1) / (2 * n))
    scale = np.full(n_out, np.sqrt(2.0 / n))
    scale[0] = np.sqrt(1.0 / n)
    return scale * (basis @ x)


def mfcc(spectrum: Spectrum, n_filters: int = N_MFCC_FILTERS, n_coeffs: int = N_MFCC_COEFFS) -> np.ndarray:
    """Mel-frequency cepstral coefficients 0..12.

    Triangular mel filters are applied to the squared magnitudes, filter
    energies are log-compressed with a 1e-10 floor, and an orthonormal
    DCT-II decorrelates the log energies.
    """
    power = spectrum.mags * spectrum.mags
    energies = _mel_filterbank(n_filters, spectrum.freqs) @ power
    logs = np.log(np.maximum(energies, LOG_FLOOR))
    return _dct2_ortho(logs, n_coeffs)


def chroma_vector(spectrum: Spectrum) -> np.ndarray:
    """12-bin pitch-class profile (C=0) of log-compressed class magnitudes.

    Bins at or above 20 Hz map to pitch class (rint(12*log2(f/440)) + 69)
    mod 12; each class yields log(mean magnitude + 1e-10) and an empty
    class yields log(1e-10).
    """
    out = np.full(N_CHROMA, np.log(LOG_FLOOR))
    mask = spectrum.freqs >= CHROMA_MIN_HZ
    if not mask.any():
        return out
    classes = (np.rint(12.0 * np.log2(spectrum.freqs[mask] / 440.0)).astype(int) + 69) % 12
    mags = spectrum.mags[mask]
    for c in range(N_CHROMA):
        sel = classes == c
        if sel.any():
            out[c] = np.log(mags[sel].mean() + LOG_FLOOR)
    return out


def _hann(n: int) -> np.ndarray:
    # periodic form, matching the DFT length
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def extract_audio_features(clip: AudioClip, cfg: FrameConfig | None = None) -> np.ndarray:
    """Per-frame features averaged into the fixed 33-value clip vector."""
    cfg = cfg or FrameConfig()
    frames = frame_signal(clip, cfg)
    window = _hann(cfg.frame_length)

    rows = np.empty((frames.shape[0], N_AUDIO_FEATURES))
    prev: Spectrum | None = None
    for i, frame in enumerate(frames):
        spec = magnitude_spectrum(frame * window, cfg.sample_rate)
        centroid, spread = spectral_centroid_spread(spec)
        flux = 0.0 if prev is None else spectral_flux(spec, prev)
        rows[i, 0] = energy(frame)
        rows[i, 1] = zero_crossing_rate(frame)
        rows[i, 2] = energy_entropy(frame)
        rows[i, 3] = centroid
        rows[i, 4] = spread
        rows[i, 5] = spectral_entropy(spec)
        rows[i, 6] = flux
        rows[i, 7] = spectral_rolloff(spec)
        rows[i, 8:8 + N_MFCC_COEFFS] = mfcc(spec)
        rows[i, 8 + N_MFCC_COEFFS:] = chroma_vector(spec)
        prev = spec
    return rows.mean(axis=0)
