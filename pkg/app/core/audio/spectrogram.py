"""
Base-layer log-spectrogram and the MFCC baseline.

Layer-1 rows are log(reduce(|DFT(hann * window)|) + floor); the frequency reduction (linear bin
averaging or mel weighting) is applied to magnitudes so the log floor stays the silence value.
"""

from functools import lru_cache

import numpy as np
import scipy.fft
import scipy.signal

from app.core.audio.signal_io import conform_sample_rate, frame_signal
from app.core.exceptions import DimensionMismatchError, UserInputError
from app.models.entities.audio_clip import AudioClip
from app.models.entities.feature_sequence import FeatureSequence
from app.models.entities.time_freq_matrix import MfccVector, TimeFreqMatrix
from app.models.schemas.spectrogram_schema import MfccSettings, SpectrogramSettings
from app.utils.conversion import hz_to_mel, is_pow2, mel_to_hz, next_pow2
from app.utils.enum import FrequencyReduction, Stage, WindowFunction
from app.utils.logger import dsp_logger


@lru_cache(maxsize=16)
def _window(window_fn: WindowFunction, length: int) -> np.ndarray:
    if window_fn == WindowFunction.RECTANGULAR:
        window = np.ones(length)
    else:
        window = scipy.signal.get_window("hann", length, fftbins=True)
    window.setflags(write=False)
    return window


def power_spectrum(
    window: np.ndarray, fft_size: int, window_fn: WindowFunction = WindowFunction.HANN
) -> np.ndarray:
    """Magnitudes of the first fft_size/2+1 DFT bins of the tapered, zero-padded window(s).

    Accepts one window or a 2-d stack of windows (one per row).
    """
    window = np.asarray(window, dtype=np.float64)
    length = window.shape[-1]
    if not is_pow2(fft_size):
        raise UserInputError(f"fft_size must be a power of two, got {fft_size}")
    if fft_size < length:
        raise UserInputError(f"fft_size {fft_size} is smaller than the {length}-sample window")
    tapered = window * _window(WindowFunction(window_fn), length)
    return np.abs(scipy.fft.rfft(tapered, n=fft_size, axis=-1))


def log_compress(magnitudes: np.ndarray, floor: float = 1e-6) -> np.ndarray:
    """Elementwise log(magnitude + floor)"""
    magnitudes = np.asarray(magnitudes, dtype=np.float64)
    if not np.all(np.isfinite(magnitudes)):
        raise UserInputError("log_compress received non-finite magnitudes")
    if np.any(magnitudes < 0):
        raise UserInputError("log_compress expects non-negative magnitudes")
    if floor <= 0:
        raise UserInputError(f"log floor must be positive, got {floor}")
    return np.log(magnitudes + floor)


def fft_bin_freqs(fft_size: int, sample_rate: int) -> np.ndarray:
    return scipy.fft.rfftfreq(fft_size, d=1.0 / sample_rate)


def mel_filterbank(
    n_filters: int, fft_size: int, sample_rate: int, fmin: float = 0.0, fmax: float | None = None
) -> np.ndarray:
    """Triangular filters equally spaced on the mel scale, shape (n_filters, fft_size//2 + 1)."""
    fmax = sample_rate / 2.0 if fmax is None else fmax
    freqs = fft_bin_freqs(fft_size, sample_rate)
    edges = mel_to_hz(np.linspace(hz_to_mel(fmin), hz_to_mel(fmax), n_filters + 2))

    lower = (freqs[None, :] - edges[:-2, None]) / (edges[1:-1, None] - edges[:-2, None])
    upper = (edges[2:, None] - freqs[None, :]) / (edges[2:, None] - edges[1:-1, None])
    weights = np.maximum(0.0, np.minimum(lower, upper))

    empty = np.flatnonzero(weights.sum(axis=1) <= 0)
    if empty.size:
        raise UserInputError(
            f"degenerate mel filterbank: {empty.size} of {n_filters} filters cover no FFT bin "
            f"(fft_size {fft_size}); lower the filter count or raise the FFT size"
        )
    return weights


@lru_cache(maxsize=8)
def _reduction_matrix(settings: SpectrogramSettings) -> tuple[np.ndarray | None, np.ndarray]:
    """(weights, bin_freqs) mapping FFT magnitudes to output bins; weights None means identity."""
    fft_size = settings.resolved_fft_size
    freqs = fft_bin_freqs(fft_size, settings.sample_rate)
    n_out = settings.n_output_bins
    if settings.reduction == FrequencyReduction.NONE or n_out == freqs.size:
        return None, freqs

    if settings.reduction == FrequencyReduction.LINEAR:
        weights = np.zeros((n_out, freqs.size))
        for row, group in enumerate(np.array_split(np.arange(freqs.size), n_out)):
            weights[row, group] = 1.0 / group.size
    else:
        weights = mel_filterbank(n_out, fft_size, settings.sample_rate)
        weights = weights / weights.sum(axis=1, keepdims=True)
    centers = weights @ freqs
    weights.setflags(write=False)
    return weights, centers


def reduce_frequency(magnitudes: np.ndarray, settings: SpectrogramSettings) -> np.ndarray:
    weights, _ = _reduction_matrix(settings)
    if weights is None:
        return np.asarray(magnitudes, dtype=np.float64)
    return np.asarray(magnitudes, dtype=np.float64) @ weights.T


def base_frame(window: np.ndarray, settings: SpectrogramSettings) -> np.ndarray:
    """Layer-1 representation of raw window(s): log of reduced magnitudes."""
    magnitudes = power_spectrum(window, settings.resolved_fft_size, settings.window_fn)
    return log_compress(reduce_frequency(magnitudes, settings), settings.log_floor)


def log_spectrogram(clip: AudioClip, settings: SpectrogramSettings) -> TimeFreqMatrix:
    """Row i is the (reduced) log spectrum of analysis window i."""
    clip = conform_sample_rate(clip, settings.sample_rate, settings.resample)
    windows = frame_signal(clip, settings.window_ms, settings.hop_ms)
    _, bin_freqs = _reduction_matrix(settings)
    frame_times = np.arange(windows.shape[0]) * settings.hop_samples / clip.sample_rate
    dsp_logger.debug(f"log spectrogram: {windows.shape[0]} frames x {bin_freqs.size} bins")
    return TimeFreqMatrix(values=base_frame(windows, settings), bin_freqs=bin_freqs, frame_times=frame_times)


def mfcc(
    window: np.ndarray, sample_rate: int, settings: MfccSettings = MfccSettings(), fft_size: int | None = None
) -> MfccVector:
    """DCT-II of log mel-filterbank energies of one window, leading coefficients kept."""
    window = np.asarray(window, dtype=np.float64)
    if window.ndim != 1:
        raise DimensionMismatchError(1, window.ndim, "mfcc window rank")
    if window.size < settings.n_filters:
        raise UserInputError(f"window of {window.size} samples is shorter than {settings.n_filters} filters")
    return MfccVector(coeffs=_mfcc_rows(window[None, :], sample_rate, settings, fft_size)[0])


def _mfcc_rows(windows: np.ndarray, sample_rate: int, settings: MfccSettings, fft_size: int | None) -> np.ndarray:
    fft_size = fft_size or next_pow2(windows.shape[-1])
    energies = power_spectrum(windows, fft_size) ** 2
    mel_energies = energies @ mel_filterbank(settings.n_filters, fft_size, sample_rate).T
    cepstrum = scipy.fft.dct(np.log(mel_energies + settings.log_floor), type=2, norm="ortho", axis=-1)
    start = 0 if settings.include_c0 else 1
    return cepstrum[:, start : start + settings.n_coeffs]


def mfcc_sequence(clip: AudioClip, settings: SpectrogramSettings, mfcc_settings: MfccSettings) -> FeatureSequence:
    """MFCC baseline over the same long analysis windows as the base layer."""
    clip = conform_sample_rate(clip, settings.sample_rate, settings.resample)
    windows = frame_signal(clip, settings.window_ms, settings.hop_ms)
    rows = _mfcc_rows(windows, clip.sample_rate, mfcc_settings, settings.resolved_fft_size)
    return FeatureSequence(rows=rows, stage_tag=Stage.MFCC.value)
