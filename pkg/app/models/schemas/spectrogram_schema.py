from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import CONFIG
from app.utils.conversion import is_pow2, ms_to_samples, next_pow2
from app.utils.enum import FrequencyReduction, WindowFunction


class SpectrogramSettings(BaseModel):
    """Base-layer analysis settings. Templates and inputs must share these, enforced through the bank hash."""

    model_config = ConfigDict(frozen=True)

    sample_rate: int = Field(default=CONFIG.SAMPLE_RATE, gt=0, description="Expected clip rate (Hz)")
    window_ms: float = Field(default=370.0, gt=0, description="Analysis window length (ms)")
    hop_ms: float = Field(default=185.0, gt=0, description="Hop between window starts (ms)")
    fft_size: int | None = Field(
        default=None, description="FFT size; twice the next power of two >= window when unset (always zero-padded)"
    )
    log_floor: float = Field(default=1e-6, gt=0, description="Additive floor inside log(x + floor)")
    window_fn: WindowFunction = Field(default=WindowFunction.HANN)
    reduction: FrequencyReduction = Field(default=FrequencyReduction.LINEAR)
    reduced_bins: int = Field(default=512, ge=1, description="Bin count after frequency reduction")
    resample: bool = Field(default=False, description="Resample clips at other rates instead of rejecting them")

    @model_validator(mode="after")
    def check_fft_size(self):
        if self.fft_size is not None:
            if not is_pow2(self.fft_size):
                raise ValueError(f"fft_size must be a power of two, got {self.fft_size}")
            if self.fft_size < self.window_samples:
                raise ValueError(f"fft_size {self.fft_size} smaller than window ({self.window_samples} samples)")
        return self

    @property
    def window_samples(self) -> int:
        return ms_to_samples(self.window_ms, self.sample_rate)

    @property
    def hop_samples(self) -> int:
        return ms_to_samples(self.hop_ms, self.sample_rate)

    @property
    def resolved_fft_size(self) -> int:
        return self.fft_size if self.fft_size is not None else 2 * next_pow2(self.window_samples)

    @property
    def n_fft_bins(self) -> int:
        return self.resolved_fft_size // 2 + 1

    @property
    def n_output_bins(self) -> int:
        if self.reduction == FrequencyReduction.NONE:
            return self.n_fft_bins
        return min(self.reduced_bins, self.n_fft_bins)


class MfccSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_filters: int = Field(default=40, ge=1, description="Triangular mel filters, 0 Hz to Nyquist")
    n_coeffs: int = Field(default=13, ge=1, description="Cepstral coefficients kept")
    include_c0: bool = Field(default=False, description="Keep the 0th coefficient as the first output")
    log_floor: float = Field(default=1e-6, gt=0)

    @model_validator(mode="after")
    def check_coeffs(self):
        available = self.n_filters if self.include_c0 else self.n_filters - 1
        if self.n_coeffs > available:
            raise ValueError(
                f"n_coeffs {self.n_coeffs} exceeds the {available} available from {self.n_filters} filters"
            )
        return self
