from enum import StrEnum, IntEnum


class TransformKind(StrEnum):
    TIME_WARP = "TimeWarp"
    CYCLIC_SHIFT = "CyclicShift"
    PITCH_SHIFT = "PitchShift"


class PoolingKind(StrEnum):
    MOMENTS = "Moments"
    SIGMOID_CDF = "SigmoidCdf"


class WindowFunction(StrEnum):
    HANN = "hann"
    RECTANGULAR = "rectangular"


class FrequencyReduction(StrEnum):
    NONE = "none"
    LINEAR = "linear"
    MEL = "mel"


class LayerTag(StrEnum):
    WARP = "warp"
    PITCH = "pitch"
    TEST = "test"


# region ablation
class Stage(StrEnum):
    """Feature stages; the four invariant rows of the ablation plus the MFCC baseline."""

    MFCC = "mfcc"
    BASE = "base"
    WARP = "warp"
    WARP_TRANSLATION = "warp+translation"
    WARP_TRANSLATION_PITCH = "warp+translation+pitch"

    @property
    def label(self) -> str:
        return STAGE_LABELS[self]

    @classmethod
    def invariant_stages(cls) -> list["Stage"]:
        return [cls.BASE, cls.WARP, cls.WARP_TRANSLATION, cls.WARP_TRANSLATION_PITCH]


STAGE_LABELS = {
    Stage.MFCC: "MFCC",
    Stage.BASE: "Log Spectrogram",
    Stage.WARP: "Invariant (Warp)",
    Stage.WARP_TRANSLATION: "Invariant (Warp+Translation)",
    Stage.WARP_TRANSLATION_PITCH: "Invariant (Warp+Translation+Pitch)",
}
# endregion


class CachePolicy(StrEnum):
    USE = "use"
    REFRESH = "refresh"
    OFF = "off"


class ExitCode(IntEnum):
    SUCCESS = 0
    USER_ERROR = 1
    INTERNAL_ERROR = 2
