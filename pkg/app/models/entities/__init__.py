from app.models.entities.audio_clip import AudioClip
from app.models.entities.feature_sequence import FeatureSequence
from app.models.entities.manifest import DatasetManifest, ManifestEntry
from app.models.entities.ridge_model import RidgeModel
from app.models.entities.signature import Signature
from app.models.entities.template_orbit import RawTemplate, TemplateBank, TemplateOrbit
from app.models.entities.time_freq_matrix import MfccVector, TimeFreqMatrix

__all__ = [
    "AudioClip",
    "DatasetManifest",
    "FeatureSequence",
    "ManifestEntry",
    "MfccVector",
    "RawTemplate",
    "RidgeModel",
    "Signature",
    "TemplateBank",
    "TemplateOrbit",
    "TimeFreqMatrix",
]
