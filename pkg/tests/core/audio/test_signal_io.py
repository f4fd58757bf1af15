import numpy as np
import pytest
import soundfile as sf

from app.core.audio.signal_io import conform_sample_rate, frame_count, frame_signal, load_audio, split_dataset
from app.core.exceptions import AudioLoadError, DatasetError, FramingError, UserInputError
from app.models.entities.audio_clip import AudioClip
from app.models.entities.manifest import DatasetManifest, ManifestEntry


def make_manifest(n_classes: int, per_class: int) -> DatasetManifest:
    entries = [
        ManifestEntry(track_id=f"c{c}_t{i:03d}", path=f"c{c}/t{i}.wav", label=c)
        for c in range(n_classes)
        for i in range(per_class)
    ]
    return DatasetManifest(entries=tuple(entries), class_names=tuple(f"c{c}" for c in range(n_classes)))


class TestLoadAudio:
    def test_full_scale_16_bit(self, tmp_path):
        path = tmp_path / "peak.wav"
        data = np.zeros(100, dtype=np.int16)
        data[0] = 32767
        sf.write(path, data, 22050, subtype="PCM_16")
        clip = load_audio(path)
        assert clip.samples[0] == pytest.approx(32767 / 32768)
        assert clip.sample_rate == 22050

    def test_one_second_of_silence(self, tmp_path):
        path = tmp_path / "silence.wav"
        sf.write(path, np.zeros(22050), 22050, subtype="PCM_16")
        clip = load_audio(path)
        assert len(clip) == 22050
        assert not np.any(clip.samples)

    def test_stereo_channels_are_averaged(self, tmp_path):
        path = tmp_path / "stereo.wav"
        data = np.column_stack([np.full(500, 0.5), np.full(500, -0.5)])
        sf.write(path, data, 22050, subtype="PCM_16")
        assert np.all(load_audio(path).samples == 0.0)

    def test_missing_file(self, tmp_path):
        with pytest.raises(AudioLoadError):
            load_audio(tmp_path / "absent.wav")

    def test_malformed_header(self, tmp_path):
        path = tmp_path / "junk.wav"
        path.write_bytes(b"RIFF\x00\x00not really a wave file")
        with pytest.raises(AudioLoadError):
            load_audio(path)


class TestFrameSignal:
    def test_thirty_second_clip(self):
        clip = AudioClip(samples=np.zeros(30 * 22050), sample_rate=22050)
        windows = frame_signal(clip, 370, 185)
        assert windows.shape == ((661500 - 8158) // 4079 + 1, 8158)
        assert windows.shape[0] == 161

    def test_exactly_one_window(self):
        clip = AudioClip(samples=np.ones(8158), sample_rate=22050)
        assert frame_signal(clip, 370, 50).shape[0] == 1

    def test_non_overlapping(self):
        clip = AudioClip(samples=np.arange(16316, dtype=float), sample_rate=22050)
        windows = frame_signal(clip, 370, 370)
        assert windows.shape == (2, 8158)
        assert windows[1, 0] == 8158.0

    def test_too_short(self):
        with pytest.raises(FramingError):
            frame_signal(AudioClip(samples=np.ones(100), sample_rate=22050), 370, 185)

    def test_non_positive_hop(self):
        with pytest.raises(FramingError):
            frame_signal(AudioClip(samples=np.ones(10000), sample_rate=22050), 370, 0)

    def test_frame_count_matches_framing(self):
        clip = AudioClip(samples=np.zeros(12345), sample_rate=8000)
        assert frame_count(12345, 512, 256) == frame_signal(clip, 64, 32).shape[0]


class TestSplitDataset:
    def test_eighty_twenty_per_class(self):
        train, test = split_dataset(make_manifest(10, 100), 0.8, seed=7)
        assert [len(group) for group in train.by_class()] == [80] * 10
        assert [len(group) for group in test.by_class()] == [20] * 10
        assert not set(train.track_ids) & set(test.track_ids)

    def test_same_seed_same_partition(self):
        manifest = make_manifest(3, 10)
        assert split_dataset(manifest, 0.8, 3) == split_dataset(manifest, 0.8, 3)

    def test_input_order_does_not_matter(self):
        manifest = make_manifest(3, 10)
        shuffled = DatasetManifest(entries=tuple(reversed(manifest.entries)), class_names=manifest.class_names)
        assert split_dataset(manifest, 0.8, 3) == split_dataset(shuffled, 0.8, 3)

    def test_two_tracks_half_split(self):
        train, test = split_dataset(make_manifest(4, 2), 0.5, seed=0)
        assert len(train) == 4 and len(test) == 4

    def test_singleton_class(self):
        with pytest.raises(DatasetError):
            split_dataset(make_manifest(2, 1), 0.8, 0)

    def test_fraction_out_of_range(self):
        with pytest.raises(DatasetError):
            split_dataset(make_manifest(2, 4), 1.0, 0)


def test_conform_sample_rate():
    clip = AudioClip(samples=np.ones(1000), sample_rate=16000)
    with pytest.raises(UserInputError):
        conform_sample_rate(clip, 8000)
    resampled = conform_sample_rate(clip, 8000, resample=True)
    assert resampled.sample_rate == 8000 and len(resampled) == 500
    assert conform_sample_rate(clip, 16000) is clip
