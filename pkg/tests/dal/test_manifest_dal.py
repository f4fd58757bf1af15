import pytest

from app.core.exceptions import DatasetError
from app.dal.manifest_dal import ManifestDAL
from app.models.entities.manifest import DatasetManifest, ManifestEntry


def test_read_resolves_relative_paths(tmp_path):
    path = tmp_path / "manifest.csv"
    path.write_text("track_id,path,label\nb1,audio/b1.wav,blues\nj1,/abs/j1.wav,jazz\nb2,audio/b2.wav,blues\n")
    manifest = ManifestDAL().read(path, split_seed=9)
    assert manifest.class_names == ("blues", "jazz")
    assert [entry.label for entry in manifest] == [0, 1, 0]
    assert manifest.entries[0].path == str(tmp_path / "audio" / "b1.wav")
    assert manifest.entries[1].path == "/abs/j1.wav"
    assert manifest.split_seed == 9


def test_write_then_read(tmp_path):
    manifest = DatasetManifest(
        entries=(
            ManifestEntry("a", str(tmp_path / "audio" / "a.wav"), 0),
            ManifestEntry("b", str(tmp_path / "audio" / "b.wav"), 1),
        ),
        class_names=("x", "y"),
    )
    path = ManifestDAL().write(manifest, tmp_path / "manifest.csv")
    assert "a,audio/a.wav,x" in path.read_text()
    assert ManifestDAL().read(path) == manifest


@pytest.mark.parametrize(
    "content",
    [
        "id,path,label\na,a.wav,x\n",
        "track_id,path,label\n",
        "track_id,path,label\na,a.wav\n",
        "track_id,path,label\na,a.wav,x\na,b.wav,x\n",
    ],
)
def test_malformed(tmp_path, content):
    path = tmp_path / "bad.csv"
    path.write_text(content)
    with pytest.raises(DatasetError):
        ManifestDAL().read(path)


def test_missing(tmp_path):
    with pytest.raises(DatasetError):
        ManifestDAL().read(tmp_path / "none.csv")


def test_fingerprint_ignores_order_and_location():
    entries = (ManifestEntry("a", "/x/a.wav", 0), ManifestEntry("b", "/x/b.wav", 1))
    moved = (ManifestEntry("b", "/y/b.wav", 1), ManifestEntry("a", "/y/a.wav", 0))
    first = DatasetManifest(entries=entries, class_names=("x", "y"))
    assert first.fingerprint() == DatasetManifest(entries=moved, class_names=("x", "y")).fingerprint()
    relabelled = DatasetManifest(entries=(entries[0], ManifestEntry("b", "/x/b.wav", 0)), class_names=("x", "y"))
    assert first.fingerprint() != relabelled.fingerprint()
