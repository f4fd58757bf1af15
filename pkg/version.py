"""
Version information for orbit-audio.

The version follows the Semantic Versioning scheme (https://semver.org/):
MAJOR.MINOR.PATCH
"""

__version__ = "0.1.0"


def get_version():
    """Return the current version of the package."""
    return __version__

