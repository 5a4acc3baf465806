"""Version information for costarnet."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("costarnet")
except PackageNotFoundError:
    __version__ = "0.0.0-dev"


def get_version() -> str:
    """Return the current package version."""
    return __version__


def dependency_versions() -> dict[str, str]:
    """Return installed versions of the numeric stack, for run manifests."""
    versions: dict[str, str] = {"costarnet": __version__}
    for name in ("numpy", "scipy", "pandas", "networkx", "matplotlib"):
        try:
            versions[name] = version(name)
        except PackageNotFoundError:
            versions[name] = "unknown"
    return versions
