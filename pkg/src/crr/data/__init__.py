"""Bundled example networks, instances and solutions."""
from importlib.resources import files

__all__ = ["path", "names"]


def path(name: str):
    p = files(__name__) / name
    if not p.is_file():
        raise FileNotFoundError(f"no bundled file {name!r}")
    return p


def names() -> list[str]:
    return sorted(p.name for p in files(__name__).iterdir() if p.suffix in (".crr", ".sol", ".hyper", ".sb"))
