"""Reference machines shipped with the package.

``S1``..``S4`` and ``B4`` are TFSMs, ``M1`` and ``M3`` plain FSMs.
"""

from importlib import resources

from .textformat import parse

NAMES = ("S1", "S2", "S3", "S4", "B4", "M1", "M3")


def text(name) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown corpus machine {name!r}; choose from {', '.join(NAMES)}")
    suffix = "fsm" if name.startswith("M") else "tfsm"
    return resources.files("tfsm").joinpath("data", f"{name}.{suffix}").read_text(encoding="utf-8")


def load(name):
    return parse(text(name))


def path(name):
    """Filesystem path of a corpus file (for command-line use)."""
    suffix = "fsm" if name.startswith("M") else "tfsm"
    return resources.files("tfsm").joinpath("data", f"{name}.{suffix}")
