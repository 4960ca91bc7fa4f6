"""Bundled example models and their standard twists."""

from importlib import resources

from ..cdga import CdgaModel, load_model

_STANDARD_TWISTS = {
    "torus3": ["", "e1^e2^e3"],
    "torus5": ["e1^e2^e3", "e1^e2^e3^e4^e5"],
    "heisenberg": ["", "a^b^c"],
    "su3": ["x3"],
    "su3xsu3": ["x5", "x3 + y5"],
    "sphere3": ["u"],
    "cascade3": ["a"],
    "cascade5": ["a"],
    "cascade7": ["a"],
    "mixed5": ["a + b"],
}


def model_names() -> tuple[str, ...]:
    return tuple(sorted(_STANDARD_TWISTS))


def model_path(name: str) -> str:
    """Filesystem path of a bundled model file."""
    res = resources.files(__package__).joinpath(f"{name}.json")
    if not res.is_file():
        raise KeyError(f"no bundled model named {name!r}")
    return str(res)


def bundled_model(name: str) -> CdgaModel:
    return load_model(model_path(name))


def standard_pairs() -> list[tuple[str, str]]:
    """The (model name, twist expression) pairs exercised by the test suite."""
    return [(m, t) for m in model_names() for t in _STANDARD_TWISTS[m]]
