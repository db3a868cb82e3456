import os
from typing import Dict, Mapping, Union

from dotenv import dotenv_values

from src.utils.errors import ParameterError


def read_key_values(path: Union[str, os.PathLike]) -> Dict[str, str]:
    """Read a flat KEY=VALUE file.

    Blank lines and '#' comments are ignored. Keys without a value are
    rejected rather than silently dropped.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"File not found: {path}")

    values = dotenv_values(path)
    missing = [key for key, value in values.items() if value is None]
    if missing:
        raise ParameterError(f"Keys without a value in {path}: {', '.join(missing)}")
    return dict(values)


def parse_assignment(text: str) -> Dict[str, str]:
    """Parse a single inline 'KEY=VALUE' override."""
    key, sep, value = text.partition("=")
    if not sep or not key.strip() or not value.strip():
        raise ParameterError(f"Expected KEY=VALUE, got: {text!r}")
    return {key.strip(): value.strip()}


def write_key_values(path: Union[str, os.PathLike], values: Mapping[str, object]) -> None:
    """Write a flat KEY=VALUE file readable by read_key_values."""
    directory = os.path.dirname(os.fspath(path))
    if directory:
        os.makedirs(directory, exist_ok=True)

    with open(path, "w") as file:
        for key, value in values.items():
            if isinstance(value, float):
                value = repr(value)
            elif isinstance(value, bool):
                value = str(value).lower()
            file.write(f"{key}={value}\n")
