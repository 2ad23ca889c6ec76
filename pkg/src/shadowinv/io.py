"""JSON file formats and the short observable/state names accepted by the CLI.

POVM file::

    {"dim": 2, "effects": [M_1, M_2, ...]}

Observable or state file::

    {"dim": 2, "matrix": M}

Each ``M`` is a row-major ``d x d`` complex matrix written either as nested
rows ``[[[re, im], ...], ...]`` or as a flat list of ``d*d`` ``[re, im]`` pairs.
"""

import json
from pathlib import Path

import numpy as np

from .exceptions import DimMismatchError
from .frame import validate_povm
from .povms import BUILTIN, I2, SX, SY, SZ, bloch_projector, equatorial_projector, planar_pauli


def _decode_matrix(data, d):
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1] != 2:
        raise DimMismatchError("matrix entries must be [re, im] pairs")
    z = arr[..., 0] + 1j * arr[..., 1]
    if z.shape == (d * d,):
        z = z.reshape(d, d)
    if z.shape != (d, d):
        raise DimMismatchError(f"matrix has shape {z.shape}, expected {(d, d)}")
    return z


def encode_matrix(M):
    M = np.asarray(M, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in M]


def read_povm_file(path):
    doc = json.loads(Path(path).read_text())
    d = int(doc["dim"])
    return validate_povm([_decode_matrix(m, d) for m in doc["effects"]])


def write_povm_file(path, effects):
    effects = [np.asarray(E, dtype=complex) for E in effects]
    doc = {"dim": effects[0].shape[0], "effects": [encode_matrix(E) for E in effects]}
    Path(path).write_text(json.dumps(doc, indent=1))


def read_matrix_file(path):
    doc = json.loads(Path(path).read_text())
    return _decode_matrix(doc["matrix"], int(doc["dim"]))


def write_matrix_file(path, M):
    M = np.asarray(M, dtype=complex)
    Path(path).write_text(json.dumps({"dim": M.shape[0], "matrix": encode_matrix(M)}, indent=1))


def resolve_povm(source):
    """Return ``(povm, builtin_name_or_None)`` for a built-in name or a JSON path."""
    if source in BUILTIN:
        return BUILTIN[source]().povm, source
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"{source!r} is neither a built-in POVM ({', '.join(BUILTIN)}) nor a file")
    return read_povm_file(path), None


_FIXED = {
    "identity": I2,
    "i": I2,
    "x": SX,
    "y": SY,
    "z": SZ,
    "mixed": I2 / 2,
    "zero": np.diag([1.0, 0.0]).astype(complex),
    "one": np.diag([0.0, 1.0]).astype(complex),
}


def _params(text, count, defaults):
    if not text:
        return list(defaults)
    values = [float(v) for v in text.split(",")]
    if len(values) != count:
        raise ValueError(f"expected {count} comma-separated parameters, got {text!r}")
    return values


def resolve_operator(source, theta=0.0, phi=0.0):
    """Parse an operator spec.

    Accepted forms: ``identity``, ``x``, ``y``, ``z``, ``zero``, ``one``,
    ``mixed``, ``bloch[:THETA,PHI]``, ``equatorial[:PHI]``,
    ``planar-pauli[:PHI]``, or a path to a JSON matrix file. Missing angles
    fall back to ``theta``/``phi``.
    """
    name, _, args = source.partition(":")
    key = name.lower()
    if key in _FIXED and not args:
        return _FIXED[key].copy()
    if key == "bloch":
        t, p = _params(args, 2, (theta, phi))
        return bloch_projector(t, p)
    if key == "equatorial":
        (p,) = _params(args, 1, (phi,))
        return equatorial_projector(p)
    if key == "planar-pauli":
        (p,) = _params(args, 1, (phi,))
        return planar_pauli(p)
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"{source!r} is neither a known operator name nor a file")
    return read_matrix_file(path)


def parse_h(text):
    """Parse ``"re:im,re:im"`` (``im`` optional) into a complex vector."""
    if text is None or text.strip() == "":
        return np.zeros(0, dtype=complex)
    out = []
    for item in text.split(","):
        re, _, im = item.partition(":")
        out.append(complex(float(re), float(im) if im else 0.0))
    return np.array(out, dtype=complex)
