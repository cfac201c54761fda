"""Reading and writing pairs, estimates and figure tables.

JSON input::

    {"mu": [0.5, 0.5], "K": [[0.9, 0.1], [0.1, 0.9]]}

Rows of ``K`` are inputs. ``divergence`` inputs carry ``nu`` and ``mu``.
CSV input has one channel row per line and the input law on a header line
``#mu: 0.5,0.5``; other ``#`` lines are comments.
"""
import json
import sys
from pathlib import Path

import numpy as np

from .probability import Channel, Distribution, ValidationError

SIG_DIGITS = 12


def fmt(x):
    """Twelve significant digits."""
    return f"{x:.{SIG_DIGITS}g}"


def _infer_format(path, fmt_name):
    if fmt_name:
        return fmt_name.lower()
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        return "csv"
    return "json"


def _vector(values, field_name):
    try:
        v = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"field {field_name!r}: {exc}") from None
    if v.ndim != 1:
        raise ValidationError(f"field {field_name!r} must be a flat list of numbers")
    try:
        return Distribution(v)
    except ValidationError as exc:
        raise ValidationError(f"field {field_name!r}: {exc}") from None


def _matrix(rows, field_name="K"):
    try:
        K = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"field {field_name!r}: ragged or non-numeric rows ({exc})") from None
    if K.ndim != 2:
        raise ValidationError(f"field {field_name!r} must be a list of equal-length rows")
    try:
        return Channel(K)
    except ValidationError as exc:
        raise ValidationError(f"field {field_name!r}: {exc}") from None


def _check_dims(mu, K):
    if mu is not None and mu.n != K.n_inputs:
        raise ValidationError(f"dimension mismatch: mu has length {mu.n} but K has {K.n_inputs} rows")


def _read_text(path):
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ValidationError("JSON input must be an object")
    return doc


def _parse_csv(text):
    mu = None
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("mu:"):
                try:
                    mu = [float(x) for x in body[3:].split(",")]
                except ValueError:
                    raise ValidationError(f"line {lineno}: cannot parse mu header {line!r}") from None
            continue
        try:
            rows.append([float(x) for x in line.split(",")])
        except ValueError:
            raise ValidationError(f"line {lineno}: cannot parse channel row {line!r}") from None
    if not rows:
        raise ValidationError("CSV input has no channel rows")
    if len({len(r) for r in rows}) != 1:
        raise ValidationError("CSV channel rows have different lengths")
    return mu, rows


def parse_input(path, format=None, require_mu=True):
    """Read ``(mu, K)`` from a JSON or CSV file.

    ``mu`` is None when absent and ``require_mu`` is false.
    """
    text = _read_text(path)
    if _infer_format(path, format) == "csv":
        mu_raw, rows = _parse_csv(text)
    else:
        doc = _load_json(text)
        if "K" not in doc:
            raise ValidationError("missing field 'K'")
        mu_raw, rows = doc.get("mu"), doc["K"]
    if mu_raw is None and require_mu:
        raise ValidationError("missing field 'mu'")
    mu = None if mu_raw is None else _vector(mu_raw, "mu")
    K = _matrix(rows)
    _check_dims(mu, K)
    return mu, K


def parse_divergence_input(path):
    """Read ``(nu, mu)`` from a JSON object with fields ``nu`` and ``mu``."""
    doc = _load_json(_read_text(path))
    for key in ("nu", "mu"):
        if key not in doc:
            raise ValidationError(f"missing field {key!r}")
    nu, mu = _vector(doc["nu"], "nu"), _vector(doc["mu"], "mu")
    if nu.n != mu.n:
        raise ValidationError(f"dimension mismatch: nu has length {nu.n}, mu has {mu.n}")
    return nu, mu


def pair_to_json(mu, K):
    doc = {}
    if mu is not None:
        doc["mu"] = mu.probs.tolist()
    doc["K"] = K.matrix.tolist()
    return json.dumps(doc)


def pair_to_csv(mu, K):
    lines = []
    if mu is not None:
        lines.append("#mu: " + ",".join(repr(float(x)) for x in mu.probs))
    lines.extend(",".join(repr(float(x)) for x in row) for row in K.matrix)
    return "\n".join(lines) + "\n"


def estimate_to_json(est):
    return json.dumps(est.to_dict())


def write(text, path=None):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
