"""JSON documents for matrices, factorizations, certificates and chains.

Matrix::

    {"ring": "Z[x]", "rows": 2, "cols": 2, "entries": [["x", "x^2"], ["1", "x"]]}

Chain (``kind`` is ``"chain"`` or ``"nilpotent"``)::

    {"ring": ..., "kind": "chain", "source": M, "core": M, "lag": 1,
     "steps": [{"U": M, "V": M}, ...]}

A chain document records only the ``U, V`` pairs.  When it is loaded the
intermediate matrices are recomputed as ``V_i U_i`` so that verification
checks ``U_(i+1) V_(i+1)`` against them rather than trusting stored values.
"""

from __future__ import annotations

import json

from .matrix import Matrix
from .ring import QX, ZX
from .sphere import SPHERE
from .sse import ElementaryStep, NilpotencyWitness, SSEChain
from .text import ParseError

RINGS = {ZX.tag: ZX, QX.tag: QX, SPHERE.tag: SPHERE}
RING_FLAGS = {"Zx": ZX.tag, "Qx": QX.tag, "sphere": SPHERE.tag}


class FormatError(ValueError):
    """Malformed document."""


def ring_for(tag: str):
    try:
        return RINGS[tag]
    except KeyError:
        raise FormatError(f"unknown ring {tag!r}; expected one of {sorted(RINGS)}") from None


def matrix_to_dict(m: Matrix, with_ring: bool = True) -> dict:
    out = {"ring": m.ring.tag} if with_ring else {}
    out.update(rows=m.rows, cols=m.cols, entries=[[str(e) for e in row] for row in m.tolist()])
    return out


def matrix_from_dict(doc: dict, ring=None) -> Matrix:
    if not isinstance(doc, dict):
        raise FormatError("matrix document must be an object")
    if "ring" in doc:
        file_ring = ring_for(doc["ring"])
        if ring is not None and file_ring != ring:
            raise FormatError(f"matrix is over {doc['ring']} but {ring.tag} was expected")
        ring = file_ring
    if ring is None:
        raise FormatError("matrix document has no ring")
    try:
        rows, cols, entries = int(doc["rows"]), int(doc["cols"]), doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"matrix document needs rows, cols, entries ({exc})") from None
    if not isinstance(entries, list) or len(entries) != rows:
        raise FormatError(f"expected {rows} rows of entries")
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise FormatError(f"row {i} does not have {cols} entries")
        if not all(isinstance(e, (str, int)) for e in row):
            raise FormatError(f"row {i}: entries must be polynomial strings")
    try:
        return Matrix(ring, [[str(e) for e in row] for row in entries], rows, cols)
    except ParseError as exc:
        raise FormatError(f"bad entry: {exc}") from None


def frf_to_dict(f) -> dict:
    return {
        "ring": f.P.ring.tag,
        "P": matrix_to_dict(f.P),
        "Q": matrix_to_dict(f.Q),
        "r": f.r,
        "verification": dict(f.verification),
    }


def lu_to_dict(lu) -> dict:
    return {
        "ring": lu.L.ring.tag,
        "L": matrix_to_dict(lu.L),
        "U": matrix_to_dict(lu.U),
        "d": str(lu.d),
    }


def certificate_to_dict(cert) -> dict:
    return {
        "ring": cert.subject.ring.tag,
        "subject": matrix_to_dict(cert.subject),
        "witnesses": [{"Z": matrix_to_dict(z), "d": str(d)} for z, d in cert.witnesses],
    }


def chain_to_dict(result) -> dict:
    chain = result.chain if isinstance(result, NilpotencyWitness) else result
    return {
        "ring": chain.source.ring.tag,
        "kind": "nilpotent" if isinstance(result, NilpotencyWitness) else "chain",
        "source": matrix_to_dict(chain.source),
        "core": matrix_to_dict(chain.core),
        "lag": chain.lag,
        "steps": [{"U": matrix_to_dict(s.U), "V": matrix_to_dict(s.V)} for s in chain.steps],
    }


def chain_from_dict(doc: dict, ring=None):
    """Return ``(kind, SSEChain)``."""
    if not isinstance(doc, dict):
        raise FormatError("chain document must be an object")
    if "ring" in doc:
        ring = ring_for(doc["ring"]) if ring is None else ring
        if ring_for(doc["ring"]) != ring:
            raise FormatError(f"chain is over {doc['ring']} but {ring.tag} was expected")
    kind = doc.get("kind", "chain")
    if kind not in ("chain", "nilpotent"):
        raise FormatError(f"unknown chain kind {kind!r}")
    try:
        source = matrix_from_dict(doc["source"], ring)
        core = matrix_from_dict(doc["core"], ring)
        lag = int(doc["lag"])
        raw_steps = doc["steps"]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"chain document needs source, core, lag, steps ({exc})") from None
    steps = []
    prev = source
    for i, s in enumerate(raw_steps):
        try:
            u = matrix_from_dict(s["U"], ring)
            v = matrix_from_dict(s["V"], ring)
        except (KeyError, TypeError) as exc:
            raise FormatError(f"step {i} needs U and V ({exc})") from None
        if u.cols != v.rows or v.cols != u.rows:
            raise FormatError(f"step {i}: U {u.shape} and V {v.shape} cannot be multiplied both ways")
        target = v * u
        steps.append(ElementaryStep(u, v, prev, target))
        prev = target
    return kind, SSEChain(source, core, tuple(steps), lag)


def load_json(path: str):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from None


def dump_json(doc, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
