"""Serializable certificates for search outcomes.

Two kinds.  A lower-bound certificate carries an avoiding coloring and is
re-verified by running the detector over it, which is linear in the candidate
table.  An upper-bound certificate records that the search tree was exhausted:
the parameters, the node count and a hash of the decision trace.  At desk
scale re-running the search is cheaper than checking a proof log, so
verification of an upper bound is a structural check by default and an
optional re-run.

The JSON layout is stable and fully ordered; byte-identical output for
identical inputs is part of the contract, so no timestamps or volatile fields
go in.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Any

from . import __version__
from .colorings import Coloring
from .detector import find_witness
from .patterns import Family, Witness, parse_family
from .windows import parse_window

FORMAT_VERSION = 1

LOWER_BOUND = "lower-bound"
UPPER_BOUND = "upper-bound"


def _family_fields(family: Family) -> dict[str, Any]:
    return {
        "family": family.serialize(),
        "family_flags": {
            "allow_offsets": family.has_offsets(),
            "require_distinct_values": family.require_distinct_values,
            "strict_nonzero_x": family.strict_nonzero_x,
        },
    }


def family_from_fields(cert: dict[str, Any]) -> Family:
    flags = cert.get("family_flags", {})
    return parse_family(
        cert["family"],
        allow_offsets=flags.get("allow_offsets", False),
        require_distinct_values=flags.get("require_distinct_values", False),
        strict_nonzero_x=flags.get("strict_nonzero_x", False),
    )


def lower_bound_certificate(family: Family, window_spec: str, r: int, coloring: Coloring) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "tool_version": __version__,
        "kind": LOWER_BOUND,
        **_family_fields(family),
        "window": window_spec,
        "r": r,
        "coloring": list(coloring.colors),
    }


def upper_bound_certificate(
    family: Family,
    window_spec: str,
    r: int,
    nodes: int,
    proof_log_hash: str,
    workers: int,
) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "tool_version": __version__,
        "kind": UPPER_BOUND,
        **_family_fields(family),
        "window": window_spec,
        "r": r,
        "exhaustion": {
            "nodes": nodes,
            "proof_log_hash": proof_log_hash,
            "workers": workers,
        },
    }


def certificate_for_result(result) -> dict:
    """Build the matching certificate for a decided SearchResult."""
    family = result.family
    if result.outcome == "avoiding":
        return lower_bound_certificate(family, result.window_spec, result.r, result.coloring)
    if result.outcome == "exhausted":
        return upper_bound_certificate(
            family,
            result.window_spec,
            result.r,
            result.nodes,
            result.proof_log_hash or "",
            result.budget.workers,
        )
    raise ValueError(f"no certificate for outcome {result.outcome!r}")


def dumps_certificate(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True, indent=2) + "\n"


def write_certificate(cert: dict, directory: str, stem: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"{stem}.{cert['kind']}.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_certificate(cert))
    return path


def load_certificate(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        cert = json.load(fh)
    for key in ("format_version", "kind", "family", "window", "r"):
        if key not in cert:
            raise ValueError(f"certificate missing field {key!r}")
    if cert["format_version"] != FORMAT_VERSION:
        raise ValueError(f"unsupported certificate format {cert['format_version']}")
    return cert


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    message: str
    witness: Witness | None = None


def verify_certificate(cert: dict, rerun: bool = False) -> VerificationResult:
    """Check a certificate.

    Lower bounds re-run the detector over the stored coloring.  Upper bounds
    are structurally validated; with rerun=True the search is repeated with
    the recorded worker split and must exhaust again with the same trace
    hash.
    """
    family = family_from_fields(cert)
    window = parse_window(cert["window"])
    r = int(cert["r"])
    if cert["kind"] == LOWER_BOUND:
        coloring = Coloring(window, cert["coloring"], r)
        witness = find_witness(family, coloring)
        if witness is None:
            return VerificationResult(True, "coloring avoids the family")
        return VerificationResult(
            False,
            f"coloring has a monochromatic instance at x={witness.x}, y={witness.y}",
            witness,
        )
    if cert["kind"] == UPPER_BOUND:
        ex = cert.get("exhaustion")
        if not isinstance(ex, dict) or "nodes" not in ex or "proof_log_hash" not in ex:
            return VerificationResult(False, "malformed exhaustion record")
        if not rerun:
            return VerificationResult(True, "structurally valid (not re-run)")
        from .search import SearchBudget, search_avoiding

        res = search_avoiding(
            family, window, r, budget=SearchBudget(workers=int(ex.get("workers", 1)))
        )
        if res.outcome != "exhausted":
            return VerificationResult(False, f"re-run outcome was {res.outcome}")
        if res.proof_log_hash != ex["proof_log_hash"]:
            return VerificationResult(False, "re-run decision trace hash differs")
        return VerificationResult(True, "re-run exhausted with matching trace hash")
    return VerificationResult(False, f"unknown certificate kind {cert['kind']!r}")
