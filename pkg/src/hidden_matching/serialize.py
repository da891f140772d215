"""JSON encoding for reports, instances, and strategies.

Rational numbers travel as exact "num/den" strings; canonical byte output is
sorted-key compact JSON with a trailing newline so a fixed seed reproduces a
byte-identical file.
"""
from __future__ import annotations

import dataclasses
import json
from enum import Enum
from fractions import Fraction

import numpy as np

from .games import (CommOutcome, ExplicitTable, GameInstance, GameVariant,
                    NonlocalOutcome, SmallOutputOutcome, UniformInputs)
from .matchings import FamilyKind, Matching, MatchingFamily


def fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def parse_fraction(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den) if den else 1)


def to_jsonable(obj):
    """Recursively convert package objects into JSON-ready structures."""
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Matching):
        return obj.to_json()
    if isinstance(obj, CommOutcome):
        return {"type": "comm", "edge": list(obj.edge), "v": obj.v}
    if isinstance(obj, NonlocalOutcome):
        return {"type": "nonlocal", "a": obj.a, "edge": list(obj.edge), "b": obj.b}
    if isinstance(obj, SmallOutputOutcome):
        return {"type": "small-output", "a": obj.a, "xor": obj.xor_value, "w": obj.w}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def canonical_json_bytes(obj) -> bytes:
    return (json.dumps(to_jsonable(obj), sort_keys=True,
                       separators=(",", ":")) + "\n").encode("ascii")


def pretty_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# game instances

def instance_to_json(instance: GameInstance) -> dict:
    doc = {
        "n": instance.n,
        "variant": instance.variant.value,
        "family": instance.family.kind.value,
    }
    if isinstance(instance.distribution, UniformInputs):
        doc["distribution"] = {"type": "uniform"}
    else:
        doc["distribution"] = {
            "type": "table",
            "weights": [
                [x, m.to_json(), fraction_str(w)]
                for (x, m), w in instance.distribution.weights
            ],
        }
    return doc


def instance_from_json(doc: dict) -> GameInstance:
    n = doc["n"]
    family = MatchingFamily(n, FamilyKind(doc.get("family", "full")))
    dist_doc = doc.get("distribution", {"type": "uniform"})
    if dist_doc.get("type", "uniform") == "uniform":
        distribution = UniformInputs()
    else:
        weights = tuple(
            ((x, Matching.from_json(m)), parse_fraction(w))
            for x, m, w in dist_doc["weights"]
        )
        distribution = ExplicitTable(weights)
    return GameInstance(n, GameVariant(doc["variant"]), family=family,
                        distribution=distribution)
