"""Edge-perspective node-type mixtures and their on-disk JSON description.

An ensemble lists variable-node and check-node types, each with the
fraction of graph edges attached to it.  Repetition and SPC kinds carry
closed-form erasure-channel behaviour; "generic" kinds carry an explicit
generator matrix and go through the exact information-function machinery.
Any kind may appear on either side: a repetition code used as a check node
(or an SPC used as a variable node) is simply treated as a generalized
node with the canonical generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .binmat import MAX_DIM, BinaryMatrix, rank
from .codes import ComponentCode, min_distance_at_least

KINDS = ("repetition", "spc", "generic")
FRACTION_SUM_TOL = 1e-12


class EnsembleFormatError(ValueError):
    """The ensemble description document is malformed."""


class EnsembleValidationError(ValueError):
    """A structurally well-formed ensemble violates a validity invariant."""


@dataclass(frozen=True)
class NodeType:
    """One node type: a component code kind plus its edge fraction."""

    kind: str
    edge_fraction: float
    length: int | None = None
    generator: BinaryMatrix | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown node kind {self.kind!r}")
        if self.kind == "generic":
            if self.generator is None or self.length is not None:
                raise ValueError("generic node types carry a generator matrix and no length")
        else:
            if self.length is None or self.generator is not None:
                raise ValueError(f"{self.kind} node types carry a length and no generator")
            if self.length < 1:
                raise ValueError(f"node length must be positive, got {self.length}")
        if not 0.0 < self.edge_fraction <= 1.0:
            raise ValueError(f"edge fraction must be in (0, 1], got {self.edge_fraction}")

    def describe(self) -> str:
        if self.kind == "generic":
            return f"generic {self.generator.rows}x{self.generator.cols}"
        return f"{self.kind}({self.length})"


@dataclass(frozen=True)
class Ensemble:
    """A GLDPC / D-GLDPC ensemble as two edge-fraction mixtures."""

    variable_types: tuple[NodeType, ...]
    check_types: tuple[NodeType, ...]


@lru_cache(maxsize=None)
def component_code(node: NodeType) -> ComponentCode:
    """The component code of a node type (canonical generator for rep/SPC)."""
    if node.kind == "repetition":
        return ComponentCode.repetition(node.length)
    if node.kind == "spc":
        return ComponentCode.single_parity_check(node.length)
    return ComponentCode(node.generator)


@lru_cache(maxsize=None)
def node_min_distance_at_least(node: NodeType, t: int) -> bool:
    """Whether the node's component code has minimum distance >= t."""
    if node.kind == "repetition":
        return node.length >= t
    if node.kind == "spc":
        return 2 >= t
    return min_distance_at_least(node.generator, t)


def is_generalized_variable(node: NodeType) -> bool:
    """Variable-side types other than repetition are generalized nodes."""
    return node.kind != "repetition"


def is_generalized_check(node: NodeType) -> bool:
    """Check-side types other than SPC are generalized nodes."""
    return node.kind != "spc"


def _node_signature(node: NodeType):
    if node.kind == "generic":
        return (node.kind, node.generator.bits, node.generator.cols)
    return (node.kind, node.length)


def _validate_side(types: tuple[NodeType, ...], side: str) -> None:
    if not types:
        raise EnsembleValidationError(f"{side} side has no node types")
    total = sum(t.edge_fraction for t in types)
    if abs(total - 1.0) > FRACTION_SUM_TOL:
        raise EnsembleValidationError(
            f"{side} edge fractions sum to {total!r}, expected 1 within {FRACTION_SUM_TOL}"
        )
    seen = set()
    for t in types:
        sig = _node_signature(t)
        if sig in seen:
            raise EnsembleValidationError(f"duplicate {side} type {t.describe()}")
        seen.add(sig)
    for i, t in enumerate(types):
        label = f"{side} type {i} ({t.describe()})"
        if t.kind in ("repetition", "spc"):
            if t.length < 2:
                raise EnsembleValidationError(f"{label}: length must be >= 2")
            if t.length > MAX_DIM:
                raise EnsembleValidationError(
                    f"{label}: length exceeds the {MAX_DIM} dimension cap"
                )
            continue
        gen = t.generator
        if rank(gen) != gen.rows:
            raise EnsembleValidationError(f"{label}: generator matrix is rank deficient")
        if not min_distance_at_least(gen, 2):
            raise EnsembleValidationError(f"{label}: minimum distance is 1, need >= 2")
        if not gen.rows < gen.cols:
            raise EnsembleValidationError(
                f"{label}: code dimensions must satisfy k < n, got k={gen.rows}, n={gen.cols}"
            )


@lru_cache(maxsize=None)
def _validate_cached(ens: Ensemble) -> bool:
    _validate_side(ens.variable_types, "variable")
    _validate_side(ens.check_types, "check")
    # Warm the component-code and distance-class caches for every type.
    for t in ens.variable_types + ens.check_types:
        component_code(t)
        node_min_distance_at_least(t, 3)
    return True


def validate(ens: Ensemble) -> Ensemble:
    """Check all ensemble invariants; returns the ensemble unchanged.

    Raises EnsembleValidationError naming the offending side or type.
    Successful validations are cached, so repeated calls are cheap.
    """
    _validate_cached(ens)
    return ens


def repetition_fractions(ens: Ensemble) -> dict[int, float]:
    """Edge fraction per repetition length on the variable side."""
    out: dict[int, float] = {}
    for t in ens.variable_types:
        if t.kind == "repetition":
            out[t.length] = out.get(t.length, 0.0) + t.edge_fraction
    return out


def spc_fractions(ens: Ensemble) -> dict[int, float]:
    """Edge fraction per SPC length on the check side."""
    out: dict[int, float] = {}
    for t in ens.check_types:
        if t.kind == "spc":
            out[t.length] = out.get(t.length, 0.0) + t.edge_fraction
    return out


def lambda2(ens: Ensemble) -> float:
    """Edge fraction of length-2 repetition variable nodes."""
    return repetition_fractions(ens).get(2, 0.0)


def rho_spc_derivative_at_one(ens: Ensemble) -> Fraction:
    """Exact derivative at x=1 of the SPC edge polynomial sum rho_j x^(j-1)."""
    total = Fraction(0)
    for j, f in spc_fractions(ens).items():
        total += Fraction(f) * (j - 1)
    return total


def design_rate(ens: Ensemble) -> float:
    """Design rate 1 - [sum rho_i (n_i-k_i)/n_i] / [sum lambda_i k_i/n_i]."""
    validate(ens)
    var_sum = Fraction(0)
    for t in ens.variable_types:
        code = component_code(t)
        var_sum += Fraction(t.edge_fraction) * Fraction(code.k, code.n)
    chk_sum = Fraction(0)
    for t in ens.check_types:
        code = component_code(t)
        chk_sum += Fraction(t.edge_fraction) * Fraction(code.n - code.k, code.n)
    return float(1 - chk_sum / var_sum)


def _parse_node(obj, side: str, index: int) -> NodeType:
    label = f"{side}[{index}]"
    if not isinstance(obj, dict):
        raise EnsembleFormatError(f"{label}: expected an object, got {type(obj).__name__}")
    allowed = {"kind", "length", "generator", "edge_fraction"}
    unknown = set(obj) - allowed
    if unknown:
        raise EnsembleFormatError(f"{label}: unknown keys {sorted(unknown)}")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise EnsembleFormatError(f"{label}: unknown kind {kind!r}")
    fraction = obj.get("edge_fraction")
    if not isinstance(fraction, (int, float)) or isinstance(fraction, bool):
        raise EnsembleFormatError(f"{label}: edge_fraction must be a number")
    try:
        if kind == "generic":
            if "generator" not in obj:
                raise EnsembleFormatError(f"{label}: generic node needs a generator")
            literal = obj["generator"]
            if not isinstance(literal, str):
                raise EnsembleFormatError(f"{label}: generator must be a matrix literal string")
            try:
                gen = BinaryMatrix.from_text(literal)
            except ValueError as e:
                raise EnsembleFormatError(f"{label}: malformed matrix literal: {e}") from e
            return NodeType(kind="generic", edge_fraction=float(fraction), generator=gen)
        length = obj.get("length")
        if not isinstance(length, int) or isinstance(length, bool):
            raise EnsembleFormatError(f"{label}: {kind} node needs an integer length")
        return NodeType(kind=kind, edge_fraction=float(fraction), length=length)
    except EnsembleFormatError:
        raise
    except ValueError as e:
        raise EnsembleFormatError(f"{label}: {e}") from e


def parse_ensemble(text: str) -> Ensemble:
    """Parse the JSON description format; validation is a separate step."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise EnsembleFormatError(
            f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    if not isinstance(doc, dict):
        raise EnsembleFormatError("top level must be an object")
    unknown = set(doc) - {"variable_nodes", "check_nodes"}
    if unknown:
        raise EnsembleFormatError(f"unknown top-level keys {sorted(unknown)}")
    sides = []
    for key in ("variable_nodes", "check_nodes"):
        arr = doc.get(key)
        if not isinstance(arr, list):
            raise EnsembleFormatError(f"{key} must be an array of node objects")
        sides.append(tuple(_parse_node(o, key, i) for i, o in enumerate(arr)))
    return Ensemble(variable_types=sides[0], check_types=sides[1])


def serialize_ensemble(ens: Ensemble) -> str:
    """Emit the JSON description: fixed key order, 2-space indent, LF ending.

    Floats are written with repr round-tripping, so parse(serialize(e))
    reproduces e bit-exactly.
    """
    def node_obj(t: NodeType) -> dict:
        obj: dict = {"kind": t.kind}
        if t.kind == "generic":
            obj["generator"] = t.generator.to_text()
        else:
            obj["length"] = t.length
        obj["edge_fraction"] = t.edge_fraction
        return obj

    doc = {
        "variable_nodes": [node_obj(t) for t in ens.variable_types],
        "check_nodes": [node_obj(t) for t in ens.check_types],
    }
    return json.dumps(doc, indent=2) + "\n"
