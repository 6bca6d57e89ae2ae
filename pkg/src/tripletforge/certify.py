"""Machine-readable verification certificates.

A certificate is a flat list of named checks, each carrying a reference
id into the statement registry below, the measured residual, the
tolerance it was held to, and a verdict.  Serialization is canonical:
keys sorted, floats rendered with 17 significant digits, so identical
inputs produce byte-identical certificates.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FAIL",
    "INDETERMINATE",
    "PASS",
    "PASS_DIAGONAL",
    "PASS_STRUCTURAL",
    "Certificate",
    "Check",
    "REFS",
    "canonical_json",
    "diagonal_check",
    "residual_check",
    "sha256_of",
    "structural_check",
    "vec_pairs",
]

PASS = "PASS"
FAIL = "FAIL"
PASS_STRUCTURAL = "PASS-structural"
PASS_DIAGONAL = "PASS-diagonal"
INDETERMINATE = "INDETERMINATE"

# Registry of checkable statements.  Every check's ``ref`` must be one of
# these ids; the README carries the same table with a prose statement of
# what each id asserts.
REFS = {
    "energy-space-norm": "the energy-space norm of c equals the image norm ||T P c||",
    "range-space-inner": "range-space inner products equal preimage inner products",
    "range-space-dual-norm": "the range norm is the supremum of pairings over adjoint-norms",
    "coisometry-factorization": "T factors through its range space by a coisometry",
    "kernel-operator-form": "the kernel operator is the embedding composed with its adjoint",
    "preimage-left-composition": "(i i^#)(T^# T) is the identity off the null space",
    "preimage-right-composition": "(T^# T)(i i^#) is the identity on the range of T^# T",
    "preimage-domain-equality": "domain equalities hold when the null space is trivial",
    "kernel-halfpower-density": "the half-power range spans the embedding's domain",
    "kernel-pairing-identity": "ambient pairings transport through the kernel operator",
    "kernel-range-density": "the kernel operator's range spans",
    "kernel-dual-norm-formula": "the upper norm is the supremum over half-power quotients",
    "kernel-unitary-identification": "identity on the kernel range extends to an isometry",
    "plus-embedding-injective": "the upper embedding is injective",
    "plus-range-dense": "the upper embedding has spanning range",
    "zero-embedding-injective": "the lower embedding is injective",
    "zero-range-dense": "the lower embedding has spanning range",
    "norm-duality-identity": "||j- y||_- equals ||j+^# y||_+ as quadratic forms",
    "dual-norm-axiom": "the lower norm equals the supremum pairing against upper norms",
    "kernel-positive-injective": "the kernel operator is positive with trivial null space",
    "kernel-selfadjoint": "the kernel operator is selfadjoint for the middle Gram",
    "model-kernel-inverse": "the model kernel operator inverts the Hamiltonian",
    "model-kernel-equivalence": "the two model kernel operators are unitarily equivalent",
    "model-unitary-identification": "the adjoint embedding extends to an isometry of the ends",
    "model-hamiltonian-extension": "the Hamiltonian extends to the inverse isometry",
    "model-factor-composition": "the extension factors through the coisometry and renorming maps",
    "model-dual-pairing": "the dual pairing identifies the lower space isometrically",
    "structure-unitary-extension": "the adjoint embedding read bottom-to-top is Gram-unitary",
    "structure-kernel-restriction": "the kernel operator restricts the bottom-to-top isometry",
    "structure-hamiltonian-inverse": "the transported Hamiltonian inverts the isometry",
    "structure-dual-isometry": "the dual identification preserves norms on a basis",
    "extension-validates": "the canonical dual extension satisfies the triplet axioms",
    "extension-identity-unitary": "identity on the shared core is Gram-unitary between duals",
    "symmetry-kernel-swap": "reversal swaps kernel operator and Hamiltonian",
    "symmetry-involution": "reversing twice returns the original triplet",
    "common-core-density": "the shared subspace is dense in all three spaces",
    "pairing-representation": "the middle pairing is represented by the derived operator",
    "pairing-contraction": "the pairing is bounded by the outer norms",
    "pairing-invertibility": "the pairing operator is boundedly invertible",
    "pairing-uniqueness": "the representing operator is unique",
    "pairing-adjoint-symmetry": "the reversed triplet is represented by the adjoint",
    "bridge-pairing-bound": "the triplet pairing satisfies the outer-norm bound",
    "bridge-density": "the shared core spans all three triplet spaces",
    "converted-range-gram": "the recovered range space carries the original inner product",
    "converted-adjoint-pairing": "the embedding's adjoint agrees with the pairing operator",
    "dual-norm-equivalence": "the recovered dual norm is equivalent with explicit constants",
    "joint-completion-energy": "jointly Cauchy sequences share a limit in the energy pair",
    "joint-completion-dual": "jointly Cauchy sequences share a limit in the dual pair",
    "functional-approximation": "bounded functionals are approximated from the shared core",
    "family-pairing-inequality": "the family pairing inequality holds on sampled pairs",
    "family-pairing-equality-witness": "an explicit pair attains the pairing bound",
    "family-pairing-isometry": "the family pairing operator is isometric",
    "family-diagonal-pairing-entries": "the family pairing operator has the stated diagonal",
    "family-embedding-class-plus": "upper-side embedding classification on the truncation",
    "family-embedding-class-minus": "dual-side embedding classification on the truncation",
    "instance-construction": "the generated instance satisfies its construction identity",
}


@dataclass(frozen=True)
class Check:
    """One verified statement: residual measured against a tolerance."""

    name: str
    ref: str
    residual: float
    tolerance: float
    verdict: str
    detail: dict | None = None

    def __post_init__(self):
        if self.ref not in REFS:
            raise KeyError(f"unregistered statement ref: {self.ref}")

    def to_obj(self) -> dict:
        obj = {
            "name": self.name,
            "ref": self.ref,
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "verdict": self.verdict,
        }
        if self.detail is not None:
            obj["detail"] = self.detail
        return obj


def residual_check(name: str, ref: str, residual: float, tolerance: float,
                   detail: dict | None = None) -> Check:
    verdict = PASS if residual <= tolerance else FAIL
    return Check(name, ref, float(residual), float(tolerance), verdict, detail)


def structural_check(name: str, ref: str, note: str) -> Check:
    """A statement true by choice of the finite model, not by computation."""
    return Check(name, ref, 0.0, 0.0, PASS_STRUCTURAL, {"note": note})


def diagonal_check(name: str, ref: str, note: str) -> Check:
    """A statement verified coordinatewise for diagonal countable models."""
    return Check(name, ref, 0.0, 0.0, PASS_DIAGONAL, {"note": note})


@dataclass
class Certificate:
    """Verification report for one instance."""

    instance: str
    input_sha256: str
    checks: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    tool_version: str = ""

    @property
    def verdict(self) -> str:
        return FAIL if any(c.verdict == FAIL for c in self.checks) else PASS

    def to_obj(self) -> dict:
        return {
            "instance": self.instance,
            "input_sha256": self.input_sha256,
            "tool_version": self.tool_version,
            "config": self.config,
            "checks": [c.to_obj() for c in self.checks],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_obj())


def sha256_of(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def vec_pairs(v) -> list:
    """Complex vector as [re, im] pairs, the serializable witness format."""
    v = np.asarray(v, dtype=np.complex128)
    return [[float(z.real), float(z.imag)] for z in v]


def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("certificates may not contain NaN or Inf")
    if x == 0.0:
        return "0"
    return format(x, ".17g")


def _emit(obj, out: list):
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        out.append('"' + escaped + '"')
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            _emit(str(key), out)
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot canonically serialize {type(obj)!r}")


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    out: list = []
    _emit(obj, out)
    return "".join(out)
