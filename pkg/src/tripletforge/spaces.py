"""Hilbert spaces as Gram matrices on finite coordinate spaces.

A ``GramSpace`` is a coordinate space C^n together with a Hermitian
positive-definite Gram matrix G; the inner product is

    <x, y> = y^H G x,

linear in the first slot and conjugate-linear in the second.  That
convention is fixed here once and used everywhere else.

``WeightedSpace`` is the diagonal special case: an enumerated family of
multi-indices with strictly positive weights, G = diag(weights).  A
weighted space may declare that it models a countable space truncated to
finitely many indices; density statements then hold by convention of the
model rather than by computation, and classification of embeddings
between such spaces reports truncation-witnessed behavior only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import BadWeight, IndexMismatch, NonFinite, NotPositive, SpaceMismatch
from .numkernel import DEFAULT_RTOL, as_matrix, hermitian_eigen, hermitize

__all__ = [
    "EmbeddingKind",
    "EmbeddingReport",
    "GramSpace",
    "Vector",
    "WeightedSpace",
    "classify_embedding",
    "inner",
    "norm",
    "same_space",
    "weighted_space",
]


@dataclass(frozen=True, eq=False)
class GramSpace:
    """A finite-dimensional Hilbert space in fixed coordinates."""

    dim: int
    gram: np.ndarray
    label: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise NotPositive("spaces must have dimension at least 1")
        g = as_matrix(self.gram)
        if g.shape != (self.dim, self.dim):
            raise SpaceMismatch(f"gram is {g.shape}, expected ({self.dim}, {self.dim})")
        # hermitian_eigen re-checks symmetry; store the symmetrized copy so
        # repeated construction is bit-stable.
        dec = hermitian_eigen(g)
        w = dec.eigenvalues
        if float(w[0]) <= DEFAULT_RTOL * max(float(w[-1]), 0.0):
            raise NotPositive(
                f"gram of '{self.label or 'space'}' is not positive definite "
                f"(min eigenvalue {w[0]:.6e})"
            )
        g = hermitize(g)
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "_eig", dec)
        object.__setattr__(self, "_memo", {})

    # -- inner-product structure ------------------------------------------

    def inner(self, x, y) -> complex:
        """<x, y> = y^H G x on raw coordinate arrays."""
        x = np.asarray(x, dtype=np.complex128)
        y = np.asarray(y, dtype=np.complex128)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise SpaceMismatch("coordinate length does not match space dimension")
        return complex(np.vdot(y, self.gram @ x))

    def norm(self, x) -> float:
        return float(np.sqrt(max(self.inner(x, x).real, 0.0)))

    # -- cached spectral factors -------------------------------------------

    def _factor(self, key: str) -> np.ndarray:
        memo = self._memo
        if key not in memo:
            w, v = self._eig.eigenvalues, self._eig.eigenvectors
            if key == "half":
                memo[key] = hermitize((v * np.sqrt(w)) @ v.conj().T)
            elif key == "invhalf":
                memo[key] = hermitize((v / np.sqrt(w)) @ v.conj().T)
            elif key == "inv":
                memo[key] = hermitize((v / w) @ v.conj().T)
            else:
                raise KeyError(key)
        return memo[key]

    @property
    def half(self) -> np.ndarray:
        """G^(1/2), Hermitian."""
        return self._factor("half")

    @property
    def inv_half(self) -> np.ndarray:
        """G^(-1/2), Hermitian."""
        return self._factor("invhalf")

    @property
    def inv(self) -> np.ndarray:
        """G^(-1), Hermitian."""
        return self._factor("inv")

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eig.eigenvalues

    @property
    def condition(self) -> float:
        w = self._eig.eigenvalues
        return float(w[-1] / w[0])

    @property
    def models_countable(self) -> bool:
        return False

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.complex128)

    def __repr__(self):
        return f"GramSpace(dim={self.dim}, label={self.label!r})"


def same_space(a: GramSpace, b: GramSpace) -> bool:
    """Exact coordinate-space equality: same dimension, identical Gram bits."""
    return a.dim == b.dim and np.array_equal(a.gram, b.gram)


@dataclass(frozen=True, eq=False)
class WeightedSpace(GramSpace):
    """Diagonal Gram space over an enumerated multi-index family."""

    indices: tuple = ()
    weights: np.ndarray = field(default=None)
    countable: bool = False

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size != self.dim:
            raise BadWeight("need one weight per index")
        if not np.all(np.isfinite(w)):
            raise NonFinite("weights must be finite")
        if np.any(w <= 0.0):
            raise BadWeight("weights must be strictly positive")
        if len(self.indices) != self.dim:
            raise IndexMismatch("need one multi-index per coordinate")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "indices", tuple(tuple(ix) for ix in self.indices))
        GramSpace.__post_init__(self)

    @property
    def models_countable(self) -> bool:
        return self.countable

    def __repr__(self):
        return (
            f"WeightedSpace(dim={self.dim}, label={self.label!r}, "
            f"countable={self.countable})"
        )


def weighted_space(weights, indices=None, models_countable: bool = False,
                   label: str = "") -> WeightedSpace:
    """Build a diagonal space from weights; default indices are 0..n-1."""
    w = np.asarray(weights, dtype=np.float64)
    if indices is None:
        indices = tuple((k,) for k in range(w.size))
    return WeightedSpace(
        dim=int(w.size),
        gram=np.diag(w.astype(np.complex128)),
        label=label,
        indices=tuple(indices),
        weights=w,
        countable=models_countable,
    )


@dataclass(frozen=True, eq=False)
class Vector:
    """Coordinates together with the space they live in."""

    space: GramSpace
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=np.complex128)
        if c.shape != (self.space.dim,):
            raise SpaceMismatch("coordinate length does not match space dimension")
        if not np.all(np.isfinite(c)):
            raise NonFinite("vector has NaN or Inf entries")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def norm(self) -> float:
        return self.space.norm(self.coords)


def inner(x: Vector, y: Vector) -> complex:
    """Inner product of two vectors of the same space."""
    if not same_space(x.space, y.space):
        raise SpaceMismatch("vectors live in different spaces")
    return x.space.inner(x.coords, y.coords)


def norm(x: Vector) -> float:
    return x.norm()


class EmbeddingKind(enum.Enum):
    CONTINUOUS = "Continuous"
    CLOSED_UNBOUNDED = "ClosedUnbounded"


@dataclass(frozen=True)
class EmbeddingReport:
    kind: EmbeddingKind
    ratio_sup: float
    witness: str


def _is_boundary(index, per_coordinate_max) -> bool:
    return any(k >= m for k, m in zip(index, per_coordinate_max))


def classify_embedding(frm: WeightedSpace, to: WeightedSpace) -> EmbeddingReport:
    """Classify the identity embedding between two weighted spaces.

    The norm ratio on basis vector k is sqrt(to.weight[k] / frm.weight[k]).
    On a finite model the supremum of these ratios is always attained, so
    the embedding is continuous.  When the spaces model countable ones, a
    supremum attained only on the truncation boundary is evidence that the
    ratios keep growing beyond the cap, and the embedding is reported as
    closed and unbounded; an interior maximum is reported as continuous.
    Either way the verdict is truncation-witnessed, not a proof.
    """
    if frm.indices != to.indices:
        raise IndexMismatch("weighted spaces enumerate different index families")
    ratios = np.sqrt(to.weights / frm.weights)
    sup = float(np.max(ratios))
    countable = frm.models_countable or to.models_countable
    if not countable:
        return EmbeddingReport(EmbeddingKind.CONTINUOUS, sup,
                               "finite model; every embedding is bounded")
    n_vars = len(frm.indices[0]) if frm.indices else 0
    per_max = [max(ix[j] for ix in frm.indices) for j in range(n_vars)]
    near = np.flatnonzero(ratios >= sup * (1.0 - 1e-12))
    interior = [i for i in near if not _is_boundary(frm.indices[i], per_max)]
    if len(frm.indices) == 1 or interior:
        at = frm.indices[interior[0]] if interior else frm.indices[0]
        return EmbeddingReport(
            EmbeddingKind.CONTINUOUS, sup,
            f"ratio sup {sup:.6g} attained at interior index {at}")
    at = frm.indices[int(near[0])]
    tail = ", ".join(f"{r:.4g}" for r in ratios[-min(4, ratios.size):])
    return EmbeddingReport(
        EmbeddingKind.CLOSED_UNBOUNDED, sup,
        f"ratio sup {sup:.6g} attained only at truncation boundary index {at}; "
        f"trailing ratios [{tail}] keep growing")
