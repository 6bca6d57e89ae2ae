"""Operator algebra between Gram spaces.

A ``MappedOperator`` is a matrix together with its domain and codomain
``GramSpace``.  Adjoints are taken with respect to the Gram inner
products by explicit conjugation,

    M^# = G_dom^-1 M^H G_cod,

so every operator stays in the user's chosen coordinates and the
certificates remain legible.  Pseudoinverses, contraction, unitarity and
coisometry tests likewise all weigh by the Grams.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotInjective, SpaceMismatch
from .numkernel import (
    DEFAULT_RTOL,
    as_matrix,
    frobenius,
    hermitize,
    pinv,
    rank,
    rel_residual,
)
from .spaces import GramSpace, same_space

__all__ = [
    "INVERTIBILITY_RTOL",
    "ContractionVerdict",
    "MappedOperator",
    "UnitaryVerdict",
    "adjoint",
    "compose",
    "identity_operator",
    "inverse",
    "is_coisometry",
    "is_contraction",
    "is_unitary",
    "operator_rank",
    "weighted_pinv",
    "whitened",
]

# Bounded invertibility: smallest singular value of the whitened matrix
# must exceed this fraction of the largest.
INVERTIBILITY_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class MappedOperator:
    """A matrix read as a linear map between two Gram spaces."""

    matrix: np.ndarray
    domain: GramSpace
    codomain: GramSpace

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise SpaceMismatch(
                f"matrix is {m.shape}, expected "
                f"({self.codomain.dim}, {self.domain.dim})"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, coords) -> np.ndarray:
        return self.matrix @ np.asarray(coords, dtype=np.complex128)

    def __repr__(self):
        return (
            f"MappedOperator({self.domain.dim}->{self.codomain.dim}, "
            f"{self.domain.label!r}->{self.codomain.label!r})"
        )


def identity_operator(domain: GramSpace, codomain: GramSpace | None = None) -> MappedOperator:
    """The identity matrix read between two (re-normed) copies of C^n."""
    codomain = domain if codomain is None else codomain
    if domain.dim != codomain.dim:
        raise SpaceMismatch("identity embedding needs equal coordinate dimensions")
    return MappedOperator(np.eye(domain.dim, dtype=np.complex128), domain, codomain)


def whitened(m: MappedOperator) -> np.ndarray:
    """G_cod^(1/2) M G_dom^(-1/2): the matrix between orthonormalized coordinates."""
    return m.codomain.half @ m.matrix @ m.domain.inv_half


def adjoint(m: MappedOperator) -> MappedOperator:
    """Gram adjoint: <Mx, y>_cod = <x, adjoint(M) y>_dom for all x, y."""
    a = np.linalg.solve(m.domain.gram, m.matrix.conj().T @ m.codomain.gram)
    return MappedOperator(a, domain=m.codomain, codomain=m.domain)


def compose(a: MappedOperator, b: MappedOperator) -> MappedOperator:
    """a after b.  Requires b's codomain and a's domain to be the same space."""
    if not same_space(a.domain, b.codomain):
        raise SpaceMismatch("composition: inner spaces differ")
    return MappedOperator(a.matrix @ b.matrix, domain=b.domain, codomain=a.codomain)


def inverse(m: MappedOperator, rtol: float = INVERTIBILITY_RTOL) -> MappedOperator:
    """Inverse map; identity matrices invert bit-exactly."""
    mat = m.matrix
    n = m.domain.dim
    if m.codomain.dim != n:
        raise SpaceMismatch("only square operators can be inverted")
    eye = np.eye(n, dtype=np.complex128)
    if np.array_equal(mat, eye):
        inv_mat = eye
    else:
        sv = np.linalg.svd(mat, compute_uv=False)
        if sv[0] == 0.0 or sv[-1] <= rtol * sv[0]:
            raise NotInjective("operator is singular at the working tolerance")
        inv_mat = np.linalg.inv(mat)
    return MappedOperator(inv_mat, domain=m.codomain, codomain=m.domain)


def operator_rank(m: MappedOperator, rtol: float = DEFAULT_RTOL) -> int:
    """Rank of the whitened matrix (independent of the Gram coordinates)."""
    return rank(whitened(m), rtol)


def weighted_pinv(m: MappedOperator, rtol: float = DEFAULT_RTOL) -> MappedOperator:
    """Gram-weighted Moore-Penrose inverse.

    Pseudo-inverts the whitened matrix and conjugates back, so that M X M = M,
    X M X = X, and M X / X M are selfadjoint with respect to the codomain and
    domain Grams.  For injective M this selects the preimage orthogonal to
    the null space in the domain's inner product.
    """
    x = m.domain.inv_half @ pinv(whitened(m), rtol) @ m.codomain.half
    return MappedOperator(x, domain=m.codomain, codomain=m.domain)


class ContractionVerdict(NamedTuple):
    ok: bool
    margin: float


class UnitaryVerdict(NamedTuple):
    ok: bool
    residual: float


def is_contraction(m: MappedOperator, tol: float = 0.0) -> ContractionVerdict:
    """||Mx||_cod <= ||x||_dom for all x, up to tol.

    The margin is the smallest eigenvalue of G_dom - M^H G_cod M; the verdict
    is true when it is at least -tol * (1 + largest Gram eigenvalue).
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    diff = hermitize(m.domain.gram - m.matrix.conj().T @ m.codomain.gram @ m.matrix)
    margin = float(np.linalg.eigvalsh(diff)[0])
    scale = 1.0 + float(m.domain.eigenvalues[-1])
    return ContractionVerdict(margin >= -tol * scale, margin)


def is_unitary(m: MappedOperator, tol: float = 1e-9) -> UnitaryVerdict:
    """Gram-isometric and invertible.

    Residual is ||M^H G_cod M - G_dom||_F / (1 + ||G_dom||_F); the verdict
    additionally requires the whitened matrix to be square and invertible.
    """
    if m.domain.dim != m.codomain.dim:
        return UnitaryVerdict(False, float("inf"))
    form = m.matrix.conj().T @ m.codomain.gram @ m.matrix
    residual = frobenius(form - m.domain.gram) / (1.0 + frobenius(m.domain.gram))
    sv = np.linalg.svd(whitened(m), compute_uv=False)
    invertible = sv[0] > 0.0 and sv[-1] > INVERTIBILITY_RTOL * sv[0]
    return UnitaryVerdict(residual <= tol and invertible, residual)


def is_coisometry(m: MappedOperator, tol: float = 1e-9) -> UnitaryVerdict:
    """M M^# = identity on the codomain, up to tol."""
    mm = m.matrix @ np.linalg.solve(m.domain.gram, m.matrix.conj().T) @ m.codomain.gram
    residual = rel_residual(mm, np.eye(m.codomain.dim))
    return UnitaryVerdict(residual <= tol, residual)
