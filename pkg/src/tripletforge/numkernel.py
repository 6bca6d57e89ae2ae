"""Dense complex-matrix decompositions used by every other module.

Everything here is deterministic for fixed input bits: plain LAPACK calls
through numpy, no randomized pivoting, so verification certificates are
byte-reproducible.  Matrices are dense ``complex128`` arrays; nothing in
this library targets sizes beyond a few hundred rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, NotHermitian, NotPSD

__all__ = [
    "DEFAULT_RTOL",
    "EigenDecomposition",
    "as_matrix",
    "frobenius",
    "hermitian_eigen",
    "hermitize",
    "pinv",
    "positive_sqrt",
    "rank",
    "rel_residual",
]

# Relative cutoff below which singular values count as zero.
DEFAULT_RTOL = 1e-12

# Allowed asymmetry before a matrix stops being "Hermitian up to roundoff".
HERMITIAN_RTOL = 1e-10


def as_matrix(entries) -> np.ndarray:
    """Coerce input to a 2-d complex128 array, rejecting NaN/Inf entries."""
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix has NaN or Inf entries")
    return m


def frobenius(m) -> float:
    return float(np.linalg.norm(m))


def rel_residual(actual, target) -> float:
    """Frobenius distance scaled by 1 + the target's Frobenius norm."""
    actual = np.asarray(actual, dtype=np.complex128)
    target = np.asarray(target, dtype=np.complex128)
    return frobenius(actual - target) / (1.0 + frobenius(target))


def hermitize(m: np.ndarray) -> np.ndarray:
    """Project onto the Hermitian part.  Idempotent in exact float arithmetic."""
    return (m + m.conj().T) / 2.0


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigensystem of a Hermitian matrix.

    ``eigenvalues`` is real and ascending; column ``i`` of ``eigenvectors``
    belongs to ``eigenvalues[i]`` and the columns are orthonormal.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eigen(m) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input is symmetrized before factorization, which absorbs roundoff;
    asymmetry beyond ``HERMITIAN_RTOL`` relative is a modeling error and
    raises ``NotHermitian`` instead of being hidden.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotHermitian(f"matrix is {m.shape[0]}x{m.shape[1]}, not square")
    scale = 1.0 + frobenius(m)
    asym = frobenius(m - m.conj().T)
    if asym > HERMITIAN_RTOL * scale:
        raise NotHermitian(
            f"symmetry residual {asym:.3e} exceeds {HERMITIAN_RTOL:.0e} * {scale:.3e}"
        )
    w, v = np.linalg.eigh(hermitize(m))
    return EigenDecomposition(w, v)


def positive_sqrt(m) -> np.ndarray:
    """Hermitian PSD square root via the eigendecomposition.

    Negative eigenvalue dust within ``-DEFAULT_RTOL * max(1, lambda_max)``
    is clamped to zero; anything below that floor raises ``NotPSD``.
    """
    dec = hermitian_eigen(m)
    w = dec.eigenvalues
    top = max(1.0, float(w[-1])) if w.size else 1.0
    floor = -DEFAULT_RTOL * top
    if w.size and float(w[0]) < floor:
        raise NotPSD(f"eigenvalue {w[0]:.6e} below PSD floor {floor:.6e}")
    clamped = np.clip(w, 0.0, None)
    v = dec.eigenvectors
    s = (v * np.sqrt(clamped)) @ v.conj().T
    return hermitize(s)


def pinv(m, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse; singular values below rtol*sigma_max are zero."""
    if rtol <= 0:
        raise ValueError("rtol must be positive")
    return np.linalg.pinv(as_matrix(m), rcond=rtol)


def rank(m, rtol: float = DEFAULT_RTOL) -> int:
    """Number of singular values above rtol*sigma_max; the zero matrix has rank 0."""
    if rtol <= 0:
        raise ValueError("rtol must be positive")
    sv = np.linalg.svd(as_matrix(m), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > rtol * sv[0]))
