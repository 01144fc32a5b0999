"""Dense linear-algebra kernels for desk-scale control problems.

Everything here is a pure function of its arguments and is safe to call
concurrently. Solvers verify their own residuals before returning: a value
you get back from this module already satisfies the stated accuracy
contract, otherwise an exception from :mod:`hetsync.errors` was raised.

Conventions
-----------
* ``solve_lyapunov(A, Q)`` solves ``A'X + XA + Q = 0`` (observability
  Gramian form) and requires A Hurwitz.
* ``solve_sylvester(A, B, C)`` solves ``AX + XB = C``.
* ``solve_care(A, B, Q)`` solves ``A'P + PA - P B B' P + Q = 0`` and returns
  the stabilizing solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    IllConditioned,
    NoStabilizingSolution,
    NotHurwitz,
    NotStabilizable,
    NotSymmetric,
    SpectraOverlap,
)

#: Real parts above this value count as "not strictly stable".
HURWITZ_TOL = -1e-10

#: Relative rank threshold for Hautus-type singular value tests.
RANK_TOL = 1e-9

_LYAP_RESIDUAL_TOL = 1e-9
_SYLVESTER_RESIDUAL_TOL = 1e-9
_CARE_RESIDUAL_TOL = 1e-8


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-D float array, copying defensively."""
    arr = np.array(a, dtype=float, ndmin=2)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def _square(a, name: str) -> np.ndarray:
    arr = as_matrix(a, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    return arr


def _check_symmetric(m: np.ndarray, name: str) -> np.ndarray:
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m - m.T).max(initial=0.0) > 1e-10 * scale:
        raise NotSymmetric(f"{name} is not symmetric within tolerance")
    return 0.5 * (m + m.T)


@dataclass(frozen=True)
class SpectralInfo:
    """Eigenvalues of a square matrix plus the spectral abscissa."""

    eigenvalues: np.ndarray
    max_real_part: float


def spectrum(a) -> SpectralInfo:
    """Eigenvalues and spectral abscissa of a square matrix."""
    arr = _square(a, "A")
    try:
        eig = np.linalg.eigvals(arr)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration failed: {exc}") from exc
    return SpectralInfo(eigenvalues=eig, max_real_part=float(eig.real.max()))


def is_hurwitz(a) -> bool:
    """True when every eigenvalue satisfies Re(lambda) < -1e-10."""
    return spectrum(a).max_real_part < HURWITZ_TOL


def is_positive_definite(m) -> bool:
    """Symmetric positive-definiteness test with a norm-scaled tolerance.

    True iff all eigenvalues exceed ``1e-10 * max(1, ||M||_2)``. Raises
    :class:`NotSymmetric` when the input is not symmetric.
    """
    arr = _check_symmetric(_square(m, "M"), "M")
    eig = np.linalg.eigvalsh(arr)
    tol = 1e-10 * max(1.0, float(np.abs(eig).max(initial=0.0)))
    return bool(eig.min(initial=np.inf) > tol)


def unstabilizable_modes(a, b, tol: float = RANK_TOL) -> list[complex]:
    """Eigenvalues of A in the closed right half-plane that fail the Hautus
    rank test ``rank [A - lambda I, B] = n``.

    Empty result means (A, B) is stabilizable. Running this on
    ``(A.T, C.T)`` tests detectability of (C, A).
    """
    arr = _square(a, "A")
    bmat = as_matrix(b, "B")
    n = arr.shape[0]
    if bmat.shape[0] != n:
        raise DimensionMismatch(f"B must have {n} rows, got {bmat.shape}")
    bad: list[complex] = []
    for lam in spectrum(arr).eigenvalues:
        if lam.real < HURWITZ_TOL:
            continue
        pencil = np.hstack([arr - lam * np.eye(n), bmat]).astype(complex)
        sv = np.linalg.svd(pencil, compute_uv=False)
        rank = int(np.sum(sv > tol * sv[0])) if sv[0] > 0 else 0
        if rank < n:
            bad.append(complex(lam))
    return bad


def solve_lyapunov(a, q) -> np.ndarray:
    """Solve ``A'X + XA + Q = 0`` for symmetric X, A Hurwitz.

    Parameters
    ----------
    a : (n, n) array_like
        Hurwitz matrix.
    q : (n, n) array_like
        Symmetric right-hand side.

    Returns
    -------
    (n, n) ndarray
        Symmetrized solution with relative residual
        ``||A'X + XA + Q||_F / max(1, ||Q||_F) <= 1e-9``.
    """
    arr = _square(a, "A")
    qmat = _check_symmetric(_square(q, "Q"), "Q")
    if qmat.shape != arr.shape:
        raise DimensionMismatch("A and Q must have matching shapes")
    info = spectrum(arr)
    if info.max_real_part >= HURWITZ_TOL:
        raise NotHurwitz(
            f"A has spectral abscissa {info.max_real_part:.3e}; Lyapunov "
            "equation requires a Hurwitz matrix"
        )
    # scipy solves A X + X A' = Q, so transpose A and negate Q.
    x = sla.solve_continuous_lyapunov(arr.T, -qmat)
    x = 0.5 * (x + x.T)
    residual = np.linalg.norm(arr.T @ x + x @ arr + qmat)
    if residual > _LYAP_RESIDUAL_TOL * max(1.0, np.linalg.norm(qmat)):
        raise IllConditioned(
            f"Lyapunov residual {residual:.3e} exceeds tolerance; the "
            "equation is too ill-conditioned at this scale"
        )
    return x


def solve_sylvester(a, b, c) -> np.ndarray:
    """Solve ``AX + XB = C``; the spectra of A and -B must be disjoint."""
    amat = _square(a, "A")
    bmat = _square(b, "B")
    cmat = as_matrix(c, "C")
    if cmat.shape != (amat.shape[0], bmat.shape[0]):
        raise DimensionMismatch(
            f"C must be {amat.shape[0]}x{bmat.shape[0]}, got {cmat.shape}"
        )
    eig_a = spectrum(amat).eigenvalues
    eig_b = spectrum(bmat).eigenvalues
    separation = np.abs(eig_a[:, None] + eig_b[None, :]).min()
    if separation < 1e-9:
        raise SpectraOverlap(
            f"spectra of A and -B are only {separation:.3e} apart; the "
            "Sylvester equation is singular or nearly so"
        )
    x = sla.solve_sylvester(amat, bmat, cmat)
    residual = np.linalg.norm(amat @ x + x @ bmat - cmat)
    if residual > _SYLVESTER_RESIDUAL_TOL * max(1.0, np.linalg.norm(cmat)):
        raise IllConditioned(
            f"Sylvester residual {residual:.3e} exceeds tolerance"
        )
    return x


def solve_care(a, b, q) -> np.ndarray:
    """Stabilizing solution of ``A'P + PA - P B B' P + Q = 0``.

    The solution is extracted from the stable invariant subspace of the
    Hamiltonian ``[[A, -BB'], [-Q, -A']]`` via an ordered real Schur form.

    Parameters
    ----------
    a : (n, n) array_like
    b : (n, m) array_like
        (A, B) must be stabilizable.
    q : (n, n) array_like
        Symmetric positive semidefinite weight.

    Returns
    -------
    (n, n) ndarray
        Symmetric PSD ``P`` with ``A - B B' P`` Hurwitz and relative
        residual at most 1e-8.
    """
    amat = _square(a, "A")
    bmat = as_matrix(b, "B")
    n = amat.shape[0]
    if bmat.shape[0] != n:
        raise DimensionMismatch(f"B must have {n} rows, got {bmat.shape}")
    qmat = _check_symmetric(_square(q, "Q"), "Q")
    if qmat.shape != amat.shape:
        raise DimensionMismatch("A and Q must have matching shapes")
    q_eigs = np.linalg.eigvalsh(qmat)
    if q_eigs.min(initial=0.0) < -1e-10 * max(1.0, np.abs(q_eigs).max(initial=0.0)):
        raise ValueError("Q must be positive semidefinite")

    bad = unstabilizable_modes(amat, bmat)
    if bad:
        raise NotStabilizable(
            "(A, B) is not stabilizable; Hautus test fails at "
            + ", ".join(f"{lam:.6g}" for lam in bad)
        )

    gram = bmat @ bmat.T
    hamiltonian = np.block([[amat, -gram], [-qmat, -amat.T]])
    ham_eigs = spectrum(hamiltonian).eigenvalues
    axis_dist = np.abs(ham_eigs.real).min()
    if axis_dist < 1e-9:
        raise NoStabilizingSolution(
            f"Hamiltonian eigenvalue within {axis_dist:.3e} of the imaginary "
            "axis; no stabilizing solution exists"
        )
    try:
        _, z, sdim = sla.schur(hamiltonian, output="real",
                               sort=lambda re, im: re < 0.0)
    except sla.LinAlgError as exc:  # pragma: no cover - LAPACK hiccup
        raise ConvergenceFailure(f"Schur decomposition failed: {exc}") from exc
    if sdim != n:
        raise NoStabilizingSolution(
            f"stable invariant subspace has dimension {sdim}, expected {n}"
        )
    u11 = z[:n, :n]
    u21 = z[n:, :n]
    try:
        p = np.linalg.solve(u11.T, u21.T).T
    except np.linalg.LinAlgError as exc:
        raise IllConditioned(
            "stable subspace basis is singular; the Riccati solution is "
            "not finite at this scale"
        ) from exc
    p = 0.5 * (p + p.T)

    residual = np.linalg.norm(amat.T @ p + p @ amat - p @ gram @ p + qmat)
    if residual > _CARE_RESIDUAL_TOL * max(1.0, np.linalg.norm(qmat)):
        raise IllConditioned(f"Riccati residual {residual:.3e} exceeds tolerance")
    closed = spectrum(amat - gram @ p)
    if closed.max_real_part >= HURWITZ_TOL:
        raise IllConditioned(
            "computed Riccati solution is not stabilizing "
            f"(closed-loop abscissa {closed.max_real_part:.3e})"
        )
    p_eigs = np.linalg.eigvalsh(p)
    if p_eigs.min(initial=0.0) < -1e-8 * max(1.0, np.abs(p_eigs).max(initial=0.0)):
        raise IllConditioned("computed Riccati solution is not PSD")
    return p
