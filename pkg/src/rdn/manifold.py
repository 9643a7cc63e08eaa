"""The cone of symmetric positive definite matrices as a Riemannian manifold.

The metric is the affine-invariant one,

    <U, V>_P = tr(V P^{-1} U P^{-1}),

under which the cone is complete and the exponential map

    exp_P(V) = P^{1/2} e^{P^{-1/2} V P^{-1/2}} P^{1/2}

is globally defined: every symmetric step lands back inside the cone, so no
projection is ever needed.  Geodesic distance is ||log(A^{-1/2} B A^{-1/2})||_F.

Points are immutable and carry a lazily computed eigendecomposition that is
reused by every operation needing P^{1/2}, P^{-1/2} or P^{-1}; a solver
iteration therefore pays for a single factorization per point.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimMismatch,
    InvalidMatrix,
    InvalidPoint,
    InvalidRange,
    SpectrumDomainError,
    StepOverflow,
)
from .linalg import EigenPair, mat_func, sym_eigen, symmetrize

__all__ = [
    "SpdPoint",
    "inner",
    "norm",
    "exp_map",
    "distance",
    "random_spd",
]


class SpdPoint:
    """A symmetric positive definite matrix as a point of the cone.

    Construction symmetrizes the input and verifies numerical positive
    definiteness (by Cholesky, or directly from a supplied eigendecomposition).
    The matrix is frozen after construction; the eigen cache is filled
    idempotently on first use, so points are safe to share between threads.
    """

    __slots__ = ("matrix", "_eigen")

    def __init__(self, matrix: np.ndarray, *, eigen: EigenPair | None = None):
        m = symmetrize(matrix)
        if not np.all(np.isfinite(m)):
            raise InvalidPoint("matrix has non-finite entries")
        if eigen is not None:
            if float(eigen.values[0]) <= 0.0:
                raise InvalidPoint("spectrum is not strictly positive")
        else:
            try:
                np.linalg.cholesky(m)
            except np.linalg.LinAlgError as err:
                raise InvalidPoint("matrix is not numerically positive definite") from err
        m.flags.writeable = False
        self.matrix = m
        self._eigen = eigen

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigen(self) -> EigenPair:
        """Cached spectral factorization; computed once, reused everywhere."""
        if self._eigen is None:
            pair = sym_eigen(self.matrix)
            if float(pair.values[0]) <= 0.0:
                # Cholesky can accept matrices whose smallest eigenvalues sit
                # below the rounding floor of the largest; reject them here.
                raise InvalidPoint("matrix is not numerically positive definite")
            self._eigen = pair
        return self._eigen

    def power(self, t: float) -> np.ndarray:
        """P^t through the cached spectrum (t = 0.5, -0.5, -1, 2, ...)."""
        return mat_func(self.matrix, lambda lam: lam**t, eigen=self.eigen)

    def sqrt(self) -> np.ndarray:
        return self.power(0.5)

    def inv_sqrt(self) -> np.ndarray:
        return self.power(-0.5)

    def inv(self) -> np.ndarray:
        return self.power(-1.0)

    def __repr__(self) -> str:  # pragma: no cover
        return f"SpdPoint(dim={self.dim})"


def _tangent_at(p: SpdPoint, v: np.ndarray) -> np.ndarray:
    """Symmetrize a tangent vector and check it lives at ``p``."""
    v = symmetrize(v)
    if v.shape[0] != p.dim:
        raise DimMismatch(f"tangent dimension {v.shape[0]} != point dimension {p.dim}")
    return v


def inner(p: SpdPoint, u: np.ndarray, v: np.ndarray) -> float:
    """Affine-invariant metric <U, V>_P = tr(V P^{-1} U P^{-1})."""
    u = _tangent_at(p, u)
    v = _tangent_at(p, v)
    s = p.inv_sqrt()
    with np.errstate(over="ignore"):
        return float(np.sum((s @ u @ s) * (s @ v @ s)))


def norm(p: SpdPoint, v: np.ndarray) -> float:
    """Metric norm ||V||_P = ||P^{-1/2} V P^{-1/2}||_F; zero iff V = 0."""
    v = _tangent_at(p, v)
    s = p.inv_sqrt()
    with np.errstate(over="ignore"):
        return float(np.linalg.norm(s @ v @ s, "fro"))


# Whitened steps below this norm take the series route in exp_map: the
# truncation error ||M||^3/6 is then under 2e-19, beneath double rounding.
_EXP_SERIES_CUTOFF = 1e-6


def exp_map(p: SpdPoint, v: np.ndarray) -> SpdPoint:
    """Geodesic step exp_P(V) = P^{1/2} e^{P^{-1/2} V P^{-1/2}} P^{1/2}.

    Defined for every symmetric V; the result is positive definite without
    any projection.  Steps whose exponential overflows the floating-point
    range, or whose result rounds outside the representable cone, raise
    StepOverflow.

    Conjugating P^{1/2} through the series of e^M collapses it to
    P + V + V P^{-1} V / 2 + O(||M||^3), so for whitened steps below the
    series cutoff that sum evaluates the exact exponential to full machine
    precision while skipping the factorization round-trip (whose rounding
    would otherwise dominate the distance between consecutive iterates near
    a singularity).
    """
    v = _tangent_at(p, v)
    lam = p.eigen.values
    whitened_bound = float(np.linalg.norm(v, "fro")) / float(lam[0])
    if whitened_bound <= _EXP_SERIES_CUTOFF:
        out = symmetrize(p.matrix + v + 0.5 * (v @ p.inv() @ v))
    else:
        s = p.sqrt()
        si = p.inv_sqrt()
        m = symmetrize(si @ v @ si)
        try:
            e = mat_func(m, np.exp)
        except (SpectrumDomainError, InvalidMatrix) as err:
            raise StepOverflow("exponential of the whitened step is not finite") from err
        out = symmetrize(s @ e @ s)
    if not np.all(np.isfinite(out)):
        raise StepOverflow("exponential-map result has non-finite entries")
    try:
        return SpdPoint(out)
    except InvalidPoint as err:
        raise StepOverflow("exponential-map result rounded outside the cone") from err


def _scalar_coefficient(p: SpdPoint) -> float | None:
    """c if the point is exactly c times the identity, else None."""
    diag = np.diag(p.matrix)
    if np.all(diag == diag[0]) and np.count_nonzero(p.matrix) == p.dim:
        return float(diag[0])
    return None


def distance(a: SpdPoint, b: SpdPoint) -> float:
    """Geodesic distance ||log(A^{-1/2} B A^{-1/2})||_F.

    Symmetric in its arguments, zero iff A = B, and equal to ||V||_A whenever
    B = exp_A(V) (geodesics of this metric are globally minimizing).  When
    one argument is a multiple of the identity the distance is read off the
    other's spectrum, sqrt(sum of log^2(lambda_i / c)), which avoids the
    congruence round-trip and resolves distances down to a few ulps.
    """
    if a.dim != b.dim:
        raise DimMismatch(f"points have dimensions {a.dim} and {b.dim}")
    ca = _scalar_coefficient(a)
    cb = _scalar_coefficient(b)
    if ca is not None and cb is not None:
        return abs(float(np.log(cb / ca))) * float(np.sqrt(a.dim))
    if ca is not None or cb is not None:
        lam, c = (b.eigen.values, ca) if cb is None else (a.eigen.values, cb)
        return float(np.sqrt(np.sum(np.log(lam / c) ** 2)))
    s = a.inv_sqrt()
    c = symmetrize(s @ b.matrix @ s)
    pair = sym_eigen(c)
    if float(pair.values[0]) <= 0.0:
        raise InvalidPoint("relative matrix is not positive definite")
    return float(np.linalg.norm(np.log(pair.values)))


def random_spd(dim: int, eig_low: float, eig_high: float, seed: int) -> SpdPoint:
    """Seeded random point with spectrum i.i.d. uniform in [eig_low, eig_high].

    The spectrum is drawn first, then an orthogonal frame from the sign-fixed
    QR factorization of a Gaussian matrix.  Identical arguments give bitwise
    identical points.
    """
    if dim < 1:
        raise InvalidRange(f"dimension must be >= 1, got {dim}")
    if not (0.0 < eig_low <= eig_high):
        raise InvalidRange(f"need 0 < eig_low <= eig_high, got [{eig_low}, {eig_high}]")
    rng = np.random.default_rng(seed)
    lam = np.sort(rng.uniform(eig_low, eig_high, size=dim))
    g = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    q = q * np.where(np.diag(r) >= 0.0, 1.0, -1.0)
    matrix = symmetrize((q * lam) @ q.T)
    return SpdPoint(matrix, eigen=EigenPair(values=lam, vectors=q))
