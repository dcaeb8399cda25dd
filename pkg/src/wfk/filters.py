"""Parameter space and pointwise evaluation of N-band wavelet filters.

A wavelet filter here is an N x N rational matrix function that is unitary
on the unit circle and whose columns are the rotates ``f(z), f(eps z), ...,
f(eps^{N-1} z)`` of a single column, ``eps = exp(2i*pi/N)``.  Every such
filter factors as a product of degree-one rank-one unitary factors in
``z**N`` applied to the elementary filter ``diag(1, 1/z, ..., z**-(N-1)) @ Q``
with ``Q`` the unitary DFT matrix.  ``FilterParameters`` stores exactly the
data of that factorization; ``BoxPoint`` is the equivalent coordinate
parametrization over a real box, convenient for sampling and optimization.

Identities between the rational functions here are decided by sampled
evaluation, never symbolically: sampling a degree-``d`` rational identity
at more than ``2*d + 8`` circle points is a sound test, and the default
point counts exceed that for every filter this package constructs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    FirRequiredError,
    InvariantError,
    PoleError,
    SamplingError,
    SingularMatrixError,
)
from .linalg import TOL, adjoint, as_matrix, solve_linear

_UNIT_NORM_TOL = 1e-12
# Pole guard for Blaschke factors and the z = 0 pole of the elementary filter.
_POLE_TOL = 1e-14
# sample_parameters keeps |alpha| at or below this even when rho = 1.
_ALPHA_CAP = 0.999


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Factor:
    """One degree-one unitary factor: a unit vector ``v`` and a pole ``alpha``.

    The factor acts as ``I + (phi(z**n) - 1) v v*`` where ``phi`` is the
    scalar all-pass ``(1 - conj(alpha) w) / (w - alpha)``; only ``v v*``
    matters, so ``v`` is stored up to a global phase.
    """

    v: np.ndarray
    alpha: complex

    def __post_init__(self):
        v = np.asarray(self.v, dtype=complex).reshape(-1)
        if not np.isfinite(v).all():
            raise InvariantError("factor vector must have finite entries")
        nrm = np.linalg.norm(v)
        if abs(nrm - 1.0) > _UNIT_NORM_TOL:
            raise InvariantError(f"factor vector must have unit norm, got {nrm!r}")
        alpha = complex(self.alpha)
        if not (np.isfinite(alpha.real) and np.isfinite(alpha.imag)):
            raise InvariantError("alpha must be finite")
        if abs(alpha) >= 1.0:
            raise InvariantError(f"|alpha| must be < 1, got {abs(alpha)!r}")
        object.__setattr__(self, "v", _frozen(v))
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class FilterParameters:
    """Full parameter point: band count, factor list and spectral-radius bound.

    ``rho`` bounds every ``|alpha_j|`` strictly; ``rho = 0`` forces all
    ``alpha_j = 0`` (the FIR filters).  ``m = len(factors)`` is the index of
    the filter and fixes its minimal state dimension ``n*((n-1)/2 + m)``.
    """

    n: int
    rho: float
    factors: tuple[Factor, ...]

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvariantError(f"band count must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        rho = float(self.rho)
        if not 0.0 <= rho <= 1.0:
            raise InvariantError(f"rho must lie in [0, 1], got {rho!r}")
        object.__setattr__(self, "rho", rho)
        factors = tuple(self.factors)
        for f in factors:
            if f.v.shape != (self.n,):
                raise InvariantError(
                    f"factor vector has dimension {f.v.shape[0]}, expected {self.n}"
                )
            if rho == 0.0:
                if f.alpha != 0:
                    raise InvariantError("rho = 0 forces every alpha to be exactly 0")
            elif abs(f.alpha) >= rho:
                raise InvariantError(
                    f"|alpha| = {abs(f.alpha)!r} must be strictly below rho = {rho!r}"
                )
        object.__setattr__(self, "factors", factors)

    @property
    def m(self) -> int:
        """Index of the filter (number of degree-one factors)."""
        return len(self.factors)

    def is_fir(self) -> bool:
        """True when every pole parameter vanishes (polynomial filter)."""
        return all(f.alpha == 0 for f in self.factors)


@dataclass(frozen=True)
class BoxPoint:
    """Coordinates in the real box parameterizing an index-``m`` filter.

    Each factor contributes one row of ``2n`` coordinates::

        (delta_1, a_1, ..., a_{2n-3}, theta, r)

    with ``delta_1`` in ``[0, pi)``, the middle angles and ``theta`` in
    ``[0, 2*pi)`` and ``r`` in ``[0, rho)`` (pinned to 0 when ``rho = 0``).
    The first ``n-2`` middle angles continue the hyperspherical modulus
    chain, the remaining ``n-1`` are the phases of components ``2..n``;
    ``alpha = r exp(i theta)``.
    """

    n: int
    rho: float
    coords: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise InvariantError(f"band count must be >= 2, got {self.n!r}")
        rho = float(self.rho)
        if not 0.0 <= rho <= 1.0:
            raise InvariantError(f"rho must lie in [0, 1], got {rho!r}")
        object.__setattr__(self, "rho", rho)
        coords = np.asarray(self.coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] != 2 * self.n:
            raise InvariantError(
                f"coords must have shape (m, {2 * self.n}), got {coords.shape}"
            )
        if not np.isfinite(coords).all():
            raise InvariantError("box coordinates must be finite")
        two_pi = 2 * np.pi
        for row in coords:
            if not 0.0 <= row[0] < np.pi:
                raise InvariantError(f"delta_1 = {row[0]!r} outside [0, pi)")
            for ang in row[1 : 2 * self.n - 1]:
                if not 0.0 <= ang < two_pi:
                    raise InvariantError(f"angle {ang!r} outside [0, 2*pi)")
            r = row[2 * self.n - 1]
            if rho == 0.0:
                if r != 0.0:
                    raise InvariantError("rho = 0 pins the radius coordinate to 0")
            elif not 0.0 <= r < rho:
                raise InvariantError(f"radius {r!r} outside [0, {rho!r})")
        object.__setattr__(self, "coords", _frozen(coords))

    @property
    def m(self) -> int:
        return self.coords.shape[0]


@dataclass(frozen=True)
class ModulationStructure:
    """The constant data behind the column-rotation symmetry for ``n`` bands."""

    n: int
    root: complex          # eps = exp(2i*pi/n)
    shift: np.ndarray      # n x n cyclic permutation, order exactly n
    dft: np.ndarray        # unitary DFT matrix Q

    def __post_init__(self):
        eye = np.eye(self.n)
        power = np.eye(self.n)
        for _ in range(self.n - 1):
            power = power @ self.shift
            if np.allclose(power, eye):
                raise InvariantError("shift permutation has order below n")
        if not np.allclose(power @ self.shift, eye):
            raise InvariantError("shift permutation does not have order n")
        if np.linalg.norm(adjoint(self.dft) @ self.dft - eye) > 1e-12:
            raise InvariantError("DFT matrix is not unitary")
        object.__setattr__(self, "shift", _frozen(self.shift))
        object.__setattr__(self, "dft", _frozen(self.dft))


@dataclass(frozen=True)
class SubbandFilterSet:
    """N scalar FIR impulse responses: the first column of a polynomial filter."""

    n: int
    responses: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.responses) != self.n:
            raise InvariantError(
                f"expected {self.n} responses, got {len(self.responses)}"
            )
        responses = tuple(
            _frozen(np.asarray(h, dtype=complex).reshape(-1)) for h in self.responses
        )
        for h in responses:
            if h.size == 0 or not np.isfinite(h).all():
                raise InvariantError("impulse responses must be nonempty and finite")
        object.__setattr__(self, "responses", responses)

    @property
    def max_length(self) -> int:
        return max(h.size for h in self.responses)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one sampled verification check; reproducible from its fields."""

    name: str
    max_residual: float
    tolerance: float
    passed: bool
    sample_count: int
    seed: int

    def __post_init__(self):
        if self.passed != (self.max_residual <= self.tolerance):
            raise InvariantError("pass flag must equal (residual <= tolerance)")


def dft_matrix(n: int) -> np.ndarray:
    """Unitary DFT matrix with entries ``eps**(-j*k) / sqrt(n)`` (0-indexed)."""
    if n < 2:
        raise InvariantError(f"band count must be >= 2, got {n!r}")
    return _dft_cached(int(n)).copy()


@lru_cache(maxsize=None)
def _dft_cached(n: int) -> np.ndarray:
    eps = np.exp(2j * np.pi / n)
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return _frozen(eps ** (-j * k) / np.sqrt(n))


def cyclic_shift_matrix(n: int) -> np.ndarray:
    """Permutation sending basis vector ``e_j`` to ``e_{j+1}`` (cyclically)."""
    if n < 2:
        raise InvariantError(f"band count must be >= 2, got {n!r}")
    p = np.zeros((n, n), dtype=complex)
    p[0, n - 1] = 1.0
    p[1:, : n - 1] = np.eye(n - 1)
    return p


def modulation_structure(n: int) -> ModulationStructure:
    """Bundle the root of unity, cyclic shift and DFT matrix for ``n`` bands."""
    return ModulationStructure(
        n=int(n),
        root=complex(np.exp(2j * np.pi / n)),
        shift=cyclic_shift_matrix(n),
        dft=dft_matrix(n),
    )


def blaschke(alpha: complex, w: complex) -> complex:
    """Scalar all-pass factor ``(1 - conj(alpha) w) / (w - alpha)``."""
    alpha = complex(alpha)
    w = complex(w)
    if abs(w - alpha) <= _POLE_TOL * max(1.0, abs(w)):
        raise PoleError(f"all-pass factor evaluated at its pole (w = {w!r})")
    return (1.0 - np.conj(alpha) * w) / (w - alpha)


def elementary_wavelet_eval(n: int, z: complex) -> np.ndarray:
    """Value at ``z`` of the minimal-degree filter ``diag(z**0..z**-(n-1)) @ Q``."""
    z = complex(z)
    if abs(z) <= _POLE_TOL:
        raise PoleError("elementary filter has a pole at z = 0")
    powers = z ** -np.arange(n)
    return powers[:, None] * dft_matrix(n)


def elementary_unitary_eval(v, alpha: complex, z: complex) -> np.ndarray:
    """Value of the rank-one perturbation ``I + (phi_alpha(z) - 1) v v*``."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    scale = blaschke(alpha, z) - 1.0
    return np.eye(v.size) + scale * np.outer(v, v.conj())


def decimated_unitary_eval(v, alpha: complex, n: int, z: complex) -> np.ndarray:
    """Same factor with ``z**n`` substituted; depends on ``z`` only through ``z**n``."""
    return elementary_unitary_eval(v, alpha, complex(z) ** n)


def wavelet_eval(params: FilterParameters, z: complex) -> np.ndarray:
    """Evaluate the filter described by ``params`` at the point ``z``.

    The stored factors compose as ``factors[m-1] @ ... @ factors[0] @ base``
    so that appending a factor multiplies on the left and raises the index
    by one.  ``z**n`` is computed once and shared by every factor.

    Raises
    ------
    PoleError
        At ``z = 0`` or when ``z**n`` hits one of the ``alpha_j``.
    """
    z = complex(z)
    w = elementary_wavelet_eval(params.n, z)
    zn = z ** params.n
    for f in params.factors:
        scale = blaschke(f.alpha, zn) - 1.0
        w = w + scale * np.outer(f.v, f.v.conj() @ w)
    return w


def _wrap_angle(x: float) -> float:
    """Reduce to [0, 2*pi); the modulo can round a tiny negative up to 2*pi."""
    out = x % (2 * np.pi)
    return 0.0 if out >= 2 * np.pi else out


def _factor_to_coords(n: int, v: np.ndarray, alpha: complex) -> np.ndarray:
    """Canonical box coordinates of one factor (inverse of the modulus chain)."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    nz = np.nonzero(np.abs(v) > _UNIT_NORM_TOL)[0]
    if nz.size == 0:
        raise InvariantError("factor vector is numerically zero")
    anchor = v[nz[0]]
    # Rotate away a genuinely complex global phase; a real anchor (either
    # sign) is left untouched so box-generated vectors invert exactly.
    if abs(anchor.imag) > _UNIT_NORM_TOL * abs(anchor):
        v = v * np.exp(-1j * np.angle(anchor))
    lead = float(np.clip(v[0].real, -1.0, 1.0))
    if lead == -1.0:
        # the box keeps delta_1 strictly below pi; the sign flip changes
        # nothing downstream since only v v* enters the filter
        v = -v
        lead = 1.0
    coords = np.zeros(2 * n)
    coords[0] = np.arccos(lead)
    mods = np.abs(v)
    for k in range(1, n - 1):
        tail = np.linalg.norm(mods[k + 1 :])
        coords[k] = np.arctan2(tail, mods[k])
    for k in range(1, n):
        phase = np.angle(v[k]) if mods[k] > _UNIT_NORM_TOL else 0.0
        coords[n - 2 + k] = _wrap_angle(phase)
    alpha = complex(alpha)
    if alpha != 0:
        coords[2 * n - 2] = _wrap_angle(np.angle(alpha))
        coords[2 * n - 1] = abs(alpha)
    return coords


def _coords_to_factor(n: int, row: np.ndarray) -> Factor:
    """Build one factor from a row of box coordinates."""
    deltas = np.concatenate(([row[0]], row[1 : n - 1]))
    phases = np.concatenate(([0.0], row[n - 1 : 2 * n - 2]))
    mods = np.empty(n)
    prefix = 1.0
    for k in range(n - 1):
        mods[k] = prefix * np.cos(deltas[k])
        prefix *= np.sin(deltas[k])
    mods[n - 1] = prefix
    v = mods * np.exp(1j * phases)
    alpha = row[2 * n - 1] * np.exp(1j * row[2 * n - 2])
    return Factor(v=v, alpha=alpha)


def box_to_params(box: BoxPoint) -> FilterParameters:
    """Map box coordinates to filter parameters (surjective by construction)."""
    factors = tuple(_coords_to_factor(box.n, row) for row in box.coords)
    return FilterParameters(n=box.n, rho=box.rho, factors=factors)


def params_to_box(params: FilterParameters) -> BoxPoint:
    """Canonical box coordinates of ``params``.

    Inverts :func:`box_to_params` whenever each stored vector has a real
    first component; vectors with a complex first component are first
    rotated by a global phase (which leaves the filter unchanged).  The
    returned modulus-chain angles always lie in ``[0, pi/2]``, the
    canonical section of the (many-to-one) box map.
    """
    coords = np.array(
        [_factor_to_coords(params.n, f.v, f.alpha) for f in params.factors]
    ).reshape(params.m, 2 * params.n)
    return BoxPoint(n=params.n, rho=params.rho, coords=coords)


def sample_box(seed: int, n: int, m: int, rho: float) -> BoxPoint:
    """Draw box coordinates uniformly; deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    coords = np.zeros((m, 2 * n))
    if m:
        coords[:, 0] = rng.uniform(0.0, np.pi, size=m)
        coords[:, 1 : 2 * n - 1] = rng.uniform(0.0, 2 * np.pi, size=(m, 2 * n - 2))
        cap = min(float(rho), _ALPHA_CAP)
        if cap > 0.0:
            coords[:, 2 * n - 1] = rng.uniform(0.0, cap, size=m)
    return BoxPoint(n=n, rho=rho, coords=coords)


def sample_parameters(seed: int, n: int, m: int, rho: float) -> FilterParameters:
    """Uniform draw from the parameter box, returned through ``box_to_params``."""
    return box_to_params(sample_box(seed, n, m, rho))


def unit_circle_points(count: int, seed: int = 0) -> np.ndarray:
    """Sample points on the unit circle: a deterministic grid plus random angles.

    The first ``ceil(count/2)`` points are equispaced roots of unity (so
    failures are reproducible without the seed); the rest are i.i.d.
    uniform angles from ``seed``.
    """
    if count < 1:
        raise InvariantError(f"sample count must be >= 1, got {count!r}")
    grid = (count + 1) // 2
    det = np.exp(2j * np.pi * np.arange(grid) / grid)
    rng = np.random.default_rng(seed)
    rand = np.exp(1j * rng.uniform(0.0, 2 * np.pi, size=count - grid))
    return np.concatenate([det, rand])


_RETRIES = 8


def _max_circle_residual(point_residual, points: np.ndarray, seed: int) -> float:
    """Max of ``point_residual(z)`` over ``points``, resampling failed points."""
    rng = np.random.default_rng(seed ^ 0x5EED)
    worst = 0.0
    for z in points:
        for _ in range(_RETRIES + 1):
            try:
                worst = max(worst, point_residual(z))
                break
            except (PoleError, SingularMatrixError):
                z = np.exp(1j * rng.uniform(0.0, 2 * np.pi))
        else:
            raise SamplingError("exhausted retries while avoiding poles on the circle")
    return worst


def check_symmetry(
    eval_fn, n: int, sample_points: int = 64, tol: float = TOL, seed: int = 0
) -> CheckReport:
    """Check the column-rotation symmetry ``F(eps z) = F(z) P`` on the circle.

    ``eval_fn`` maps a complex point to an ``n x n`` matrix.  The report
    carries the max Frobenius residual over the sampled points.
    """
    struct = modulation_structure(n)

    def residual(z):
        return float(
            np.linalg.norm(eval_fn(struct.root * z) - eval_fn(z) @ struct.shift)
        )

    points = unit_circle_points(sample_points, seed)
    worst = _max_circle_residual(residual, points, seed)
    return CheckReport("symmetry", worst, tol, worst <= tol, sample_points, seed)


def check_paraunitary(
    eval_fn, n: int, sample_points: int = 64, tol: float = TOL, seed: int = 0
) -> CheckReport:
    """Check unitarity ``F(z)* F(z) = I`` over sampled points of the circle."""
    eye = np.eye(n)

    def residual(z):
        f = as_matrix(eval_fn(z), rows=n, cols=n)
        return float(np.linalg.norm(adjoint(f) @ f - eye))

    points = unit_circle_points(sample_points, seed)
    worst = _max_circle_residual(residual, points, seed)
    return CheckReport("paraunitary", worst, tol, worst <= tol, sample_points, seed)


def quotient_decimation_check(
    fa, fb, n: int, sample_points: int = 64, tol: float = TOL, seed: int = 0
) -> CheckReport:
    """Check that the quotient ``F_b F_a**-1`` is invariant under ``z -> eps z``.

    For filters sharing the column-rotation symmetry the quotient is a
    function of ``z**n`` alone, so its value must agree at ``z`` and
    ``eps z``.  Singular ``F_a`` samples are redrawn.
    """
    struct = modulation_structure(n)

    def quotient(z):
        a = as_matrix(fa(z), rows=n, cols=n)
        b = as_matrix(fb(z), rows=n, cols=n)
        return solve_linear(a.T, b.T).T

    def residual(z):
        return float(np.linalg.norm(quotient(struct.root * z) - quotient(z)))

    points = unit_circle_points(sample_points, seed)
    worst = _max_circle_residual(residual, points, seed)
    return CheckReport("quotient_decimation", worst, tol, worst <= tol, sample_points, seed)


def subband_filters(params: FilterParameters) -> SubbandFilterSet:
    """Extract the N scalar FIR impulse responses of a polynomial filter.

    The responses are the first-column coefficients of the filter as a
    polynomial in ``1/z``, read off the impulse response of its state-space
    realization; the length never exceeds ``state dimension + 1``.

    Raises
    ------
    FirRequiredError
        If any ``alpha_j`` is nonzero (the filter is not polynomial).
    """
    from .realization import impulse_response, realize_wavelet

    if not params.is_fir():
        raise FirRequiredError("subband impulse responses require all alpha = 0")
    real = realize_wavelet(params)
    taps = impulse_response(real, real.state_dim + 1)
    responses = []
    for k in range(params.n):
        coeffs = np.array([h[k, 0] for h in taps])
        last = np.nonzero(np.abs(coeffs) > 0.0)[0]
        end = last[-1] + 1 if last.size else 1
        responses.append(coeffs[:end])
    return SubbandFilterSet(n=params.n, responses=tuple(responses))
