"""State-space realizations of wavelet filters and their certificates.

Every filter produced by :mod:`wfk.filters` is rational and bounded at
infinity, hence realizable as ``F(z) = C (zI - A)**-1 B + D``.  This module
builds such realizations constructively: a permutation-based realization of
the elementary filter, a bidiagonal core for each degree-one factor, and a
series cascade that raises the index one factor at a time.  Verification
tools certify the construction: a Stein-equation certificate for circle
unitarity, controllability/observability ranks for minimality, and exact
degree accounting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionError,
    InvariantError,
    PoleError,
    SingularMatrixError,
)
from .filters import FilterParameters, dft_matrix
from .linalg import adjoint, as_matrix, elimination_rank, solve_linear


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Realization:
    """System matrix blocks of ``x(t+1) = A x + B u``, ``y = C x + D u``."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        a = as_matrix(self.a)
        d = as_matrix(self.d)
        p = a.shape[0]
        if a.shape[1] != p:
            raise InvariantError(f"state block must be square, got {a.shape}")
        b = as_matrix(self.b, rows=p, cols=d.shape[1])
        c = as_matrix(self.c, rows=d.shape[0], cols=p)
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", _frozen(b))
        object.__setattr__(self, "c", _frozen(c))
        object.__setattr__(self, "d", _frozen(d))

    @property
    def state_dim(self) -> int:
        return self.a.shape[0]

    @property
    def outputs(self) -> int:
        return self.d.shape[0]

    @property
    def inputs(self) -> int:
        return self.d.shape[1]


@dataclass(frozen=True)
class SteinCertificate:
    """Solution and residuals of the circle-unitarity (Stein) equation.

    ``h`` solves ``A* H A + C* C = H``; for a realization of a filter that
    is unitary on the circle the two remaining block identities
    ``A* H B + C* D = 0`` and ``B* H B + D* D = I`` hold as well, and the
    three residual norms certify this numerically.
    """

    h: np.ndarray
    residual_state: float
    residual_cross: float
    residual_input: float
    hermiticity: float
    condition_estimate: float
    positive_definite: bool

    def __post_init__(self):
        object.__setattr__(self, "h", _frozen(self.h))

    @property
    def max_block_residual(self) -> float:
        return max(self.residual_state, self.residual_cross, self.residual_input)


@dataclass(frozen=True)
class MinimalityReport:
    """Controllability/observability ranks against the state dimension."""

    state_dim: int
    controllability_rank: int
    observability_rank: int

    @property
    def minimal(self) -> bool:
        return (
            self.controllability_rank == self.state_dim
            and self.observability_rank == self.state_dim
        )


def system_matrix(r: Realization) -> np.ndarray:
    """Assemble the ``(p+N) x (p+N)`` block matrix ``[[A, B], [C, D]]``."""
    return np.block([[r.a, r.b], [r.c, r.d]])


def realize_elementary_wavelet(n: int) -> Realization:
    """Realize the minimal-degree filter for ``n`` bands, state dimension
    ``n*(n-1)/2``.

    Stage one builds a permutation system matrix: ``A`` is a direct sum of
    nilpotent Jordan chains of lengths ``1 .. n-1``, the pre-DFT input
    matrix feeds the last state of each chain from inputs ``2 .. n``, the
    output matrix reads each chain head into outputs ``2 .. n``, and the
    pre-DFT ``D`` routes input 1 straight to output 1.  Stage two
    multiplies the input side by the DFT matrix.
    """
    if n < 2:
        raise InvariantError(f"band count must be >= 2, got {n!r}")
    p = n * (n - 1) // 2
    a = np.zeros((p, p), dtype=complex)
    b_pre = np.zeros((p, n), dtype=complex)
    c = np.zeros((n, p), dtype=complex)
    start = 0
    for length in range(1, n):
        for j in range(start, start + length - 1):
            a[j, j + 1] = 1.0
        b_pre[start + length - 1, length] = 1.0
        c[length, start] = 1.0
        start += length
    d_pre = np.zeros((n, n), dtype=complex)
    d_pre[0, 0] = 1.0
    q = dft_matrix(n)
    return Realization(a=a, b=b_pre @ q, c=c, d=d_pre @ q)


def _pole_roots(alpha: complex, n: int) -> np.ndarray:
    """The ``n`` n-th roots of ``alpha``: principal root times each root of unity.

    For ``n = 4`` the order ``(r, -r, ir, -ir)`` is used so the constructed
    matrices match the reference fixtures entry-wise; the transfer function
    does not depend on the order.
    """
    if alpha == 0:
        return np.zeros(n, dtype=complex)
    r = complex(alpha) ** (1.0 / n)
    if n == 4:
        return np.array([r, -r, 1j * r, -1j * r])
    return r * np.exp(2j * np.pi * np.arange(n) / n)


def realize_allpass_core(alpha: complex, n: int) -> Realization:
    """Realize the scalar function ``(1 - |alpha|**2) / (z**n - alpha)``.

    This is the strictly proper part of the degree-one all-pass factor in
    ``z**n``.  The state matrix is upper bidiagonal with the ``n`` n-th
    roots of ``alpha`` on the diagonal (a single nilpotent Jordan block
    when ``alpha = 0``) and ones above it.
    """
    alpha = complex(alpha)
    if abs(alpha) >= 1.0:
        raise InvariantError(f"|alpha| must be < 1, got {abs(alpha)!r}")
    a = np.diag(_pole_roots(alpha, n)) + np.diag(np.ones(n - 1), 1)
    gain = np.sqrt(1.0 - abs(alpha) ** 2)
    b = np.zeros((n, 1), dtype=complex)
    b[n - 1, 0] = gain
    c = np.zeros((1, n), dtype=complex)
    c[0, 0] = gain
    return Realization(a=a, b=b, c=c, d=np.zeros((1, 1), dtype=complex))


def realize_decimated_unitary(v, alpha: complex, n: int) -> Realization:
    """Realize ``I + (phi_alpha(z**n) - 1) v v*`` with state dimension ``n``.

    Wraps the scalar core between ``v`` and ``v*``; the feedthrough is
    ``I - (1 + conj(alpha)) v v*``, the value of the factor at infinity
    plus the all-pass constant term.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise InvariantError("v must have unit norm")
    core = realize_allpass_core(alpha, n)
    d = np.eye(v.size) - (1.0 + np.conj(alpha)) * np.outer(v, v.conj())
    return Realization(
        a=core.a,
        b=core.b @ v.conj()[None, :],
        c=v[:, None] @ core.c,
        d=d,
    )


def cascade(delta: Realization, inner: Realization) -> Realization:
    """Realize the product ``F_delta(z) F_inner(z)`` of two realized systems.

    The stacked state matrix is block upper triangular with the ``delta``
    states on top, so cascading factors with triangular cores keeps the
    whole state matrix triangular.
    """
    if delta.inputs != inner.outputs:
        raise DimensionError(
            f"cascade mismatch: delta consumes {delta.inputs}, inner yields {inner.outputs}"
        )
    p_d, p_i = delta.state_dim, inner.state_dim
    a = np.block(
        [
            [delta.a, delta.b @ inner.c],
            [np.zeros((p_i, p_d), dtype=complex), inner.a],
        ]
    )
    b = np.vstack([delta.b @ inner.d, inner.b])
    c = np.hstack([delta.c, delta.d @ inner.c])
    return Realization(a=a, b=b, c=c, d=delta.d @ inner.d)


def realize_wavelet(params: FilterParameters) -> Realization:
    """Build the cascade realization of the filter described by ``params``.

    Starts from the elementary-filter realization and cascades one
    degree-``n`` factor per stored parameter, raising the index by one each
    time; the state dimension is exactly ``n*((n-1)/2 + m)``.
    """
    r = realize_elementary_wavelet(params.n)
    for f in params.factors:
        r = cascade(realize_decimated_unitary(f.v, f.alpha, params.n), r)
    return r


def eval_realization(r: Realization, z: complex) -> np.ndarray:
    """Transfer-function value ``C (zI - A)**-1 B + D`` at the point ``z``."""
    if r.state_dim == 0:
        return np.array(r.d)
    z = complex(z)
    try:
        x = solve_linear(z * np.eye(r.state_dim) - r.a, r.b)
    except SingularMatrixError as exc:
        raise PoleError(f"z = {z!r} is a pole of the realization") from exc
    return r.c @ x + r.d


def impulse_response(r: Realization, horizon: int) -> list[np.ndarray]:
    """Matrix taps ``h(0) = D`` and ``h(k) = C A**(k-1) B`` for ``k < horizon``."""
    if horizon < 1:
        raise InvariantError(f"horizon must be >= 1, got {horizon!r}")
    taps = [np.array(r.d)]
    reach = np.array(r.b)
    for _ in range(1, horizon):
        taps.append(r.c @ reach)
        reach = r.a @ reach
    return taps


def mcmillan_degree(params: FilterParameters) -> int:
    """Minimal state dimension of the filter: ``n*(n-1)/2 + n*m`` exactly."""
    return params.n * (params.n - 1) // 2 + params.n * params.m


def spectral_radius(params: FilterParameters) -> float:
    """Largest eigenvalue modulus of the realized state matrix.

    The factor cores contribute the n-th roots of each ``alpha_j`` and the
    elementary block contributes zeros, so the radius is
    ``max_j |alpha_j|**(1/n)`` (zero for FIR parameters).
    """
    if not params.factors:
        return 0.0
    return max(abs(f.alpha) ** (1.0 / params.n) for f in params.factors)


_STEIN_MAX_DOUBLINGS = 64
_STEIN_STOP = 1e-12


def stein_certificate(r: Realization) -> SteinCertificate:
    """Solve ``A* H A + C* C = H`` and report the three Stein block residuals.

    ``H`` is accumulated from the convergent series ``sum_k (A*)**k C*C A**k``
    with doubling acceleration, which converges quadratically whenever the
    spectral radius of ``A`` is below one.  The certificate reports
    Hermiticity, a condition estimate, and whether ``H`` admits a Cholesky
    factorization (positive definiteness); an indefinite ``H`` is flagged,
    not rejected.

    Raises
    ------
    ConvergenceError
        If the series fails to settle within the iteration cap (state
        matrix not asymptotically stable).
    SingularMatrixError
        If the accumulated ``H`` is singular.
    """
    p = r.state_dim
    h = adjoint(r.c) @ r.c
    power = np.array(r.a)
    for _ in range(_STEIN_MAX_DOUBLINGS):
        inc = adjoint(power) @ h @ power
        h = h + inc
        # max-abs avoids the overflow a squared Frobenius norm would hit
        # while detecting divergence
        scale = float(np.abs(h).max()) if h.size else 0.0
        if not np.isfinite(h).all() or scale > 1e100:
            raise ConvergenceError(
                "Stein series diverged; spectral radius appears to be >= 1"
            )
        if h.size == 0 or np.abs(inc).max() <= _STEIN_STOP * max(1.0, scale):
            break
        power = power @ power
    else:
        raise ConvergenceError(
            "Stein series did not converge; spectral radius appears to be >= 1"
        )
    residual_state = float(np.linalg.norm(adjoint(r.a) @ h @ r.a + adjoint(r.c) @ r.c - h))
    residual_cross = float(np.linalg.norm(adjoint(r.a) @ h @ r.b + adjoint(r.c) @ r.d))
    residual_input = float(
        np.linalg.norm(adjoint(r.b) @ h @ r.b + adjoint(r.d) @ r.d - np.eye(r.inputs))
    )
    hermiticity = float(np.linalg.norm(h - adjoint(h)))
    if p == 0:
        return SteinCertificate(
            h=h,
            residual_state=residual_state,
            residual_cross=residual_cross,
            residual_input=residual_input,
            hermiticity=hermiticity,
            condition_estimate=1.0,
            positive_definite=True,
        )
    h_inv = solve_linear(h, np.eye(p))
    condition = float(
        np.linalg.norm(h, ord=1) * np.linalg.norm(h_inv, ord=1)
    )
    try:
        np.linalg.cholesky((h + adjoint(h)) / 2.0)
        positive = True
    except np.linalg.LinAlgError:
        positive = False
    return SteinCertificate(
        h=h,
        residual_state=residual_state,
        residual_cross=residual_cross,
        residual_input=residual_input,
        hermiticity=hermiticity,
        condition_estimate=condition,
        positive_definite=positive,
    )


def verify_minimality(r: Realization) -> MinimalityReport:
    """Rank the block controllability and observability matrices.

    The realization is minimal exactly when both ranks equal the state
    dimension; ranks use pivoted elimination with a relative tolerance.
    """
    p = r.state_dim
    ctrl_blocks = []
    obs_blocks = []
    reach = np.array(r.b)
    observe = np.array(r.c)
    for _ in range(max(p, 1)):
        ctrl_blocks.append(reach)
        obs_blocks.append(observe)
        reach = r.a @ reach
        observe = observe @ r.a
    ctrl = np.hstack(ctrl_blocks) if p else np.zeros((0, r.inputs))
    obs = np.vstack(obs_blocks) if p else np.zeros((r.outputs, 0))
    return MinimalityReport(
        state_dim=p,
        controllability_rank=elimination_rank(ctrl),
        observability_rank=elimination_rank(obs),
    )
