"""Dense complex linear algebra kernels.

Everything here works on plain ``numpy`` arrays. Matrices are square
``complex128`` arrays unless stated otherwise; a state vector carries its
subsystem dimensions alongside the amplitudes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

MAX_AMPLITUDES = 2**20

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)


class ShapeError(ValueError):
    """Array shapes do not match the declared subsystem dimensions."""


class SizeError(ValueError):
    """A dimension product exceeds :data:`MAX_AMPLITUDES`."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class StateVector:
    """Pure state on a tensor product of subsystems.

    Basis ordering is mixed radix with subsystem 0 as the most significant
    digit, i.e. the ordering produced by ``np.kron`` of the factors.
    """

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)
        if int(np.prod(dims)) != amps.size:
            raise ShapeError(f"{amps.size} amplitudes do not fit dims {dims}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > 1e-12:
            raise DomainError(f"state is not normalized (squared norm {norm2!r})")

    def density(self) -> np.ndarray:
        return np.outer(self.amps, self.amps.conj())


class EigenDecomposition(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def _check_cap(n: int, cap: int = MAX_AMPLITUDES) -> None:
    if n > cap:
        raise SizeError(f"dimension {n} exceeds cap {cap}")


def kron(a, b, cap: int = MAX_AMPLITUDES) -> np.ndarray:
    """Tensor product of two matrices (or vectors)."""
    a = np.atleast_1d(np.asarray(a))
    b = np.atleast_1d(np.asarray(b))
    _check_cap(a.size * b.size, cap)
    return np.kron(a, b)


def is_hermitian(h: np.ndarray, tol: float = 1e-10) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and bool(
        np.max(np.abs(h - h.conj().T), initial=0.0) <= tol
    )


def partial_trace(rho, dims: Sequence[int], keep) -> np.ndarray:
    """Reduce a density matrix to the subsystems listed in ``keep``.

    The kept subsystems appear in ascending index order in the result.

    Parameters
    ----------
    rho : array_like
        Square matrix of side ``prod(dims)``.
    dims : sequence of int
        Local dimension of every subsystem.
    keep : iterable of int
        Subsystems to keep. An empty set returns the 1x1 matrix ``[[tr rho]]``.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ShapeError(f"matrix of shape {rho.shape} does not match dims {dims}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ShapeError(f"keep={keep} out of range for {n} subsystems")
    if len(keep) == n:
        return rho.copy()
    traced = [k for k in range(n) if k not in keep]
    t = rho.reshape(dims + dims)
    # Trace from the highest index down so earlier axis numbers stay valid.
    m = n
    for k in reversed(traced):
        t = np.trace(t, axis1=k, axis2=k + m)
        m -= 1
    d_keep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d_keep, d_keep)


def reduce_pure(amps, dims: Sequence[int], keep) -> np.ndarray:
    """Reduced density matrix of a pure state without forming the projector."""
    dims = tuple(int(d) for d in dims)
    keep = sorted(set(int(k) for k in keep))
    rest = [k for k in range(len(dims)) if k not in keep]
    psi = np.asarray(amps, dtype=complex).reshape(dims)
    psi = np.transpose(psi, keep + rest)
    da = int(np.prod([dims[k] for k in keep])) if keep else 1
    m = psi.reshape(da, -1)
    return m @ m.conj().T


def _round_robin(n: int) -> list[list[tuple[int, int]]]:
    """Tournament schedule: ``n - 1`` rounds of disjoint index pairs."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(h, tol: float = 1e-15, max_sweeps: int = 60) -> EigenDecomposition:
    """Cyclic Jacobi eigensolver for complex Hermitian matrices.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the rotations of one round act on disjoint index pairs and can be
    applied together as a single unitary.
    """
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 1:
        return EigenDecomposition(a.diagonal().real.copy(), v)
    scale = max(np.linalg.norm(a), 1e-300)
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= tol * scale:
            break
        for pairs in rounds:
            p = np.array([pq[0] for pq in pairs])
            q = np.array([pq[1] for pq in pairs])
            apq = a[p, q]
            mag = np.abs(apq)
            active = mag > 1e-300
            if not active.any():
                continue
            p, q, apq, mag = p[active], q[active], apq[active], mag[active]
            phase = apq / mag
            app = a[p, p].real
            aqq = a[q, q].real
            theta = (aqq - app) / (2.0 * mag)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on each (p, q) block.
            j = np.eye(n, dtype=complex)
            j[p, p] = c
            j[p, q] = s
            j[q, p] = -s * phase.conj()
            j[q, q] = c * phase.conj()
            a = j.conj().T @ a @ j
            a = 0.5 * (a + a.conj().T)
            v = v @ j
    values = a.diagonal().real
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], v[:, order])


def hermitian_eig(h, tol: float = 1e-10) -> EigenDecomposition:
    """Ascending eigen-decomposition of a Hermitian matrix.

    Raises
    ------
    DomainError
        If ``h`` is not Hermitian within ``tol``.
    """
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h, tol):
        raise DomainError("matrix is not Hermitian")
    return jacobi_eigh(0.5 * (h + h.conj().T))


def psd_sqrt(rho, neg_tol: float = 1e-8) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-neg_tol, 0)`` are treated as roundoff and clamped.
    """
    vals, vecs = hermitian_eig(rho)
    if vals.size and vals[0] < -neg_tol:
        raise DomainError(f"matrix has negative eigenvalue {vals[0]:.3e}")
    root = np.sqrt(np.clip(vals, 0.0, None))
    s = (vecs * root) @ vecs.conj().T
    return 0.5 * (s + s.conj().T)


def singular_values(m) -> np.ndarray:
    """Descending singular values via the Hermitian dilation ``[[0, M], [M^H, 0]]``.

    Eigenvalues of the dilation are ``+-sigma`` and come out with absolute
    accuracy, so tiny singular values are not inflated by a square root.
    """
    m = np.asarray(m, dtype=complex)
    r, c = m.shape
    dil = np.zeros((r + c, r + c), dtype=complex)
    dil[:r, r:] = m
    dil[r:, :r] = m.conj().T
    vals = jacobi_eigh(dil).values
    k = min(r, c)
    return np.clip(vals[::-1][:k], 0.0, None)


def _check_density(rho: np.ndarray, side: int | None = None, tol: float = 1e-8) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or (side is not None and rho.shape[0] != side):
        raise DomainError(f"expected a {side}x{side} density matrix, got shape {rho.shape}")
    if not is_hermitian(rho, tol):
        raise DomainError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise DomainError(f"density matrix has trace {np.trace(rho).real!r}")
    return 0.5 * (rho + rho.conj().T)


def wootters_lambdas(rho, rank_floor: float = 1e-14) -> np.ndarray:
    """Descending eigenvalues of ``sqrt(sqrt(rho) rho~ sqrt(rho))`` for two qubits.

    ``rho~ = (Y x Y) rho* (Y x Y)``. With ``rho = X X^H`` (``X`` built from the
    eigenpairs above ``rank_floor``), the same numbers are the singular
    values of the complex symmetric matrix ``X^T (Y x Y) X``; that form avoids
    square roots of near-zero eigenvalues and keeps the small lambdas at
    roundoff level.
    """
    rho = _check_density(rho, 4)
    vals, vecs = jacobi_eigh(rho)
    if vals[0] < -1e-8:
        raise DomainError(f"density matrix has negative eigenvalue {vals[0]:.3e}")
    keep = vals > rank_floor
    x = vecs[:, keep] * np.sqrt(vals[keep])
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    tau = x.T @ yy @ x
    out = np.zeros(4)
    if tau.size:
        sv = singular_values(tau)
        out[: sv.size] = sv
    return np.sort(out)[::-1]


def local_support(rho, dims: tuple[int, int], floor: float = 1e-12):
    """Isometries onto the supports of both marginals of a bipartite ``rho``.

    Returns ``(va, vb)`` with orthonormal columns spanning the eigenvectors of
    ``rho_A`` and ``rho_B`` whose eigenvalues exceed ``floor``.
    """
    da, db = dims
    ra = partial_trace(rho, (da, db), [0])
    rb = partial_trace(rho, (da, db), [1])
    out = []
    for r in (ra, rb):
        vals, vecs = hermitian_eig(r)
        out.append(vecs[:, vals > floor][:, ::-1])
    return tuple(out)


def compress_to_qubits(rho, dims: tuple[int, int], floor: float = 1e-12) -> np.ndarray | None:
    """Restrict a bipartite state to its local supports, if both are at most 2-dimensional.

    Concurrence and its assistance variant are invariant under local
    isometries, so the returned 4x4 matrix carries the same values. Returns
    ``None`` when either marginal has rank above 2.
    """
    rho = np.asarray(rho, dtype=complex)
    if min(dims) < 2:
        raise ShapeError(f"local dimensions {dims} must both be at least 2")
    isos = []
    for v, d in zip(local_support(rho, dims, floor), dims):
        if v.shape[1] > 2:
            return None
        # complete a rank-deficient support with orthogonal basis vectors
        for e in np.eye(d, dtype=complex).T:
            if v.shape[1] == 2:
                break
            r = e - v @ (v.conj().T @ e)
            nr = np.linalg.norm(r)
            if nr > 1e-6:
                v = np.column_stack([v, r / nr])
        isos.append(v)
    w = np.kron(isos[0], isos[1])
    out = w.conj().T @ rho @ w
    return 0.5 * (out + out.conj().T)
