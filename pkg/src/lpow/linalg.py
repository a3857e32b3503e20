"""Dense complex linear algebra over explicitly factorized tensor-product spaces."""

from __future__ import annotations

import math

import numpy as np

HERMITICITY_TOL = 1e-12
PSD_EIG_FLOOR = -1e-10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    return bool(np.abs(m - dagger(m)).max() <= tol)


def kron(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor outermost."""
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def _strides(dims: tuple[int, ...]) -> list[int]:
    # Composite basis index is a0*(d1*d2*...) + a1*(d2*...) + ...
    out = []
    acc = 1
    for d in reversed(dims):
        out.append(acc)
        acc *= d
    return list(reversed(out))


def _offsets(dims: tuple[int, ...], subsystems: tuple[int, ...], strides: list[int]) -> np.ndarray:
    """Global-index contribution of every multi-index over the given subsystems."""
    sub_dims = tuple(dims[i] for i in subsystems)
    size = math.prod(sub_dims) if sub_dims else 1
    if not sub_dims:
        return np.zeros(1, dtype=np.intp)
    digits = np.unravel_index(np.arange(size), sub_dims)
    out = np.zeros(size, dtype=np.intp)
    for digit, subsystem in zip(digits, subsystems):
        out += digit * strides[subsystem]
    return out


def partial_trace(m: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    The matrix is addressed through explicit multi-index strides of the
    factorization, so the routine works for any subsystem dimensions and
    any subset of kept parties (order of ``keep`` is normalized to
    ascending, matching the tensor-factor convention).
    """
    m = np.asarray(m, dtype=complex)
    total = math.prod(dims)
    if m.shape != (total, total):
        raise ValueError(f"matrix shape {m.shape} does not match factorization {dims}")
    keep = tuple(sorted(set(keep)))
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise ValueError(f"keep {keep} out of range for {len(dims)} subsystems")
    comp = tuple(i for i in range(len(dims)) if i not in keep)
    strides = _strides(dims)
    kept_off = _offsets(dims, keep, strides)
    comp_off = _offsets(dims, comp, strides)
    rows = kept_off[:, None] + comp_off[None, :]
    return m[rows[:, None, :], rows[None, :, :]].sum(axis=2)


def singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values in descending order."""
    return np.linalg.svd(np.asarray(m, dtype=complex), compute_uv=False)
