"""State families and Bloch-level descriptors for few-qubit density matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .linalg import HERMITICITY_TOL, PSD_EIG_FLOOR, PAULIS, dagger, kron, partial_trace, singular_values

TRACE_TOL = 1e-12
BISECTION_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace matrix over an explicit qubit factorization."""

    matrix: np.ndarray
    dims: tuple[int, ...] = (2, 2)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        total = math.prod(self.dims)
        if m.shape != (total, total):
            raise ValueError(f"matrix shape {m.shape} does not match dims {self.dims}")
        if np.abs(m - dagger(m)).max() > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise ValueError("density matrix trace differs from 1")
        if np.linalg.eigvalsh(m).min() < PSD_EIG_FLOOR:
            raise ValueError("density matrix has a negative eigenvalue")

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def marginal(self, party: int) -> "DensityMatrix":
        """Single-party reduced state."""
        sub = partial_trace(self.matrix, self.dims, (party,))
        return DensityMatrix(sub, (self.dims[party],))


@dataclass(frozen=True)
class QubitObservable:
    """Dichotomic +-1 observable given by a unit Bloch direction."""

    direction: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        object.__setattr__(self, "direction", d)
        if d.shape != (3,):
            raise ValueError("direction must be a 3-vector")
        if abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise ValueError("direction must be a unit vector")

    @property
    def matrix(self) -> np.ndarray:
        n = self.direction
        return n[0] * PAULIS[0] + n[1] * PAULIS[1] + n[2] * PAULIS[2]


def observable(vec) -> QubitObservable:
    """Observable along ``vec``, normalized first."""
    v = np.asarray(vec, dtype=float)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return QubitObservable(v / n)


@dataclass(frozen=True)
class HorodeckiResult:
    s1: float
    s2: float
    m_value: float
    admits_lhv: bool


def ket(*bits: int) -> np.ndarray:
    """Computational-basis ket over one qubit per bit."""
    v = np.array([1.0 + 0j])
    for b in bits:
        e = np.zeros(2, dtype=complex)
        e[int(b)] = 1.0
        v = np.kron(v, e)
    return v


def projector(vec: np.ndarray) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    return np.outer(v, v.conj())


def _check_unit(x: float, name: str) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")
    return x


def singlet() -> DensityMatrix:
    psi = (ket(0, 1) - ket(1, 0)) / math.sqrt(2)
    return DensityMatrix(projector(psi))


def werner(p: float) -> DensityMatrix:
    """p-weighted singlet mixed with white noise; locally maximally mixed for all p."""
    p = _check_unit(p, "p")
    psi = (ket(0, 1) - ket(1, 0)) / math.sqrt(2)
    return DensityMatrix(p * projector(psi) + (1.0 - p) / 4.0 * np.eye(4))


def sigma_state() -> DensityMatrix:
    """0.85/0.15 mixture of (2|00> + |11>)/sqrt(5) with |01>; nontrivial marginals, no CHSH violation."""
    phi = (2 * ket(0, 0) + ket(1, 1)) / math.sqrt(5)
    return DensityMatrix(0.85 * projector(phi) + 0.15 * projector(ket(0, 1)))


def cg(theta: float, lam: float) -> DensityMatrix:
    """Mixture of cos(theta)|00> + sin(theta)|11> with |01>, weight lam on the superposition."""
    lam = _check_unit(lam, "lam")
    kth = math.cos(theta) * ket(0, 0) + math.sin(theta) * ket(1, 1)
    return DensityMatrix(lam * projector(kth) + (1.0 - lam) * projector(ket(0, 1)))


def classical(theta: float, beta: float) -> DensityMatrix:
    """Pure product state (cos(theta)|0> + e^{i beta} sin(theta)|1>) x |0>."""
    a = math.cos(theta) * ket(0) + np.exp(1j * beta) * math.sin(theta) * ket(1)
    return pure_product([a, ket(0)])


def transition(p: float) -> DensityMatrix:
    """Path from the triplet (|01> + |10>)/sqrt(2) at p=0 to the product |00> at p=1."""
    p = _check_unit(p, "p")
    psi = (ket(0, 1) + ket(1, 0)) / math.sqrt(2)
    return DensityMatrix((1.0 - p) * projector(psi) + p * projector(ket(0, 0)))


def ghz() -> DensityMatrix:
    g = (ket(0, 0, 0) + ket(1, 1, 1)) / math.sqrt(2)
    return DensityMatrix(projector(g), dims=(2, 2, 2))


def pure_product(kets) -> DensityMatrix:
    """Product state from a list of normalized single-qubit kets."""
    mats = []
    for v in kets:
        v = np.asarray(v, dtype=complex)
        if v.shape != (2,):
            raise ValueError("each factor must be a single-qubit ket")
        n = np.linalg.norm(v)
        if abs(n - 1.0) > 1e-10:
            raise ValueError("each factor ket must be normalized")
        mats.append(projector(v))
    if not mats:
        raise ValueError("need at least one factor")
    return DensityMatrix(kron(*mats), dims=(2,) * len(mats))


def maximally_mixed(n_parties: int = 2) -> DensityMatrix:
    d = 2**n_parties
    return DensityMatrix(np.eye(d) / d, dims=(2,) * n_parties)


_FAMILIES = {
    "singlet": (singlet, ()),
    "werner": (werner, ("p",)),
    "sigma": (sigma_state, ()),
    "cg": (cg, ("theta", "lam")),
    "classical": (classical, ("theta", "beta")),
    "transition": (transition, ("p",)),
    "ghz": (ghz, ()),
}


def _ket_from_angles(theta: float, phi: float) -> np.ndarray:
    return np.array([math.cos(theta / 2.0), np.exp(1j * phi) * math.sin(theta / 2.0)])


def _pure_product_from_params(params) -> DensityMatrix:
    if "kets" in params:
        extra = set(params) - {"kets"}
        if extra:
            raise ValueError(f"unknown parameter(s) {sorted(extra)} for family 'pure_product'")
        return pure_product(params["kets"])
    kets = []
    used = set()
    for suffix in "abc":
        key = f"theta_{suffix}"
        if key not in params:
            break
        phi_key = f"phi_{suffix}"
        kets.append(_ket_from_angles(float(params[key]), float(params.get(phi_key, 0.0))))
        used.update({key, phi_key} & set(params))
    extra = set(params) - used
    if extra:
        raise ValueError(f"unknown parameter(s) {sorted(extra)} for family 'pure_product'")
    if not kets:
        raise ValueError("pure_product needs kets or theta_a[, phi_a, theta_b, ...] angles")
    return pure_product(kets)


def make_state(family: str, **params) -> DensityMatrix:
    """Build a named state family instance.

    ``cg`` accepts ``theta`` alone, in which case ``lam`` is solved on the
    fly so the settings-optimized CHSH value sits exactly at the classical
    bound. ``pure_product`` accepts explicit ``kets`` or per-party Bloch
    angles ``theta_a``/``phi_a``, ``theta_b``/``phi_b``, ...
    """
    if family == "pure_product":
        return _pure_product_from_params(params)
    if family not in _FAMILIES:
        raise ValueError(f"unknown state family {family!r}")
    fn, names = _FAMILIES[family]
    if family == "cg" and "lam" not in params:
        params = dict(params)
        params["lam"] = cg_lambda(params["theta"])
    extra = set(params) - set(names)
    missing = set(names) - set(params)
    if extra:
        raise ValueError(f"unknown parameter(s) {sorted(extra)} for family {family!r}")
    if missing:
        raise ValueError(f"missing parameter(s) {sorted(missing)} for family {family!r}")
    return fn(**{k: float(params[k]) for k in names})


def bloch_vector(rho: DensityMatrix | np.ndarray) -> np.ndarray:
    """Pauli expectation 3-vector of a single-qubit state."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("bloch_vector needs a single-qubit state")
    return np.array([np.trace(m @ p).real for p in PAULIS])


def correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    """3x3 table of Pauli-Pauli expectations of a two-qubit state."""
    if rho.dims != (2, 2):
        raise ValueError("correlation_matrix needs a two-qubit state")
    m = rho.matrix
    return np.array(
        [[np.trace(m @ kron(PAULIS[i], PAULIS[j])).real for j in range(3)] for i in range(3)]
    )


def horodecki(rho: DensityMatrix) -> HorodeckiResult:
    """Two largest singular values of the correlation matrix and the LHV verdict.

    The verdict is equivalent to the settings-optimized CHSH value
    2*sqrt(s1^2 + s2^2) staying at or below the classical bound 2.
    """
    sv = singular_values(correlation_matrix(rho))
    s1, s2 = float(sv[0]), float(sv[1])
    m_value = math.hypot(s1, s2)
    return HorodeckiResult(s1=s1, s2=s2, m_value=m_value, admits_lhv=m_value <= 1.0 + 1e-10)


def optimized_chsh(rho: DensityMatrix) -> float:
    """Settings-optimized CHSH value, 2*sqrt(s1^2 + s2^2)."""
    return 2.0 * horodecki(rho).m_value


def _cg_m_minus_one(theta: float):
    def f(lam: float) -> float:
        return horodecki(cg(theta, lam)).m_value ** 2 - 1.0

    return f


def cg_lambda(theta: float) -> float:
    """Mixing weight at which the optimized CHSH value of ``cg(theta, .)`` equals 2.

    Solved by bisection on s1^2 + s2^2 - 1 over the bracket around the last
    sign change in (0, 1]; the correlation matrix there is exact, so no
    settings optimization enters the root-find.
    """
    if not 0.0 < theta < math.pi / 2:
        raise ValueError("theta must lie in (0, pi/2)")
    f = _cg_m_minus_one(theta)
    grid = np.linspace(0.0, 1.0, 401)
    vals = [f(x) for x in grid]
    bracket = None
    for i in range(len(grid) - 1, 0, -1):
        if vals[i] > 0.0 and vals[i - 1] <= 0.0:
            bracket = (grid[i - 1], grid[i])
            break
    if bracket is None:
        raise ValueError(f"no crossing of the classical CHSH bound for theta={theta}")
    return float(bisect(f, bracket[0], bracket[1], xtol=BISECTION_TOL))
