"""Dense linear algebra for registers of one to three qubits.

Qubit 1 is the most significant bit of the basis index throughout, so the
basis ket |q1 q2 q3> sits at index 4*q1 + 2*q2 + q3.  Everything works on
plain complex numpy arrays; functions are pure and return fresh arrays.
"""

from __future__ import annotations

import math

import numpy as np

ID2 = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# default tolerances: algebraic identities, and spectral quantities
ATOL = 1e-12
ATOL_SPECTRAL = 1e-10


def ket_from_angles(theta: float, phi: float) -> np.ndarray:
    """Single-qubit state cos(theta/2)|0> + exp(i*phi) sin(theta/2)|1>."""
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError("Bloch angles must be finite")
    return np.array(
        [math.cos(theta / 2), math.sin(theta / 2) * complex(math.cos(phi), math.sin(phi))],
        dtype=np.complex128,
    )


def num_qubits(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension in {2, 4, 8}."""
    n = max(dim, 1).bit_length() - 1
    if dim != 1 << n or not 1 <= n <= 3:
        raise ValueError(f"dimension {dim} is not a register of 1..3 qubits")
    return n


def tensor(a: np.ndarray, b: np.ndarray, *rest: np.ndarray) -> np.ndarray:
    """Kronecker product, left factor most significant.

    Both operands must be of the same kind: 1-D arrays (states) or 2-D
    arrays (operators).  Mixing kinds raises TypeError.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim not in (1, 2) or b.ndim not in (1, 2):
        raise TypeError("tensor operands must be 1-D states or 2-D operators")
    if a.ndim != b.ndim:
        raise TypeError("cannot tensor a state with an operator")
    out = np.kron(a, b)
    if rest:
        return tensor(out, *rest)
    return out


def partial_trace(rho: np.ndarray, keep) -> np.ndarray:
    """Trace out every qubit not listed in ``keep`` (1-based indices).

    The result carries the kept qubits in the order given, so
    ``partial_trace(rho, [2, 1])`` also swaps them.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("partial_trace expects a square matrix")
    n = num_qubits(rho.shape[0])
    keep = list(keep)
    if len(set(keep)) != len(keep) or any(q < 1 or q > n for q in keep):
        raise ValueError(f"keep indices must be distinct integers in 1..{n}")
    if not keep or len(keep) == n:
        raise ValueError("keep must be a nonempty strict subset of the qubits")
    t = rho.reshape((2,) * (2 * n))
    row = list(range(n))
    col = [q + n for q in range(n)]
    for q in range(n):
        if q + 1 not in keep:
            col[q] = row[q]  # same label on both axes contracts them
    out = [row[q - 1] for q in keep] + [col[q - 1] for q in keep]
    dim = 1 << len(keep)
    return np.einsum(t, row + col, out).reshape(dim, dim)


def fidelity_pure(psi: np.ndarray, rho: np.ndarray) -> float:
    """Overlap <psi|rho|psi> of a pure state with a density matrix."""
    psi = np.asarray(psi)
    rho = np.asarray(rho)
    if rho.shape != (psi.size, psi.size):
        raise ValueError("state and density matrix dimensions do not match")
    val = complex(psi.conj() @ rho @ psi)
    if abs(val.imag) > ATOL:
        raise ValueError(f"overlap has imaginary residue {val.imag:.3e}")
    return val.real


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """Bloch vector (Tr rho*X, Tr rho*Y, Tr rho*Z) of a one-qubit state."""
    rho = np.asarray(rho)
    if rho.shape != (2, 2):
        raise ValueError("Bloch vector is defined for 2x2 density matrices")
    return np.array(
        [
            np.trace(rho @ PAULI_X).real,
            np.trace(rho @ PAULI_Y).real,
            np.trace(rho @ PAULI_Z).real,
        ]
    )


def eig_hermitian(op: np.ndarray, vectors: bool = False):
    """Ascending eigenvalues (optionally with eigenvectors) of a Hermitian matrix."""
    op = np.asarray(op)
    dev = float(np.abs(op - op.conj().T).max())
    if dev > ATOL_SPECTRAL:
        raise ValueError(f"matrix is not Hermitian: max deviation {dev:.3e}")
    w, v = np.linalg.eigh(op)
    return (w, v) if vectors else w


def evolve(hamiltonian: np.ndarray, t: float, psi: np.ndarray) -> np.ndarray:
    """Apply exp(-i*H*t) to psi, via the Hermitian eigendecomposition of H."""
    psi = np.asarray(psi)
    hamiltonian = np.asarray(hamiltonian)
    if not math.isfinite(t):
        raise ValueError("evolution time must be finite")
    if hamiltonian.shape != (psi.size, psi.size):
        raise ValueError("Hamiltonian and state dimensions do not match")
    w, v = eig_hermitian(hamiltonian, vectors=True)
    return v @ (np.exp(-1j * w * t) * (v.conj().T @ psi))


def haar_random_state(rng: np.random.Generator, n_qubits: int = 1) -> np.ndarray:
    """Haar-random pure state on ``n_qubits`` qubits."""
    dim = 2**n_qubits
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def check_state(psi: np.ndarray, atol: float = ATOL) -> np.ndarray:
    """Validate unit norm; returns the input unchanged."""
    psi = np.asarray(psi)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > atol:
        raise ValueError(f"state norm deviates from 1 by {abs(norm - 1.0):.3e}")
    return psi


def check_density_matrix(rho: np.ndarray, atol: float = ATOL) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; returns the input."""
    rho = np.asarray(rho)
    herm = float(np.abs(rho - rho.conj().T).max())
    if herm > atol:
        raise ValueError(f"density matrix not Hermitian: deviation {herm:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > atol:
        raise ValueError(f"density matrix trace deviates from 1 by {abs(tr - 1.0):.3e}")
    w = np.linalg.eigvalsh(rho)
    if w[0] < -ATOL_SPECTRAL:
        raise ValueError(f"density matrix has negative eigenvalue {w[0]:.3e}")
    return rho
