"""Gate-level realizations of the mirror machine on three qubits.

Register order is (qubit 1, qubit 2, qubit 3) with qubit 1 most
significant; the input state arrives on qubit 1 and the clones leave on
qubits 1 and 2.  Circuits store gates in application order.

Gate kinds:
  ROTY t angle     real y-rotation on qubit t
  NOT t            bit flip on qubit t
  CNOT c t         controlled flip
  CH c t           controlled Hadamard, built by conjugating CNOT
  CR c t angle     controlled phase rotation diag(e^{-ia/2}, e^{ia/2})
  CCR 1 2 3 angle  phase rotation on 3 when qubits 1,2 are both 1
  CCR0 1 2 3 angle same with both controls on 0 (open controls)
  EVOLVE 1 2 3 t k exchange-Hamiltonian propagator exp(-iHt)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .cloners import SQRT2, mpcc_params
from .qcore import ID2, PAULI_X

# reflection that conjugates a bit flip into a Hadamard: A X A = H, A A = id
HADAMARD_CONJUGATOR = np.array(
    [[1.0, 1.0 + SQRT2], [1.0 + SQRT2, -1.0]], dtype=np.complex128
) / math.sqrt(4.0 + 2.0 * SQRT2)

# kind -> (number of qubit tokens, number of angle parameters)
GATE_ARITY = {
    "ROTY": (1, 1),
    "NOT": (1, 0),
    "CNOT": (2, 0),
    "CH": (2, 0),
    "CR": (2, 1),
    "CCR": (3, 1),
    "CCR0": (3, 1),
    "EVOLVE": (3, 2),
}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in GATE_ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        n_qubits, n_params = GATE_ARITY[self.kind]
        if len(self.qubits) != n_qubits:
            raise ValueError(f"{self.kind} takes {n_qubits} qubit indices")
        if len(self.params) != n_params:
            raise ValueError(f"{self.kind} takes {n_params} parameters")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("gate qubit indices must be distinct")
        if any(q < 1 or q > 3 for q in self.qubits):
            raise ValueError("qubit indices must lie in 1..3")
        if not all(math.isfinite(p) for p in self.params):
            raise ValueError("gate parameters must be finite")
        if self.kind in ("CCR", "CCR0", "EVOLVE") and self.qubits != (1, 2, 3):
            raise ValueError(f"{self.kind} acts on the fixed register (1, 2, 3)")


def roty(target: int, angle: float) -> Gate:
    return Gate("ROTY", (target,), (angle,))


def not_gate(target: int) -> Gate:
    return Gate("NOT", (target,))


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


def ch(control: int, target: int) -> Gate:
    return Gate("CH", (control, target))


def cr(control: int, target: int, angle: float) -> Gate:
    return Gate("CR", (control, target), (angle,))


def ccr(angle: float) -> Gate:
    """Phase rotation on qubit 3 conditioned on qubits 1, 2 being |11>."""
    return Gate("CCR", (1, 2, 3), (angle,))


def ccr_open(angle: float) -> Gate:
    """Phase rotation on qubit 3 conditioned on qubits 1, 2 being |00>."""
    return Gate("CCR0", (1, 2, 3), (angle,))


def evolve_gate(t: float, kappa: float) -> Gate:
    return Gate("EVOLVE", (1, 2, 3), (t, kappa))


@dataclass(frozen=True)
class Circuit:
    """Sequence of gates in application order (first gate acts first)."""

    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))


def _embed_single(u: np.ndarray, target: int) -> np.ndarray:
    ops = [ID2, ID2, ID2]
    ops[target - 1] = u
    return np.kron(np.kron(ops[0], ops[1]), ops[2])


def _embed_controlled(u: np.ndarray, control: int, target: int) -> np.ndarray:
    p0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
    p1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)
    return _embed_single(p0, control) + _embed_single(p1, control) @ _embed_single(u, target)


def _ry(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _rz(angle: float) -> np.ndarray:
    return np.diag([cmath.exp(-0.5j * angle), cmath.exp(0.5j * angle)])


def gate_matrix(gate: Gate) -> np.ndarray:
    """8x8 unitary of a gate on the three-qubit register."""
    kind = gate.kind
    if kind == "ROTY":
        return _embed_single(_ry(gate.params[0]), gate.qubits[0])
    if kind == "NOT":
        return _embed_single(PAULI_X, gate.qubits[0])
    if kind == "CNOT":
        return _embed_controlled(PAULI_X, *gate.qubits)
    if kind == "CH":
        conj = _embed_single(HADAMARD_CONJUGATOR, gate.qubits[1])
        return conj @ _embed_controlled(PAULI_X, *gate.qubits) @ conj
    if kind == "CR":
        return _embed_controlled(_rz(gate.params[0]), gate.qubits[0], gate.qubits[1])
    if kind in ("CCR", "CCR0"):
        angle = gate.params[0]
        base = 6 if kind == "CCR" else 0  # index of |pp0> for control value p
        diag = np.ones(8, dtype=np.complex128)
        diag[base] = cmath.exp(-0.5j * angle)
        diag[base + 1] = cmath.exp(0.5j * angle)
        return np.diag(diag)
    if kind == "EVOLVE":
        return eqneighbor_propagator(*gate.params)
    raise ValueError(f"unknown gate kind {kind!r}")


def decompose_ccr(angle: float, polarity: str = "11") -> list[Gate]:
    """Two-qubit-gate realization of the doubly controlled phase rotation.

    For polarity "11" the returned sequence composes to
    gate_matrix(ccr(angle)).  For polarity "00" the closed-control gate is
    conjugated with bit flips on both controls, which also negates the
    useful angle: the sequence composes to gate_matrix(ccr_open(-angle)).
    """
    if polarity not in ("11", "00"):
        raise ValueError("polarity must be '11' or '00'")
    if not math.isfinite(angle):
        raise ValueError("angle must be finite")
    signed = angle if polarity == "11" else -angle
    core = [
        cr(2, 3, signed / 2.0),
        cnot(1, 2),
        cr(2, 3, -signed / 2.0),
        cnot(1, 2),
        cr(1, 3, signed / 2.0),
    ]
    if polarity == "11":
        return core
    flips = [not_gate(1), not_gate(2)]
    return flips + core + flips


def rotation_angle(theta: float) -> float:
    """Preparation angle 2*arccos(lam) used by the first circuit."""
    return 2.0 * math.acos(mpcc_params(theta).lam)


def circuit_mpcc_v1(theta: float) -> Circuit:
    """First realization: one y-rotation, one controlled Hadamard, three CNOTs."""
    return Circuit(
        (
            roty(3, rotation_angle(theta)),
            ch(3, 2),
            cnot(1, 3),
            cnot(2, 1),
            cnot(3, 2),
        )
    )


# --- exchange-interaction realization -------------------------------------

_LOWER = np.array([[0, 0], [1, 0]], dtype=np.complex128)  # |1><0|
_RAISE = np.array([[0, 1], [0, 0]], dtype=np.complex128)  # |0><1|


def eqneighbor_hamiltonian(kappa: float) -> np.ndarray:
    """Exchange Hamiltonian coupling every qubit pair with equal strength.

    H = (kappa/2) * sum over ordered pairs n != m of
    raise_n lower_m + lower_n raise_m.  Conserves the excitation number;
    within each single-defect sector every pair of basis states is coupled
    with matrix element kappa.
    """
    if not math.isfinite(kappa):
        raise ValueError("coupling rate must be finite")
    h = np.zeros((8, 8), dtype=np.complex128)
    for n in range(1, 4):
        for m in range(1, 4):
            if n == m:
                continue
            h += _embed_single(_RAISE, n) @ _embed_single(_LOWER, m)
            h += _embed_single(_LOWER, n) @ _embed_single(_RAISE, m)
    return (kappa / 2.0) * h


def eqneighbor_propagator(t: float, kappa: float) -> np.ndarray:
    """Propagator exp(-iHt) of the exchange Hamiltonian, by eigendecomposition."""
    if not math.isfinite(t):
        raise ValueError("evolution time must be finite")
    h = eqneighbor_hamiltonian(kappa)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def propagator_coefficients(t: float, kappa: float) -> tuple[complex, complex]:
    """Closed-form (stay, hop) amplitudes of the single-defect evolution.

    stay = (exp(-2i*k*t) + 2 exp(i*k*t)) / 3 is the amplitude to remain on
    the initial basis state, hop the amplitude on each of the other two;
    |stay|^2 + 2|hop|^2 = 1.  The same pair governs both defect numbers.
    """
    kt = kappa * t
    stay = (cmath.exp(-2j * kt) + 2.0 * cmath.exp(1j * kt)) / 3.0
    hop = (2.0 / 3.0) * math.sin(1.5 * kt) * cmath.exp(-0.5j * (math.pi + kt))
    return stay, hop


def interaction_time(theta: float, kappa: float) -> float:
    """Interaction time that loads the optimal mixing amplitude.

    Chosen so sqrt(2)*|hop amplitude| equals lam_bar:
    t = (2 / (3 kappa)) * arcsin(3 lam_bar / (2 sqrt(2))).
    """
    if not math.isfinite(kappa) or kappa <= 0.0:
        raise ValueError("coupling rate must be positive")
    lam_bar = mpcc_params(theta).lam_bar
    return (2.0 / (3.0 * kappa)) * math.asin(1.5 * lam_bar / SQRT2)


def circuit_mpcc_v2(theta: float, kappa: float = 1.0) -> Circuit:
    """Second realization: CNOT preparation, exchange evolution, phase repair.

    After the first three gates an input a|000> + b|100> sits at
    a|001> + b|110> exactly; the evolution then distributes amplitude and
    the two conditional phase rotations undo the relative phase
    2*(arg stay - arg hop) it picked up.
    """
    t = interaction_time(theta, kappa)
    stay, hop = propagator_coefficients(t, kappa)
    correction = 2.0 * (cmath.phase(stay) - cmath.phase(hop))
    return Circuit(
        (
            cnot(1, 2),
            cnot(1, 3),
            not_gate(3),
            evolve_gate(t, kappa),
            ccr(correction),
            ccr_open(-correction),
            not_gate(3),
        )
    )


def run_circuit(circuit: Circuit, psi: np.ndarray) -> np.ndarray:
    """Apply a circuit to a three-qubit state vector."""
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (8,):
        raise ValueError("circuit input must be a three-qubit state vector")
    for gate in circuit.gates:
        psi = gate_matrix(gate) @ psi
    return psi


def circuit_matrix(circuit: Circuit) -> np.ndarray:
    """Composed 8x8 unitary of a circuit."""
    out = np.eye(8, dtype=np.complex128)
    for gate in circuit.gates:
        out = gate_matrix(gate) @ out
    return out


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-10):
    """Whether two unit vectors agree up to a global phase.

    Returns (equal, residual) with residual = 1 - |<a|b>|.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("states must have equal shape")
    residual = 1.0 - abs(complex(np.vdot(a, b)))
    return residual <= tol, residual


def serialize_circuit(circuit: Circuit) -> str:
    """One gate per line: KIND, qubit indices, then angles (17 significant digits)."""
    lines = []
    for g in circuit.gates:
        parts = [g.kind, *(str(q) for q in g.qubits), *(f"{p:.17g}" for p in g.params)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    """Inverse of serialize_circuit; blank lines and # comments are skipped."""
    gates = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind not in GATE_ARITY:
            raise ValueError(f"unknown gate kind {kind!r}")
        n_qubits, n_params = GATE_ARITY[kind]
        if len(tokens) != 1 + n_qubits + n_params:
            raise ValueError(f"bad token count in line {line!r}")
        qubits = tuple(int(tok) for tok in tokens[1 : 1 + n_qubits])
        params = tuple(float(tok) for tok in tokens[1 + n_qubits :])
        gates.append(Gate(kind, qubits, params))
    return Circuit(tuple(gates))
