"""The eavesdropper's ancilla attack: declaration, validation, application.

An attack couples the travel qubit to a private ancilla with a joint
unitary.  Everything the eavesdropper can later examine lives on the
travel⊗ancilla factor; the home qubit (bell mode) is never touched.
"""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from . import qlinalg

if TYPE_CHECKING:
    from .protocol import ProtocolConfig

_SQRT_HALF = np.sqrt(0.5)

BUILTIN_ATTACK_NAMES = ("identity", "counterexample", "cnot")


class InvalidAttackError(ValueError):
    """An attack with reported violations was applied anyway."""


@dataclasses.dataclass(frozen=True, eq=False)
class AttackSpec:
    """Eavesdropping strategy: ancilla preparation plus coupling unitary.

    ``ancilla_state`` is the ancilla's initial pure state (length
    ``ancilla_dim``) and ``unitary`` acts on travel⊗ancilla, so it is
    (2·ancilla_dim)-dimensional.

    Arrays are stored raw: malformed strategies (wrong norm, non-unitary
    coupling, bad shapes) are representable so that ``validate_attack``
    can report them.  Every consumer that applies an attack validates
    first and raises InvalidAttackError on violations.
    """

    ancilla_dim: int
    ancilla_state: NDArray[np.complex128]
    unitary: NDArray[np.complex128]

    def __post_init__(self) -> None:
        chi = np.array(self.ancilla_state, dtype=complex)
        u = np.array(self.unitary, dtype=complex)
        chi.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "ancilla_state", chi)
        object.__setattr__(self, "unitary", u)

    @property
    def composite_dim(self) -> int:
        return 2 * self.ancilla_dim


@dataclasses.dataclass(frozen=True, eq=False)
class EncodingEnsemble:
    """Post-encoding mixture on travel⊗ancilla: (probability, state) members."""

    members: tuple[tuple[float, qlinalg.DensityMatrix], ...]
    config: "ProtocolConfig"

    def __post_init__(self) -> None:
        total = sum(p for p, _ in self.members)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"member probabilities sum to {total:.12g}, not 1")

    def average(self) -> qlinalg.DensityMatrix:
        """Probability-weighted mixture Σ p_j ρ_j of the members."""
        acc = sum(p * rho.entries for p, rho in self.members)
        return qlinalg.DensityMatrix(acc)


def validate_attack(spec: AttackSpec) -> list[str]:
    """Check every attack invariant; returns violations with measured deviations.

    Never raises: an empty list means the attack is valid.
    """
    violations: list[str] = []
    if int(spec.ancilla_dim) < 1 or spec.ancilla_dim != int(spec.ancilla_dim):
        violations.append(f"ancilla_dim {spec.ancilla_dim!r} is not a positive integer")
        return violations
    dim = 2 * int(spec.ancilla_dim)
    chi = spec.ancilla_state
    if chi.ndim != 1 or chi.size != spec.ancilla_dim:
        violations.append(
            f"ancilla state shape {chi.shape} does not match ancilla_dim {spec.ancilla_dim}"
        )
    else:
        norm = float(np.linalg.norm(chi))
        if abs(norm - 1.0) > qlinalg.ATOL_NORM:
            violations.append(f"ancilla state norm {norm:.12g} differs from 1 by {abs(norm - 1.0):.3g}")
    u = spec.unitary
    if u.ndim != 2 or u.shape != (dim, dim):
        violations.append(f"unitary shape {u.shape} is not ({dim}, {dim})")
    elif not qlinalg.is_unitary(u, qlinalg.ATOL_UNITARY):
        dev = float(np.max(np.abs(u.conj().T @ u - np.eye(dim))))
        violations.append(f"coupling matrix is not unitary: max |U†U - I| = {dev:.3g}")
    return violations


def _require_valid(spec: AttackSpec) -> None:
    violations = validate_attack(spec)
    if violations:
        raise InvalidAttackError("; ".join(violations))


def _attacked_pure_state(spec: AttackSpec, config: "ProtocolConfig") -> np.ndarray:
    """Amplitudes after the forward-leg attack.

    Simplified mode: U(|b>⊗|χ>) on travel⊗ancilla.  Bell mode:
    (I_home⊗U)(|pair>⊗|χ>) on home⊗travel⊗ancilla.
    """
    chi = spec.ancilla_state
    psi0 = np.kron(config.bob_initial.amplitudes, chi)
    if config.mode == "bell":
        full = np.kron(np.eye(2, dtype=complex), spec.unitary)
    else:
        full = spec.unitary
    if full.shape[0] != psi0.size:
        raise qlinalg.DimensionMismatchError(
            f"attack dimension {spec.unitary.shape[0]} does not fit mode {config.mode!r}"
        )
    return full @ psi0


def apply_attack(spec: AttackSpec, config: "ProtocolConfig") -> qlinalg.DensityMatrix:
    """Attacked pre-encoding composite state.

    Returns the full density matrix: travel⊗ancilla in simplified mode,
    home⊗travel⊗ancilla in bell mode.  Trace is preserved within 1e-12.
    """
    _require_valid(spec)
    psi = _attacked_pure_state(spec, config)
    return qlinalg.DensityMatrix(np.outer(psi, psi.conj()))


def post_encoding_ensemble(spec: AttackSpec, config: "ProtocolConfig") -> EncodingEnsemble:
    """Mixture the eavesdropper faces after the message-mode encoding.

    Member j carries the prior of encoding op j and the state
    (A_j⊗I_anc)ρ'(A_j⊗I_anc)† on travel⊗ancilla; in bell mode the home
    qubit is traced out first since it is never accessible.
    """
    _require_valid(spec)
    rho = apply_attack(spec, config)
    if config.mode == "bell":
        rho = qlinalg.partial_trace(rho, (2, 2, spec.ancilla_dim), (1, 2))
    eye_anc = np.eye(spec.ancilla_dim, dtype=complex)
    members = []
    for op, prior in zip(config.encoding_ops, config.priors):
        lifted = np.kron(op.entries, eye_anc)
        members.append(
            (prior, qlinalg.DensityMatrix(lifted @ rho.entries @ lifted.conj().T))
        )
    return EncodingEnsemble(members=tuple(members), config=config)


def detection_probability(spec: AttackSpec, config: "ProtocolConfig") -> float:
    """Probability a single control round flags the attack.

    Simplified mode: Alice measures the travel qubit in the basis
    containing the sent state |b>, so d = 1 - <b|ρ'_t|b>.  Bell mode:
    Alice and Bob compare computational-basis outcomes on travel and
    home; the unattacked pair is perfectly anticorrelated, so d is the
    probability the outcomes are equal.
    """
    rho = apply_attack(spec, config)
    if config.mode == "bell":
        rho_ht = qlinalg.partial_trace(rho, (2, 2, spec.ancilla_dim), (0, 1))
        probs = np.real(np.diag(rho_ht.entries))
        d = float(probs[0] + probs[3])
    else:
        b = config.bob_initial.amplitudes
        rho_t = qlinalg.partial_trace(rho, (2, spec.ancilla_dim), 0)
        d = 1.0 - float(np.real(np.vdot(b, rho_t.entries @ b)))
    return min(max(d, 0.0), 1.0)


def _counterexample_unitary() -> np.ndarray:
    # Eight outer-product terms |row><col| with coefficient ±sqrt(1/2);
    # algebraically a 45-degree rotation of the travel qubit alone.
    terms = (
        (0, 0, +1.0),
        (0, 2, -1.0),
        (1, 1, +1.0),
        (1, 3, -1.0),
        (2, 0, +1.0),
        (2, 2, +1.0),
        (3, 1, +1.0),
        (3, 3, +1.0),
    )
    u = np.zeros((4, 4), dtype=complex)
    for row, col, sign in terms:
        u[row, col] += sign
    return _SQRT_HALF * u


def builtin_attack(name: str) -> AttackSpec:
    """Named reference attacks.

    ``identity``: qubit ancilla left in |0>, no coupling.
    ``counterexample``: ancilla prepared in (|0>+|1>)/√2 and a coupling
    equal to a 45-degree travel-qubit rotation tensored with identity;
    the classic detectable-but-informative example this package audits.
    ``cnot``: travel qubit controls a NOT on a |0> ancilla.
    """
    if name == "identity":
        return AttackSpec(
            ancilla_dim=2,
            ancilla_state=np.array([1.0, 0.0], dtype=complex),
            unitary=np.eye(4, dtype=complex),
        )
    if name == "counterexample":
        return AttackSpec(
            ancilla_dim=2,
            ancilla_state=np.array([_SQRT_HALF, _SQRT_HALF], dtype=complex),
            unitary=_counterexample_unitary(),
        )
    if name == "cnot":
        cnot = np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
        )
        return AttackSpec(
            ancilla_dim=2,
            ancilla_state=np.array([1.0, 0.0], dtype=complex),
            unitary=cnot,
        )
    raise ValueError(f"unknown builtin attack {name!r}; known: {BUILTIN_ATTACK_NAMES}")
