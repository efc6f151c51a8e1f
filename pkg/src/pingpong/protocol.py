"""Ping-pong protocol state machine.

Bob keeps a home qubit (bell mode) and sends a travel qubit to Alice.
A round is either a control round, where Alice measures and the result
is compared publicly, or a message round, where Alice encodes a bit
with a local unitary and returns the qubit for Bob to decode.  The
eavesdropper acts once, on the forward leg.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable

import numpy as np

from . import attack as attack_mod
from . import qlinalg

MODES = ("simplified", "bell")
ENCODING_NAMES = ("iz", "paulis")

_SQRT_HALF = math.sqrt(0.5)


def bell_pair() -> qlinalg.StateVector:
    """The anticorrelated pair (|01> + |10>)/√2 over (home, travel)."""
    return qlinalg.StateVector([0.0, _SQRT_HALF, _SQRT_HALF, 0.0])


def encoding_set(name: str) -> tuple[tuple[qlinalg.UnitaryOperator, ...], tuple[float, ...]]:
    """Named encoding-operation sets with their priors.

    ``iz``: phase encoding {identity, Z}, equal priors.
    ``paulis``: the four-operation set {identity, Z, X, XZ}, equal priors.
    """
    if name == "iz":
        ops = (
            qlinalg.UnitaryOperator(qlinalg.PAULI_I),
            qlinalg.UnitaryOperator(qlinalg.PAULI_Z),
        )
        return ops, (0.5, 0.5)
    if name == "paulis":
        ops = (
            qlinalg.UnitaryOperator(qlinalg.PAULI_I),
            qlinalg.UnitaryOperator(qlinalg.PAULI_Z),
            qlinalg.UnitaryOperator(qlinalg.PAULI_X),
            qlinalg.UnitaryOperator(qlinalg.PAULI_X @ qlinalg.PAULI_Z),
        )
        return ops, (0.25, 0.25, 0.25, 0.25)
    raise ValueError(f"unknown encoding {name!r}; known: {ENCODING_NAMES}")


@dataclasses.dataclass(frozen=True, eq=False)
class ProtocolConfig:
    """Protocol variant and its fixed choices.

    ``bob_initial`` is the travel qubit Bob sends in simplified mode; in
    bell mode it is pinned to the anticorrelated pair over (home, travel).
    ``encoding_ops``/``priors`` define Alice's message-mode operations on
    the travel qubit.  ``control_probability`` only schedules Monte Carlo
    rounds; analytic quantities ignore it.
    """

    mode: str
    bob_initial: qlinalg.StateVector
    encoding_ops: tuple[qlinalg.UnitaryOperator, ...]
    priors: tuple[float, ...]
    control_probability: float = 0.5

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; known: {MODES}")
        object.__setattr__(self, "encoding_ops", tuple(self.encoding_ops))
        object.__setattr__(self, "priors", tuple(float(p) for p in self.priors))
        if len(self.encoding_ops) != len(self.priors) or not self.encoding_ops:
            raise ValueError("encoding_ops and priors must be non-empty and equal length")
        if any(op.dim != 2 for op in self.encoding_ops):
            raise qlinalg.DimensionMismatchError("encoding ops act on the travel qubit (dim 2)")
        if any(p < 0 for p in self.priors):
            raise ValueError("priors must be non-negative")
        total = sum(self.priors)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"priors sum to {total:.12g}, not 1 within 1e-12")
        if not 0.0 <= self.control_probability <= 1.0:
            raise ValueError(f"control_probability {self.control_probability} outside [0, 1]")
        expected_dim = 4 if self.mode == "bell" else 2
        if self.bob_initial.dim != expected_dim:
            raise qlinalg.DimensionMismatchError(
                f"mode {self.mode!r} needs a {expected_dim}-dimensional initial state"
            )
        if self.mode == "bell":
            dev = float(np.max(np.abs(self.bob_initial.amplitudes - bell_pair().amplitudes)))
            if dev > 1e-12:
                raise ValueError("bell mode uses the fixed pair (|01> + |10>)/√2")


def make_config(
    mode: str = "simplified",
    bob_initial: qlinalg.StateVector | None = None,
    encoding: str = "iz",
    control_probability: float = 0.5,
) -> ProtocolConfig:
    """Convenience constructor with the default choices.

    Simplified mode defaults to sending |0>; bell mode always uses the
    anticorrelated pair.
    """
    if bob_initial is None:
        bob_initial = bell_pair() if mode == "bell" else qlinalg.basis_state(2, 0)
    ops, priors = encoding_set(encoding)
    return ProtocolConfig(
        mode=mode,
        bob_initial=bob_initial,
        encoding_ops=ops,
        priors=priors,
        control_probability=control_probability,
    )


@dataclasses.dataclass(frozen=True)
class RoundOutcome:
    """Audit record of a single protocol round.

    Control rounds carry ``detected`` and no decoded bit; message rounds
    carry ``decoded_bit`` (possibly None when undecodable) and no
    ``detected`` flag.
    """

    round_kind: str
    detected: bool | None
    decoded_bit: int | None
    transcript: tuple[tuple[str, str, object], ...] = ()

    def __post_init__(self) -> None:
        if self.round_kind not in ("control", "message"):
            raise ValueError(f"unknown round kind {self.round_kind!r}")
        if self.round_kind == "control" and (self.detected is None or self.decoded_bit is not None):
            raise ValueError("control rounds set detected and leave decoded_bit unset")
        if self.round_kind == "message" and self.detected is not None:
            raise ValueError("message rounds leave detected unset")


def prepare_initial(config: ProtocolConfig) -> qlinalg.StateVector:
    """State Bob sends before any interference: |b> or the entangled pair."""
    return config.bob_initial


def _control_distribution(
    config: ProtocolConfig, spec: attack_mod.AttackSpec
) -> tuple[float, np.ndarray]:
    """Analytic d plus the exact outcome distribution the sampler draws from."""
    d = attack_mod.detection_probability(spec, config)
    rho = attack_mod.apply_attack(spec, config)
    if config.mode == "bell":
        rho_ht = qlinalg.partial_trace(rho, (2, 2, spec.ancilla_dim), (0, 1))
        probs = np.clip(np.real(np.diag(rho_ht.entries)), 0.0, None)
    else:
        # Outcome 0 = travel found in the sent state, 1 = orthogonal to it.
        probs = np.array([1.0 - d, d])
    return d, probs / probs.sum()


def run_control_round(
    config: ProtocolConfig, spec: attack_mod.AttackSpec
) -> tuple[float, Callable[[np.random.Generator], RoundOutcome]]:
    """Analytic detection probability plus a sampler of single rounds.

    Simplified mode: Alice measures the travel qubit in the basis that
    contains the sent state, so d = 1 - <b|ρ'_t|b>.  Bell mode: Alice and
    Bob measure travel and home in the computational basis; equal
    outcomes flag tampering since the clean pair is anticorrelated.
    The sampler draws from the exact joint outcome distribution.
    """
    d, probs = _control_distribution(config, spec)
    bell = config.mode == "bell"

    def sampler(rng: np.random.Generator) -> RoundOutcome:
        idx = int(rng.choice(probs.size, p=probs))
        if bell:
            home, travel = divmod(idx, 2)
            detected = home == travel
            transcript = (
                ("alice", "measure_travel", travel),
                ("bob", "measure_home", home),
                ("public", "compare", "equal" if detected else "anticorrelated"),
            )
        else:
            detected = idx == 1
            transcript = (
                ("alice", "measure_travel", idx),
                ("public", "compare", "mismatch" if detected else "match"),
            )
        return RoundOutcome(
            round_kind="control", detected=detected, decoded_bit=None, transcript=transcript
        )

    return d, sampler


@dataclasses.dataclass(frozen=True)
class MessageRoundResult:
    """Outcome of one message round.

    ``final_state`` is the post-encoding joint state (home⊗travel⊗ancilla
    in bell mode, travel⊗ancilla otherwise), before Bob's measurement.
    ``decode_probabilities`` maps encoding index to the probability Bob's
    measurement reports it; ``failure_probability`` is the weight of the
    outcome outside every decode projector.  When the encoded states are
    not mutually orthogonal no decoding is defined: decoded_bit is None
    and the distribution fields are None.
    """

    final_state: qlinalg.DensityMatrix
    decoded_bit: int | None
    decode_probabilities: tuple[float, ...] | None
    failure_probability: float | None
    orthogonal_decoding: bool


def _decode_candidates(config: ProtocolConfig) -> list[np.ndarray] | None:
    """Normalized states Bob distinguishes; None if they are not orthogonal."""
    base = config.bob_initial.amplitudes
    candidates = []
    for op in config.encoding_ops:
        lifted = np.kron(np.eye(2, dtype=complex), op.entries) if config.mode == "bell" else op.entries
        candidates.append(lifted @ base)
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            if abs(np.vdot(candidates[i], candidates[j])) > 1e-10:
                return None
    return candidates


def _decode_distribution(
    config: ProtocolConfig, spec: attack_mod.AttackSpec, bit: int
) -> tuple[qlinalg.DensityMatrix, tuple[float, ...] | None, float | None]:
    rho = attack_mod.apply_attack(spec, config)
    op = config.encoding_ops[bit].entries
    if config.mode == "bell":
        lifted = np.kron(np.kron(np.eye(2, dtype=complex), op), np.eye(spec.ancilla_dim, dtype=complex))
    else:
        lifted = np.kron(op, np.eye(spec.ancilla_dim, dtype=complex))
    final = qlinalg.DensityMatrix(lifted @ rho.entries @ lifted.conj().T)
    candidates = _decode_candidates(config)
    if candidates is None:
        return final, None, None
    eye_anc = np.eye(spec.ancilla_dim, dtype=complex)
    probs = []
    for cand in candidates:
        proj = np.kron(np.outer(cand, cand.conj()), eye_anc)
        probs.append(max(0.0, float(np.real(np.trace(proj @ final.entries)))))
    failure = max(0.0, 1.0 - sum(probs))
    return final, tuple(probs), failure


def run_message_round(
    config: ProtocolConfig,
    spec: attack_mod.AttackSpec,
    bit: int,
    rng: np.random.Generator | None = None,
) -> MessageRoundResult:
    """One message round: prepare, attack, encode, return, decode.

    Bob's decoding measures the projectors onto the encoded images of the
    initial state (their orthogonality is what makes decoding possible).
    Without an rng the reported decoded_bit is the modal outcome, so the
    call is deterministic; with an rng the outcome is sampled.  With the
    identity attack the decoded bit always equals ``bit``.
    """
    if not 0 <= bit < len(config.encoding_ops):
        raise ValueError(f"bit {bit!r} does not index {len(config.encoding_ops)} encoding ops")
    final, probs, failure = _decode_distribution(config, spec, bit)
    if probs is None:
        return MessageRoundResult(
            final_state=final,
            decoded_bit=None,
            decode_probabilities=None,
            failure_probability=None,
            orthogonal_decoding=False,
        )
    outcomes = list(probs) + [failure]
    if rng is None:
        decoded = int(np.argmax(outcomes))
    else:
        weights = np.clip(np.array(outcomes), 0.0, None)
        decoded = int(rng.choice(len(outcomes), p=weights / weights.sum()))
    decoded_bit = None if decoded == len(probs) else decoded
    return MessageRoundResult(
        final_state=final,
        decoded_bit=decoded_bit,
        decode_probabilities=probs,
        failure_probability=failure,
        orthogonal_decoding=True,
    )


@dataclasses.dataclass(frozen=True)
class MonteCarloStats:
    """Seeded simulation tallies; identical seeds give identical stats."""

    empirical_d: float
    empirical_decode_accuracy: float
    counts: dict[str, int]


def monte_carlo(
    config: ProtocolConfig, spec: attack_mod.AttackSpec, rounds: int, seed: int
) -> MonteCarloStats:
    """Simulate ``rounds`` protocol rounds and tally the outcomes.

    Round kinds follow ``config.control_probability``; message bits follow
    the encoding priors.  ``empirical_d`` is the detected fraction of
    control rounds (nan with none), ``empirical_decode_accuracy`` the
    correctly decoded fraction of message rounds (undecodable rounds count
    as incorrect; nan with no message rounds).
    """
    if rounds < 1:
        raise ValueError(f"rounds must be >= 1, got {rounds}")
    rng = np.random.default_rng(seed)
    d, _ = run_control_round(config, spec)
    is_control = rng.random(rounds) < config.control_probability
    n_control = int(is_control.sum())
    n_message = rounds - n_control
    detections = int((rng.random(n_control) < d).sum())

    n_ops = len(config.encoding_ops)
    bits = rng.choice(n_ops, size=n_message, p=np.array(config.priors))
    per_bit = [_decode_distribution(config, spec, b)[1:] for b in range(n_ops)]
    decodable = all(probs is not None for probs, _ in per_bit)
    if n_message and decodable:
        table = np.array([list(probs) + [failure] for probs, failure in per_bit])
        table = np.clip(table, 0.0, None)
        table /= table.sum(axis=1, keepdims=True)
        draws = rng.random(n_message)
        cumulative = np.cumsum(table[bits], axis=1)
        outcomes = (draws[:, None] > cumulative).sum(axis=1)
        correct = int((outcomes == bits).sum())
        undecoded = int((outcomes == n_ops).sum())
    else:
        correct = 0
        undecoded = n_message
    counts = {
        "rounds": rounds,
        "control_rounds": n_control,
        "message_rounds": n_message,
        "detections": detections,
        "decoded_correct": correct,
        "decoded_wrong": n_message - correct - undecoded,
        "decoded_none": undecoded,
    }
    empirical_d = detections / n_control if n_control else math.nan
    accuracy = correct / n_message if n_message else math.nan
    return MonteCarloStats(
        empirical_d=empirical_d, empirical_decode_accuracy=accuracy, counts=counts
    )
