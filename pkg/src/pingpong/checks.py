"""Named invariant suites behind the ``verify`` command.

Every suite runs with fixed seeds.  A suite's margin is its worst slack
against the stated tolerance: non-negative passes, negative fails.  A
suite that raises is reported as failed rather than crashing the run.
"""

from __future__ import annotations

import dataclasses
import math
import tempfile
from pathlib import Path

import numpy as np

from . import attack as attack_mod
from . import files as files_mod
from . import metrics
from . import protocol as protocol_mod
from . import qlinalg
from . import search as search_mod


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    margin: float
    detail: str


def _result(name: str, tol: float, worst: float, detail: str) -> CheckResult:
    margin = tol - worst
    return CheckResult(name=name, passed=margin >= 0.0, margin=margin, detail=detail)


def _random_density(dim: int, rng: np.random.Generator) -> qlinalg.DensityMatrix:
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = ginibre @ ginibre.conj().T
    return qlinalg.DensityMatrix(rho / np.trace(rho))


def check_entropy_additivity_products() -> CheckResult:
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(200):
        a = _random_density(2, rng)
        b = _random_density(3, rng)
        joint = qlinalg.tensor_product(a, b)
        dev = abs(
            qlinalg.von_neumann_entropy(joint)
            - qlinalg.von_neumann_entropy(a)
            - qlinalg.von_neumann_entropy(b)
        )
        worst = max(worst, dev)
    return _result(
        "entropy_additivity_products", 1e-8, worst,
        f"worst |S(A⊗B) - S(A) - S(B)| = {worst:.3g} over 200 product states",
    )


def check_entropy_unitary_invariance() -> CheckResult:
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(200):
        rho = _random_density(4, rng)
        u = search_mod.haar_random_unitary(4, rng)
        rotated = qlinalg.DensityMatrix(u @ rho.entries @ u.conj().T)
        dev = abs(qlinalg.von_neumann_entropy(rotated) - qlinalg.von_neumann_entropy(rho))
        worst = max(worst, dev)
    return _result(
        "entropy_unitary_invariance", 1e-8, worst,
        f"worst |S(UρU†) - S(ρ)| = {worst:.3g} over 200 pairs",
    )


def check_entropy_maximal_mixing() -> CheckResult:
    worst = 0.0
    for n in (2, 3, 4, 8):
        rho = qlinalg.DensityMatrix(np.eye(n) / n)
        worst = max(worst, abs(qlinalg.von_neumann_entropy(rho) - math.log2(n)))
    return _result(
        "entropy_maximal_mixing", 1e-12, worst,
        f"worst |S(I_n/n) - log2 n| = {worst:.3g} for n in (2, 3, 4, 8)",
    )


def check_entropy_bell_marginal() -> CheckResult:
    pair = qlinalg.to_density(protocol_mod.bell_pair())
    marginal = qlinalg.partial_trace(pair, (2, 2), 1)
    dev = abs(qlinalg.von_neumann_entropy(marginal) - 1.0)
    return _result(
        "entropy_bell_marginal", 1e-12, dev,
        f"|S(marginal) - 1| = {dev:.3g} for the anticorrelated pair",
    )


def check_unitary_norm_preservation() -> CheckResult:
    rng = np.random.default_rng(103)
    worst = 0.0
    for _ in range(200):
        u = search_mod.haar_random_unitary(4, rng)
        s = search_mod.random_pure_state(4, rng)
        worst = max(worst, abs(float(np.linalg.norm(u @ s)) - 1.0))
    return _result(
        "unitary_norm_preservation", 1e-12, worst,
        f"worst |‖Us‖ - 1| = {worst:.3g} over 200 cases",
    )


def check_protocol_noiseless_correctness() -> CheckResult:
    identity = attack_mod.builtin_attack("identity")
    plus = qlinalg.StateVector(np.array([1.0, 1.0]) / math.sqrt(2))
    configs = (
        protocol_mod.make_config("simplified", bob_initial=plus),
        protocol_mod.make_config("bell"),
        protocol_mod.make_config("bell", encoding="paulis"),
    )
    worst = 0.0
    wrong = 0
    for config in configs:
        worst = max(worst, attack_mod.detection_probability(identity, config))
        for bit in range(len(config.encoding_ops)):
            outcome = protocol_mod.run_message_round(config, identity, bit)
            if outcome.decoded_bit != bit:
                wrong += 1
    detail = f"max noiseless d = {worst:.3g}, wrong decodes = {wrong}"
    if wrong:
        return CheckResult("protocol_noiseless_correctness", False, -float(wrong), detail)
    return _result("protocol_noiseless_correctness", 1e-12, worst, detail)


def check_protocol_monte_carlo_agreement() -> CheckResult:
    worst = -math.inf
    for mode in protocol_mod.MODES:
        config = protocol_mod.make_config(mode)
        for name in attack_mod.BUILTIN_ATTACK_NAMES:
            spec = attack_mod.builtin_attack(name)
            d = attack_mod.detection_probability(spec, config)
            stats = protocol_mod.monte_carlo(config, spec, rounds=100_000, seed=42)
            n = stats.counts["control_rounds"]
            sigma = math.sqrt(d * (1.0 - d) / n)
            worst = max(worst, abs(stats.empirical_d - d) - 4.0 * sigma)
    return _result(
        "protocol_monte_carlo_agreement", 0.0, worst,
        f"worst |empirical - analytic| - 4σ = {worst:.3g} over builtins × modes",
    )


def check_detection_range_and_phase() -> CheckResult:
    rng = np.random.default_rng(104)
    worst = 0.0
    for mode in protocol_mod.MODES:
        config = protocol_mod.make_config(mode)
        for _ in range(30):
            spec = search_mod.sample_random_attack(2, rng)
            d = attack_mod.detection_probability(spec, config)
            worst = max(worst, -d, d - 1.0)
            rotated = attack_mod.AttackSpec(
                ancilla_dim=spec.ancilla_dim,
                ancilla_state=spec.ancilla_state,
                unitary=np.exp(0.7345j) * spec.unitary,
            )
            worst = max(worst, abs(attack_mod.detection_probability(rotated, config) - d))
    return _result(
        "detection_range_and_phase", 1e-12, worst,
        f"worst of (range violation, phase-shift |Δd|) = {worst:.3g}",
    )


def check_encoding_fixes_basis_state() -> CheckResult:
    config = protocol_mod.make_config("simplified")
    identity = attack_mod.builtin_attack("identity")
    ensemble = attack_mod.post_encoding_ensemble(identity, config)
    (_, first), (_, second) = ensemble.members
    expected = np.kron(
        np.array([[1.0, 0.0], [0.0, 0.0]]),
        np.outer(identity.ancilla_state, identity.ancilla_state.conj()),
    )
    worst = float(np.max(np.abs(first.entries - second.entries)))
    worst = max(worst, float(np.max(np.abs(first.entries - expected))))
    return _result(
        "encoding_fixes_basis_state", 1e-12, worst,
        f"max member deviation = {worst:.3g} (phase encoding fixes |0>)",
    )


def _random_product_attack(rng: np.random.Generator) -> attack_mod.AttackSpec:
    u_travel = search_mod.haar_random_unitary(2, rng)
    u_anc = search_mod.haar_random_unitary(2, rng)
    return attack_mod.AttackSpec(
        ancilla_dim=2,
        ancilla_state=search_mod.random_pure_state(2, rng),
        unitary=np.kron(u_travel, u_anc),
    )


def check_product_attack_ancilla_pure() -> CheckResult:
    rng = np.random.default_rng(105)
    worst = 0.0
    for mode in protocol_mod.MODES:
        config = protocol_mod.make_config(mode)
        for _ in range(50):
            spec = _random_product_attack(rng)
            for _, member in attack_mod.post_encoding_ensemble(spec, config).members:
                anc = qlinalg.partial_trace(member, (2, 2), 1)
                worst = max(worst, qlinalg.von_neumann_entropy(anc))
    return _result(
        "product_attack_ancilla_pure", 1e-8, worst,
        f"worst member S(ancilla) = {worst:.3g} over 100 product attacks",
    )


def check_attack_global_phase_invariance() -> CheckResult:
    rng = np.random.default_rng(106)
    config = protocol_mod.make_config("simplified")
    worst = 0.0
    for _ in range(50):
        spec = search_mod.sample_random_attack(2, rng)
        rotated = attack_mod.AttackSpec(
            ancilla_dim=spec.ancilla_dim,
            ancilla_state=spec.ancilla_state,
            unitary=np.exp(1.234j) * spec.unitary,
        )
        base = attack_mod.post_encoding_ensemble(spec, config)
        shifted = attack_mod.post_encoding_ensemble(rotated, config)
        for (_, a), (_, b) in zip(base.members, shifted.members):
            worst = max(worst, float(np.max(np.abs(a.entries - b.entries))))
    return _result(
        "attack_global_phase_invariance", 1e-12, worst,
        f"worst member change under e^(iφ)U = {worst:.3g} over 50 attacks",
    )


def check_dephased_travel_marginal() -> CheckResult:
    rng = np.random.default_rng(107)
    config = protocol_mod.make_config("simplified")
    worst = 0.0
    for _ in range(100):
        spec = search_mod.sample_random_attack(2, rng)
        avg = attack_mod.post_encoding_ensemble(spec, config).average()
        travel = qlinalg.partial_trace(avg, (2, 2), 0)
        worst = max(worst, abs(travel.entries[0, 1]), abs(travel.entries[1, 0]))
    return _result(
        "dephased_travel_marginal", 1e-12, worst,
        f"worst off-diagonal of the averaged travel marginal = {worst:.3g}",
    )


def check_travel_entropy_binary_identity() -> CheckResult:
    config = protocol_mod.make_config("simplified")
    worst = 0.0
    for seed in range(300):
        spec = search_mod.sample_random_attack(2, seed)
        report = metrics.information_report(spec, config)
        worst = max(worst, abs(report.i0t - metrics.binary_entropy(report.d)))
    return _result(
        "travel_entropy_binary_identity", 1e-10, worst,
        f"worst |i0t - H(d)| = {worst:.3g} over 300 random attacks",
    )


def check_holevo_within_entropy() -> CheckResult:
    rng = np.random.default_rng(108)
    worst = 0.0
    for mode in protocol_mod.MODES:
        config = protocol_mod.make_config(mode)
        for _ in range(50):
            report = metrics.information_report(search_mod.sample_random_attack(2, rng), config)
            worst = max(
                worst,
                report.holevo_t - report.i0t,
                report.holevo_c - report.i0c,
                -report.holevo_t - 1e-9,
                -report.holevo_c - 1e-9,
            )
    return _result(
        "holevo_within_entropy", 1e-8, worst,
        f"worst Holevo excess over entropy = {worst:.3g} over 100 attacks",
    )


def check_product_attack_composite_travel() -> CheckResult:
    rng = np.random.default_rng(109)
    config = protocol_mod.make_config("simplified")
    worst = 0.0
    for _ in range(100):
        report = metrics.information_report(_random_product_attack(rng), config)
        worst = max(worst, abs(report.i0c - report.i0t), report.i0a)
    return _result(
        "product_attack_composite_travel", 1e-8, worst,
        f"worst of (|i0c - i0t|, i0a) = {worst:.3g} over 100 product attacks",
    )


def check_entropy_inequalities_random() -> CheckResult:
    worst = -math.inf
    for mode in protocol_mod.MODES:
        config = protocol_mod.make_config(mode)
        for seed in range(500):
            report = metrics.information_report(search_mod.sample_random_attack(2, seed), config)
            diag = metrics.entropy_inequality_check(report)
            margin = min(diag.margins.values())
            worst = max(worst, -margin)
    return _result(
        "entropy_inequalities_random", 1e-8, worst,
        f"worst inequality deficit = {worst:.3g} over 500 attacks × 2 modes",
    )


def check_family_builds_valid_attacks() -> CheckResult:
    rng = np.random.default_rng(110)
    bad = 0
    for family in (search_mod.full_unitary_family(2), search_mod.product_family(2)):
        for _ in range(50):
            theta = rng.uniform(-math.pi, math.pi, family.param_count)
            if attack_mod.validate_attack(family.build(theta)):
                bad += 1
    return CheckResult(
        "family_builds_valid_attacks",
        passed=bad == 0,
        margin=0.0 if bad == 0 else -float(bad),
        detail=f"{bad} invalid builds over 100 sampled parameter vectors",
    )


def check_parameterized_unitary_basics() -> CheckResult:
    rng = np.random.default_rng(111)
    ident = search_mod.parameterize_unitary(np.zeros(16), 4)
    worst = float(np.max(np.abs(ident.entries - np.eye(4))))
    for _ in range(100):
        theta = rng.uniform(-math.pi, math.pi, 16)
        u = search_mod.parameterize_unitary(theta, 4).entries
        worst = max(worst, float(np.max(np.abs(u.conj().T @ u - np.eye(4)))) - 0.0)
    return _result(
        "parameterized_unitary_basics", 1e-9, worst,
        f"worst of (|U(0) - I|, unitarity residual) = {worst:.3g}",
    )


def check_search_point_self_consistency() -> CheckResult:
    family = search_mod.full_unitary_family(2)
    config = protocol_mod.make_config("simplified")
    cfg = search_mod.SweepConfig(
        d_grid=(0.5,), restarts=2, budget_per_restart=600, seed=11, objectives=("i0t",)
    )
    first = search_mod.sweep(family, config, cfg)
    second = search_mod.sweep(family, config, cfg)
    point = first.points[0]
    if not point.feasible:
        return CheckResult(
            "search_point_self_consistency", False, -1.0,
            "search found no feasible point at d_target = 0.5",
        )
    re_report = metrics.information_report(family.build(np.array(point.theta_best)), config)
    worst = max(
        abs(point.d_achieved - point.d_target) - cfg.detection_tolerance,
        abs(re_report.i0t - point.best_i0t) - 1e-10,
        abs(point.best_i0t - metrics.binary_entropy(point.d_achieved)) - 1e-8,
        0.0 if first == second else 1.0,
        float(point.evaluations - cfg.restarts * cfg.budget_per_restart),
    )
    return _result(
        "search_point_self_consistency", 0.0, worst,
        f"best i0t = {point.best_i0t:.6f} at d = {point.d_achieved:.6f} "
        f"in {point.evaluations} evaluations; reruns identical = {first == second}",
    )


def check_attack_file_round_trip() -> CheckResult:
    rng = np.random.default_rng(112)
    specs = [attack_mod.builtin_attack("counterexample"), search_mod.sample_random_attack(2, rng)]
    worst = 0.0
    with tempfile.TemporaryDirectory() as tmp:
        for i, spec in enumerate(specs):
            path = Path(tmp) / f"attack_{i}.json"
            files_mod.save_attack(spec, path)
            loaded = files_mod.load_attack(path)
            worst = max(
                worst,
                float(np.max(np.abs(loaded.ancilla_state - spec.ancilla_state))),
                float(np.max(np.abs(loaded.unitary - spec.unitary))),
                float(len(attack_mod.validate_attack(loaded))),
            )
    return _result(
        "attack_file_round_trip", 1e-12, worst,
        f"worst save/load array deviation = {worst:.3g}",
    )


ALL_CHECKS = (
    check_entropy_additivity_products,
    check_entropy_unitary_invariance,
    check_entropy_maximal_mixing,
    check_entropy_bell_marginal,
    check_unitary_norm_preservation,
    check_protocol_noiseless_correctness,
    check_protocol_monte_carlo_agreement,
    check_detection_range_and_phase,
    check_encoding_fixes_basis_state,
    check_product_attack_ancilla_pure,
    check_attack_global_phase_invariance,
    check_dephased_travel_marginal,
    check_travel_entropy_binary_identity,
    check_holevo_within_entropy,
    check_product_attack_composite_travel,
    check_entropy_inequalities_random,
    check_family_builds_valid_attacks,
    check_parameterized_unitary_basics,
    check_search_point_self_consistency,
    check_attack_file_round_trip,
)


def run_all() -> list[CheckResult]:
    """Run every suite; a raising suite is reported failed, not fatal."""
    results = []
    for check in ALL_CHECKS:
        name = check.__name__.removeprefix("check_")
        try:
            results.append(check())
        except Exception as exc:  # pragma: no cover - only on injected faults
            results.append(
                CheckResult(name=name, passed=False, margin=-math.inf, detail=f"raised {exc!r}")
            )
    return results
