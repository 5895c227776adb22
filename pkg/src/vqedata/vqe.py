"""Multi-restart BFGS energy minimization over ansatz parameters."""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from .ansatz import AnsatzSpec, build_ansatz, parameter_init
from .pauli import PauliSum
from .seeding import derive_seed
from .simulator import energy_and_gradient


@dataclass(frozen=True)
class OptimizerConfig:
    gtol: float = 1e-5
    maxiter: int = 1000
    restarts: int = 10
    wolfe_c1: float = 1e-4
    wolfe_c2: float = 0.9

    def __post_init__(self):
        if self.gtol <= 0:
            raise ValueError("gtol must be positive")
        if self.maxiter < 1:
            raise ValueError("maxiter must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if not 0 < self.wolfe_c1 < self.wolfe_c2 < 1:
            raise ValueError("need 0 < c1 < c2 < 1")


@dataclass(frozen=True)
class OptimizationTrace:
    iterations: int
    energy: float
    grad_norm: float
    reason: str  # tolerance | max_iter | line_search_failure


@dataclass
class CircuitRecord:
    """One optimized circuit: its grid cell, parameters, and energies."""

    record_id: str
    label: Optional[int]
    family: str
    depth: int
    n_qubits: int
    params: np.ndarray
    energy: float
    ground_energy: Optional[float] = None
    qasm_path: Optional[str] = None
    iterations: int = 0
    grad_norm: float = 0.0
    termination: str = ""


# scipy status -> termination reason; anything else is a line-search stall
_REASONS = {0: "tolerance", 1: "max_iter"}


def bfgs_minimize(objective: Callable, x0, config: Optional[OptimizerConfig] = None,
                  callback=None) -> Tuple[np.ndarray, OptimizationTrace]:
    """Minimize f given an objective returning (value, gradient).

    Full-memory BFGS with strong Wolfe line search. Always returns the
    best point visited across all evaluations, so a line-search failure
    degrades gracefully instead of raising.
    """
    if config is None:
        config = OptimizerConfig()
    best = {"f": np.inf, "x": None, "gnorm": np.inf}

    def wrapped(x):
        f, g = objective(x)
        if f < best["f"]:
            best["f"] = float(f)
            best["x"] = np.array(x, dtype=float)
            best["gnorm"] = float(np.linalg.norm(g))
        return f, g

    res = minimize(
        wrapped, np.asarray(x0, dtype=float), jac=True, method="BFGS",
        callback=callback,
        options={
            "gtol": config.gtol,
            "maxiter": config.maxiter,
            "c1": config.wolfe_c1,
            "c2": config.wolfe_c2,
        },
    )
    reason = _REASONS.get(res.status, "line_search_failure")
    trace = OptimizationTrace(
        iterations=int(res.nit),
        energy=best["f"],
        grad_norm=best["gnorm"],
        reason=reason,
    )
    return best["x"], trace


def vqe_optimize(h: PauliSum, spec: AnsatzSpec,
                 config: Optional[OptimizerConfig] = None,
                 seed: int = 0, label: Optional[int] = None) -> CircuitRecord:
    """Run restarts independent BFGS minimizations and keep the lowest.

    Restart r draws its initial parameters from a seed derived as
    hash(seed, r), so results do not depend on execution order and a
    longer restart budget strictly extends a shorter one.
    """
    if config is None:
        config = OptimizerConfig()
    if spec.n_qubits != h.n_qubits:
        raise ValueError("ansatz and operator qubit counts differ")
    circuit = build_ansatz(spec)

    def objective(x):
        return energy_and_gradient(circuit, x, h)

    best_x = None
    best_trace = None
    for r in range(config.restarts):
        x0 = parameter_init(spec, derive_seed(seed, r))
        x, trace = bfgs_minimize(objective, x0, config)
        if best_trace is None or trace.energy < best_trace.energy:
            best_x, best_trace = x, trace

    prefix = f"{label}_" if label is not None else ""
    return CircuitRecord(
        record_id=f"{prefix}{spec.family}_{spec.depth}",
        label=label,
        family=spec.family,
        depth=spec.depth,
        n_qubits=spec.n_qubits,
        params=best_x,
        energy=best_trace.energy,
        iterations=best_trace.iterations,
        grad_norm=best_trace.grad_norm,
        termination=best_trace.reason,
    )
