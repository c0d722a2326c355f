"""Curriculum search over task sequences."""

from ._core import (
    ConfigError,
    ContractViolation,
    DivergenceError,
    Experiment,
    GuardExceeded,
    TransferError,
    aco_selection_prob,
    count_curricula,
    enumerate_curricula,
    load_task_set,
    optimal_return,
    search_function,
    sign_test_p_value,
    train,
)

__all__ = [
    "ConfigError",
    "ContractViolation",
    "DivergenceError",
    "Experiment",
    "GuardExceeded",
    "TransferError",
    "aco_selection_prob",
    "count_curricula",
    "enumerate_curricula",
    "load_task_set",
    "optimal_return",
    "search_function",
    "sign_test_p_value",
    "train",
]
