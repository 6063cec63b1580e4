"""
探测器末态模块
"""
from .state_assembly import (
    UdwSystem,
    StateOrder,
    StateBundle,
    assemble_single_qutrit,
    assemble_qubit_qutrit,
    reduce_qutrit,
    initial_state,
    strong_support_warnings,
    free_evolution,
    free_evolution_operator,
    QUBIT_QUTRIT,
)

__all__ = [
    'UdwSystem',
    'StateOrder',
    'StateBundle',
    'assemble_single_qutrit',
    'assemble_qubit_qutrit',
    'reduce_qutrit',
    'initial_state',
    'strong_support_warnings',
    'free_evolution',
    'free_evolution_operator',
    'QUBIT_QUTRIT',
]
