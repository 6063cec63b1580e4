"""
量度模块
mana、负性、非语境不等式与收获判据
"""
from .magic import mana, mana_closed_form
from .entanglement import (
    BlockNegativity,
    negativity,
    negativity_blocks,
    negativity_closed,
    negativity_second_order,
    negativity_simplified,
)
from .inequality import (
    REFERENCE_TABLE,
    InequalityCoeffs,
    CalibrationResult,
    ReferenceTableReport,
    s_c,
    delta_s_c_closed,
    delta_s_c_operator,
    derive_inequality_coeffs,
    calibrate_inequality_coeffs,
    reconcile_reference_table,
)
from .harvesting import HarvestVerdict, harvest_verdict

__all__ = [
    'mana',
    'mana_closed_form',
    'BlockNegativity',
    'negativity',
    'negativity_blocks',
    'negativity_closed',
    'negativity_second_order',
    'negativity_simplified',
    'REFERENCE_TABLE',
    'InequalityCoeffs',
    'CalibrationResult',
    'ReferenceTableReport',
    's_c',
    'delta_s_c_closed',
    'delta_s_c_operator',
    'derive_inequality_coeffs',
    'calibrate_inequality_coeffs',
    'reconcile_reference_table',
    'HarvestVerdict',
    'harvest_verdict',
]
