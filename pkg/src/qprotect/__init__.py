"""Weak-measurement state protection against amplitude damping.

Closed-form channel models, two interchangeable circuit realizations of the
non-unitary filters (one-ancilla duality gadgets and block-unitary
dilations), the four-qubit protection pipeline with tomographic readout, and
a sweep harness reproducing the fidelity and success-probability trade-off.
"""

from .channels import (
    PHI_1,
    PHI_2,
    PHI_3,
    DampingParams,
    PureQubit,
    Strengths,
    ad_kraus,
    apply_kraus,
    mr_operator,
    protect_fidelity_pure,
    reversal_scan,
    reversal_strength,
    rho_ad,
    rho_protect_analytic,
    success_terms,
    wm_operator,
)
from .circuit import (
    GateOp,
    ProtectionCircuit,
    build_protection_circuit,
    extract_protected,
    readout_reconstruct,
    run_circuit,
    tomo_settings,
)
from .dilation import DilationUnitary, gate_sequence, run_dilated, snd_unitary
from .duality import AD, MR, WM, DualityGadget, UESplit, branch_operator, build_gadget, run_gadget, ue_split
from .errors import (
    ConfigError,
    DegenerateStrengthError,
    NotContractionError,
    NotPSDError,
    QProtectError,
    RangeError,
    UnreachableError,
    ZeroTraceError,
)
from .experiments import (
    FrontierPoint,
    SweepConfig,
    SweepRecord,
    VerificationReport,
    frontier,
    minimal_wm_strength,
    sweep_time,
    sweep_w,
    verify_all,
)
from .qmat import (
    DensityState,
    herm_sqrt,
    kron,
    kron_all,
    nearest_physical,
    partial_trace,
    uhlmann_fidelity,
)

__all__ = [
    "AD",
    "MR",
    "WM",
    "PHI_1",
    "PHI_2",
    "PHI_3",
    "ConfigError",
    "DampingParams",
    "DegenerateStrengthError",
    "DensityState",
    "DilationUnitary",
    "DualityGadget",
    "FrontierPoint",
    "GateOp",
    "NotContractionError",
    "NotPSDError",
    "ProtectionCircuit",
    "PureQubit",
    "QProtectError",
    "RangeError",
    "Strengths",
    "SweepConfig",
    "SweepRecord",
    "UESplit",
    "UnreachableError",
    "VerificationReport",
    "ZeroTraceError",
    "ad_kraus",
    "apply_kraus",
    "branch_operator",
    "build_gadget",
    "build_protection_circuit",
    "extract_protected",
    "frontier",
    "gate_sequence",
    "herm_sqrt",
    "kron",
    "kron_all",
    "minimal_wm_strength",
    "mr_operator",
    "nearest_physical",
    "partial_trace",
    "protect_fidelity_pure",
    "readout_reconstruct",
    "reversal_scan",
    "reversal_strength",
    "rho_ad",
    "rho_protect_analytic",
    "run_circuit",
    "run_dilated",
    "run_gadget",
    "snd_unitary",
    "success_terms",
    "sweep_time",
    "sweep_w",
    "tomo_settings",
    "ue_split",
    "uhlmann_fidelity",
    "verify_all",
    "wm_operator",
]

__version__ = "0.1.0"
