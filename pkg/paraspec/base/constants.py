from enum import Enum

# degenerate Hamiltonian levels: |E_i - E_j| < DEGENERACY_TOLERANCE * max(1, |E_i|)
DEGENERACY_TOLERANCE = 1e-8

# entries coupling two symmetry sectors above this are a rule violation
BLOCK_COUPLING_TOLERANCE = 1e-12

# zero eigenvalue: |lambda| < ZERO_EIGENVALUE_TOLERANCE * (1 + ||L||_inf)
ZERO_EIGENVALUE_TOLERANCE = 1e-9

# a gap within RELAXATION_NOISE_FACTOR of the eigensolver noise floor (|lambda_0|, or eps * max|lambda|) is closed
RELAXATION_NOISE_FACTOR = 1e3

# eigenvalues closer than CLUSTER_RADIUS * (1 + |lambda|) count towards one multiplicity
CLUSTER_RADIUS = 1e-6

# density matrix invariants
HERMITIAN_TOLERANCE = 1e-9
TRACE_TOLERANCE = 1e-9
POSITIVITY_TOLERANCE = 1e-8
STEADY_STATE_RESIDUAL = 1e-8

# exact assignment is used for spectra up to this size, greedy pairing above
MATCH_EXACT_LIMIT = 2500


class SectorRule(Enum):
    U1_COHERENCE = "u1_coherence"
    Z2_PARITY = "z2_parity"


class Phase(Enum):
    I = "I"  # noqa: E741
    II = "II"
