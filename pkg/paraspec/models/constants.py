from enum import Enum

# the closed form xi_k = -2 eta is only established on this interval
KISSING_ETA_RANGE = (-2.0, 0.0)

# eta within this distance of an integer is treated as integer
INTEGER_TOLERANCE = 1e-9

# integer-j quasi-spin multiplets reach 1/4 above the separatrix
SEPARATRIX_OFFSET = 0.25


class ModelFamily(Enum):
    # H = omega n - sum eps_k P_k
    HARMONIC = "harmonic"
    # H = -omega n + K n(n-1) - sum eps_k P_k
    KERR = "kerr"
