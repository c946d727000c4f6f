from enum import Enum


class SweepAxis(Enum):
    XI = "xi"
    CHI = "chi"
    ETA = "eta"
    N_TH = "n_th"


class Observable(Enum):
    NU = "nu"
    GAP = "gap"
    HAMILTONIAN_GAP = "hamiltonian_gap"
    GAP2 = "gap2"
    T_X = "T_X"


# above this Liouvillian dimension eigenvalues come from symmetry blocks
DEFAULT_BLOCK_THRESHOLD = 1700

# a first-order jump is a step increment above JUMP_FACTOR times the median one and above JUMP_FLOOR
JUMP_FACTOR = 5.0
JUMP_FLOOR = 1e-3

# the second-order gap maximum is searched for chi inside this window
GAP_WINDOW = (0.0, 0.8)

# doubling schedule of the truncation convergence search
CONVERGENCE_START = 8
CONVERGENCE_BUDGET = 256

# closed-system nu at chi_c follows its power law from N of about 1000 on
HAMILTONIAN_SCALING_SIZES = (1000, 2000, 4000)

# chi_c = xi_k / KISSING_CHI_RATIO
KISSING_CHI_RATIO = 4.0

# bisection steps refining where Im lambda_1 first vanishes
KISSING_BISECTION_STEPS = 8
