from enum import Enum


class Branch(Enum):
    # n + m <= 2j, labelled (J, M)
    RIGHT = "right"
    # n + m > 2j, labelled (J-bar, M-bar)
    LEFT = "left"


# label keys shared by oracle and numeric spectra
LABEL_N = "n"
LABEL_M = "m"
LABEL_TWO_J = "two_j"
LABEL_TWO_MJ = "two_mj"
LABEL_TWO_MJ_PRIME = "two_mj_prime"
LABEL_BRANCH = "branch"
LABEL_TWO_JM = "two_J"
LABEL_TWO_MM = "two_M"
LABEL_NU = "nu"
LABEL_NU_PRIME = "nu_prime"
