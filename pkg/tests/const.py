"""Constants for pyidpda tests."""

from pyidpda.const import FORMAT_HEADER

# Reachable det-states of A_n.
EXPECTED_STATES = {1: 2, 2: 16, 3: 512}

# Reachable pushed det stack symbols of B_{2,s}.
EXPECTED_PUSHED_B2 = {1: 15, 2: 30, 3: 45, 4: 60}

A1_DOCUMENT = "\n".join(
    [
        FORMAT_HEADER,
        "alphabet neutral: - #",
        "alphabet open: <",
        "alphabet close: >",
        "states: 1",
        "initial: 0",
        "accepting: 0",
        "stack: 0 1",
        "t0 - 0 -> 0",
        "t0 # 0 -> 0",
        "t+ < 0 -> (0,0)",
        "t- > 0 1 -> 0",
    ]
) + "\n"

# w_R for the diagonal relation over two states.
W_DIAGONAL_2 = "-<-<--#->->--"

TINY_PROFILE = {
    "n_values": [1],
    "bracket_n": 2,
    "s_values": [2],
    "m_max": 1,
    "max_len": 4,
    "max_len_wide": 4,
    "samples": 2,
    "tuple_samples": 2,
    "seed": 0,
}
