"""Constants for the pyidpda toolkit."""

FORMAT_HEADER = "idpda-format 1"
COMMENT_PREFIX = "#!"

# Canonical input tokens.
TOKEN_DECREMENT = "-"
TOKEN_GUESS = "#"
TOKEN_OPEN = "<"
TOKEN_OPEN_DOUBLE = "<<"
TOKEN_CLOSE = ">"
TOKEN_CLOSE_DOUBLE = ">>"
TOKEN_CLOSE_TRIPLE = ">>>"

# Canonical stack symbols.
STACK_ZERO = "0"
STACK_ONE = "1"
STACK_SAVED_PREFIX = "h"
STACK_TARGET_PREFIX = "r"
STACK_BIT_PREFIX = "c"

DEFAULT_FRONTIER_CAP = 1_000_000
TRACE_LIMIT = 10_000
DEFAULT_SEED = 0

PROFILE_DESK = "desk"
PROFILE_QUICK = "quick"

PROFILES = {
    PROFILE_DESK: {
        "n_values": [1, 2, 3],
        "bracket_n": 2,
        "s_values": [2, 3, 4],
        "m_max": 3,
        "max_len": 12,
        "max_len_wide": 10,
        "samples": 200,
        "tuple_samples": 100,
        "seed": DEFAULT_SEED,
    },
    PROFILE_QUICK: {
        "n_values": [1, 2],
        "bracket_n": 2,
        "s_values": [2],
        "m_max": 2,
        "max_len": 8,
        "max_len_wide": 6,
        "samples": 20,
        "tuple_samples": 10,
        "seed": DEFAULT_SEED,
    },
}

EVENT_CHECK_COMPLETED = "check_completed"
EVENT_SUITE_COMPLETED = "suite_completed"
