"""Homing and synchronizing sequences for timed FSMs with output delays.

Time values are exact :class:`fractions.Fraction` throughout.
"""

from .core import (
    BudgetExhausted,
    ClassReport,
    ContractError,
    Fsm,
    InternalInvariantError,
    SearchResult,
    StructuralError,
    Tfsm,
    TfsmError,
    TimedGuard,
    Transition,
    UnsupportedClassError,
    as_time,
    classify,
    fsm_classify,
    guard_contains,
)
from .semantics import (
    induce_run,
    is_homing,
    is_merging,
    is_non_integer,
    is_synchronizing,
    next_state_seq,
    sequences_equivalent,
    timed_out,
    timed_seq,
)
from .fsm_analysis import HS, SS, fsm_check, fsm_derive
from .region import RegionFsm, build_region_fsm, derive_via_region, lift, project, refine_guards
from .successor_tree import block_successor, derive_shortest
from .point import (
    Pfa,
    careful_sync_brute,
    delta,
    derive_hs_point,
    gen_bn,
    hs_exists_point,
    make_tail,
    pfa_to_tfsm,
    tail_of,
    tail_step,
)
from .oracle import brute_force_derive
from .textformat import ParseError, parse, parse_seq, serialize, to_dot
from . import corpus

__version__ = "0.1.0"
