"""Cycle bases of permutation groups via a solvable controlling subgroup.

The headline entry points are cycle_base and control_subgroup.  Everything
else re-exported here is the supporting cast: the permutation and group
types, block system machinery, constructions used by the tests and the
bundled corpus, and the brute-force oracle that keeps the fast path honest.
"""

from .perm import (
    Perm,
    compose,
    conjugate,
    commutator,
    parse_cycles,
    format_cycles,
)
from .group import (
    Group,
    normal_closure,
    derived_series,
    is_solvable,
    small_generating_set,
)
from .bsgs import StabChain, ChainBuilder, build_chain
from .blocks import (
    BlockSystem,
    orbits,
    is_transitive,
    minimal_block_system,
    action_on_blocks,
)
from .control import control_subgroup, ControlResult, verify_control
from .cyclebase import cycle_base, CycleBaseResult, circulant_representations
from .oracle import oracle_cyc, OracleCyc, generate_corpus
from .io import load_group, save_group, make_certificate, load_certificate
from .backtrack import intersection
from . import constructions

__version__ = "0.1.0"

__all__ = [
    "Perm", "compose", "conjugate", "commutator",
    "parse_cycles", "format_cycles",
    "Group", "normal_closure", "derived_series", "is_solvable",
    "small_generating_set",
    "StabChain", "ChainBuilder", "build_chain",
    "BlockSystem", "orbits", "is_transitive", "minimal_block_system",
    "action_on_blocks",
    "control_subgroup", "ControlResult", "verify_control",
    "cycle_base", "CycleBaseResult", "circulant_representations",
    "oracle_cyc", "OracleCyc", "generate_corpus",
    "load_group", "save_group", "make_certificate", "load_certificate",
    "intersection",
    "constructions",
    "__version__",
]
