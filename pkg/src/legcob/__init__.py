"""Legendrian grid invariants and cobordism verification.

Grid diagrams resolve into one-dimensional event words; the words carry
the classical invariants, the chord algebra with its differential,
augmentations and linearized homology, and the surgery moves (isotopy,
saddle, cap) whose scripts describe cobordisms between ends.
"""

from .augment import (augmentation_report, augmentations, lch_dims,
                      lch_euler)
from .cobordism import (Move, Script, apply_move_up, cap_down,
                        cobordism_report, filling_dim_check,
                        handle_homology, les_euler_check, make_cylinder,
                        make_torus_saddle_script,
                        make_trefoil_filling_script,
                        make_unknot_disk_script, parse_script, saddle_down,
                        unknot_certificate)
from .dga import DGA, build_dga
from .disks import Disk, disks_by_positive, enumerate_disks
from .errors import BudgetExceeded, InputError, MoveError
from .grid import (GridDiagram, parse_grid, random_grid, slack_unknot_grid,
                   stabilized_unknot_grid, torus_knot_grid, unknot_grid)
from .lp import contractible, contractible_chords
from .reports import canonical_json, pretty_json, to_jsonable
from .resolve import WordState, resolve, word_from_json
from .spin import (InvariantRecord, base_record, record_from_grid, spin,
                   spin_chain, theorem_tb_check, tori_pipeline)

__version__ = "0.1.0"

__all__ = [
    "DGA",
    "BudgetExceeded",
    "Disk",
    "GridDiagram",
    "InputError",
    "InvariantRecord",
    "Move",
    "MoveError",
    "Script",
    "WordState",
    "apply_move_up",
    "augmentation_report",
    "augmentations",
    "base_record",
    "build_dga",
    "canonical_json",
    "cap_down",
    "cobordism_report",
    "contractible",
    "contractible_chords",
    "disks_by_positive",
    "enumerate_disks",
    "filling_dim_check",
    "handle_homology",
    "lch_dims",
    "lch_euler",
    "les_euler_check",
    "make_cylinder",
    "make_torus_saddle_script",
    "make_trefoil_filling_script",
    "make_unknot_disk_script",
    "parse_grid",
    "parse_script",
    "pretty_json",
    "random_grid",
    "record_from_grid",
    "resolve",
    "saddle_down",
    "slack_unknot_grid",
    "spin",
    "spin_chain",
    "stabilized_unknot_grid",
    "theorem_tb_check",
    "to_jsonable",
    "tori_pipeline",
    "torus_knot_grid",
    "unknot_certificate",
    "unknot_grid",
    "word_from_json",
]
