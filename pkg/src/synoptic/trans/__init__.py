"""Translation of Synoptic models into kernel processes."""

from .actions import (
    MAX_LABEL,
    ActionResult,
    LabelOverflow,
    branch_merge,
    define,
    env_merge,
    restrict_env,
    standalone_action,
    translate_action,
    translate_do,
    use,
)
from .automata import translate_automaton
from .context import Context, memory_name
from .dataflow import inputs_of, outputs_of, translate_dataflow
from .model import Manifest, Translation, translate_block, translate_model
from .regions import CyclicRegion, RegionPartition, UnionFind, compute_regions

__all__ = [
    "MAX_LABEL", "ActionResult", "Context", "CyclicRegion", "LabelOverflow", "Manifest",
    "RegionPartition", "Translation", "UnionFind", "branch_merge", "compute_regions", "define",
    "env_merge", "inputs_of", "memory_name", "outputs_of", "restrict_env", "standalone_action",
    "translate_action", "translate_automaton", "translate_block", "translate_dataflow",
    "translate_do", "translate_model", "use",
]
