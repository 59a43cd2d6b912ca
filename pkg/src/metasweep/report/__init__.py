"""Per-subgroup artifacts: data table, forest and funnel plots, output tree."""

from .output import Manifest, SubgroupReport, build_report, encode_folder, write_outputs
from .plots import emit_forest, emit_funnel, forest_scene, funnel_scene
from .tables import emit_data_csv
from .text import fmt, latex_escape

__all__ = [
    "Manifest",
    "SubgroupReport",
    "build_report",
    "emit_data_csv",
    "emit_forest",
    "emit_funnel",
    "encode_folder",
    "fmt",
    "forest_scene",
    "funnel_scene",
    "latex_escape",
    "write_outputs",
]
