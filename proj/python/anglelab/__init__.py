"""Point-configuration laboratory for distinct-angle experiments.

The heavy lifting lives in the C++ extension ``anglelab._core``; this wrapper
decodes its JSON reports into plain dictionaries.
"""

import json as _json

from anglelab._core import (
    Config,
    __version__,
    angle_key,
    concyclic,
    find_equivalent_triples,
    grid,
    load,
    n_r_d,
    ngon,
    orientation,
    project,
    rgen_threshold,
    rgen_threshold_bound,
    save,
    shell,
    spiral,
)
from anglelab import _core


def census(config, pinned=False, mode="auto", tolerance=1e-9, lenient=False, threads=0):
    """Distinct-angle census of a configuration, as a dictionary."""
    return _json.loads(
        _core.census_json(config, pinned, mode, tolerance, lenient, threads)
    )


def general_position(config, mode="auto", margin=1e-12, threads=0):
    """General-position report (exact for rational inputs, numeric otherwise)."""
    return _json.loads(_core.general_position_json(config, mode, margin, threads))


def repeated_angle_witness(config, subset, tolerance=1e-9):
    """Repeated-angle witness for a spiral subset, or None."""
    text = _core.repeated_angle_witness_json(config, subset, tolerance)
    return None if text is None else _json.loads(text)


def verify_projection_property(config, trials=1000, seed=0):
    """Projected-distance equality report for a projected configuration."""
    return _json.loads(_core.verify_projection_property_json(config, trials, seed))


def search_distinct_angle_subset(config, strategy="greedy", budget=1_000_000, tolerance=1e-9):
    """Largest found subset whose angles are pairwise distinct."""
    return _json.loads(
        _core.search_distinct_angle_subset_json(config, strategy, budget, tolerance)
    )


def count_translation_classes(config):
    """Distinct reduced triples over ordered triples of a lattice configuration."""
    return _core.count_translation_classes(config)


__all__ = [
    "Config",
    "__version__",
    "angle_key",
    "census",
    "concyclic",
    "count_translation_classes",
    "find_equivalent_triples",
    "general_position",
    "grid",
    "load",
    "n_r_d",
    "ngon",
    "orientation",
    "project",
    "repeated_angle_witness",
    "rgen_threshold",
    "rgen_threshold_bound",
    "save",
    "search_distinct_angle_subset",
    "shell",
    "spiral",
    "verify_projection_property",
]
