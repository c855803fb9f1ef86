"""Synthetic multispectral continent: world generation, sampling, datasets."""

from .world import (
    BAND_NAMES,
    TASK_NAMES,
    World,
    derive_targets,
    generate_world,
    render_tile,
)
from .sampling import make_splits, sample_label_sites, sample_locations
from .dataset import (
    Dataset,
    DatasetManifest,
    Example,
    build_dataset,
    read_dataset,
    write_dataset,
)

__all__ = [
    "BAND_NAMES",
    "TASK_NAMES",
    "World",
    "generate_world",
    "render_tile",
    "derive_targets",
    "sample_locations",
    "sample_label_sites",
    "make_splits",
    "Example",
    "DatasetManifest",
    "Dataset",
    "build_dataset",
    "write_dataset",
    "read_dataset",
]
