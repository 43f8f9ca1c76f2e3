"""Simulation and reconstruction for spherical arrays of circular integrating detectors."""

from ._patc import (
    DetectorData,
    PhantomSpec,
    RunConfig,
    VolumeGrid,
    add_noise,
    eval_phantom,
    ground_truth,
    range_report,
    read_detector,
    read_volume,
    reconstruct,
    simulate,
    spherical_radon_exact,
    volume_metrics,
    write_detector,
    write_volume,
)

__all__ = [
    "DetectorData",
    "PhantomSpec",
    "RunConfig",
    "VolumeGrid",
    "add_noise",
    "eval_phantom",
    "ground_truth",
    "range_report",
    "read_detector",
    "read_volume",
    "reconstruct",
    "simulate",
    "spherical_radon_exact",
    "volume_metrics",
    "write_detector",
    "write_volume",
]

__version__ = "1.0.0"
