"""Closed balls of metric graphs and model spaces under the Hausdorff distance.

Graphs use exact rational arithmetic; the model spaces use floats.
"""
from __future__ import annotations

from .errors import InputError
from .graph import EdgePoint, GraphIsometry, MetricGraph, PLSubset, RayPoint, Vertex
from .hausdorff import Ball, hausdorff_balls, hausdorff_pl

__version__ = "0.1.0"

__all__ = ["Ball", "EdgePoint", "GraphIsometry", "InputError", "MetricGraph", "PLSubset",
           "RayPoint", "Vertex", "hausdorff_balls", "hausdorff_pl"]
