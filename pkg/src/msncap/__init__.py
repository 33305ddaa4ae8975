"""Capacity and realizability toolkit for mobile sensor networks."""

from msncap.core import (
    CapacityReport,
    Cmsn,
    Packet,
    absolute_capacity,
    capacity,
    deliveries,
    min_hops,
    validate,
)
from msncap.formulas import closed_form
from msncap.geometry import Arrangement, Line, cmsn_from_arrangement
from msncap.montecarlo import estimate_gmsn_capacity, estimate_reach_table, estimate_rgmsn_capacity
from msncap.realize import realize_rgmsn, realize_with_slopes
from msncap.wiring import WiringDiagram, rcmsn_from_wiring, wiring_from_rcmsn

__all__ = [
    "Arrangement",
    "CapacityReport",
    "Cmsn",
    "Line",
    "Packet",
    "WiringDiagram",
    "absolute_capacity",
    "capacity",
    "closed_form",
    "cmsn_from_arrangement",
    "deliveries",
    "estimate_gmsn_capacity",
    "estimate_reach_table",
    "estimate_rgmsn_capacity",
    "min_hops",
    "rcmsn_from_wiring",
    "realize_rgmsn",
    "realize_with_slopes",
    "validate",
    "wiring_from_rcmsn",
]
