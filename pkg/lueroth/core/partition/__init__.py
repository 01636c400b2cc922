"""Partitions of the unit interval with power-law tails."""

from lueroth.core.partition.partition import (
    Partition,
    Real,
    TailDecay,
    asymptotic_report,
    locate_atom,
    make_partition,
    measures,
    padded_bits,
    validate_spec,
    working_context,
)
from lueroth.core.partition.spec import (
    AsymptoticReport,
    AsymptoticRow,
    PartitionKind,
    PartitionSpec,
    PsiSpec,
    PsiType,
)

__all__ = [
    "AsymptoticReport",
    "AsymptoticRow",
    "Partition",
    "PartitionKind",
    "PartitionSpec",
    "PsiSpec",
    "PsiType",
    "Real",
    "TailDecay",
    "asymptotic_report",
    "locate_atom",
    "make_partition",
    "measures",
    "padded_bits",
    "validate_spec",
    "working_context",
]
