"""Partition specifications and diagnostic reports."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class PartitionKind(str, Enum):
    """Families of partitions of the unit interval."""

    POWER = "power"
    CLASSICAL = "classical"
    TABLE = "custom-table"


class PsiType(str, Enum):
    """Slowly-varying correction factors for power tails."""

    CONSTANT = "constant"
    LOG_POWER = "log-power"
    RECIPROCAL_LOG = "reciprocal-log"


class PsiSpec(BaseModel):
    """Slowly-varying factor psi in t_n = psi(n) * n^(-theta).

    Tails are normalised so that t_1 = 1, which makes the constant ``c`` a pure
    scale with no effect on the partition.
    """

    model_config = ConfigDict(frozen=True)

    type: PsiType = PsiType.CONSTANT
    c: float = Field(default=1.0, gt=0.0)
    beta: float = 0.0


class PartitionSpec(BaseModel):
    """Serializable description of a partition.

    Example:
        {"kind": "power", "theta": 1.0, "psi": {"type": "constant", "c": 1.0},
         "precision_bits": 128}
    """

    model_config = ConfigDict(frozen=True)

    kind: PartitionKind = PartitionKind.POWER
    theta: float = 1.0
    psi: PsiSpec = PsiSpec()
    table: tuple[float, ...] | None = None
    precision_bits: int | None = None
    exact: bool = False

    @classmethod
    def classical(cls, exact: bool = False, precision_bits: int | None = None) -> "PartitionSpec":
        """The partition with t_n = 1/n."""
        return cls(
            kind=PartitionKind.CLASSICAL,
            theta=1.0,
            exact=exact,
            precision_bits=precision_bits,
        )


class AsymptoticRow(BaseModel):
    """Diagnostics at a single index."""

    n: int
    mdt_ratio: float  # n * a_n / t_n
    atom_ratio: float  # a_n / a_{n+1}


class AsymptoticReport(BaseModel):
    """Asymptotic diagnostics for a partition."""

    theta: float
    rows: list[AsymptoticRow]
