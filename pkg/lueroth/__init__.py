"""alpha-Lueroth expansions and numerical Hausdorff-dimension checks for digit-constrained sets."""

__version__ = "0.1.0"

__all__ = ["__version__"]
