"""Digit map and series codec."""

from lueroth.core.codec.codec import apply_map, canonicalize, decode, encode
from lueroth.core.codec.digits import DigitSequence, DigitsLike, as_digits

__all__ = [
    "DigitSequence",
    "DigitsLike",
    "apply_map",
    "as_digits",
    "canonicalize",
    "decode",
    "encode",
]
