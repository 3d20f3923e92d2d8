from __future__ import annotations

import hashlib
import math
import random
from fractions import Fraction


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float (via its repr)."""
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    return Fraction(str(x))


def round_half_up(x) -> int:
    return math.floor(as_fraction(x) + Fraction(1, 2))


def sentence_rng(seed: int, sentence_id: str, salt: str = "") -> random.Random:
    """RNG seeded from (global seed, sentence id) so per-sentence draws do not
    depend on processing order or worker count."""
    digest = hashlib.sha256(f"{seed}\x1f{salt}\x1f{sentence_id}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))
