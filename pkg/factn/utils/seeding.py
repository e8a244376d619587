"""
Seeded randomness
All randomized checks draw from random.Random (Mersenne Twister). Seeds are
derived from strings, which random.Random hashes with SHA-512, so a given
(seed, label, index) triple produces the same stream on every platform.
"""
import hashlib
import json
import random
from typing import Any


def derive_rng(seed: int, *labels: Any) -> random.Random:
    """
    Independent generator for one sample of one check

    Args:
        seed: User seed
        labels: Check name, sample index, ...
    """
    key = ":".join([str(seed), *(str(label) for label in labels)])
    return random.Random(key)


def derive_seed(rng: random.Random) -> int:
    """Draw a child seed (63 bits) from a generator"""
    return rng.getrandbits(63)


def inputs_digest(payload: Any) -> str:
    """
    Short SHA-256 digest of a JSON-serializable payload

    Returns:
        First 16 hex digits
    """
    text = json.dumps(payload, sort_keys=True, ensure_ascii=False, default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
