"""Deterministic seed derivation for nested generation stages."""

import hashlib


def derive_seed(*parts) -> int:
    """Derive a 64-bit child seed from an ordered tuple of parts.

    Parts are stringified and joined with an unprintable separator before
    hashing, so ("ab", "c") and ("a", "bc") map to different seeds. The
    same parts always give the same seed across runs and platforms.
    """
    if not parts:
        raise ValueError("derive_seed needs at least one part")
    payload = "\x1f".join(str(p) for p in parts).encode("utf-8")
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "big")
