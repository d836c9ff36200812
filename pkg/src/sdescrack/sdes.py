"""Bit-exact Simplified DES (SDES): 8-bit blocks, 10-bit keys, two rounds.

Bit conventions used throughout the package:

* a key is an int in ``range(1024)``, a block an int in ``range(256)``,
  a subkey an int in ``range(256)``; bit 1 is the most significant bit
* permutation tables are 1-based source positions, as conventionally
  published for this cipher

All functions are pure; lookup tables are immutable module constants, so
everything here is safe to call from concurrent workers.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

KEY_BITS = 10
BLOCK_BITS = 8
KEY_SPACE = 1 << KEY_BITS  # 1024 candidate keys, small enough to enumerate

P10 = (3, 5, 2, 7, 4, 10, 1, 9, 8, 6)
P8 = (6, 3, 7, 4, 8, 5, 10, 9)
IP = (2, 6, 3, 1, 4, 8, 5, 7)
IP_INV = (4, 1, 3, 5, 7, 2, 8, 6)
EXPANSION = (4, 1, 2, 3, 2, 3, 4, 1)
P4 = (2, 4, 3, 1)

S0 = (
    (1, 0, 3, 2),
    (3, 2, 1, 0),
    (0, 2, 1, 3),
    (3, 1, 3, 2),
)
S1 = (
    (0, 1, 2, 3),
    (2, 0, 1, 3),
    (3, 0, 1, 0),
    (2, 1, 0, 3),
)

# Circular left shift of each 5-bit key half: by 1 before the first
# subkey, by 2 more before the second (Schaefer's published schedule).
KEY_SHIFTS = (1, 2)


def permute(table: Sequence[int], bits: Sequence[int]) -> tuple[int, ...]:
    """Apply a 1-based permutation table: output[i] = bits[table[i] - 1]."""
    if max(table) > len(bits):
        raise ValueError(
            f"permutation references position {max(table)} "
            f"but input has only {len(bits)} bits"
        )
    return tuple(bits[i - 1] for i in table)


def int_to_bits(value: int, width: int) -> tuple[int, ...]:
    """Unpack ``value`` into ``width`` bits, most significant first."""
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


def bits_to_int(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def _rotate_left(bits: tuple[int, ...], n: int) -> tuple[int, ...]:
    n %= len(bits)
    return bits[n:] + bits[:n]


@lru_cache(maxsize=None)
def key_schedule(key: int) -> tuple[int, int]:
    """Derive the two 8-bit subkeys from a 10-bit key.

    K1 = P8(shift1(P10(key))), K2 = P8(shift2(shift1(P10(key)))), where
    each shift rotates the two 5-bit halves independently.
    """
    if not 0 <= key < KEY_SPACE:
        raise ValueError(f"key must be a 10-bit value, got {key}")
    halves = permute(P10, int_to_bits(key, KEY_BITS))
    left, right = halves[:5], halves[5:]
    subkeys = []
    for shift in KEY_SHIFTS:
        left, right = _rotate_left(left, shift), _rotate_left(right, shift)
        subkeys.append(bits_to_int(permute(P8, left + right)))
    return subkeys[0], subkeys[1]


def sbox_lookup(box: Sequence[Sequence[int]], nibble: int) -> int:
    """2-bit S-box output; row from input bits 1 and 4, column from bits 2 and 3."""
    row = (((nibble >> 3) & 1) << 1) | (nibble & 1)
    col = (nibble >> 1) & 3
    return box[row][col]


def _byte_map(table: Sequence[int]) -> tuple[int, ...]:
    return tuple(
        bits_to_int(permute(table, int_to_bits(b, 8))) for b in range(256)
    )


_IP_MAP = _byte_map(IP)
_IP_INV_MAP = _byte_map(IP_INV)
_EXPAND = tuple(
    bits_to_int(permute(EXPANSION, int_to_bits(r, 4))) for r in range(16)
)
# P4(S0(left nibble) || S1(right nibble)) for every expanded-and-keyed byte.
_ROUND_OUT = tuple(
    bits_to_int(
        permute(
            P4,
            int_to_bits(sbox_lookup(S0, e >> 4), 2)
            + int_to_bits(sbox_lookup(S1, e & 0xF), 2),
        )
    )
    for e in range(256)
)


def round_function(right: int, subkey: int) -> int:
    """The keyed 4-bit mixing function: P4(S-boxes(E/P(right) XOR subkey))."""
    return _ROUND_OUT[_EXPAND[right] ^ subkey]


def feistel_round(block: int, subkey: int) -> int:
    """XOR the left nibble with the round function of the right nibble."""
    left, right = block >> 4, block & 0xF
    return ((left ^ round_function(right, subkey)) << 4) | right


def swap_halves(block: int) -> int:
    """Interchange the two nibbles of a block; its own inverse."""
    return ((block & 0xF) << 4) | (block >> 4)


def encrypt_block(block: int, key: int) -> int:
    """Encrypt one 8-bit block: IP-inverse(round_K2(swap(round_K1(IP(b)))))."""
    k1, k2 = key_schedule(key)
    b = _IP_MAP[block]
    b = feistel_round(b, k1)
    b = swap_halves(b)
    b = feistel_round(b, k2)
    return _IP_INV_MAP[b]


def decrypt_block(block: int, key: int) -> int:
    """Inverse of encrypt_block: same structure with subkeys in reverse order."""
    k1, k2 = key_schedule(key)
    b = _IP_MAP[block]
    b = feistel_round(b, k2)
    b = swap_halves(b)
    b = feistel_round(b, k1)
    return _IP_INV_MAP[b]


@lru_cache(maxsize=None)
def encryption_table(key: int) -> bytes:
    """256-byte translation table mapping every plaintext byte to its ciphertext."""
    return bytes(encrypt_block(b, key) for b in range(256))


@lru_cache(maxsize=None)
def decryption_table(key: int) -> bytes:
    return bytes(decrypt_block(b, key) for b in range(256))


def encrypt_bytes(data: bytes, key: int) -> bytes:
    """ECB: every byte goes through encrypt_block independently."""
    return data.translate(encryption_table(key))


def decrypt_bytes(data: bytes, key: int) -> bytes:
    return data.translate(decryption_table(key))


def parse_key(text: str) -> int:
    """Parse the 10-character binary key format, leftmost character = bit 1."""
    if len(text) != KEY_BITS or set(text) - {"0", "1"}:
        raise ValueError(
            f"key must be exactly {KEY_BITS} characters of 0/1, got {text!r}"
        )
    return int(text, 2)


def format_key(key: int) -> str:
    return format(key, "010b")


def format_block(block: int) -> str:
    return format(block, "08b")


def matching_bits(a: int, b: int) -> int:
    """Number of agreeing bit positions between two 10-bit keys (0..10)."""
    return KEY_BITS - bin((a ^ b) & (KEY_SPACE - 1)).count("1")


def hexdump(data: bytes, width: int = 16) -> str:
    """Classic offset / hex / ASCII dump for debugging byte streams."""
    lines = []
    for off in range(0, len(data), width):
        chunk = data[off : off + width]
        hexpart = " ".join(f"{b:02x}" for b in chunk)
        text = "".join(chr(b) if 32 <= b < 127 else "." for b in chunk)
        lines.append(f"{off:08x}  {hexpart:<{width * 3 - 1}}  |{text}|")
    return "\n".join(lines)
