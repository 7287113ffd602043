"""Binary outcome sequences and position-wise relabeling masks.

A :class:`BinarySequence` records outcomes over a two-symbol alphabet.
The first symbol (written ``H``, ``h`` or ``1``) is stored as bit 1, the
second (``T``, ``t`` or ``0``) as bit 0.  The ``vocab`` field is a free
text label carried along for rendering; it never influences a statistic.

A relabeling redefines, position by position, which physical outcome is
read as the first symbol.  Redefinitions are usually given as a 1-based
index set X ("keep the reading inside X, invert it outside"); they are
normalized here to a :class:`RelabelMask` under the fixed polarity that
the relabeled first symbol maps to bit 1, so the mask flips exactly the
positions outside X.  Masks compose by position-wise exclusive-or, which
makes every mask its own inverse: the masks of length n form a group
acting on the length-n sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

_ONE_CHARS = frozenset("Hh1")
_ZERO_CHARS = frozenset("Tt0")


class ParseError(ValueError):
    """Malformed textual input (sequence, mask or probability).

    ``position`` is the 1-based offset of the offending character when
    one can be pointed at, else None.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class BinarySequence:
    """An ordered, nonempty record of two-valued outcomes."""

    bits: tuple[int, ...]
    vocab: str = "heads/tails"

    def __post_init__(self) -> None:
        if len(self.bits) == 0:
            raise ValueError("a sequence must contain at least one outcome")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("sequence bits must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def text(self, lower: bool = False) -> str:
        """Render as H/T symbols, lowercase when ``lower`` is set.

        Lowercase is the conventional rendering for relabeled
        vocabularies.
        """
        one, zero = ("h", "t") if lower else ("H", "T")
        return "".join(one if b else zero for b in self.bits)

    def as_int(self) -> int:
        """Pack the bits into an integer, position 1 in the low bit."""
        value = 0
        for i, b in enumerate(self.bits):
            value |= b << i
        return value

    @classmethod
    def from_int(cls, value: int, n: int, vocab: str = "heads/tails") -> "BinarySequence":
        if n < 1:
            raise ValueError("sequence length must be at least 1")
        if not 0 <= value < (1 << n):
            raise ValueError(f"value {value} does not fit in {n} bits")
        return cls(tuple((value >> i) & 1 for i in range(n)), vocab)


def parse_sequence(text: str, vocab: str = "heads/tails") -> BinarySequence:
    """Parse a string over H/h/1 and T/t/0 into a sequence.

    Raises :class:`ParseError` for empty input or for any other
    character, reporting its 1-based position.
    """
    if text == "":
        raise ParseError("empty sequence")
    bits = []
    for i, ch in enumerate(text, start=1):
        if ch in _ONE_CHARS:
            bits.append(1)
        elif ch in _ZERO_CHARS:
            bits.append(0)
        else:
            raise ParseError(f"illegal character {ch!r} at position {i}", position=i)
    return BinarySequence(tuple(bits), vocab)


def count_runs(seq: BinarySequence) -> int:
    """Number of maximal blocks of equal adjacent symbols, in [1, n]."""
    runs = 1
    for a, b in zip(seq.bits, seq.bits[1:]):
        if a != b:
            runs += 1
    return runs


def count_ones(seq: BinarySequence) -> int:
    """Number of positions holding the first symbol (bit 1)."""
    return sum(seq.bits)


@dataclass(frozen=True)
class RelabelMask:
    """A per-position flip pattern; True inverts the reading there."""

    flips: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.flips) == 0:
            raise ValueError("a mask must cover at least one position")
        if any(f not in (False, True) for f in self.flips):
            raise ValueError("mask entries must be booleans")

    @property
    def n(self) -> int:
        return len(self.flips)

    def __len__(self) -> int:
        return len(self.flips)

    @classmethod
    def identity(cls, n: int) -> "RelabelMask":
        return cls((False,) * n)

    @classmethod
    def from_flip_string(cls, text: str) -> "RelabelMask":
        """Parse a flip pattern written as a 0/1 string, position 1 first."""
        if text == "":
            raise ParseError("empty mask")
        flips = []
        for i, ch in enumerate(text, start=1):
            if ch == "1":
                flips.append(True)
            elif ch == "0":
                flips.append(False)
            else:
                raise ParseError(f"illegal mask character {ch!r} at position {i}", position=i)
        return cls(tuple(flips))

    @classmethod
    def from_int(cls, value: int, n: int) -> "RelabelMask":
        if n < 1:
            raise ValueError("mask length must be at least 1")
        if not 0 <= value < (1 << n):
            raise ValueError(f"value {value} does not fit in {n} bits")
        return cls(tuple(bool((value >> i) & 1) for i in range(n)))

    def flip_string(self) -> str:
        return "".join("1" if f else "0" for f in self.flips)

    def as_int(self) -> int:
        value = 0
        for i, f in enumerate(self.flips):
            if f:
                value |= 1 << i
        return value

    def flip_count(self) -> int:
        return sum(self.flips)

    def is_identity(self) -> bool:
        return not any(self.flips)

    def flipped_positions(self) -> tuple[int, ...]:
        """1-based positions whose reading is inverted."""
        return tuple(i for i, f in enumerate(self.flips, start=1) if f)

    def index_set(self) -> tuple[int, ...]:
        """The kept positions: the 1-based index set X this mask encodes."""
        return tuple(i for i, f in enumerate(self.flips, start=1) if not f)

    def compose(self, other: "RelabelMask") -> "RelabelMask":
        """Apply ``other`` after ``self``; flips combine by exclusive-or."""
        if self.n != other.n:
            raise ValueError(f"mask lengths differ: {self.n} vs {other.n}")
        return RelabelMask(tuple(a != b for a, b in zip(self.flips, other.flips)))


def mask_from_index_set(indices: Iterable[int], n: int) -> RelabelMask:
    """Canonical mask for the index set X: flip exactly outside X.

    Polarity is fixed so that the relabeled first symbol agrees with the
    original one on the kept positions: inside X the reading is
    unchanged, outside X it is inverted.
    """
    if n < 1:
        raise ValueError("mask length must be at least 1")
    kept = set()
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range 1..{n}")
        kept.add(i)
    return RelabelMask(tuple(i not in kept for i in range(1, n + 1)))


def apply_relabeling(seq: BinarySequence, mask: RelabelMask, vocab: str | None = None) -> BinarySequence:
    """Read ``seq`` through ``mask``: bit i is inverted where the mask flips."""
    if seq.n != mask.n:
        raise ValueError(f"sequence length {seq.n} does not match mask length {mask.n}")
    bits = tuple(b ^ int(f) for b, f in zip(seq.bits, mask.flips))
    return BinarySequence(bits, vocab if vocab is not None else f"relabeled {seq.vocab}")


def mask_between(source: BinarySequence, target: BinarySequence) -> RelabelMask:
    """The unique mask carrying ``source`` to ``target``: flip where they differ."""
    if source.n != target.n:
        raise ValueError(f"sequence lengths differ: {source.n} vs {target.n}")
    return RelabelMask(tuple(a != b for a, b in zip(source.bits, target.bits)))
