"""Reduced words of a finitely generated free group and its endomorphisms.

A letter is a nonzero int: ``+i`` is the i-th generator (1-based), ``-i`` its
inverse.  Words are stored freely reduced.  Text I/O writes generators as
``a b c ...`` and inverses as ``A B C ...`` (``a^-1`` style exponents are also
accepted on input).
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from typing import Iterable, Sequence

IntMatrix = tuple[tuple[int, ...], ...]

_LOWER = string.ascii_lowercase
_MAX_NAMED = len(_LOWER)


def _reduced(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for raw in letters:
        x = int(raw)
        if x == 0:
            raise ValueError("0 is not a letter; use +-i for generator i")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word; ``Word()`` is the identity."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduced(self.letters))

    # -- algebra ---------------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def max_index(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def exponent_vector(self, rank: int) -> tuple[int, ...]:
        """Image in the free abelianization Z^rank (signed letter counts)."""
        v = [0] * rank
        for x in self.letters:
            if abs(x) > rank:
                raise ValueError(f"letter {x} exceeds rank {rank}")
            v[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(v)

    def sort_key(self):
        # length-lexicographic; the inverse of a generator sorts just after it
        return (len(self.letters), tuple((abs(x), 0 if x > 0 else 1) for x in self.letters))

    # -- text ------------------------------------------------------------

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "Word":
        letters: list[int] = []
        for token in text.split():
            if token == "1":
                continue
            base = token
            exp = 1
            if "^" in token:
                base, _, etext = token.partition("^")
                exp = int(etext)
            if len(base) != 1 or base.lower() not in _LOWER:
                raise ValueError(f"bad letter token {token!r}")
            idx = _LOWER.index(base.lower()) + 1
            if rank is not None and idx > rank:
                raise ValueError(f"letter {base!r} exceeds rank {rank}")
            if base.isupper():
                exp = -exp
            letters.extend([idx if exp > 0 else -idx] * abs(exp))
        return cls(tuple(letters))

    def to_text(self) -> str:
        if not self.letters:
            return "1"
        out = []
        for x in self.letters:
            if abs(x) > _MAX_NAMED:
                raise ValueError("text form supports at most 26 generators")
            ch = _LOWER[abs(x) - 1]
            out.append(ch if x > 0 else ch.upper())
        return " ".join(out)

    def __str__(self) -> str:
        return self.to_text()


def reduce_word(letters: Sequence[int], rank: int | None = None) -> Word:
    """Freely reduce a raw letter sequence."""
    w = Word(tuple(letters))
    if rank is not None and w.max_index() > rank:
        raise ValueError(f"letter outside rank {rank}")
    return w


@dataclass(frozen=True, slots=True)
class Endomorphism:
    """An endomorphism of the free group, given by generator images."""

    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        images = tuple(self.images)
        if len(images) != self.rank:
            raise ValueError(f"expected {self.rank} images, got {len(images)}")
        for w in images:
            if w.max_index() > self.rank:
                raise ValueError(f"image {w} uses a generator outside rank {self.rank}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, rank: int) -> "Endomorphism":
        return cls(rank, tuple(Word((i,)) for i in range(1, rank + 1)))

    @classmethod
    def from_images_text(cls, images: Sequence[str], rank: int | None = None) -> "Endomorphism":
        rank = len(images) if rank is None else rank
        return cls(rank, tuple(Word.parse(s, rank) for s in images))

    def apply(self, w: Word) -> Word:
        letters: list[int] = []
        for x in w.letters:
            img = self.images[abs(x) - 1]
            letters.extend(img.letters if x > 0 else img.inverse().letters)
        return Word(tuple(letters))

    __call__ = apply

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """self after other: ``(f.compose(g))(w) == f(g(w))``."""
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return Endomorphism(self.rank, tuple(self.apply(w) for w in other.images))

    def iterate(self, n: int) -> "Endomorphism":
        if n < 0:
            raise ValueError("free group endomorphisms cannot be inverted here")
        out = Endomorphism.identity(self.rank)
        base = self
        while n:
            if n & 1:
                out = base.compose(out)
            n >>= 1
            if n:
                base = base.compose(base)
        return out

    __pow__ = iterate

    def abelianize(self) -> IntMatrix:
        """Row i is the exponent vector of the image of generator i."""
        return tuple(w.exponent_vector(self.rank) for w in self.images)

    # -- JSON --------------------------------------------------------------

    @classmethod
    def from_json(cls, data) -> "Endomorphism":
        if isinstance(data, str):
            data = json.loads(data)
        rank = int(data["rank"])
        return cls(rank, tuple(Word.parse(s, rank) for s in data["images"]))

    def to_json(self) -> dict:
        return {"rank": self.rank, "images": [w.to_text() for w in self.images]}


# module-level aliases for the operation names

def apply_endo(f: Endomorphism, w: Word) -> Word:
    return f.apply(w)


def compose(f: Endomorphism, g: Endomorphism) -> Endomorphism:
    return f.compose(g)


def iterate(f: Endomorphism, n: int) -> Endomorphism:
    return f.iterate(n)


def abelianize(f: Endomorphism) -> IntMatrix:
    return f.abelianize()


# -- small integer-matrix helpers used across the package ------------------

def mat_identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_pow(a: IntMatrix, n: int) -> IntMatrix:
    if n < 0:
        raise ValueError("negative power")
    out = mat_identity(len(a))
    base = a
    while n:
        if n & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        n >>= 1
    return out

def mat_sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_trace(a: IntMatrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def vec_mat(v: Sequence[int], a: IntMatrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0])))
