"""Free differential calculus on the integral group ring of a free group.

Elements are finite Z-linear combinations of reduced words, kept in a
canonical sorted form so equality is structural.  The derivative of a word is
computed in one left-to-right pass over its letters: a positive letter a_j
contributes the prefix before it, a negative letter a_j^-1 contributes minus
the prefix *including* it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .freegroup import Endomorphism, IntMatrix, Word

_TERM_RE = re.compile(r"([+-])?\s*(\d+)?\s*((?:[A-Za-z](?:\^-?\d+)?\s*)*)")


def _canonical(terms: Mapping[Word, int]) -> tuple[tuple[Word, int], ...]:
    items = [(w, int(c)) for w, c in terms.items() if c]
    items.sort(key=lambda wc: wc[0].sort_key())
    return tuple(items)


@dataclass(frozen=True, slots=True)
class RingElem:
    """An element of the integral group ring of the free group."""

    terms: tuple[tuple[Word, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical(dict(self.terms)))

    @classmethod
    def zero(cls) -> "RingElem":
        return cls()

    @classmethod
    def one(cls) -> "RingElem":
        return cls(((Word(), 1),))

    @classmethod
    def monomial(cls, w: Word, c: int = 1) -> "RingElem":
        return cls(((w, c),))

    @classmethod
    def from_dict(cls, d: Mapping[Word, int]) -> "RingElem":
        return cls(tuple(d.items()))

    def as_dict(self) -> dict[Word, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "RingElem") -> "RingElem":
        acc = dict(self.terms)
        for w, c in other.terms:
            acc[w] = acc.get(w, 0) + c
        return RingElem.from_dict(acc)

    def __neg__(self) -> "RingElem":
        return RingElem(tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other: "RingElem") -> "RingElem":
        return self + (-other)

    def __mul__(self, other: "RingElem") -> "RingElem":
        acc: dict[Word, int] = {}
        for u, cu in self.terms:
            for v, cv in other.terms:
                w = u * v
                acc[w] = acc.get(w, 0) + cu * cv
        return RingElem.from_dict(acc)

    def scale(self, c: int) -> "RingElem":
        return RingElem(tuple((w, c * k) for w, k in self.terms))

    def map_words(self, fn: Callable[[Word], Word]) -> "RingElem":
        acc: dict[Word, int] = {}
        for w, c in self.terms:
            img = fn(w)
            acc[img] = acc.get(img, 0) + c
        return RingElem.from_dict(acc)

    def augment(self) -> int:
        """Sum of coefficients (the augmentation map to Z)."""
        return sum(c for _, c in self.terms)

    def norm(self) -> int:
        """Sum of absolute values of the coefficients."""
        return sum(abs(c) for _, c in self.terms)

    # -- text -------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for i, (w, c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = w.to_text()
            if body == "1":
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag} {body}"
            if i == 0:
                chunks.append(piece if c > 0 else f"-{piece}")
            else:
                chunks.append(f"{sign} {piece}")
        return " ".join(chunks)

    __str__ = to_text

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "RingElem":
        text = text.strip()
        if text in ("", "0"):
            return cls.zero()
        acc: dict[Word, int] = {}
        pos = 0
        first = True
        while pos < len(text):
            m = _TERM_RE.match(text, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse ring element at ...{text[pos:]!r}")
            sign, digits, letters = m.group(1), m.group(2), m.group(3)
            if sign is None and not first:
                raise ValueError(f"missing +/- before ...{text[pos:]!r}")
            c = int(digits) if digits else 1
            if sign == "-":
                c = -c
            w = Word.parse(letters or "", rank)
            acc[w] = acc.get(w, 0) + c
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
            first = False
        return cls.from_dict(acc)


@dataclass(frozen=True, slots=True)
class RingMatrix:
    """A rectangular matrix over the group ring."""

    entries: tuple[tuple[RingElem, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, n: int) -> "RingMatrix":
        one, zero = RingElem.one(), RingElem.zero()
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    def __mul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = tuple(zip(*other.entries))
        out = []
        for row in self.entries:
            out_row = []
            for col in cols:
                acc = RingElem.zero()
                for x, y in zip(row, col):
                    acc = acc + x * y
                out_row.append(acc)
            out.append(tuple(out_row))
        return RingMatrix(tuple(out))

    def trace(self) -> RingElem:
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        acc = RingElem.zero()
        for i in range(self.nrows):
            acc = acc + self.entries[i][i]
        return acc

    def map_entries(self, fn: Callable[[RingElem], RingElem]) -> "RingMatrix":
        return RingMatrix(tuple(tuple(fn(e) for e in row) for row in self.entries))

    def augment(self) -> IntMatrix:
        return tuple(tuple(e.augment() for e in row) for row in self.entries)


def fox_derivative(w: Word, j: int, rank: int | None = None) -> RingElem:
    """The free derivative of ``w`` with respect to generator ``j`` (1-based)."""
    if j < 1 or (rank is not None and j > rank):
        raise ValueError(f"generator index {j} out of range")
    acc: dict[Word, int] = {}
    prefix: list[int] = []
    for x in w.letters:
        if x == j:
            p = Word(tuple(prefix))
            acc[p] = acc.get(p, 0) + 1
        elif x == -j:
            p = Word(tuple(prefix) + (x,))
            acc[p] = acc.get(p, 0) - 1
        prefix.append(x)
    return RingElem.from_dict(acc)


def jacobian(f: Endomorphism) -> RingMatrix:
    """Fox matrix of the endomorphism: entry (i, j) is d(image_i)/d(a_j)."""
    return RingMatrix(
        tuple(
            tuple(fox_derivative(w, j, f.rank) for j in range(1, f.rank + 1))
            for w in f.images
        )
    )


def chain_matrices(f: Endomorphism) -> tuple[RingMatrix, RingMatrix]:
    """Chain-level matrices on the rose model: degree 0 is (1), degree 1 the
    Fox matrix."""
    return RingMatrix(((RingElem.one(),),)), jacobian(f)


def endo_on_elem(f: Endomorphism, x: RingElem) -> RingElem:
    """Apply the endomorphism to every word of a ring element."""
    return x.map_words(f.apply)


def endo_on_matrix(f: Endomorphism, m: RingMatrix) -> RingMatrix:
    return m.map_entries(lambda e: endo_on_elem(f, e))


def augment(x: RingElem | RingMatrix):
    """Augmentation: coefficient sum of an element, or entrywise on a matrix."""
    return x.augment()
