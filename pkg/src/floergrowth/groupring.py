"""Arithmetic in the group ring of the mapping torus, on z-homogeneous parts.

The mapping-torus group adds a letter z to the free group, with conjugation
by z acting as the endomorphism.  A homogeneous element is written z^n * u
with u in the group ring of the fiber; moving a body across z^n twists it by
the n-th iterate, which is the whole content of ``h_multiply``.

Norms of the Reidemeister trace are reported as certified intervals.  Terms
are first split by an abelianized orbit invariant (different labels can never
be conjugate), then merged only when an explicit conjugacy certificate is
found by a bounded search; the interval brackets the true norm from both
sides and collapses whenever the two agree.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .foxcalc import RingElem, RingMatrix, chain_matrices, endo_on_elem
from .freegroup import (
    Endomorphism,
    IntMatrix,
    Word,
    mat_identity,
    mat_pow,
    mat_sub,
    vec_mat,
)
from .snf import diagonal, smith_normal_form

DEFAULT_SEARCH_DEPTH = 8
_MAX_REACH_STATES = 4000


@dataclass(frozen=True, slots=True)
class HElem:
    """A z-homogeneous element ``z^z_degree * body`` of the torus group ring."""

    z_degree: int
    body: RingElem

    def __post_init__(self):
        if self.z_degree < 0:
            raise ValueError("z_degree must be >= 0")

    def norm(self) -> int:
        return self.body.norm()

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def to_text(self) -> str:
        return f"z^{self.z_degree} * ({self.body.to_text()})"


@dataclass(frozen=True, slots=True)
class HMatrix:
    """A square matrix of homogeneous elements sharing one z-degree."""

    z_degree: int
    body: RingMatrix

    def __post_init__(self):
        if self.z_degree < 0:
            raise ValueError("z_degree must be >= 0")
        if self.body.nrows != self.body.ncols:
            raise ValueError("HMatrix must be square")

    @property
    def size(self) -> int:
        return self.body.nrows


def h_multiply(x: HElem, y: HElem, f: Endomorphism) -> HElem:
    """Product of homogeneous elements: degrees add, the left body is twisted
    by the iterate matching the right degree before ring multiplication."""
    fn = f.iterate(y.z_degree)
    return HElem(x.z_degree + y.z_degree, endo_on_elem(fn, x.body) * y.body)


def h_matmul(x: HMatrix, y: HMatrix, f: Endomorphism) -> HMatrix:
    if x.size != y.size:
        raise ValueError("size mismatch")
    fn = f.iterate(y.z_degree)
    twisted = x.body.map_entries(lambda e: endo_on_elem(fn, e))
    return HMatrix(x.z_degree + y.z_degree, twisted * y.body)


def h_matrix_power(m: HMatrix, n: int, f: Endomorphism) -> HMatrix:
    if n < 1:
        raise ValueError("power must be >= 1")
    out = m
    for _ in range(n - 1):
        out = h_matmul(out, m, f)
    return out


def h_trace(m: HMatrix) -> HElem:
    return HElem(m.z_degree, m.body.trace())


def norm(x: RingElem | HElem) -> int:
    """Sum of absolute values of the coefficients."""
    return x.norm()


def norm_matrix(m: RingMatrix | HMatrix) -> IntMatrix:
    """Entrywise coefficient norms, as a nonnegative integer matrix."""
    body = m.body if isinstance(m, HMatrix) else m
    return tuple(tuple(e.norm() for e in row) for row in body.entries)


def matrix_norm(m: RingMatrix | HMatrix) -> int:
    """Total norm: the sum of all entry norms."""
    return sum(sum(row) for row in norm_matrix(m))


# -- orbit-class invariants -------------------------------------------------

def orbit_coordinate(g: Word, f: Endomorphism, n: int) -> tuple[int, ...]:
    """Conjugacy-invariant label of the section-term ``z^n g``.

    The abelianized class lives in coker(I - A^n) where A is the abelianized
    endomorphism; conjugating by z moves the class by A, whose action on that
    cokernel has order dividing n.  The label is the lexicographically least
    Smith-reduced representative along the A-orbit, so distinct labels are
    guaranteed to be distinct conjugacy classes.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a = f.abelianize()
    m = mat_sub(mat_identity(f.rank), mat_pow(a, n))
    d, _, q = smith_normal_form(m)
    diag = diagonal(d)

    def canonical(vec: Sequence[int]) -> tuple[int, ...]:
        w = vec_mat(vec, q)
        return tuple(x % di if di else x for x, di in zip(w, diag))

    v = g.exponent_vector(f.rank)
    best = canonical(v)
    for _ in range(n - 1):
        v = vec_mat(v, a)
        cand = canonical(v)
        if cand < best:
            best = cand
    return best


# -- Reidemeister trace -------------------------------------------------------

def reidemeister_trace(
    f: Endomorphism, n: int, extra_matrices: Sequence[RingMatrix] = ()
) -> HElem:
    """Alternating sum of homogeneous traces of the n-th twisted chain powers.

    Degrees 0 and 1 come from the rose model; matrices for higher degrees may
    be supplied verbatim and enter with alternating signs starting at d = 2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    f0, f1 = chain_matrices(f)
    acc = RingElem.zero()
    for d, mat in enumerate([f0, f1, *extra_matrices]):
        power = h_matrix_power(HMatrix(1, mat), n, f)
        term = h_trace(power).body
        acc = acc + (term if d % 2 == 0 else -term)
    return HElem(n, acc)


@dataclass(frozen=True, slots=True)
class NormInterval:
    """Certified bracket on the norm of a class sum; exact when lower == upper."""

    lower: int
    upper: int
    certified: bool


def _reach_set(
    g: Word,
    f: Endomorphism,
    fn: Endomorphism,
    n: int,
    depth: int,
    max_states: int,
) -> frozenset[Word]:
    """Words certified conjugate to ``z^n g`` by bounded elementary moves.

    Moves: twisted conjugation by a single generator letter (cost 1) and the
    z-conjugation ``g -> f(g)`` (cost 0).  Every move is an actual conjugacy
    in the torus group, so membership certifies a merge; the bounded search
    makes no claims about non-membership.
    """
    rank = f.rank
    # left factors fn(x)^-1 for each letter x, precomputed
    pos_left = [fn.images[j].inverse() for j in range(rank)]
    neg_left = [fn.images[j] for j in range(rank)]
    length_cap = len(g) + depth * (1 + max(len(w) for w in fn.images)) + 4

    seen: dict[Word, int] = {g: 0}
    queue: deque[Word] = deque([g])
    while queue and len(seen) < max_states:
        cur = queue.popleft()
        cost = seen[cur]
        # free move: conjugation by z
        img = f.apply(cur)
        if len(img) <= length_cap and img not in seen:
            seen[img] = cost
            queue.append(img)
        if cost >= depth:
            continue
        for j in range(rank):
            for new in (
                pos_left[j] * cur * Word((j + 1,)),
                neg_left[j] * cur * Word((-(j + 1),)),
            ):
                if len(new) <= length_cap and new not in seen:
                    seen[new] = cost + 1
                    queue.append(new)
    return frozenset(seen)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def norm_interval(
    h: HElem,
    f: Endomorphism,
    search_depth: int = DEFAULT_SEARCH_DEPTH,
    max_states: int = _MAX_REACH_STATES,
    threads: int | None = None,
) -> NormInterval:
    """Bracket the norm of the class sum of a homogeneous element.

    lower merges everything the abelianized label allows; upper merges only
    pairs holding an explicit certificate.  The true class-sum norm lies in
    [lower, upper], and the interval is certified exact when they coincide.
    """
    n = h.z_degree
    terms = list(h.body.terms)
    if not terms:
        return NormInterval(0, 0, True)

    groups: dict[tuple, list[tuple[Word, int]]] = {}
    for w, c in terms:
        groups.setdefault(orbit_coordinate(w, f, n), []).append((w, c))

    lower = sum(abs(sum(c for _, c in grp)) for grp in groups.values())

    upper = 0
    fn: Endomorphism | None = None
    for grp in groups.values():
        coeffs = [c for _, c in grp]
        if len(grp) == 1 or all(c > 0 for c in coeffs) or all(c < 0 for c in coeffs):
            # merging same-sign terms never changes the norm
            upper += sum(abs(c) for c in coeffs)
            continue
        if fn is None:
            fn = f.iterate(n)
        words = [w for w, _ in grp]
        if threads and threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                reaches = list(
                    pool.map(
                        lambda w: _reach_set(w, f, fn, n, search_depth, max_states),
                        words,
                    )
                )
        else:
            reaches = [
                _reach_set(w, f, fn, n, search_depth, max_states) for w in words
            ]
        uf = _UnionFind(len(grp))
        for i in range(len(grp)):
            for j in range(i + 1, len(grp)):
                if uf.find(i) != uf.find(j) and reaches[i] & reaches[j]:
                    uf.union(i, j)
        sums: dict[int, int] = {}
        for i, (_, c) in enumerate(grp):
            root = uf.find(i)
            sums[root] = sums.get(root, 0) + c
        upper += sum(abs(s) for s in sums.values())

    return NormInterval(lower, upper, lower == upper)


def reidemeister_interval(
    f: Endomorphism,
    n: int,
    search_depth: int = DEFAULT_SEARCH_DEPTH,
    extra_matrices: Sequence[RingMatrix] = (),
    max_states: int = _MAX_REACH_STATES,
    threads: int | None = None,
) -> NormInterval:
    """Certified bracket on the class-sum norm of the n-th Reidemeister trace."""
    h = reidemeister_trace(f, n, extra_matrices)
    return norm_interval(h, f, search_depth=search_depth, max_states=max_states, threads=threads)
