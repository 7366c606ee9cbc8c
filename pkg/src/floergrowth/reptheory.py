"""Finite-dimensional representations of the mapping-torus group and the
twisted Lefschetz zeta function.

Two kinds are supported.  Permutation representations carry exact integer
0/1 matrices and produce exact rational zeta data; unitary representations
carry complex float matrices (checked unitary to 1e-8) and produce float
data.  A representation is valid when conjugating each generator matrix by
the z matrix reproduces the matrix of the generator's image.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .foxcalc import RingMatrix, chain_matrices
from .freegroup import Endomorphism, Word, mat_identity, mat_mul, mat_pow
from .groupring import HMatrix
from .ratfunc import RationalFunction, det_one_minus_t

UNITARY_TOL = 1e-8

PERMUTATION = "permutation"
UNITARY = "unitary"


def _is_permutation_matrix(m) -> bool:
    n = len(m)
    for row in m:
        if len(row) != n or any(x not in (0, 1) for x in row) or sum(row) != 1:
            return False
    return all(sum(row[j] for row in m) == 1 for j in range(n))


@dataclass(frozen=True)
class Representation:
    """Matrices for the fiber generators and for z."""

    dim: int
    kind: str
    gen_images: tuple
    z_image: object

    def __post_init__(self):
        if self.kind not in (PERMUTATION, UNITARY):
            raise ValueError(f"unknown representation kind {self.kind!r}")
        if self.kind == PERMUTATION:
            gens = tuple(
                tuple(tuple(int(x) for x in row) for row in g) for g in self.gen_images
            )
            z = tuple(tuple(int(x) for x in row) for row in self.z_image)
            for m in (*gens, z):
                if len(m) != self.dim or not _is_permutation_matrix(m):
                    raise ValueError("permutation representation needs 0/1 permutation matrices")
            object.__setattr__(self, "gen_images", gens)
            object.__setattr__(self, "z_image", z)
        else:
            gens = tuple(np.asarray(g, dtype=complex) for g in self.gen_images)
            z = np.asarray(self.z_image, dtype=complex)
            eye = np.eye(self.dim)
            for m in (*gens, z):
                if m.shape != (self.dim, self.dim):
                    raise ValueError("matrix shape mismatch")
                if np.max(np.abs(m.conj().T @ m - eye)) > UNITARY_TOL:
                    raise ValueError("matrix is not unitary within tolerance")
            object.__setattr__(self, "gen_images", gens)
            object.__setattr__(self, "z_image", z)

    @property
    def rank(self) -> int:
        return len(self.gen_images)

    def is_exact(self) -> bool:
        return self.kind == PERMUTATION

    def _inv(self, m):
        if self.kind == PERMUTATION:
            return tuple(zip(*m))
        return m.conj().T

    def letter_matrix(self, letter: int):
        g = self.gen_images[abs(letter) - 1]
        return g if letter > 0 else self._inv(g)

    def word_matrix(self, w: Word):
        """Matrix of a fiber word."""
        if self.kind == PERMUTATION:
            acc = mat_identity(self.dim)
            for x in w.letters:
                acc = mat_mul(acc, self.letter_matrix(x))
            return acc
        acc = np.eye(self.dim, dtype=complex)
        for x in w.letters:
            acc = acc @ self.letter_matrix(x)
        return acc

    def z_power(self, k: int):
        if self.kind == PERMUTATION:
            return mat_pow(self.z_image, k)
        return np.linalg.matrix_power(self.z_image, k)

    # -- JSON ---------------------------------------------------------------

    @classmethod
    def from_json(cls, data) -> "Representation":
        kind = data["kind"]
        if kind == PERMUTATION:
            decode = lambda m: tuple(tuple(int(x) for x in row) for row in m)
        else:
            decode = lambda m: np.array(
                [[complex(x[0], x[1]) for x in row] for row in m], dtype=complex
            )
        return cls(
            dim=int(data["dim"]),
            kind=kind,
            gen_images=tuple(decode(m) for m in data["a"]),
            z_image=decode(data["z"]),
        )

    def to_json(self) -> dict:
        if self.kind == PERMUTATION:
            encode = lambda m: [[int(x) for x in row] for row in m]
        else:
            encode = lambda m: [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(m)]
        return {
            "dim": self.dim,
            "kind": self.kind,
            "a": [encode(m) for m in self.gen_images],
            "z": encode(self.z_image),
        }


def rho_word(rep: Representation, w: Word):
    """Image of a group-ring basis word under the representation."""
    return rep.word_matrix(w)


def trivial_representation(rank: int) -> Representation:
    one = ((1,),)
    return Representation(1, PERMUTATION, tuple(one for _ in range(rank)), one)


def abelian_quotient_rep(f: Endomorphism, modulus: int) -> Representation:
    """Permutation representation on (Z/m)^rank by translations, with z acting
    by the inverse of the abelianized endomorphism mod m.

    Requires the abelianized matrix to be invertible mod m; this is a direct
    construction, not a search.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    r = f.rank
    a = f.abelianize()
    # invert a mod modulus by Gaussian elimination
    aug = [[a[i][j] % modulus for j in range(r)] + [1 if i == j else 0 for j in range(r)] for i in range(r)]
    for col in range(r):
        piv = next(
            (i for i in range(col, r) if _modinv_exists(aug[i][col], modulus)), None
        )
        if piv is None:
            raise ValueError(f"abelianized matrix is not invertible mod {modulus}")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = _modinv(aug[col][col], modulus)
        aug[col] = [(x * inv) % modulus for x in aug[col]]
        for i in range(r):
            if i != col and aug[i][col]:
                c = aug[i][col]
                aug[i] = [(x - c * y) % modulus for x, y in zip(aug[i], aug[col])]
    a_inv = [row[r:] for row in aug]

    points = []
    _enumerate_points(r, modulus, [], points)
    index = {pt: i for i, pt in enumerate(points)}
    size = len(points)

    def perm_from_map(fn):
        m = [[0] * size for _ in range(size)]
        for pt, i in index.items():
            m[index[fn(pt)]][i] = 1
        return tuple(tuple(row) for row in m)

    gens = tuple(
        perm_from_map(
            lambda pt, k=k: tuple((x + (1 if j == k else 0)) % modulus for j, x in enumerate(pt))
        )
        for k in range(r)
    )
    z = perm_from_map(
        lambda pt: tuple(
            sum(pt[i] * a_inv[i][j] for i in range(r)) % modulus for j in range(r)
        )
    )
    return Representation(size, PERMUTATION, gens, z)


def _enumerate_points(r, m, prefix, out):
    if len(prefix) == r:
        out.append(tuple(prefix))
        return
    for x in range(m):
        _enumerate_points(r, m, prefix + [x], out)


def _modinv_exists(x, m):
    from math import gcd

    return gcd(x % m, m) == 1


def _modinv(x, m):
    return pow(x % m, -1, m)


def validate_rep(rep: Representation, f: Endomorphism, tol: float = UNITARY_TOL):
    """Check that z-conjugation realizes the endomorphism.

    Returns (ok, max_residual); permutation representations are compared
    exactly, unitary ones within ``tol``.
    """
    if rep.rank != f.rank:
        raise ValueError("rank mismatch between representation and endomorphism")
    z_inv = rep._inv(rep.z_image)
    worst = 0.0
    for i in range(f.rank):
        lhs_gen = rep.gen_images[i]
        target = rep.word_matrix(f.images[i])
        if rep.kind == PERMUTATION:
            conj = mat_mul(mat_mul(z_inv, lhs_gen), rep.z_image)
            residual = max(
                abs(conj[r][c] - target[r][c]) for r in range(rep.dim) for c in range(rep.dim)
            )
        else:
            conj = z_inv @ lhs_gen @ rep.z_image
            residual = float(np.max(np.abs(conj - target)))
        worst = max(worst, float(residual))
    return worst <= (0 if rep.kind == PERMUTATION else tol), worst


def twist_matrix(m: HMatrix, rep: Representation):
    """Block matrix of the homogeneous matrix under the representation.

    Block (i, j) is z_image^degree times the representation of the (i, j)
    body entry; sizes multiply, exactness follows the representation kind.
    """
    k = rep.dim
    size = m.size
    zpow = rep.z_power(m.z_degree)
    if rep.kind == PERMUTATION:
        out = [[0] * (size * k) for _ in range(size * k)]
        for i in range(size):
            for j in range(size):
                acc = [[0] * k for _ in range(k)]
                for w, c in m.body.entries[i][j].terms:
                    mat = rep.word_matrix(w)
                    for r in range(k):
                        for s in range(k):
                            acc[r][s] += c * mat[r][s]
                block = mat_mul(zpow, tuple(tuple(row) for row in acc))
                for r in range(k):
                    for s in range(k):
                        out[i * k + r][j * k + s] = block[r][s]
        return tuple(tuple(row) for row in out)
    out = np.zeros((size * k, size * k), dtype=complex)
    zp = np.asarray(zpow)
    for i in range(size):
        for j in range(size):
            acc = np.zeros((k, k), dtype=complex)
            for w, c in m.body.entries[i][j].terms:
                acc += c * rep.word_matrix(w)
            out[i * k : (i + 1) * k, j * k : (j + 1) * k] = zp @ acc
    return out


def _degree_blocks(f: Endomorphism, rep: Representation, extra_matrices: Sequence[RingMatrix]):
    f0, f1 = chain_matrices(f)
    return [twist_matrix(HMatrix(1, mat), rep) for mat in (f0, f1, *extra_matrices)]


def twisted_lefschetz(
    f: Endomorphism,
    rep: Representation,
    n: int,
    extra_matrices: Sequence[RingMatrix] = (),
):
    """Alternating sum of traces of n-th powers of the twisted chain blocks.

    Exact (int) for permutation representations, complex for unitary ones.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    blocks = _degree_blocks(f, rep, extra_matrices)
    total = 0 if rep.is_exact() else complex(0)
    for d, b in enumerate(blocks):
        if rep.is_exact():
            p = mat_pow(b, n)
            tr = sum(p[i][i] for i in range(len(p)))
        else:
            p = np.linalg.matrix_power(b, n)
            tr = complex(np.trace(p))
        total = total + (tr if d % 2 == 0 else -tr)
    return total


def twisted_zeta(
    f: Endomorphism,
    rep: Representation,
    extra_matrices: Sequence[RingMatrix] = (),
) -> RationalFunction:
    """The twisted zeta function as a ratio of characteristic determinants.

    Odd chain degrees multiply the numerator, even ones the denominator, so
    the logarithmic series reproduces the twisted traces iterate by iterate.
    """
    blocks = _degree_blocks(f, rep, extra_matrices)
    exact = rep.is_exact()
    num = (Fraction(1),) if exact else (complex(1),)
    den = num
    for d, b in enumerate(blocks):
        p = det_one_minus_t(b, exact)
        if d % 2 == 1:
            num = tuple(c for c in _pmul(num, p))
        else:
            den = tuple(c for c in _pmul(den, p))
    return RationalFunction.from_parts(num, den, exact)


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def min_root_modulus(r: RationalFunction) -> float:
    """Smallest modulus among the certified roots of either part."""
    return r.min_root_modulus()
