"""Isometric embeddings of lattices and their orthogonal complements.

An embedding is stored as an integer matrix whose columns are the images of
the source basis vectors in the target basis.  Three questions about an
embedding are answered here exactly:

  * is it isometric (does it carry the source form to the target form),
  * is it primitive (is the quotient target/image torsion free),
  * what is its orthogonal complement inside the target.

Primitivity is decided through the Smith normal form of the embedding
matrix: the image is a direct summand exactly when every invariant factor
is 1.  The complement is the saturated integer kernel of P^T G, so it comes
out in a canonical basis and is itself primitive by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch
from .lattices import Lattice
from .matrices import IntMatrix, det, integer_kernel, snf


@dataclass(frozen=True)
class Embedding:
    """A linear map of lattices, columns = images of source basis vectors.

    The constructor checks shapes only; isometry is a separate question so
    that candidate maps can be represented and then tested.
    """

    source: Lattice
    target: Lattice
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.rank or self.matrix.cols != self.source.rank:
            raise DimensionMismatch(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.target.rank}x{self.source.rank}"
            )


@dataclass(frozen=True)
class ComplementResult:
    """Orthogonal complement of an embedded lattice.

    complement.matrix columns span everything in the target pairing to zero
    with the image.  pic_plus_t_det is det[P | T] when that concatenation is
    square, and 0 otherwise; a nonzero value certifies that image + complement
    has finite index in the target.
    """

    complement: Embedding
    pic_plus_t_det: int


def check_isometric(e: Embedding) -> bool:
    """True iff P^T G_target P equals G_source exactly.

    >>> from .lattices import build_H, Lattice
    >>> amb = build_H()
    >>> sub = Lattice(IntMatrix.from_rows([[0, 2], [2, 0]]))
    >>> check_isometric(Embedding(sub, amb, IntMatrix.from_rows([[1, 0], [0, 2]])))
    True
    """
    got = e.matrix.transpose() @ e.target.gram @ e.matrix
    return got == e.source.gram


def is_primitive(e: Embedding) -> bool:
    """True iff target/image is torsion free (all invariant factors 1)."""
    n = e.source.rank
    return snf(e.matrix).invariant_factors == tuple([1] * n)


def orthogonal_complement(e: Embedding) -> ComplementResult:
    """The saturated sublattice pairing to zero with the image of e."""
    t = integer_kernel(e.matrix.transpose() @ e.target.gram)
    gram_t = t.transpose() @ e.target.gram @ t
    complement = Embedding(Lattice(gram_t), e.target, t)
    frame = e.matrix.hstack(t)
    d = det(frame) if frame.is_square else 0
    return ComplementResult(complement=complement, pic_plus_t_det=d)
