"""Finite chain complexes over the rationals, group-ring presentations and twisting."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

from . import linalg
from .errors import InputError
from .linalg import Matrix

if TYPE_CHECKING:
    from .torsion import GradedBasis

__all__ = [
    "ChainComplex",
    "Violation",
    "GroupWord",
    "GroupRingElement",
    "GroupRingMatrix",
    "Representation",
    "validate_complex",
    "ensure_valid",
    "evaluate_word",
    "twist",
    "rank_of",
    "betti_numbers",
    "BoundaryLift",
    "select_boundary_lift",
    "check_boundary_lift",
    "verify_homology_basis",
]

rank_of = linalg.rank_of


@dataclass(frozen=True)
class ChainComplex:
    """C_N -> ... -> C_0 with ``boundaries[q-1]`` the matrix of d_q.

    d_q has shape dim C_{q-1} x dim C_q; its columns are the images of the
    preferred basis of C_q.
    """

    degrees: tuple[int, ...]
    boundaries: tuple[tuple[tuple[Fraction, ...], ...], ...] = ()

    def __init__(self, degrees: Iterable[int], boundaries: Iterable[Sequence[Sequence]] = ()):
        degrees = tuple(int(d) for d in degrees)
        if not degrees:
            raise InputError("a chain complex needs at least degree 0")
        if any(d < 0 for d in degrees):
            raise InputError(f"negative module dimension in {degrees}")
        mats = tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in boundaries)
        if len(mats) != len(degrees) - 1:
            raise InputError(
                f"{len(degrees)} degrees need {len(degrees) - 1} boundary maps, got {len(mats)}"
            )
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "boundaries", mats)

    @property
    def top(self) -> int:
        return len(self.degrees) - 1

    @property
    def total_dimension(self) -> int:
        return sum(self.degrees)

    def dim(self, q: int) -> int:
        return self.degrees[q] if 0 <= q <= self.top else 0

    def boundary(self, q: int) -> Matrix:
        """d_q as a mutable matrix; zero map outside 1..N."""
        if 1 <= q <= self.top:
            return [list(row) for row in self.boundaries[q - 1]]
        return linalg.zeros(self.dim(q - 1), self.dim(q))


@dataclass(frozen=True)
class Violation:
    degree: int
    condition: str
    message: str

    def __str__(self):
        return f"degree {self.degree}: {self.condition}: {self.message}"


def validate_complex(C: ChainComplex) -> list[Violation]:
    """Shape and d∘d = 0 checks.  An empty list means the complex is valid."""
    out: list[Violation] = []
    shapes_ok = True
    for q in range(1, C.top + 1):
        m = C.boundaries[q - 1]
        rows, cols = C.dim(q - 1), C.dim(q)
        if len(m) != rows or any(len(r) != cols for r in m):
            got = f"{len(m)}x{len(m[0]) if m else '?'}"
            out.append(Violation(q, "shape", f"d_{q} must be {rows}x{cols}, got {got}"))
            shapes_ok = False
    if not shapes_ok:
        return out
    for q in range(1, C.top):
        prod = linalg.matmul(C.boundary(q), C.boundary(q + 1), inner=C.dim(q))
        if not linalg.is_zero(prod):
            i, j = next((i, j) for i, row in enumerate(prod) for j, x in enumerate(row) if x)
            out.append(Violation(q, "dd=0", f"d_{q}∘d_{q + 1} has nonzero entry at ({i}, {j})"))
    return out


def ensure_valid(C: ChainComplex) -> ChainComplex:
    problems = validate_complex(C)
    if problems:
        raise InputError("invalid chain complex: " + "; ".join(map(str, problems)))
    return C


# -- group rings and representations ---------------------------------------

@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word: letters are (generator index, nonzero exponent)."""

    letters: tuple[tuple[int, int], ...] = ()

    def __init__(self, letters: Iterable[Sequence[int]] = ()):
        reduced: list[list[int]] = []
        for gen, exp in letters:
            gen, exp = int(gen), int(exp)
            if gen < 0:
                raise InputError(f"generator index must be non-negative, got {gen}")
            if exp == 0:
                continue
            if reduced and reduced[-1][0] == gen:
                reduced[-1][1] += exp
                if reduced[-1][1] == 0:
                    reduced.pop()
            else:
                reduced.append([gen, exp])
        object.__setattr__(self, "letters", tuple((g, e) for g, e in reduced))

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord((g, -e) for g, e in reversed(self.letters))

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class GroupRingElement:
    """A finite sum of rational multiples of group words."""

    terms: tuple[tuple[Fraction, GroupWord], ...] = ()

    def __init__(self, terms: Iterable[tuple] = ()):
        acc: dict[GroupWord, Fraction] = {}
        for coeff, word in terms:
            if not isinstance(word, GroupWord):
                word = GroupWord(word)
            acc[word] = acc.get(word, Fraction(0)) + Fraction(coeff)
        object.__setattr__(
            self, "terms", tuple((c, w) for w, c in acc.items() if c != 0)
        )

    @classmethod
    def scalar(cls, c) -> GroupRingElement:
        return cls([(c, GroupWord())])


@dataclass(frozen=True)
class GroupRingMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[GroupRingElement, ...], ...]

    def __init__(self, entries: Sequence[Sequence[GroupRingElement]], rows: int | None = None,
                 cols: int | None = None):
        ent = tuple(tuple(e if isinstance(e, GroupRingElement) else GroupRingElement(e) for e in row)
                    for row in entries)
        rows = len(ent) if rows is None else rows
        cols = (len(ent[0]) if ent else 0) if cols is None else cols
        if len(ent) != rows or any(len(r) != cols for r in ent):
            raise InputError(f"group-ring matrix is not {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rational(cls, m: Sequence[Sequence], rows: int | None = None,
                      cols: int | None = None) -> GroupRingMatrix:
        return cls([[GroupRingElement.scalar(x) for x in row] for row in m], rows, cols)


@dataclass(frozen=True)
class Representation:
    """An orthogonal representation of a free group with rational images."""

    rank: int
    images: tuple[tuple[tuple[Fraction, ...], ...], ...] = ()

    def __init__(self, rank: int, images: Iterable[Sequence[Sequence]] = ()):
        rank = int(rank)
        if rank < 1:
            raise InputError(f"representation rank must be positive, got {rank}")
        mats = []
        for g, img in enumerate(images):
            m = linalg.as_matrix(img)
            if len(m) != rank or any(len(r) != rank for r in m):
                raise InputError(f"image of generator {g} is not {rank}x{rank}")
            if linalg.matmul(linalg.transpose(m), m) != linalg.identity(rank):
                raise InputError(f"image of generator {g} is not orthogonal (R^T R != I)")
            mats.append(tuple(tuple(r) for r in m))
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "images", tuple(mats))

    @classmethod
    def trivial(cls, rank: int, generators: int = 0) -> Representation:
        return cls(rank, [linalg.identity(rank)] * generators)


def evaluate_word(rep: Representation, w: GroupWord) -> Matrix:
    """rho(w); inverses of generators are transposes.

    Generators beyond those listed in ``rep`` are an error, except that a
    representation with no images at all is read as the trivial one.
    """
    out = linalg.identity(rep.rank)
    for gen, exp in w.letters:
        if not rep.images:
            continue
        if gen >= len(rep.images):
            raise InputError(
                f"generator {gen} out of range: representation has {len(rep.images)} generators"
            )
        img = [list(r) for r in rep.images[gen]]
        if exp < 0:
            img = linalg.transpose(img)
        for _ in range(abs(exp)):
            out = linalg.matmul(out, img)
    return out


def _twist_entry(rep: Representation, e: GroupRingElement) -> Matrix:
    m = rep.rank
    block = linalg.zeros(m, m)
    for c, w in e.terms:
        rw = evaluate_word(rep, w)
        for i in range(m):
            for j in range(m):
                block[i][j] += c * rw[i][j]
    return block


def twist(B: Sequence[GroupRingMatrix], rep: Representation,
          degrees: Sequence[int] | None = None) -> ChainComplex:
    """The twisted complex: each entry sum c_i w_i becomes sum c_i rho(w_i).

    ``degrees`` (cell counts per degree) is only needed when some boundary
    has an empty side; otherwise it is read off the matrix shapes.
    """
    if degrees is None:
        if not B:
            raise InputError("cannot infer degrees of an empty boundary list")
        degrees = [B[0].rows] + [b.cols for b in B]
    degrees = list(degrees)
    if len(degrees) != len(B) + 1:
        raise InputError(f"{len(degrees)} degrees do not match {len(B)} boundary maps")
    for q, b in enumerate(B, start=1):
        if (b.rows, b.cols) != (degrees[q - 1], degrees[q]):
            raise InputError(
                f"group-ring d_{q} is {b.rows}x{b.cols}, expected {degrees[q - 1]}x{degrees[q]}"
            )
    m = rep.rank
    mats = []
    for b in B:
        big = linalg.zeros(b.rows * m, b.cols * m)
        for i, row in enumerate(b.entries):
            for j, e in enumerate(row):
                if not e.terms:
                    continue
                blk = _twist_entry(rep, e)
                for r in range(m):
                    big[i * m + r][j * m:(j + 1) * m] = blk[r]
        mats.append(big)
    C = ChainComplex([d * m for d in degrees], mats)
    return ensure_valid(C)


# -- homology ----------------------------------------------------------------

def betti_numbers(C: ChainComplex) -> list[int]:
    ranks = [0] + [linalg.rank_of(C.boundary(q)) for q in range(1, C.top + 1)] + [0]
    return [C.dim(q) - ranks[q] - ranks[q + 1] for q in range(C.top + 1)]


@dataclass(frozen=True)
class BoundaryLift:
    """Chosen columns b_q of d_q and the restricted matrix d_q(b_q)."""

    degree: int
    columns: tuple[int, ...]
    image: tuple[tuple[Fraction, ...], ...] = field(repr=False)


def select_boundary_lift(C: ChainComplex, q: int) -> BoundaryLift:
    """Leftmost independent columns of d_q (empty when d_q = 0)."""
    if not 1 <= q <= C.top:
        raise InputError(f"boundary lift needs 1 <= q <= {C.top}, got {q}")
    d = C.boundary(q)
    cols = tuple(linalg.pivot_columns(d))
    return BoundaryLift(q, cols, tuple(tuple(row[j] for j in cols) for row in d))


def check_boundary_lift(C: ChainComplex, q: int, cols: Sequence[int]) -> BoundaryLift:
    """Validate an arbitrary lift choice: |b_q| = rank d_q and d_q(b_q) independent."""
    d = C.boundary(q)
    cols = tuple(int(j) for j in cols)
    if len(set(cols)) != len(cols) or any(not 0 <= j < C.dim(q) for j in cols):
        raise InputError(f"lift columns {cols} invalid for degree {q}")
    sub = [[row[j] for j in cols] for row in d]
    r = linalg.rank_of(d)
    if len(cols) != r or linalg.rank_of(sub) != r:
        raise InputError(f"columns {cols} do not lift a basis of B_{q - 1}")
    return BoundaryLift(q, cols, tuple(tuple(row) for row in sub))


def verify_homology_basis(C: ChainComplex, h: GradedBasis) -> list[Violation]:
    """Check h_q are cycles, |h_q| = dim H_q and independent modulo B_q."""
    out: list[Violation] = []
    betti = betti_numbers(C)
    for q in h.degrees():
        if q > C.top or q < 0:
            if h[q]:
                out.append(Violation(q, "degree", f"complex has no degree {q}"))
    for q in range(C.top + 1):
        vecs = h[q]
        if len(vecs) != betti[q]:
            out.append(Violation(q, "count", f"{len(vecs)} vectors for dim H_{q} = {betti[q]}"))
            continue
        if not vecs:
            continue
        if any(len(v.coords) != C.dim(q) for v in vecs):
            out.append(Violation(q, "length", f"coordinate vectors must have length {C.dim(q)}"))
            continue
        dq = C.boundary(q)
        bad = [i for i, v in enumerate(vecs)
               if not linalg.is_zero(linalg.matmul(dq, [[c] for c in v.coords], inner=C.dim(q)))]
        if bad:
            out.append(Violation(q, "cycle", f"vectors {bad} are not cycles"))
            continue
        bnd = C.boundary(q + 1)
        rb = linalg.rank_of(bnd)
        stacked = [list(v.coords) for v in vecs] + linalg.transpose(bnd, C.dim(q + 1))
        if linalg.rank_of(stacked) != len(vecs) + rb:
            out.append(Violation(q, "independence",
                                 "vectors are dependent modulo the boundaries B_q"))
    return out
