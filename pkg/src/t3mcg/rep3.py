"""The induced integer action on first homology of the ambient torus.

Every word maps to a 3x3 integer matrix of determinant one.  Column-vector
convention throughout: a shear a_ij sends basis vector e_i to e_i + e_j (the
matrix is the identity plus a single 1 in row j, column i), and matrices for a
word multiply right to left so that the first letter acts first.  The swap and
twist generators act trivially here.  Exactness is the point: plain Python
integers, no floats.
"""

from __future__ import annotations

from .words import AXIS_PAIRS, Generator, Word

Mat3 = tuple  # 3x3 tuple of tuples of ints, row-major

IDENTITY3: Mat3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat3(rows) -> Mat3:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise ValueError("expected a 3x3 matrix")
    return m


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    (a00, a01, a02), (a10, a11, a12), (a20, a21, a22) = a
    (b00, b01, b02), (b10, b11, b12), (b20, b21, b22) = b
    return (
        (
            a00 * b00 + a01 * b10 + a02 * b20,
            a00 * b01 + a01 * b11 + a02 * b21,
            a00 * b02 + a01 * b12 + a02 * b22,
        ),
        (
            a10 * b00 + a11 * b10 + a12 * b20,
            a10 * b01 + a11 * b11 + a12 * b21,
            a10 * b02 + a11 * b12 + a12 * b22,
        ),
        (
            a20 * b00 + a21 * b10 + a22 * b20,
            a20 * b01 + a21 * b11 + a22 * b21,
            a20 * b02 + a21 * b12 + a22 * b22,
        ),
    )


def det3(m: Mat3) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _shear(i: int, j: int, c: int = 1) -> Mat3:
    rows = [[1 if r == s else 0 for s in range(3)] for r in range(3)]
    rows[j - 1][i - 1] = c
    return tuple(tuple(r) for r in rows)


_GEN_IMAGE = {}
for i, j in AXIS_PAIRS:
    _GEN_IMAGE[(f"a{i}{j}", 1)] = _shear(i, j, 1)
    _GEN_IMAGE[(f"a{i}{j}", -1)] = _shear(i, j, -1)
_GEN_IMAGE[("s", 1)] = _GEN_IMAGE[("s", -1)] = IDENTITY3
_GEN_IMAGE[("t", 1)] = _GEN_IMAGE[("t", -1)] = IDENTITY3


def gen_image3(g: Generator) -> Mat3:
    return _GEN_IMAGE[(g.kind, g.sign)]


def word_image3(w: Word) -> Mat3:
    acc = IDENTITY3
    for g in w:  # first letter acts first => multiply on the left
        acc = mat_mul(gen_image3(g), acc)
    return acc


def is_kernel3(w: Word) -> bool:
    return word_image3(w) == IDENTITY3


# ---------------------------------------------------------------------------
# Constructive generation: write any determinant-one integer matrix as a word
# in the shears.  We reduce m to the identity by integer row operations
# "row_j += c * row_i" (left multiplication by the image of a_ij^c) and then
# read the word off the operation log.  Euclidean reduction keeps every
# intermediate entry at most a few multiples of the input entries; no attempt
# at short words is made.
# ---------------------------------------------------------------------------


class DeterminantError(ValueError):
    pass


def _letters_for_ops(ops) -> Word:
    # Left-multiplying the op list E_1 .. E_m onto m gives E_m ... E_1 m = I,
    # so m = E_1^-1 ... E_m^-1.  With right-to-left evaluation the word reads
    # the inverted ops in reverse.
    letters = []
    for (i, j, c) in reversed(ops):
        sign = -1 if c > 0 else 1
        letters.extend([Generator(f"a{i}{j}", sign)] * abs(c))
    return tuple(letters)


def decompose_sl3(m: Mat3) -> Word:
    """A word in the shears whose image is m.  Requires det(m) = 1."""
    m = mat3(m)
    if det3(m) != 1:
        raise DeterminantError(f"determinant is {det3(m)}, expected 1")
    work = [list(row) for row in m]
    ops: list[tuple[int, int, int]] = []

    def row_op(i: int, j: int, c: int):
        # row_j += c * row_i  (1-based indices, i != j)
        if c == 0:
            return
        for col in range(3):
            work[j - 1][col] += c * work[i - 1][col]
        ops.append((i, j, c))

    def clear_column(col: int, rows: list[int]):
        # Euclidean reduction of work[r][col] for r in rows, ending with the
        # pivot +1 in rows[0] and zeros below.  gcd of the column entries is 1
        # because it divides the determinant of the untouched minor.
        while True:
            nz = [r for r in rows if work[r - 1][col] != 0]
            if len(nz) == 1:
                break
            nz.sort(key=lambda r: abs(work[r - 1][col]))
            piv = nz[0]
            for r in nz[1:]:
                q = work[r - 1][col] // work[piv - 1][col]
                row_op(piv, r, -q)
        r = nz[0]
        top = rows[0]
        if r != top:
            row_op(r, top, 1)   # copy value up
            row_op(top, r, -1)  # erase it below
        if work[top - 1][col] < 0:
            other = rows[1]
            row_op(top, other, 1)
            row_op(other, top, -2)
            row_op(top, other, 1)
        assert work[top - 1][col] == 1

    clear_column(0, [1, 2, 3])
    clear_column(1, [2, 3])
    # Bottom-right entry is now det / 1 = 1; clear the remaining off-diagonals.
    assert work[2][2] == 1
    row_op(3, 2, -work[1][2])
    row_op(2, 1, -work[0][1])
    row_op(3, 1, -work[0][2])
    assert work == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    return _letters_for_ops(ops)
