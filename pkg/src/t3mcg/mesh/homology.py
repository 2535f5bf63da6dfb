"""Integer homology of the splitting surface via curve crossings.

Rank-6 homology is coordinatized by six generator curves whose crossing Gram
matrix is unimodular by construction: the three mid-plane sections (they bound
disks on the origin-spine side) and one longitude of each distance tube, one
per axis.  Crossing a mid-plane section is the same as winding once in that
coordinate, so the Gram matrix has an identity off-diagonal block no matter
what the tube longitudes do to each other; integer symplectic reduction then
produces the canonical basis (a_1..a_3, b_1..b_3) with form [[0,I],[-I,0]],
p(a_i) = 0 and p(b_i) = e_i.  Classes of arbitrary curves are recovered from
crossing numbers against the generators, which keeps every computation an
exact integer one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .surface import TriMesh
from .curves import (
    DegeneracyError,
    Loop,
    SlicedCurves,
    TUBE_RADIUS,
    plane_section,
    tube_section,
    walk_pairing,
    walk_steps,
)

HALF = Fraction(1, 2)

# Tube k runs parallel to axis k through the crossing line of the two planes
# {x_i = 1/2} and {x_j = 0}, (i, j, k) cyclic; its transverse coordinates are
# (x_i, x_j) in that order.
TUBE_CENTER = (HALF, Fraction(0))


def mat_mul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    return tuple(
        tuple(sum(a[i][x] * b[x][j] for x in range(k)) for j in range(m)) for i in range(n)
    )


def mat_vec(a, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a):
    return tuple(tuple(row[j] for row in a) for j in range(len(a[0])))


def mat_neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def invert_unimodular(a):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        inv.append(tuple(int(v) for v in vals))
    return tuple(inv)


CANONICAL_J = (
    (0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 1),
    (-1, 0, 0, 0, 0, 0),
    (0, -1, 0, 0, 0, 0),
    (0, 0, -1, 0, 0, 0),
)

PROJECTION = (
    (0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 1),
)


@dataclass
class CurveRef:
    """A loop of a sliced field together with the set it came from."""

    curves: SlicedCurves
    index: int

    @property
    def loop(self) -> Loop:
        return self.curves.loops[self.index]


@dataclass
class HomologyData:
    mesh: TriMesh
    disk_sections_a: list  # CurveRef, plane x_i = 1/2, canonically oriented
    disk_sections_b: list  # CurveRef, plane x_i = 0
    tubes: list  # SlicedCurves, axis k = 1,2,3
    longitudes: list  # CurveRef with displacement +e_k
    gram: tuple  # 6x6 crossing matrix of (a_1..a_3, T_1..T_3)
    gram_inv: tuple
    basis_change: tuple  # columns: canonical basis in generator coordinates
    basis_change_inv: tuple
    tube_radius: Fraction
    disk_b_classes: tuple  # canonical classes of the three x_i = 0 sections

    def pair_with_generators(self, steps, walker_sign: int):
        """Crossing numbers of a directed path against the six generators."""
        out = []
        for ref in list(self.disk_sections_a) + list(self.longitudes):
            res = walk_pairing(steps, walker_sign, ref.curves)
            alg = res.get(ref.index, (0, 0))[0]
            out.append(-alg)  # <generator, path> = -<path, generator>
        return tuple(out)

    def class_of_steps(self, steps, walker_sign: int):
        v = self.pair_with_generators(steps, walker_sign)
        xi = mat_vec(self.gram_inv, v)
        return mat_vec(self.basis_change_inv, xi)

    def curve_class(self, ref: CurveRef):
        """Canonical coordinates of a curve's homology class."""
        loop = ref.loop
        return self.class_of_steps(walk_steps(loop), loop.orientation_sign)

    def displacement_of_class(self, cls):
        return mat_vec(PROJECTION, cls)


def form_product(x, y):
    """Intersection form in canonical coordinates."""
    jy = mat_vec(CANONICAL_J, y)
    return sum(a * b for a, b in zip(x, jy))


def intersection_number(h: HomologyData, c1: CurveRef, c2: CurveRef):
    """(algebraic, geometric) crossing counts of two curves on the mesh."""
    if c1.curves is c2.curves and c1.index == c2.index:
        return 0, 0
    loop = c1.loop
    res = walk_pairing(walk_steps(loop), loop.orientation_sign, c2.curves)
    alg, geo = res.get(c2.index, (0, 0))
    return alg, geo


def twist_matrix(h: HomologyData, loops):
    """Homology action of composite twists: x -> x + sum e_k <x, c_k> c_k.

    ``loops`` is a list of (CurveRef, handedness) pairs.  Returned in
    canonical coordinates; the composite of twists along disjoint loops does
    not depend on their order.
    """
    n = 6
    m = [list(row) for row in identity(n)]
    for ref, eps in loops:
        c = h.curve_class(ref)
        jc = mat_vec(CANONICAL_J, c)
        for i in range(n):
            for j in range(n):
                m[i][j] -= eps * c[i] * jc[j]
    return tuple(tuple(row) for row in m)


def defining_pair_check(h: HomologyData, i: int, j: int) -> bool:
    """True iff the i-th A-side and j-th B-side disk boundaries are disjoint."""
    _, geo = intersection_number(h, h.disk_sections_a[i - 1], h.disk_sections_b[j - 1])
    return geo == 0


def flank_sign(mesh: TriMesh, curves: SlicedCurves, loop: Loop) -> int:
    """Side of the surface on the increasing-angle flank of a tube loop.

    +1 when walking around the tube in the +angle direction from the loop
    lands on the far-spine side (the side the triangle normals point to).
    The sign of N . w is exact: N is the oriented triangle normal, w the
    +angle tangent of the tube at the loop point.
    """
    fld = curves.field
    a, b = fld.trans
    for tri, pt_in, _pt_out in loop.steps:
        pts = mesh.triangle_local(tri)
        e1 = tuple(pts[1][c] - pts[0][c] for c in range(3))
        e2 = tuple(pts[2][c] - pts[0][c] for c in range(3))
        normal = (
            e1[1] * e2[2] - e1[2] * e2[1],
            e1[2] * e2[0] - e1[0] * e2[2],
            e1[0] * e2[1] - e1[1] * e2[0],
        )
        cell = mesh.tri_cells[tri]
        va, vb, t = pt_in
        pa = mesh.vertex_local(va, cell)
        pb = mesh.vertex_local(vb, cell)
        p = tuple(x + t * (y - x) for x, y in zip(pa, pb))
        wa = p[a] - fld.center[0]
        wa -= round(wa)
        wb = p[b] - fld.center[1]
        wb -= round(wb)
        w = [Fraction(0)] * 3
        w[a] = -wb
        w[b] = wa
        dot = sum(normal[c] * w[c] for c in range(3))
        if dot != 0:
            return 1 if dot > 0 else -1
    raise DegeneracyError("tube loop is everywhere tangent to the angular direction")


def tube_pattern(h: HomologyData, tube: SlicedCurves, kind: str):
    """Handedness pattern for the loops of one tube section.

    ``all_plus`` twists every loop the same way; ``alternating`` uses the
    geometric side rule, which assigns opposite signs to loops whose
    increasing-angle flanks lie in opposite handlebodies.
    """
    if kind == "all_plus":
        return [1] * len(tube.loops)
    if kind != "alternating":
        raise ValueError(f"unknown pattern {kind!r}")
    eps = [flank_sign(h.mesh, tube, loop) for loop in tube.loops]
    if sum(eps) != 0:
        raise DegeneracyError(f"alternating pattern is unbalanced: {eps}")
    return eps


def build_homology(mesh: TriMesh, tube_radius=TUBE_RADIUS) -> HomologyData:
    """Distinguished curves, canonical basis and exact intersection data."""
    sections_a = []
    sections_b = []
    for axis in (1, 2, 3):
        sa = plane_section(mesh, axis, HALF)
        sb = plane_section(mesh, axis, Fraction(0))
        for name, sec in ((f"x{axis}=1/2", sa), (f"x{axis}=0", sb)):
            if len(sec.loops) != 1:
                raise DegeneracyError(
                    f"plane section {name} has {len(sec.loops)} components, expected 1"
                )
            if sec.loops[0].displacement != (0, 0, 0):
                raise DegeneracyError(f"plane section {name} has nonzero displacement")
        sections_a.append(CurveRef(sa, 0))
        sections_b.append(CurveRef(sb, 0))

    tubes = []
    longitudes = []
    for k in (1, 2, 3):
        tube = tube_section(mesh, k, TUBE_CENTER, tube_radius)
        if len(tube.loops) != 4:
            raise DegeneracyError(
                f"tube along axis {k} has {len(tube.loops)} loops, expected 4"
            )
        e_k = tuple(1 if c == k - 1 else 0 for c in range(3))
        neg_e_k = tuple(-x for x in e_k)
        chosen = None
        for idx, loop in enumerate(tube.loops):
            if loop.displacement not in (e_k, neg_e_k):
                raise DegeneracyError(
                    f"tube loop displacement {loop.displacement} is not +-e_{k}"
                )
            if chosen is None:
                chosen = idx
                if loop.displacement == neg_e_k:
                    loop.orientation_sign = -1
        tubes.append(tube)
        longitudes.append(CurveRef(tube, chosen))

    # Orient the A-side plane sections so they pair +1 with their longitude.
    for i in range(3):
        ref = sections_a[i]
        loop = ref.loop
        tl = longitudes[i].loop
        res = walk_pairing(walk_steps(tl), tl.orientation_sign, ref.curves)
        d = res.get(ref.index, (0, 0))[0]
        if d not in (1, -1):
            raise DegeneracyError(
                f"winding pairing of longitude {i + 1} with its plane section is {d}"
            )
        # <section, longitude> = -<longitude, section> must equal +1
        loop.orientation_sign = -d

    generators = list(sections_a) + list(longitudes)
    gram = []
    for g1 in generators:
        row = []
        l1 = g1.loop
        for g2 in generators:
            if g1 is g2:
                row.append(0)
                continue
            res = walk_pairing(walk_steps(l1), l1.orientation_sign, g2.curves)
            row.append(res.get(g2.index, (0, 0))[0])
        gram.append(tuple(row))
    gram = tuple(gram)

    for i in range(6):
        for j in range(6):
            if gram[i][j] != -gram[j][i]:
                raise DegeneracyError(f"crossing Gram matrix is not antisymmetric:\n{gram}")
    for i in range(3):
        for j in range(3):
            if gram[i][j] != 0:
                raise DegeneracyError("plane sections are expected to be disjoint")
            if gram[i][3 + j] != (1 if i == j else 0):
                raise DegeneracyError(
                    f"plane/longitude pairing block is not the identity:\n{gram}"
                )

    w = [[gram[3 + i][3 + j] for j in range(3)] for i in range(3)]
    # b_i = T_i + sum_{j<i} (-w_ij) a_j symplectically reduces the longitudes
    mu = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i):
            mu[i][j] = -w[i][j]
    basis_change = [[0] * 6 for _ in range(6)]
    for i in range(3):
        basis_change[i][i] = 1
        basis_change[3 + i][3 + i] = 1
        for j in range(3):
            basis_change[j][3 + i] = mu[i][j]
    basis_change = tuple(tuple(row) for row in basis_change)
    basis_change_inv = invert_unimodular(basis_change)
    gram_inv = invert_unimodular(gram)

    check = mat_mul(transpose(basis_change), mat_mul(gram, basis_change))
    if check != CANONICAL_J:
        raise DegeneracyError(f"symplectic reduction failed:\n{check}")

    h = HomologyData(
        mesh=mesh,
        disk_sections_a=sections_a,
        disk_sections_b=sections_b,
        tubes=tubes,
        longitudes=longitudes,
        gram=gram,
        gram_inv=gram_inv,
        basis_change=basis_change,
        basis_change_inv=basis_change_inv,
        tube_radius=Fraction(tube_radius),
        disk_b_classes=(),
    )

    # Projection sanity: p(a_i) = 0 and p(b_i) = e_i in canonical coordinates.
    for i in range(3):
        cls = h.curve_class(sections_a[i])
        if cls != tuple(1 if c == i else 0 for c in range(6)):
            raise DegeneracyError(f"a_{i + 1} does not coordinatize to a basis vector: {cls}")
    for i in range(3):
        ref = longitudes[i]
        cls = h.curve_class(ref)
        if h.displacement_of_class(cls) != tuple(1 if c == i else 0 for c in range(3)):
            raise DegeneracyError(f"longitude {i + 1} projects incorrectly: {cls}")

    # The B-side disk boundaries must span the same lattice as the A-side ones.
    b_classes = []
    for i in range(3):
        cls = h.curve_class(sections_b[i])
        if any(cls[3 + c] != 0 for c in range(3)):
            raise DegeneracyError(f"B-side section {i + 1} has nonzero winding part: {cls}")
        b_classes.append(cls)
    det = (
        b_classes[0][0] * (b_classes[1][1] * b_classes[2][2] - b_classes[1][2] * b_classes[2][1])
        - b_classes[0][1] * (b_classes[1][0] * b_classes[2][2] - b_classes[1][2] * b_classes[2][0])
        + b_classes[0][2] * (b_classes[1][0] * b_classes[2][1] - b_classes[1][1] * b_classes[2][0])
    )
    if det not in (1, -1):
        raise DegeneracyError(
            f"B-side disk classes do not span the meridian lattice: {b_classes}"
        )
    h.disk_b_classes = tuple(b_classes)
    return h
