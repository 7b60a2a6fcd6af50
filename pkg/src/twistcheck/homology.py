"""Exact first-homology arithmetic for the odd-genus non-orientable surface.

Integral classes live in Z^g modulo the single relation 2(m_1 + ... + m_g) = 0
in the basis of crosscap core classes; mod-2 classes live in (Z/2)^g with the
identity intersection form.  The module also builds an explicit cell
structure of the surface and computes its homology by integer
diagonalization, which independently certifies the Z^(g-1) + Z/2 lattice the
rest of the artifact relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class OddGenusRequired(ValueError):
    """The construction needs an odd genus of at least three."""


class TwoSidedRequired(ValueError):
    """Integral pairing and twisting are only defined against two-sided curves."""


def require_odd_genus(g: int) -> None:
    if not isinstance(g, int) or g < 3 or g % 2 == 0:
        raise OddGenusRequired(f"genus must be an odd integer >= 3, got {g}")


@dataclass(frozen=True)
class H1ClassZ:
    """Integral class in canonical form: last coordinate reduced to 0 or 1."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs[-1] not in (0, 1):
            raise ValueError("not in canonical form; use canonicalize()")

    @property
    def genus(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "H1ClassZ") -> "H1ClassZ":
        return canonicalize([a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)])

    def __neg__(self) -> "H1ClassZ":
        return canonicalize([-a for a in self.coeffs])

    def scaled(self, n: int) -> "H1ClassZ":
        return canonicalize([n * a for a in self.coeffs])

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def mod2(self) -> "H1ClassZ2":
        return H1ClassZ2(tuple(a % 2 for a in self.coeffs))


@dataclass(frozen=True)
class H1ClassZ2:
    """Mod-2 class; the intersection form is the standard dot product."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @property
    def genus(self) -> int:
        return len(self.bits)

    def __add__(self, other: "H1ClassZ2") -> "H1ClassZ2":
        return H1ClassZ2(tuple((a + b) % 2 for a, b in zip(self.bits, other.bits, strict=True)))

    def is_zero(self) -> bool:
        return all(b == 0 for b in self.bits)


def canonicalize(v) -> H1ClassZ:
    """Reduce an integer vector modulo 2(m_1+...+m_g) = 0; idempotent."""
    v = [int(x) for x in v]
    k = v[-1] // 2
    return H1ClassZ(tuple(x - 2 * k for x in v))


def free_part(x: H1ClassZ) -> tuple[tuple[int, ...], int]:
    """Split a canonical class into free coordinates and the torsion bit.

    The map (x_1..x_g) -> ((x_1-x_g, ..., x_{g-1}-x_g), x_g mod 2) is an
    isomorphism onto Z^(g-1) + Z/2.
    """
    last = x.coeffs[-1]
    return tuple(a - last for a in x.coeffs[:-1]), last % 2


def from_free_part(free: tuple[int, ...], torsion: int) -> H1ClassZ:
    """Inverse of free_part on canonical classes."""
    if torsion not in (0, 1):
        raise ValueError("torsion bit must be 0 or 1")
    return H1ClassZ(tuple(a + torsion for a in free) + (torsion,))


def pair_z2(x: H1ClassZ2, y: H1ClassZ2) -> int:
    return sum(a * b for a, b in zip(x.bits, y.bits, strict=True)) % 2


def pair_z(x: H1ClassZ, c) -> int:
    """Integral pairing of a class with a two-sided curve's oracle row.

    Well defined on classes because the row entries sum to zero, which kills
    the torsion relation.
    """
    if not c.two_sided:
        raise TwoSidedRequired(f"curve {c.name} is one-sided")
    return sum(a * b for a, b in zip(x.coeffs, c.pairing_row, strict=True))


def transvect(x: H1ClassZ, c) -> H1ClassZ:
    """Homology action of the right-handed twist along a two-sided curve."""
    n = pair_z(x, c)
    return canonicalize([a + n * b for a, b in zip(x.coeffs, c.class_z.coeffs, strict=True)])


# ---------------------------------------------------------------------------
# Integer diagonalization (elementary row/column operations with transforms).

def smith_normal_form(mat: list[list[int]]):
    """Diagonalize an integer matrix: returns (diag, S, T) with S*mat*T diagonal.

    S and T are unimodular; the diagonal entries are nonnegative and each
    divides the next.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [row[:] for row in mat]
    s = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in t:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        s[i] = [-x for x in s[i]]

    for p in range(min(m, n)):
        # locate the entry of least magnitude in the remaining block
        best = None
        for i in range(p, m):
            for j in range(p, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(p, best[0])
        swap_cols(p, best[1])
        while True:
            dirty = False
            for i in range(p + 1, m):
                if a[i][p] != 0:
                    q = a[i][p] // a[p][p]
                    add_row(i, p, -q)
                    if a[i][p] != 0:
                        swap_rows(p, i)
                    dirty = True
            for j in range(p + 1, n):
                if a[p][j] != 0:
                    q = a[p][j] // a[p][p]
                    add_col(j, p, -q)
                    if a[p][j] != 0:
                        swap_cols(p, j)
                    dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry
            fix = None
            for i in range(p + 1, m):
                for j in range(p + 1, n):
                    if a[i][j] % a[p][p] != 0:
                        fix = i
                        break
                if fix is not None:
                    break
            if fix is None:
                break
            add_row(p, fix, 1)
        if a[p][p] < 0:
            negate_row(p)

    diag = [a[i][i] for i in range(min(m, n)) if a[i][i] != 0]
    return diag, s, t


def _mat_mul_vec(mat, vec):
    return [sum(x * y for x, y in zip(row, vec)) for row in mat]


def _solve_exact(cols: list[list[int]], target: list[int]) -> list[Fraction] | None:
    """Solve sum_j x_j * cols[j] = target exactly, or None if inconsistent."""
    m = len(target)
    n = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(target[i])]
           for i in range(m)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if aug[r][n] != 0:
            return None
    out = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        out[col] = aug[r][n]
    return out


# ---------------------------------------------------------------------------
# A cell structure of the surface, cut along the same reference arcs the
# two-model comparison uses.

def cell_complex(g: int):
    """Cell structure of the sphere-with-g-crosscaps along its reference arcs.

    The sphere is the crosscap band plus two pole caps.  Cutting arcs:
    ("vert", k), the arc from pole N to pole S passing through crosscap k;
    ("equ", k), the equatorial arc through crosscap k between the mid-gap
    points m_{k-1} and m_k; ("north", k) and ("south", k), the meridian
    halves joining the poles to the mid-gap point m_k.  These cut the surface
    into 2g quadrilaterals, two per crosscap: face k joins the quadrant
    northeast of crosscap k to the southwest one through the crosscap wall,
    face k+g joins northwest to southeast.

    Returns (vertices, edges, faces): edges as (name, tail, head), faces as
    lists of (sign, edge_index) tracing a closed boundary walk.
    """
    require_odd_genus(g)

    vertices = ["N", "S"] + [f"m{k}" for k in range(g)]
    edges = []
    index = {}
    for k in range(g):
        index[("vert", k)] = len(edges)
        edges.append((("vert", k), "N", "S"))
    for k in range(g):
        index[("equ", k)] = len(edges)
        edges.append((("equ", k), f"m{(k - 1) % g}", f"m{k}"))
    for k in range(g):
        index[("north", k)] = len(edges)
        edges.append((("north", k), "N", f"m{k}"))
    for k in range(g):
        index[("south", k)] = len(edges)
        edges.append((("south", k), f"m{k}", "S"))

    faces = []
    for k in range(g):  # northeast + southwest quadrants of crosscap k
        faces.append([
            (-1, index[("equ", k)]),
            (1, index[("south", (k - 1) % g)]),
            (-1, index[("vert", k)]),
            (1, index[("north", k)]),
        ])
    for k in range(g):  # northwest + southeast quadrants of crosscap k
        faces.append([
            (1, index[("equ", k)]),
            (1, index[("south", k)]),
            (-1, index[("vert", k)]),
            (1, index[("north", (k - 1) % g)]),
        ])
    return vertices, edges, faces


def core_cycle(g: int, k: int) -> dict:
    """Cellular cycle homologous to the core of crosscap k."""
    return {("vert", k): -1, ("north", k): 1, ("south", k): 1}


def boundary_matrices(vertices, edges, faces):
    vi = {v: i for i, v in enumerate(vertices)}
    d1 = [[0] * len(edges) for _ in vertices]
    for j, (_, tail, head) in enumerate(edges):
        d1[vi[head]][j] += 1
        d1[vi[tail]][j] -= 1
    d2 = [[0] * len(faces) for _ in edges]
    for f, word in enumerate(faces):
        for sign, ei in word:
            d2[ei][f] += sign
    return d1, d2


def homology_summary(vertices, edges, faces) -> dict:
    d1, d2 = boundary_matrices(vertices, edges, faces)
    diag1, _, _ = smith_normal_form(d1)
    diag2, _, _ = smith_normal_form(d2)
    r1 = len(diag1)
    r2 = len(diag2)
    return {
        "h0": {"rank": len(vertices) - r1, "torsion": [d for d in diag1 if d > 1]},
        "h1": {"rank": len(edges) - r1 - r2, "torsion": [d for d in diag2 if d > 1]},
        "h2": {"rank": len(faces) - r2, "torsion": []},
    }


def chain_complex_oracle(g: int) -> dict:
    """Invariant factors of the reference cell structure's homology, genus 3 to 11."""
    require_odd_genus(g)
    if g > 11:
        raise ValueError("oracle supports genus up to 11")
    vertices, edges, faces = cell_complex(g)
    out = homology_summary(vertices, edges, faces)
    out["g"] = g
    out["h1_invariant_factors"] = out["h1"]["torsion"] + [0] * out["h1"]["rank"]
    return out


def boundary_matrices_text(g: int) -> str:
    """Plain-text dump of the boundary matrices for external audit."""
    vertices, edges, faces = cell_complex(g)
    d1, d2 = boundary_matrices(vertices, edges, faces)
    lines = [f"genus {g}", "d1 (vertices x edges):"]
    lines += [" ".join(f"{x:3d}" for x in row) for row in d1]
    lines.append("d2 (edges x faces):")
    lines += [" ".join(f"{x:3d}" for x in row) for row in d2]
    return "\n".join(lines) + "\n"


class CycleCoordinates:
    """First-homology coordinates for cycles of a finite cell structure.

    Kernel and quotient are computed once by integer diagonalization; coords()
    then maps any 1-cycle to a canonical tuple, two cycles being homologous
    exactly when their tuples agree.
    """

    def __init__(self, vertices, edges, faces):
        self.edge_index = {e[0]: i for i, e in enumerate(edges)}
        d1, d2 = boundary_matrices(vertices, edges, faces)
        diag1, _, t1 = smith_normal_form(d1)
        r1 = len(diag1)
        ne = len(edges)
        # columns of t1 beyond the rank span the kernel of d1
        self.kernel = [[t1[i][j] for i in range(ne)] for j in range(r1, ne)]
        cols = [[row[f] for row in d2] for f in range(len(faces))]
        image = []
        for col in cols:
            x = _solve_exact(self.kernel, col)
            if x is None or any(v.denominator != 1 for v in x):
                raise ValueError("face boundary is not a cycle; bad complex")
            image.append([int(v) for v in x])
        k = len(self.kernel)
        x_mat = [[image[f][i] for f in range(len(faces))] for i in range(k)]
        diag, s, _ = smith_normal_form(x_mat)
        self.s = s
        self.moduli = [diag[i] if i < len(diag) else 0 for i in range(k)]

    def coords(self, chain: dict) -> tuple:
        """Canonical homology coordinates of a cycle given as {edge name: coeff}."""
        vec = [0] * len(self.edge_index)
        for name, coeff in chain.items():
            vec[self.edge_index[name]] += coeff
        w = _solve_exact(self.kernel, vec)
        if w is None or any(v.denominator != 1 for v in w):
            raise ValueError("chain is not a cycle")
        u = _mat_mul_vec(self.s, [int(v) for v in w])
        out = []
        for val, d in zip(u, self.moduli):
            if d == 0:
                out.append(val)
            elif d == 1:
                continue
            else:
                out.append(val % d)
        return tuple(out)


def subdivide(vertices, edges, faces):
    """Barycentric subdivision of edges only: each edge gains a midpoint.

    Edge (name) becomes (name, 0): tail->mid and (name, 1): mid->head; face
    words are rewritten accordingly.  Midpoint vertices are ("mid", name).
    """
    new_vertices = list(vertices) + [("mid", e[0]) for e in edges]
    new_edges = []
    new_index = {}
    for name, tail, head in edges:
        new_index[(name, 0)] = len(new_edges)
        new_edges.append(((name, 0), tail, ("mid", name)))
        new_index[(name, 1)] = len(new_edges)
        new_edges.append(((name, 1), ("mid", name), head))
    new_faces = []
    for word in faces:
        out = []
        for sign, ei in word:
            name = edges[ei][0]
            if sign == 1:
                out.append((1, new_index[(name, 0)]))
                out.append((1, new_index[(name, 1)]))
            else:
                out.append((-1, new_index[(name, 1)]))
                out.append((-1, new_index[(name, 0)]))
        new_faces.append(out)
    return new_vertices, new_edges, new_faces


def transit_cycle(faces, edges, itinerary: list[tuple]) -> dict:
    """Edge chain of a closed curve given by its cyclic edge-crossing itinerary.

    itinerary entries are (edge_name, from_face, to_face).  Between
    consecutive crossings the curve sits in a single face; its track there is
    replaced by the face-boundary walk between the two edge midpoints, read
    in the subdivided structure (choices differ by face boundaries, which are
    homologically irrelevant).  Entries must be cyclically cell-consistent.
    """
    if not itinerary:
        raise ValueError("empty itinerary")
    word_of = {}
    for fi, word in enumerate(faces):
        entries = []
        for sign, ei in word:
            name = edges[ei][0]
            if sign == 1:
                entries.append((1, (name, 0)))
                entries.append((1, (name, 1)))
            else:
                entries.append((-1, (name, 1)))
                entries.append((-1, (name, 0)))
        word_of[fi] = entries

    chain: dict = {}
    n = len(itinerary)
    for i in range(n):
        edge_in, _, face = itinerary[i]
        edge_out, face_next, _ = itinerary[(i + 1) % n]
        if face != face_next:
            raise ValueError(
                f"itinerary not cell-consistent at step {i}: {face} vs {face_next}")
        entries = word_of[face]
        pos_in = next(k for k, (_, half) in enumerate(entries)
                      if half[0] == edge_in and half[1] in (0, 1))
        pos_out = next(k for k, (_, half) in enumerate(entries)
                       if half[0] == edge_out and half[1] in (0, 1))
        # midpoint of an occurrence sits between its two half-edges
        start = (pos_in | 1)  # index of the half just after the midpoint
        stop = (pos_out | 1)  # walk up to the half just before that midpoint
        k = start
        while True:
            sign, half = entries[k]
            chain[half] = chain.get(half, 0) + sign
            if k == ((stop - 1) % len(entries)):
                break
            k = (k + 1) % len(entries)
    return {name: coeff for name, coeff in chain.items() if coeff != 0}
