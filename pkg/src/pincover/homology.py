"""Integral and mod-2 homology of polygon complexes, with induced maps of covers.

Chain complexes come from gluing words (one 2-cell per word); vertices are
computed by chasing polygon corners through the edge identifications.  The
orientation double cover is built mechanically - two copies of every cell,
attached with a sheet swap across every edge whose two occurrences carry the
same exponent - so the induced matrices of the projection are computed, never
transcribed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# ---------------------------------------------------------------------------
# exact integer matrices (lists of python ints)


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> list[list[int]]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            if ai[k]:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += ai[k] * bk[j]
    return out


def transpose(a: list[list[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*a)] if a else []


def mat_det(a: list[list[int]]) -> int:
    """Exact determinant by fraction-free elimination (Bareiss)."""
    n = len(a)
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def smith_normal_form(a: list[list[int]]):
    """U, D, V with U*a*V = D diagonal, divisibility chain, U and V unimodular."""
    d = [row[:] for row in a]
    rows = len(d)
    cols = len(d[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        for j in range(cols):
            d[dst][j] += q * d[src][j]
        for j in range(rows):
            u[dst][j] += q * u[src][j]

    def add_col(src, dst, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def pivot_at(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                e = d[i][j]
                if e and (best is None or abs(e) < best[0]):
                    best = (abs(e), i, j)
        return best

    t = 0
    while True:
        best = pivot_at(t)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        dirty = False
        for i in range(t + 1, rows):
            if d[i][t]:
                q = -(d[i][t] // d[t][t])
                add_row(t, i, q)
                if d[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if d[t][j]:
                q = -(d[t][j] // d[t][t])
                add_col(t, j, q)
                if d[t][j]:
                    dirty = True
        if dirty:
            continue  # remainders reappeared; repick the pivot at the same slot
        t += 1
        if t >= min(rows, cols):
            break

    # enforce the divisibility chain d[t] | d[t+1]
    changed = True
    while changed:
        changed = False
        for t in range(min(rows, cols) - 1):
            x, y = d[t][t], d[t + 1][t + 1]
            if x and y and y % x != 0:
                add_col(t + 1, t, 1)
                # euclidean steps inside the 2x2 block until d[t][t] = gcd(x, y)
                while d[t + 1][t]:
                    if abs(d[t + 1][t]) <= abs(d[t][t]):
                        add_row(t + 1, t, -(d[t][t] // d[t + 1][t]))
                        if d[t][t] == 0:
                            swap_rows(t, t + 1)
                    else:
                        add_row(t, t + 1, -(d[t + 1][t] // d[t][t]))
                # the gcd divides the whole block, so this clears the corner
                add_col(t, t + 1, -(d[t][t + 1] // d[t][t]))
                changed = True
    for t in range(min(rows, cols)):
        if d[t][t] < 0:
            for j in range(cols):
                d[t][j] = -d[t][j]
            for j in range(rows):
                u[t][j] = -u[t][j]
    return u, d, v


def snf_diagonal(a: list[list[int]]) -> list[int]:
    _, d, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def solve_integer(a: list[list[int]], b: list[list[int]]):
    """X with a*X = b over the integers, or None if no solution exists."""
    u, d, v = smith_normal_form(a)
    rows = len(a)
    cols = len(a[0]) if a else 0
    ub = mat_mul(u, b)
    k = len(b[0]) if b else 0
    y = zeros(cols, k)
    for i in range(rows):
        di = d[i][i] if i < min(rows, cols) else 0
        for j in range(k):
            if di == 0:
                if ub[i][j] != 0:
                    return None
            else:
                if ub[i][j] % di != 0:
                    return None
                y[i][j] = ub[i][j] // di
    return mat_mul(v, y)


# ---------------------------------------------------------------------------
# GF(2) linear algebra (dense uint8 arrays)


def gf2(a) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) % 2).astype(np.uint8)


def gf2_row_reduce(a: np.ndarray):
    m = gf2(a).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.nonzero(m[:, c])[0]
        for i in others:
            if i != r:
                m[i, :] ^= m[r, :]
        pivots.append(c)
        r += 1
    return m, pivots


def gf2_rank(a) -> int:
    m = gf2(a)
    if m.size == 0:
        return 0
    return len(gf2_row_reduce(m)[1])


def gf2_nullspace(a) -> np.ndarray:
    """Rows form a basis of the right nullspace."""
    m = gf2(a)
    if m.size == 0:
        return np.eye(m.shape[1] if m.ndim == 2 else 0, dtype=np.uint8)
    reduced, pivots = gf2_row_reduce(m)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vec = np.zeros(cols, dtype=np.uint8)
        vec[f] = 1
        for r, c in enumerate(pivots):
            if reduced[r, f]:
                vec[c] = 1
        basis.append(vec)
    return np.array(basis, dtype=np.uint8) if basis else np.zeros((0, cols), np.uint8)


def gf2_solve(a, b):
    """x with a @ x = b over GF(2), or None."""
    m = gf2(a)
    rhs = gf2(b).reshape(-1, 1)
    aug = np.concatenate([m, rhs], axis=1)
    reduced, pivots = gf2_row_reduce(aug)
    if m.shape[1] in pivots:
        return None
    x = np.zeros(m.shape[1], dtype=np.uint8)
    for r, c in enumerate(pivots):
        x[c] = reduced[r, -1]
    return x


# ---------------------------------------------------------------------------
# polygon complexes

Occurrence = tuple[str, int]  # (edge name, +1 | -1)


@dataclass(frozen=True)
class GluingWord:
    """Boundary word of a fundamental polygon; boundary letters occur once."""

    word: tuple[Occurrence, ...]
    boundary_letters: frozenset[str] = frozenset()

    def __post_init__(self):
        counts: dict[str, int] = {}
        for name, exp in self.word:
            if exp not in (1, -1):
                raise ValueError("exponents must be +-1")
            counts[name] = counts.get(name, 0) + 1
        for name, k in counts.items():
            expected = 1 if name in self.boundary_letters else 2
            if k != expected:
                raise ValueError(f"letter {name} occurs {k} times, expected {expected}")

    @classmethod
    def parse(cls, text: str, boundary: str = "") -> "GluingWord":
        """Parse strings like "a b a b'" ('name'+optional quote for inverse)."""
        occs = []
        for token in text.split():
            if token.endswith("'"):
                occs.append((token[:-1], -1))
            else:
                occs.append((token, 1))
        return cls(tuple(occs), frozenset(boundary.split()) if boundary else frozenset())

    @property
    def letters(self) -> list[str]:
        seen = []
        for name, _ in self.word:
            if name not in seen:
                seen.append(name)
        return seen

    def interior_letters(self) -> list[str]:
        return [g for g in self.letters if g not in self.boundary_letters]

    def same_exponent(self, letter: str) -> bool:
        """Chart transition across this edge reverses orientation."""
        exps = [e for name, e in self.word if name == letter]
        return len(exps) == 2 and exps[0] == exps[1]

    def is_orientable_word(self) -> bool:
        return all(not self.same_exponent(g) for g in self.interior_letters())


@dataclass
class PolygonComplex:
    """CW complex: named edges, one boundary word per 2-cell."""

    faces: list[tuple[Occurrence, ...]]
    boundary_letters: frozenset[str] = frozenset()
    edges: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.edges:
            seen: list[str] = []
            for face in self.faces:
                for name, _ in face:
                    if name not in seen:
                        seen.append(name)
            self.edges = seen
        self._build()

    @classmethod
    def from_word(cls, word: GluingWord) -> "PolygonComplex":
        return cls([word.word], word.boundary_letters)

    def _build(self):
        # corners: (face index, position); edge ends unioned through gluings
        parent: dict[tuple, tuple] = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        ends: dict[str, list[tuple]] = {}
        for fi, face in enumerate(self.faces):
            k = len(face)
            for pos, (name, exp) in enumerate(face):
                tail = (fi, pos) if exp == 1 else (fi, (pos + 1) % k)
                head = (fi, (pos + 1) % k) if exp == 1 else (fi, pos)
                ends.setdefault(name, []).append((tail, head))
        for name, occs in ends.items():
            if len(occs) == 2:
                union(occs[0][0], occs[1][0])
                union(occs[0][1], occs[1][1])

        roots: list[tuple] = []
        index: dict[tuple, int] = {}
        for fi, face in enumerate(self.faces):
            for pos in range(len(face)):
                r = find((fi, pos))
                if r not in index:
                    index[r] = len(roots)
                    roots.append(r)
        self.vertex_count = len(roots)
        self.edge_ends = {
            name: (index[find(occs[0][0])], index[find(occs[0][1])])
            for name, occs in ends.items()
        }

    @property
    def edge_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.edges)}

    def d1(self) -> list[list[int]]:
        """Vertices x edges boundary matrix."""
        m = zeros(self.vertex_count, len(self.edges))
        for name, (t, h) in self.edge_ends.items():
            j = self.edge_index[name]
            m[h][j] += 1
            m[t][j] -= 1
        return m

    def d2(self) -> list[list[int]]:
        """Edges x faces boundary matrix (sum of exponents)."""
        m = zeros(len(self.edges), len(self.faces))
        idx = self.edge_index
        for fj, face in enumerate(self.faces):
            for name, exp in face:
                m[idx[name]][fj] += exp
        return m

    def euler_characteristic(self) -> int:
        return self.vertex_count - len(self.edges) + len(self.faces)

    def is_closed(self) -> bool:
        counts: dict[str, int] = {}
        for face in self.faces:
            for name, _ in face:
                counts[name] = counts.get(name, 0) + 1
        return all(k == 2 for k in counts.values())

    def is_orientable(self) -> bool:
        """Can the faces be oriented so every interior edge gets both exponents?"""
        flip: dict[int, int] = {}
        occ: dict[str, list[tuple[int, int]]] = {}
        for fi, face in enumerate(self.faces):
            for name, exp in face:
                occ.setdefault(name, []).append((fi, exp))
        # union-find with parity on the face flip states
        parent = {fi: fi for fi in range(len(self.faces))}
        parity = {fi: 0 for fi in range(len(self.faces))}

        def find(x):
            if parent[x] == x:
                return x, 0
            root, par = find(parent[x])
            parent[x] = root
            parity[x] ^= par
            return root, parity[x]

        for name, occs in occ.items():
            if len(occs) != 2:
                continue
            (fa, ea), (fb, eb) = occs
            need = 1 if ea == eb else 0  # flips must differ iff exponents agree
            ra, pa = find(fa)
            rb, pb = find(fb)
            if ra == rb:
                if pa ^ pb != need:
                    return False
            else:
                parent[ra] = rb
                parity[ra] = pa ^ pb ^ need
        return True


# ---------------------------------------------------------------------------
# homology groups


@dataclass(frozen=True)
class GradedGroups:
    """Free rank and torsion orders (divisibility chain) per degree 0, 1, 2."""

    h0: tuple[int, tuple[int, ...]]
    h1: tuple[int, tuple[int, ...]]
    h2: tuple[int, tuple[int, ...]]

    def as_dict(self):
        return {
            "h0": {"free": self.h0[0], "torsion": list(self.h0[1])},
            "h1": {"free": self.h1[0], "torsion": list(self.h1[1])},
            "h2": {"free": self.h2[0], "torsion": list(self.h2[1])},
        }


class H1Basis:
    """Canonical basis of H1(C) with coordinates for arbitrary 1-cycles.

    Generators are ordered free part first, then torsion (orders in the
    divisibility chain).  ``coordinates`` maps an integer 1-chain in the kernel
    of d1 to its (free, torsion) coordinate vector.
    """

    def __init__(self, d1: list[list[int]], d2: list[list[int]]):
        n_edges = len(d2)
        if any(any(row) for row in mat_mul(d1, d2)):
            raise ValueError("d1 * d2 != 0")
        u1, dd1, v1 = smith_normal_form(d1)
        rank1 = sum(1 for i in range(min(len(dd1), n_edges)) if dd1[i][i])
        kernel_cols = [j for j in range(n_edges)
                       if j >= rank1 or (j < min(len(dd1), n_edges) and not dd1[j][j])]
        # v1 columns past the rank span the kernel lattice (saturated)
        kernel = [[v1[i][j] for j in kernel_cols] for i in range(n_edges)]
        self._kernel = kernel
        self._k = len(kernel_cols)

        x = solve_integer(kernel, d2)
        if x is None:
            raise ValueError("image of d2 does not lie in the kernel of d1")
        ux, dx, vx = smith_normal_form(x)
        self._ux = ux
        # new kernel basis K' = K * ux^{-1}; coordinates of z: ux * solve(K, z)
        diag = [dx[i][i] if i < min(len(dx), len(dx[0]) if dx else 0) else 0
                for i in range(self._k)]
        self.orders = [diag[i] if i < len(diag) else 0 for i in range(self._k)]
        self.free_indices = [i for i, o in enumerate(self.orders) if o == 0]
        self.torsion_indices = [i for i, o in enumerate(self.orders) if o > 1]
        self.free_rank = len(self.free_indices)
        self.torsion = tuple(self.orders[i] for i in self.torsion_indices)

    def coordinates(self, chain: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        col = [[c] for c in chain]
        y = solve_integer(self._kernel, col)
        if y is None:
            raise ValueError("chain is not a 1-cycle")
        c = mat_mul(self._ux, y)
        free = tuple(c[i][0] for i in self.free_indices)
        tors = tuple(c[i][0] % self.orders[i] for i in self.torsion_indices)
        return free, tors

    def representative(self, index: int) -> list[int]:
        """1-chain representing the index-th generator (free first, then torsion)."""
        order = self.free_indices + self.torsion_indices
        i = order[index]
        inv = solve_integer(self._ux, identity(self._k))
        return [sum(self._kernel[r][j] * inv[j][i] for j in range(self._k))
                for r in range(len(self._kernel))]


def homology_groups(cx: PolygonComplex) -> GradedGroups:
    d1 = cx.d1()
    d2 = cx.d2()
    n0, n1, n2 = cx.vertex_count, len(cx.edges), len(cx.faces)
    rank1 = len(snf_diagonal(d1)) if n1 else 0
    basis = H1Basis(d1, d2)
    h0 = (n0 - rank1, ())
    h1 = (basis.free_rank, basis.torsion)
    diag2 = snf_diagonal(d2)
    rank2 = len(diag2)
    h2 = (n2 - rank2, ())
    return GradedGroups(h0, h1, h2)


def z2_betti(cx: PolygonComplex) -> tuple[int, int, int]:
    d1 = gf2(cx.d1()) if cx.edges else np.zeros((cx.vertex_count, 0), np.uint8)
    d2 = gf2(cx.d2()) if cx.faces and cx.edges else np.zeros((len(cx.edges), len(cx.faces)), np.uint8)
    r1 = gf2_rank(d1)
    r2 = gf2_rank(d2)
    n0, n1, n2 = cx.vertex_count, len(cx.edges), len(cx.faces)
    return n0 - r1, n1 - r1 - r2, n2 - r2


def b1_mod2(cx: PolygonComplex) -> int:
    """dim H1(X, Z2) = first Betti number plus the number of even torsion factors."""
    return z2_betti(cx)[1]


# ---------------------------------------------------------------------------
# the mechanical orientation double cover


@dataclass
class CoverData:
    base: PolygonComplex
    total: PolygonComplex
    edge_map: dict[str, str]  # total edge -> base edge
    deck_edge_map: dict[str, str]  # total edge -> total edge


def orientation_double_cover_complex(word: GluingWord) -> CoverData:
    """Two copies of every cell; sheets swap across same-exponent edges."""
    base = PolygonComplex.from_word(word)
    eps = {g: 1 if word.same_exponent(g) else 0 for g in word.letters}

    def lifted_face(sheet: int) -> tuple[Occurrence, ...]:
        seen: dict[str, int] = {}
        out = []
        for name, exp in word.word:
            first = name not in seen
            if first:
                seen[name] = 1
                copy = sheet
            else:
                copy = sheet ^ eps[name]
            out.append((f"{name}^{copy}", exp))
        return tuple(out)

    faces = [lifted_face(0), lifted_face(1)]
    boundary = frozenset(f"{g}^{s}" for g in word.boundary_letters for s in (0, 1))
    total = PolygonComplex(faces, boundary)
    edge_map = {f"{g}^{s}": g for g in word.letters for s in (0, 1)}
    deck = {f"{g}^{s}": f"{g}^{1 - s}" for g in word.letters for s in (0, 1)}
    return CoverData(base, total, edge_map, deck)


@dataclass
class InducedMaps:
    """pi_* and pi^* data for an orientation double cover."""

    push_z: list[list[int]]            # H1(total, Z) -> H1(base, Z), canonical bases
    base_orders: list[int]             # 0 for free coordinates, else torsion order
    push_z2: np.ndarray                # H1(total, Z2) -> H1(base, Z2), edge-class bases
    pull_z2: np.ndarray                # transpose: H^1(base, Z2) -> H^1(total, Z2)
    kernel_pull: np.ndarray            # basis (rows) of Ker pi^* in H^1(base, Z2)
    coker_pull_dim: int
    image_index_z2: int                # [H1(base, Z2) : Im pi_*]
    b1_mod2_base: int
    b1_mod2_total: int
    base_edges: list[str]
    total_basis_size: int

    @property
    def splitting_k(self) -> int:
        """k in H^1(total, Z2) = Z2^k (+) Im pi^*."""
        return self.b1_mod2_total - (self.b1_mod2_base - 1)


def h1_z2_basis(cx: PolygonComplex):
    """Projection of edge space onto an H1(.,Z2) coordinate system.

    Returns (cycle_space basis rows, project) where project maps a cycle
    vector to coordinates in a fixed basis of H1.
    """
    d1 = gf2(cx.d1())
    d2 = gf2(cx.d2())
    cycles = gf2_nullspace(d1)  # rows
    n = len(cx.edges)
    # quotient by image of d2: keep the cycle rows independent modulo the image
    img = d2.T
    reduced, pivots = gf2_row_reduce(img) if img.size else (np.zeros((0, n), np.uint8), [])
    basis_rows = []
    current = reduced[: len(pivots)].copy() if len(pivots) else np.zeros((0, n), np.uint8)
    piv = list(pivots)
    for row in cycles:
        vec = row.copy()
        for r, c in enumerate(piv):
            if vec[c]:
                vec ^= current[r]
        if vec.any():
            current, piv = gf2_row_reduce(np.vstack([current, vec]))
            current = current[: len(piv)]
            basis_rows.append(row.copy())
    basis = np.array(basis_rows, np.uint8) if basis_rows else np.zeros((0, n), np.uint8)

    def project(cycle_vec: np.ndarray) -> np.ndarray:
        """Coordinates of [cycle] in the chosen basis."""
        target = gf2(cycle_vec)
        # solve basis^T x + img^T y = target
        a = np.concatenate([basis.T, img.T], axis=1) if img.size else basis.T
        sol = gf2_solve(a, target)
        if sol is None:
            raise ValueError("vector is not a cycle")
        return sol[: basis.shape[0]]

    return basis, project


def induced_maps(cover: CoverData) -> InducedMaps:
    base, total = cover.base, cover.total

    # --- integral push-forward in canonical H1 bases
    base_basis = H1Basis(base.d1(), base.d2())
    total_basis = H1Basis(total.d1(), total.d2())
    base_idx = base.edge_index
    n_total_gens = total_basis.free_rank + len(total_basis.torsion)
    n_base_gens = base_basis.free_rank + len(base_basis.torsion)
    push = zeros(n_base_gens, n_total_gens)
    for j in range(n_total_gens):
        chain = total_basis.representative(j)
        pushed = [0] * len(base.edges)
        for name, c in zip(total.edges, chain):
            pushed[base_idx[cover.edge_map[name]]] += c
        free, tors = base_basis.coordinates(pushed)
        for i, val in enumerate(free):
            push[i][j] = val
        for i, val in enumerate(tors):
            push[base_basis.free_rank + i][j] = val
    orders = [0] * base_basis.free_rank + list(base_basis.torsion)

    # --- mod 2, in the Z2 homology bases
    base_b, base_proj = h1_z2_basis(base)
    total_b, _ = h1_z2_basis(total)
    cols = []
    for row in total_b:
        pushed = np.zeros(len(base.edges), np.uint8)
        for name, c in zip(total.edges, row):
            if c:
                pushed[base_idx[cover.edge_map[name]]] ^= 1
        cols.append(base_proj(pushed))
    push_z2 = (np.array(cols, np.uint8).T if cols
               else np.zeros((base_b.shape[0], 0), np.uint8))
    pull_z2 = push_z2.T
    kernel = gf2_nullspace(pull_z2)  # functionals phi with phi . pi_* = 0
    image_rank = gf2_rank(push_z2)
    dim_base = base_b.shape[0]
    dim_total = total_b.shape[0]
    return InducedMaps(
        push_z=push,
        base_orders=orders,
        push_z2=push_z2,
        pull_z2=pull_z2,
        kernel_pull=kernel,
        coker_pull_dim=dim_total - image_rank,
        image_index_z2=2 ** (dim_base - image_rank),
        b1_mod2_base=dim_base,
        b1_mod2_total=dim_total,
        base_edges=list(base.edges),
        total_basis_size=dim_total,
    )
