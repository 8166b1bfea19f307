"""Finitely generated abelian groups and exact integer homomorphism calculus.

Everything downstream (cochain groups, differentials, cohomology) reduces
to the operations in this module, so they are exact by construction:
unbounded integers, Smith normal form with tracked unimodular transforms,
and subquotients that keep the relations of the middle group inside the
image lattice.  Floating point never appears.

Conventions
-----------
* ``FgAbGroup`` is the canonical invariant-factor form ``Z^r x Z/d_1 x
  ... x Z/d_t`` with every ``d_i >= 2`` and ``d_i | d_(i+1)``.  Two groups
  are isomorphic iff their fields are equal.
* Generators are ordered free part first, then torsion in chain order.
  ``orders`` lists one value per generator, ``0`` meaning infinite order.
* A homomorphism matrix has one column per domain generator and one row
  per codomain generator; column ``i`` is the image of generator ``i``.
* Cohomology is computed as ``ker(d_out) / im(d_in)`` where both lattices
  live in the generator space of the middle group and always contain its
  relation lattice.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import intmat as im
from .intmat import FrozenMatrix, IntMatrix


class ShapeMismatch(ValueError):
    """Matrix dimensions or group descriptors do not line up."""


class CompositionNonzero(ValueError):
    """The two maps handed to a subquotient do not compose to zero."""


@dataclass(frozen=True)
class FgAbGroup:
    """Finitely generated abelian group in invariant-factor form."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion invariant {d} < 2 is not canonical")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion chain broken: {a} does not divide {b}")

    @classmethod
    def from_invariants(cls, factors: Iterable[int]) -> "FgAbGroup":
        """Canonicalize an arbitrary multiset of cyclic orders.

        ``0`` contributes a free summand, units are dropped, and a
        non-chain multiset such as (2, 3) is merged exactly via the Smith
        form of its diagonal relation matrix.
        """
        facs = [abs(int(f)) for f in factors]
        free = sum(1 for f in facs if f == 0)
        tors = sorted(f for f in facs if f > 1)
        if all(b % a == 0 for a, b in zip(tors, tors[1:])):
            return cls(free, tuple(tors))
        diag = [[tors[i] if i == j else 0 for j in range(len(tors))]
                for i in range(len(tors))]
        dec = smith_normal_form(diag)
        merged = [x for x in dec.diagonal if x > 1]
        return cls(free, tuple(merged))

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def orders(self) -> tuple[int, ...]:
        return (0,) * self.free_rank + self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if self.free_rank:
            return None
        return math.prod(self.torsion) if self.torsion else 1

    def exponent(self) -> int | None:
        """Smallest n with n*x = 0 for all x, or None when infinite."""
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def render(self) -> str:
        parts: list[str] = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()


TRIVIAL_GROUP = FgAbGroup()
Z = FgAbGroup(1)


def Zmod(n: int) -> FgAbGroup:
    return FgAbGroup(0, (n,)) if n > 1 else TRIVIAL_GROUP


_GROUP_TERM = re.compile(r"^(Z(\^(\d+))?|Z/(\d+))$")


def parse_group(text: str) -> FgAbGroup:
    """Parse the rendering grammar: "0", "Z", "Z^r", "Z/d" joined by " x ".

    Only the canonical spelling is accepted (free part first, torsion in
    divisibility order), so parse and render are mutually inverse.
    """
    s = text.strip()
    if s == "0":
        return TRIVIAL_GROUP
    free = 0
    torsion: list[int] = []
    for pos, term in enumerate(s.split(" x ")):
        m = _GROUP_TERM.match(term.strip())
        if not m:
            raise ValueError(f"unrecognized group term {term!r} in {text!r}")
        if m.group(4) is not None:
            torsion.append(int(m.group(4)))
        else:
            if pos != 0:
                raise ValueError(f"free part must come first in {text!r}")
            free = int(m.group(3)) if m.group(3) else 1
    result = FgAbGroup(free, tuple(torsion))
    return result


@dataclass(frozen=True)
class SmithDecomposition:
    """u @ a @ v == d with u, v unimodular and d in Smith normal form.

    ``u_inv`` and ``v_inv`` are tracked during elimination; exact solving
    and lattice-basis extraction need them and inverting afterwards would
    only repeat the work.
    """

    u: FrozenMatrix
    d: FrozenMatrix
    v: FrozenMatrix
    u_inv: FrozenMatrix
    v_inv: FrozenMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(len(self.d), len(self.d[0]) if self.d else 0)
        return tuple(self.d[i][i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def _bezout(a: int, b: int) -> tuple[int, int]:
    """x, y with x*a + y*b == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def smith_normal_form(matrix: Sequence[Sequence[int]],
                      shape: tuple[int, int] | None = None) -> SmithDecomposition:
    """Smith normal form with both transforms and their inverses.

    Pivoting is deterministic: smallest absolute nonzero entry, ties
    broken row-major.  The diagonal comes out nonnegative and satisfies
    the divisibility chain, zeros last.
    """
    if shape is None:
        rows = len(matrix)
        cols = len(matrix[0]) if rows else 0
    else:
        rows, cols = shape
        if len(matrix) != rows:
            raise ShapeMismatch(f"expected {rows} rows, got {len(matrix)}")
    d = [list(row) for row in matrix]
    for row in d:
        if len(row) != cols:
            raise ShapeMismatch("ragged matrix")
    u = im.identity(rows)
    uinv = im.identity(rows)
    v = im.identity(cols)
    vinv = im.identity(cols)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i: int, j: int) -> None:
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(i: int, j: int, q: int) -> None:
        # row i += q * row j
        di, dj = d[i], d[j]
        for k in range(cols):
            di[k] += q * dj[k]
        ui, uj = u[i], u[j]
        for k in range(rows):
            ui[k] += q * uj[k]
        for r in uinv:
            r[j] -= q * r[i]

    def add_col(i: int, j: int, q: int) -> None:
        # col i += q * col j
        for r in d:
            r[i] += q * r[j]
        for r in v:
            r[i] += q * r[j]
        vi, vj = vinv[i], vinv[j]
        for k in range(cols):
            vj[k] -= q * vi[k]

    def negate_row(i: int) -> None:
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    def row_mix(i: int, j: int, x: int, y: int, z: int, w: int) -> None:
        # rows (i, j) <- (x*ri + y*rj, z*ri + w*rj); requires det = 1
        for target in (d, u):
            ri, rj = target[i], target[j]
            for k in range(len(ri)):
                a, b = ri[k], rj[k]
                ri[k] = x * a + y * b
                rj[k] = z * a + w * b
        for r in uinv:
            a, b = r[i], r[j]
            r[i] = w * a - z * b
            r[j] = x * b - y * a

    limit = min(rows, cols)
    t = 0
    while t < limit:
        best = None
        bi = bj = -1
        for i in range(t, rows):
            for j in range(t, cols):
                e = d[i][j]
                if e and (best is None or abs(e) < best):
                    best = abs(e)
                    bi, bj = i, j
        if best is None:
            break
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    if q:
                        add_row(i, t, -q)
            stray = [i for i in range(t + 1, rows) if d[i][t]]
            if stray:
                i = min(stray, key=lambda r: (abs(d[r][t]), r))
                swap_rows(t, i)
                continue
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    if q:
                        add_col(j, t, -q)
            strayc = [j for j in range(t + 1, cols) if d[t][j]]
            if strayc:
                j = min(strayc, key=lambda c: (abs(d[t][c]), c))
                swap_cols(t, j)
                continue
            break
        if d[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain; zeros already sit at the tail
    diag_len = 0
    while diag_len < limit and d[diag_len][diag_len]:
        diag_len += 1
    changed = True
    while changed:
        changed = False
        for k in range(diag_len - 1):
            a, b = d[k][k], d[k + 1][k + 1]
            if b % a:
                changed = True
                add_col(k, k + 1, 1)
                g = math.gcd(a, b)
                x, y = _bezout(a, b)
                row_mix(k, k + 1, x, y, -(b // g), a // g)
                add_col(k + 1, k, -(y * (b // g)))

    return SmithDecomposition(im.freeze(u), im.freeze(d), im.freeze(v),
                              im.freeze(uinv), im.freeze(vinv))


@dataclass(frozen=True)
class AbHom:
    """Homomorphism of finitely generated abelian groups.

    The matrix is checked for well-definedness at construction: for a
    domain generator of order d, d times its image column must fall in
    the codomain relation lattice.
    """

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: FrozenMatrix

    def __post_init__(self) -> None:
        mat = im.freeze(self.matrix)
        object.__setattr__(self, "matrix", mat)
        if len(mat) != self.codomain.ngens:
            raise ShapeMismatch(
                f"matrix has {len(mat)} rows, codomain has {self.codomain.ngens} generators")
        for row in mat:
            if len(row) != self.domain.ngens:
                raise ShapeMismatch(
                    f"matrix row has {len(row)} entries, domain has "
                    f"{self.domain.ngens} generators")
        dom_orders = self.domain.orders
        cod_orders = self.codomain.orders
        for i, dord in enumerate(dom_orders):
            if dord == 0:
                continue
            for j, cord in enumerate(cod_orders):
                val = dord * mat[j][i]
                if (val != 0) if cord == 0 else (val % cord != 0):
                    raise ValueError(
                        f"matrix does not define a homomorphism: generator {i} "
                        f"has order {dord} but column {i} is not annihilated")

    @classmethod
    def from_rows(cls, domain: FgAbGroup, codomain: FgAbGroup,
                  rows: Sequence[Sequence[int]]) -> "AbHom":
        return cls(domain, codomain, im.freeze(rows))

    @classmethod
    def identity(cls, group: FgAbGroup) -> "AbHom":
        return cls(group, group, im.freeze(im.identity(group.ngens)))

    @classmethod
    def zero(cls, domain: FgAbGroup, codomain: FgAbGroup) -> "AbHom":
        return cls(domain, codomain, im.freeze(im.zeros(codomain.ngens, domain.ngens)))

    def compose(self, inner: "AbHom") -> "AbHom":
        """self after inner; defined only when descriptors agree exactly."""
        if inner.codomain != self.domain:
            raise ShapeMismatch(
                f"cannot compose: inner codomain {inner.codomain} != domain {self.domain}")
        prod = im.matmul(self.matrix, inner.matrix, cols_b=inner.domain.ngens)
        return AbHom(inner.domain, self.codomain, im.freeze(prod))

    def add(self, other: "AbHom") -> "AbHom":
        if other.domain != self.domain or other.codomain != self.codomain:
            raise ShapeMismatch("cannot add homs with different descriptors")
        return AbHom(self.domain, self.codomain,
                     im.freeze(im.madd(self.matrix, other.matrix)))

    def negate(self) -> "AbHom":
        return AbHom(self.domain, self.codomain, im.freeze(im.mneg(self.matrix)))

    def is_zero(self) -> bool:
        """Zero as a homomorphism, i.e. every column in the relation lattice."""
        for order, row in zip(self.codomain.orders, self.matrix):
            if order == 0:
                if any(row):
                    return False
            else:
                if any(x % order for x in row):
                    return False
        return True

    def equals(self, other: "AbHom") -> bool:
        """Equality as homomorphisms, i.e. matrices agree modulo relations."""
        if other.domain != self.domain or other.codomain != self.codomain:
            return False
        return self.add(other.negate()).is_zero()

    def apply(self, vector: Sequence[int]) -> list[int]:
        """Image of an element given in domain generator coordinates."""
        if len(vector) != self.domain.ngens:
            raise ShapeMismatch("vector length does not match domain generators")
        out = [0] * self.codomain.ngens
        for j, row in enumerate(self.matrix):
            out[j] = sum(r * x for r, x in zip(row, vector))
        return out


def _relation_matrix(group: FgAbGroup) -> IntMatrix:
    """Diagonal relation lattice generators, one column per torsion generator."""
    n = group.ngens
    t = len(group.torsion)
    rel = im.zeros(n, t)
    for k, dord in enumerate(group.torsion):
        rel[group.free_rank + k][k] = dord
    return rel


def _kernel_membership_columns(matrix: Sequence[Sequence[int]],
                               dom_ngens: int,
                               codomain: FgAbGroup) -> IntMatrix:
    """Columns spanning {x : matrix @ x lies in the codomain relation lattice}.

    Computed as the projection of the kernel of the matrix augmented with
    the relation columns.
    """
    rel = _relation_matrix(codomain)
    aug = im.hstack(matrix, rel)
    total_cols = dom_ngens + len(codomain.torsion)
    dec = smith_normal_form(aug, shape=(codomain.ngens, total_cols))
    keep = range(dec.rank, total_cols)
    return [[dec.v[i][j] for j in keep] for i in range(dom_ngens)]


def _column_basis(columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
    """Basis of the lattice spanned by the given columns.

    With u @ m @ v = d the column span equals the span of d_j * u_inv[:, j]
    over the nonzero diagonal entries, and those vectors are independent.
    """
    ncols = im.num_cols(columns)
    dec = smith_normal_form(columns, shape=(nrows, ncols))
    diag = dec.diagonal
    return [[diag[j] * dec.u_inv[i][j] for j in range(dec.rank)]
            for i in range(nrows)]


def _solve_in_basis(basis: Sequence[Sequence[int]], nrows: int,
                    targets: Sequence[Sequence[int]]) -> IntMatrix:
    """Solve basis @ y = target for each target column.

    Requires the basis to have full column rank and every target to lie in
    its span; both hold by construction everywhere this is used.
    """
    rank = im.num_cols(basis)
    dec = smith_normal_form(basis, shape=(nrows, rank))
    if dec.rank != rank:
        raise ValueError("basis columns are not independent")
    ntargets = im.num_cols(targets)
    w = im.matmul(dec.u, targets, cols_b=ntargets)
    diag = dec.diagonal
    for j in range(rank):
        if any(x % diag[j] for x in w[j]):
            raise ValueError("target outside the lattice spanned by the basis")
    for j in range(rank, nrows):
        if any(w[j]):
            raise ValueError("target outside the lattice spanned by the basis")
    reduced = [[w[j][c] // diag[j] for c in range(ntargets)] for j in range(rank)]
    return im.matmul(dec.v, reduced, cols_b=ntargets)


def _subquotient(basis: Sequence[Sequence[int]], nrows: int,
                 inner_columns: Sequence[Sequence[int]]) -> FgAbGroup:
    """The group (span of basis) / (span of inner columns), inner inside span."""
    rank = im.num_cols(basis)
    y = _solve_in_basis(basis, nrows, inner_columns)
    dec = smith_normal_form(y, shape=(rank, im.num_cols(inner_columns)))
    invariants = list(dec.diagonal) + [0] * (rank - len(dec.diagonal))
    return FgAbGroup.from_invariants(invariants)


def kernel(h: AbHom) -> FgAbGroup:
    """Kernel of h as an abstract group."""
    span = _kernel_membership_columns(h.matrix, h.domain.ngens, h.codomain)
    basis = _column_basis(span, h.domain.ngens)
    return _subquotient(basis, h.domain.ngens, _relation_matrix(h.domain))


def image(h: AbHom) -> FgAbGroup:
    """Image of h as a subgroup of the codomain, up to isomorphism."""
    cols = im.hstack(h.matrix, _relation_matrix(h.codomain))
    basis = _column_basis(cols, h.codomain.ngens)
    return _subquotient(basis, h.codomain.ngens, _relation_matrix(h.codomain))


def cohomology_at(d_in: AbHom, d_out: AbHom) -> FgAbGroup:
    """ker(d_out) / im(d_in) at the shared middle group.

    The middle group's relation lattice is folded into the image lattice,
    which is what makes the subquotient torsion-correct.
    """
    if d_in.codomain != d_out.domain:
        raise ShapeMismatch(
            f"middle groups differ: {d_in.codomain} vs {d_out.domain}")
    if not d_out.compose(d_in).is_zero():
        raise CompositionNonzero("d_out after d_in is not the zero homomorphism")
    mid = d_in.codomain
    span = _kernel_membership_columns(d_out.matrix, mid.ngens, d_out.codomain)
    basis = _column_basis(span, mid.ngens)
    inner = im.hstack(d_in.matrix, _relation_matrix(mid))
    return _subquotient(basis, mid.ngens, inner)


def presentation_to_canonical(orders: Sequence[int]) -> tuple[FgAbGroup, IntMatrix, IntMatrix]:
    """Canonical form of a direct sum of cyclic groups given by orders.

    Returns (group, to_canonical, from_canonical) where the matrices
    translate coordinates between the presentation generators and the
    canonical generators, inverse to each other modulo relations.

    When the multiset of orders already forms an invariant chain the
    change of basis is a plain permutation; otherwise the Smith form of
    the diagonal relation matrix supplies it.
    """
    n = len(orders)
    free_pos = [i for i, o in enumerate(orders) if o == 0]
    tors_pos = sorted((i for i, o in enumerate(orders) if o != 0),
                      key=lambda i: (orders[i], i))
    chain_ok = all(orders[i] >= 2 for i in tors_pos) and all(
        orders[b] % orders[a] == 0 for a, b in zip(tors_pos, tors_pos[1:]))
    if chain_ok:
        perm = free_pos + tors_pos
        to_can = im.zeros(n, n)
        from_can = im.zeros(n, n)
        for k, p in enumerate(perm):
            to_can[k][p] = 1
            from_can[p][k] = 1
        group = FgAbGroup(len(free_pos), tuple(orders[i] for i in tors_pos))
        return group, to_can, from_can

    rel = im.zeros(n, len(tors_pos))
    for k, p in enumerate(sorted(tors_pos)):
        rel[p][k] = orders[p]
    dec = smith_normal_form(rel, shape=(n, len(tors_pos)))
    diag = dec.diagonal
    rank = dec.rank
    free_sel = list(range(rank, n))
    tors_sel = [j for j in range(rank) if diag[j] >= 2]
    selected = free_sel + tors_sel
    group = FgAbGroup(n - rank, tuple(diag[j] for j in tors_sel))
    to_can = [list(dec.u[j]) for j in selected]
    from_can = [[dec.u_inv[i][j] for j in selected] for i in range(n)]
    return group, to_can, from_can


@dataclass(frozen=True)
class DirectSum:
    """Direct sum of groups with the canonicalizing change of basis.

    ``offsets`` gives each component's generator range inside the
    concatenated presentation; ``to_total`` and ``from_total`` translate
    between that presentation and the canonical generators of ``total``.
    """

    components: tuple[FgAbGroup, ...]
    total: FgAbGroup
    offsets: tuple[int, ...]
    to_total: FrozenMatrix
    from_total: FrozenMatrix

    @classmethod
    def of(cls, components: Sequence[FgAbGroup]) -> "DirectSum":
        comps = tuple(components)
        orders: list[int] = []
        offsets = [0]
        for g in comps:
            orders.extend(g.orders)
            offsets.append(offsets[-1] + g.ngens)
        total, to_can, from_can = presentation_to_canonical(orders)
        return cls(comps, total, tuple(offsets),
                   im.freeze(to_can), im.freeze(from_can))

    @property
    def presentation_size(self) -> int:
        return self.offsets[-1]

    def embedding(self, i: int) -> AbHom:
        lo, hi = self.offsets[i], self.offsets[i + 1]
        mat = [[row[k] for k in range(lo, hi)] for row in self.to_total]
        return AbHom(self.components[i], self.total, im.freeze(mat))

    def projection(self, i: int) -> AbHom:
        lo, hi = self.offsets[i], self.offsets[i + 1]
        mat = [list(self.from_total[k]) for k in range(lo, hi)]
        return AbHom(self.total, self.components[i], im.freeze(mat))


def direct_sum(groups: Sequence[FgAbGroup]) -> FgAbGroup:
    """Canonical form of the direct sum; for the full change of basis use
    DirectSum.of."""
    invariants: list[int] = []
    for g in groups:
        invariants.extend(g.orders)
    return FgAbGroup.from_invariants(invariants)


def assemble_hom(domain: DirectSum, codomain: DirectSum,
                 blocks: dict[tuple[int, int], IntMatrix]) -> AbHom:
    """Build a hom between direct sums from (codomain index, domain index)
    blocks, written on the presentation generators and converted to the
    canonical bases in one multiplication per side."""
    big = im.zeros(codomain.presentation_size, domain.presentation_size)
    for (ci, di), block in blocks.items():
        r0 = codomain.offsets[ci]
        c0 = domain.offsets[di]
        for r, row in enumerate(block):
            target = big[r0 + r]
            for c, val in enumerate(row):
                if val:
                    target[c0 + c] += val
    lifted = im.matmul(codomain.to_total, big, cols_b=domain.presentation_size)
    mat = im.matmul(lifted, domain.from_total, cols_b=domain.total.ngens)
    return AbHom(domain.total, codomain.total, im.freeze(mat))
