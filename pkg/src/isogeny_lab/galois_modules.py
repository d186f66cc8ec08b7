"""Finitely generated matrix groups over F_ell acting on F_ell^(2g):
invariant subspaces, semisimplicity, Maschke complements, the hyperplane
intersection lattice with its dimension law, and the constructive
rational-subspace procedure, all with exhaustive oracles for small sizes.

Vectors are int tuples acted on from the left: (g v)_i = sum_j g[i][j] v_j.
Subspaces are canonical reduced row echelon bases, so equality is
representation equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    CapabilityError,
    ClosureOverflowError,
    NotSemisimpleError,
    TheoremViolationError,
)
from .fields import is_prime

ENUM_CAP = 3**6
CLOSURE_CAP = 200_000

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, ell: int) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % ell for col in bt) for row in a
    )


def mat_vec(a: Matrix, v, ell: int) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) % ell for row in a)


def mat_sub_identity(a: Matrix, ell: int) -> Matrix:
    return tuple(
        tuple((x - (1 if i == j else 0)) % ell for j, x in enumerate(row))
        for i, row in enumerate(a)
    )


def rref(rows, ell: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] % ell:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], -1, ell)
        mat[r] = [(x * inv) % ell for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % ell:
                f = mat[i][c]
                mat[i] = [(x - f * y) % ell for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r]), pivots


def mat_rank(rows, ell: int) -> int:
    return len(rref(rows, ell)[0])


def mat_inverse(a: Matrix, ell: int) -> Matrix | None:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    reduced, pivots = rref(aug, ell)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        return None
    return tuple(tuple(row[n:]) for row in reduced[:n])


def nullspace(rows, ell: int, ncols: int) -> list[Vector]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    reduced, pivots = rref(rows, ell) if rows else ((), [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-reduced[i][fc]) % ell
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_ell^n in canonical reduced-row-echelon form."""

    ell: int
    ambient: int
    rows: Matrix

    @classmethod
    def from_vectors(cls, ell: int, ambient: int, vectors) -> "Subspace":
        vecs = [tuple(x % ell for x in v) for v in vectors]
        reduced, _ = rref(vecs, ell) if vecs else ((), [])
        return cls(ell=ell, ambient=ambient, rows=reduced)

    @classmethod
    def zero(cls, ell: int, ambient: int) -> "Subspace":
        return cls(ell=ell, ambient=ambient, rows=())

    @classmethod
    def full(cls, ell: int, ambient: int) -> "Subspace":
        return cls(ell=ell, ambient=ambient, rows=identity_matrix(ambient))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains_vector(self, v) -> bool:
        v = [x % self.ell for x in v]
        for row in self.rows:
            pc = next(i for i, x in enumerate(row) if x)
            if v[pc]:
                f = v[pc]
                v = [(x - f * y) % self.ell for x, y in zip(v, row)]
        return not any(v)

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        ann = self.annihilator().rows + other.annihilator().rows
        null = nullspace(ann, self.ell, self.ambient)
        return Subspace.from_vectors(self.ell, self.ambient, null)

    def add(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(
            self.ell, self.ambient, list(self.rows) + list(other.rows)
        )

    def annihilator(self) -> "Subspace":
        """Functionals vanishing on this subspace (dot-product duality)."""
        null = nullspace(self.rows, self.ell, self.ambient)
        return Subspace.from_vectors(self.ell, self.ambient, null)

    def apply(self, g: Matrix) -> "Subspace":
        return Subspace.from_vectors(
            self.ell, self.ambient, [mat_vec(g, r, self.ell) for r in self.rows]
        )

    def vectors(self):
        """All vectors in the subspace (enumeration; small dims only)."""
        for coeffs in itertools.product(range(self.ell), repeat=self.dim):
            v = [0] * self.ambient
            for c, row in zip(coeffs, self.rows):
                for i, x in enumerate(row):
                    v[i] = (v[i] + c * x) % self.ell
            yield tuple(v)

    def to_json(self):
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class GaloisModule:
    """F_ell^dim with an explicit generating set of invertible matrices."""

    ell: int
    dim: int
    generators: tuple[Matrix, ...]

    def __post_init__(self):
        if not is_prime(self.ell):
            raise ValueError("ell must be prime")
        if self.dim < 2 or self.dim % 2 != 0:
            raise ValueError("module dimension must be even and >= 2")
        for g in self.generators:
            if len(g) != self.dim or any(len(r) != self.dim for r in g):
                raise ValueError("generator has wrong shape")
            if mat_inverse(g, self.ell) is None:
                raise ValueError("generator is not invertible mod ell")

    @classmethod
    def from_matrices(cls, ell: int, mats) -> "GaloisModule":
        gens = tuple(tuple(tuple(x % ell for x in row) for row in m) for m in mats)
        dim = len(gens[0]) if gens else 0
        return cls(ell=ell, dim=dim, generators=gens)

    def to_json(self):
        return {
            "ell": self.ell,
            "dim": self.dim,
            "generators": [[list(r) for r in g] for g in self.generators],
        }

    @classmethod
    def from_json(cls, data) -> "GaloisModule":
        return cls.from_matrices(data["ell"], data["generators"])


@dataclass(frozen=True)
class PointedConfiguration:
    """A module together with n invariant hyperplanes with trivial quotient
    action (the module-level shadow of rational kernel generators)."""

    module: GaloisModule
    hyperplanes: tuple[Subspace, ...]

    def __post_init__(self):
        m = self.module
        for h in self.hyperplanes:
            if h.ambient != m.dim or h.dim != m.dim - 1:
                raise ValueError("hyperplanes must have codimension 1")
            if not is_invariant(m, h):
                raise ValueError("hyperplane is not invariant")
            if not pointedness_check(m, h):
                raise ValueError("hyperplane quotient action is not trivial")

    def to_json(self):
        data = self.module.to_json()
        data["hyperplanes"] = [h.to_json() for h in self.hyperplanes]
        return data

    @classmethod
    def from_json(cls, data) -> "PointedConfiguration":
        module = GaloisModule.from_json(data)
        hyps = tuple(
            Subspace.from_vectors(module.ell, module.dim, rows)
            for rows in data["hyperplanes"]
        )
        return cls(module=module, hyperplanes=hyps)


# --- basic operations -----------------------------------------------------------


def fixed_subspace(module: GaloisModule) -> Subspace:
    """The simultaneous 1-eigenspace of all generators."""
    rows = []
    for g in module.generators:
        rows.extend(mat_sub_identity(g, module.ell))
    if not rows:
        return Subspace.full(module.ell, module.dim)
    basis = nullspace(rows, module.ell, module.dim)
    return Subspace.from_vectors(module.ell, module.dim, basis)


def is_invariant(module: GaloisModule, sub: Subspace) -> bool:
    if sub.ambient != module.dim:
        raise ValueError("subspace ambient dimension mismatch")
    return all(sub.contains(sub.apply(g)) for g in module.generators)


def pointedness_check(module: GaloisModule, hyperplane: Subspace) -> bool:
    """True iff (g - I)(ambient) is contained in the hyperplane for all
    generators, i.e. the quotient action is trivial."""
    if hyperplane.ambient != module.dim or hyperplane.dim != module.dim - 1:
        raise ValueError("pointedness is defined for hyperplanes")
    if not is_invariant(module, hyperplane):
        raise ValueError("hyperplane is not invariant")
    for g in module.generators:
        gi = mat_sub_identity(g, module.ell)
        cols = tuple(zip(*gi))
        if not all(hyperplane.contains_vector(col) for col in cols):
            return False
    return True


def group_closure(module: GaloisModule, cap: int = CLOSURE_CAP) -> frozenset:
    """The full multiplicative closure of the generators, if its size stays
    within cap; raises ClosureOverflowError otherwise."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    ident = identity_matrix(module.dim)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in module.generators:
                prod = mat_mul(m, g, module.ell)
                if prod not in seen:
                    seen.add(prod)
                    if len(seen) > cap:
                        raise ClosureOverflowError(
                            f"group closure exceeded cap {cap}"
                        )
                    nxt.append(prod)
        frontier = nxt
    return frozenset(seen)


def _minimal_polynomial(g: Matrix, ell: int) -> list[int]:
    """Monic minimal polynomial of g over F_ell, ascending coefficients."""
    n = len(g)
    powers = [identity_matrix(n)]
    for _ in range(n):
        powers.append(mat_mul(powers[-1], g, ell))
    flat = [tuple(x for row in p for x in row) for p in powers]
    for degree in range(1, n + 1):
        # solve sum_{i<degree} c_i flat[i] = -flat[degree]
        rows = list(zip(*flat[:degree]))
        target = [(-x) % ell for x in flat[degree]]
        sol = _solve(rows, target, ell, degree)
        if sol is not None:
            return [s % ell for s in sol] + [1]
    raise AssertionError("no minimal polynomial of degree <= n (impossible)")


def _solve(rows, target, ell: int, ncols: int):
    aug = [list(r) + [t] for r, t in zip(rows, target)]
    reduced, pivots = rref(aug, ell)
    sol = [0] * ncols
    for row, pc in zip(reduced, pivots):
        if pc == ncols:
            return None
        sol[pc] = row[-1]
    # verify (system may be overdetermined)
    for r, t in zip(rows, target):
        if sum(a * b for a, b in zip(r, sol)) % ell != t % ell:
            return None
    return sol


def is_semisimple(
    module: GaloisModule,
    closure_cap: int = CLOSURE_CAP,
    enum_cap: int = ENUM_CAP,
) -> bool:
    """Decision procedure: coprime closure size (Maschke), squarefree
    minimal polynomial for cyclic modules, exhaustive complement search as
    the bounded fallback."""
    try:
        closure = group_closure(module, closure_cap)
        if len(closure) % module.ell != 0:
            return True
    except ClosureOverflowError:
        closure = None
    if len(module.generators) == 1:
        from . import intpoly

        m = _minimal_polynomial(module.generators[0], module.ell)
        d = intpoly.pgcd(m, intpoly.pderiv(m, module.ell), module.ell)
        return intpoly.deg(d) == 0
    if module.ell**module.dim <= enum_cap:
        subs = enumerate_invariant_subspaces(module, enum_cap)
        for v in subs:
            if v.dim in (0, module.dim):
                continue
            if _find_invariant_complement(module, v, subs) is None:
                return False
        return True
    raise CapabilityError(
        f"semisimplicity undecided: closure cap {closure_cap} and enumeration "
        f"cap {enum_cap} (= ell^dim bound) both exceeded"
    )


def _find_invariant_complement(module, v: Subspace, subs) -> Subspace | None:
    want = module.dim - v.dim
    for w in subs:
        if w.dim == want and v.intersect(w).dim == 0:
            return w
    return None


def _closure_raw(ell: int, dim: int, gens, cap: int):
    ident = identity_matrix(dim)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = mat_mul(m, g, ell)
                if prod not in seen:
                    seen.add(prod)
                    if len(seen) > cap:
                        raise ClosureOverflowError(f"group closure exceeded cap {cap}")
                    nxt.append(prod)
        frontier = nxt
    return frozenset(seen)


def _is_invariant_raw(ell: int, gens, sub: Subspace) -> bool:
    return all(sub.contains(sub.apply(g)) for g in gens)


def _enumerate_subspaces_raw(ell: int, n: int):
    """All subspaces of F_ell^n in echelon form (including zero and full)."""
    yield Subspace.zero(ell, n)
    for k in range(1, n + 1):
        for pivots in itertools.combinations(range(n), k):
            free_positions = []
            for i, p in enumerate(pivots):
                for c in range(p + 1, n):
                    if c not in pivots:
                        free_positions.append((i, c))
            for values in itertools.product(range(ell), repeat=len(free_positions)):
                rows = [[0] * n for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, c), v in zip(free_positions, values):
                    rows[i][c] = v
                yield Subspace(ell=ell, ambient=n, rows=tuple(tuple(r) for r in rows))


def _invariant_complement_raw(ell: int, dim: int, gens, sub: Subspace) -> Subspace:
    if sub.dim == dim:
        return Subspace.zero(ell, dim)
    if sub.dim == 0:
        return Subspace.full(ell, dim)
    closure = None
    try:
        closure = _closure_raw(ell, dim, gens, CLOSURE_CAP)
    except ClosureOverflowError:
        pass
    if closure is not None and len(closure) % ell != 0:
        pi = _averaged_projector(ell, dim, gens, sub, closure)
        w = Subspace.from_vectors(ell, dim, nullspace(pi, ell, dim))
        if not (
            _is_invariant_raw(ell, gens, w)
            and sub.intersect(w).dim == 0
            and sub.dim + w.dim == dim
        ):
            raise AssertionError("Maschke averaging produced an invalid complement")
        return w
    if ell**dim <= ENUM_CAP:
        want = dim - sub.dim
        for w in _enumerate_subspaces_raw(ell, dim):
            if w.dim == want and _is_invariant_raw(ell, gens, w) and sub.intersect(w).dim == 0:
                return w
        raise NotSemisimpleError("no invariant complement exists for the given subspace")
    raise CapabilityError(
        f"invariant complement undecidable within enumeration cap {ENUM_CAP}"
    )


def invariant_complement(module: GaloisModule, sub: Subspace) -> Subspace:
    """An invariant W with sub + W = ambient (direct); Maschke averaging when
    the closure size is invertible mod ell, exhaustive search otherwise.
    Raises NotSemisimpleError when no complement exists."""
    if not is_invariant(module, sub):
        raise ValueError("subspace is not invariant")
    return _invariant_complement_raw(module.ell, module.dim, module.generators, sub)


def _averaged_projector(ell: int, n: int, gens, sub: Subspace, closure) -> Matrix:
    """pi = |G|^-1 sum_g g pi0 g^-1 for any projector pi0 onto sub."""
    rows = list(sub.rows)
    pivots = {next(i for i, x in enumerate(r) if x) for r in rows}
    completion = [
        tuple(1 if i == c else 0 for i in range(n)) for c in range(n) if c not in pivots
    ]
    basis = rows + completion
    s_cols = tuple(zip(*basis))  # columns are basis vectors
    s_mat = tuple(tuple(int(x) for x in row) for row in s_cols)
    s_inv = mat_inverse(s_mat, ell)
    if s_inv is None:
        raise AssertionError("basis completion failed")
    d = tuple(
        tuple(1 if (i == j and i < sub.dim) else 0 for j in range(n)) for i in range(n)
    )
    pi0 = mat_mul(mat_mul(s_mat, d, ell), s_inv, ell)
    total = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for g in closure:
        g_inv = mat_inverse(g, ell)
        term = mat_mul(mat_mul(g, pi0, ell), g_inv, ell)
        total = tuple(
            tuple((a + b) % ell for a, b in zip(r1, r2)) for r1, r2 in zip(total, term)
        )
    inv_order = pow(len(closure) % ell, -1, ell)
    pi = tuple(tuple((x * inv_order) % ell for x in row) for row in total)
    # exact projector identities: idempotent and commuting with every generator
    if mat_mul(pi, pi, ell) != pi:
        raise AssertionError("averaged projector is not idempotent")
    for g in gens:
        if mat_mul(g, pi, ell) != mat_mul(pi, g, ell):
            raise AssertionError("averaged projector does not commute with a generator")
    return pi


def relative_invariant_complement(
    module: GaloisModule, inner: Subspace, outer: Subspace
) -> Subspace:
    """Invariant W with inner + W = outer (direct), computed by restricting
    the action to outer."""
    if not outer.contains(inner):
        raise ValueError("inner subspace is not contained in outer")
    if not is_invariant(module, inner) or not is_invariant(module, outer):
        raise ValueError("both subspaces must be invariant")
    ell = module.ell
    if inner.dim == outer.dim:
        return Subspace.zero(ell, module.dim)
    k = outer.dim
    gens = []
    for g in module.generators:
        cols = []
        for r in outer.rows:
            img = mat_vec(g, r, ell)
            cols.append(_coords_in(outer, img, ell))
        gens.append(tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)))
    inner_sub = Subspace.from_vectors(
        ell, k, [_coords_in(outer, r, ell) for r in inner.rows]
    )
    w_coords = _invariant_complement_raw(ell, k, tuple(gens), inner_sub)
    w_rows = []
    for cr in w_coords.rows:
        vec = [0] * module.dim
        for c, row in zip(cr, outer.rows):
            for i, x in enumerate(row):
                vec[i] = (vec[i] + c * x) % ell
        w_rows.append(tuple(vec))
    w = Subspace.from_vectors(ell, module.dim, w_rows)
    if not (
        is_invariant(module, w)
        and inner.intersect(w).dim == 0
        and inner.add(w).rows == outer.rows
    ):
        raise AssertionError("relative complement verification failed")
    return w


def _coords_in(sub: Subspace, vec, ell: int):
    """Coordinates of vec in the echelon basis of sub (must be a member)."""
    v = [x % ell for x in vec]
    coords = []
    for row in sub.rows:
        pc = next(i for i, x in enumerate(row) if x)
        c = v[pc]
        coords.append(c)
        if c:
            v = [(x - c * y) % ell for x, y in zip(v, row)]
    if any(v):
        raise ValueError("vector is not in the subspace")
    return tuple(coords)


def subspace_lattice(hyperplanes) -> dict[frozenset, Subspace]:
    """H_J = intersection of H_j over j in J for every nonempty J."""
    n = len(hyperplanes)
    out: dict[frozenset, Subspace] = {}
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            key = frozenset(combo)
            if size == 1:
                out[key] = hyperplanes[combo[0]]
            else:
                prev = out[frozenset(combo[:-1])]
                out[key] = prev.intersect(hyperplanes[combo[-1]])
    return out


def graph_order(hyperplanes) -> int:
    """Largest m such that some m of the hyperplanes have exact intersection
    dimensions, i.e. the rank of their defining functionals."""
    if not hyperplanes:
        return 0
    ell = hyperplanes[0].ell
    funcs = []
    for h in hyperplanes:
        ann = h.annihilator()
        funcs.extend(ann.rows)
    return mat_rank(funcs, ell)


def theorem2_construct(cfg: PointedConfiguration) -> list[Vector]:
    """The constructive procedure: W_i with H_I + W_i = H_{I minus i}
    (direct), Q_i the canonical generator of W_i.  Asserts the guaranteed
    postconditions: every Q_i fixed, the Q_i independent, span inside the
    fixed subspace."""
    module = cfg.module
    hyps = list(cfg.hyperplanes)
    n = len(hyps)
    if graph_order(hyps) != n:
        raise ValueError(f"configuration order is not {n}")
    if not is_semisimple(module):
        raise NotSemisimpleError("module is not semisimple")
    full = Subspace.full(module.ell, module.dim)
    h_all = full
    for h in hyps:
        h_all = h_all.intersect(h)
    qs: list[Vector] = []
    for i in range(n):
        h_rest = full
        for j, h in enumerate(hyps):
            if j != i:
                h_rest = h_rest.intersect(h)
        w = relative_invariant_complement(module, h_all, h_rest)
        if w.dim != 1:
            raise TheoremViolationError(
                f"complement W_{i} has dimension {w.dim}, expected 1"
            )
        qs.append(w.rows[0])
    fixed = fixed_subspace(module)
    for i, q in enumerate(qs):
        for g in module.generators:
            if mat_vec(g, q, module.ell) != q:
                raise TheoremViolationError(f"constructed Q_{i} is not fixed")
        if not fixed.contains_vector(q):
            raise TheoremViolationError(f"constructed Q_{i} escapes the fixed subspace")
    if mat_rank(qs, module.ell) != n:
        raise TheoremViolationError("constructed vectors are not independent")
    return qs


def product_module(m1: GaloisModule, m2: GaloisModule) -> GaloisModule:
    """Block-diagonal product; generator lists are aligned by index (the
    i-th generators of both factors are images of the same group element)."""
    if m1.ell != m2.ell:
        raise ValueError("factors have different torsion levels")
    if len(m1.generators) != len(m2.generators):
        raise ValueError("generator lists are not aligned")
    ell = m1.ell
    gens = []
    for g1, g2 in zip(m1.generators, m2.generators):
        n1, n2 = m1.dim, m2.dim
        rows = []
        for i in range(n1):
            rows.append(tuple(g1[i]) + (0,) * n2)
        for i in range(n2):
            rows.append((0,) * n1 + tuple(g2[i]))
        gens.append(tuple(rows))
    return GaloisModule(ell=ell, dim=m1.dim + m2.dim, generators=tuple(gens))


def enumerate_invariant_subspaces(module: GaloisModule, cap: int = ENUM_CAP):
    """All invariant subspaces, by enumerating echelon forms and filtering.

    Exhaustive oracle; guarded by ell^dim <= cap.
    """
    ell, n = module.ell, module.dim
    if ell**n > cap:
        raise CapabilityError(f"subspace enumeration cap {cap} exceeded (ell^dim = {ell**n})")
    out = [Subspace.zero(ell, n)]
    for k in range(1, n + 1):
        for pivots in itertools.combinations(range(n), k):
            free_positions = []
            for i, p in enumerate(pivots):
                for c in range(p + 1, n):
                    if c not in pivots:
                        free_positions.append((i, c))
            for values in itertools.product(range(ell), repeat=len(free_positions)):
                rows = [[0] * n for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, c), v in zip(free_positions, values):
                    rows[i][c] = v
                sub = Subspace(ell=ell, ambient=n, rows=tuple(tuple(r) for r in rows))
                if is_invariant(module, sub):
                    out.append(sub)
    return out


# --- random configuration generators (for property suites) ----------------------


def _random_invertible(rng, ell: int, n: int) -> Matrix:
    while True:
        m = tuple(tuple(rng.randrange(ell) for _ in range(n)) for _ in range(n))
        if mat_inverse(m, ell) is not None:
            return m


def _conjugate_config(rng, module: GaloisModule, hyperplanes):
    """Apply a random change of basis to a configuration."""
    ell, n = module.ell, module.dim
    p = _random_invertible(rng, ell, n)
    p_inv = mat_inverse(p, ell)
    gens = tuple(mat_mul(mat_mul(p, g, ell), p_inv, ell) for g in module.generators)
    new_mod = GaloisModule(ell=ell, dim=n, generators=gens)
    new_hyps = tuple(
        Subspace.from_vectors(ell, n, [mat_vec(p, r, ell) for r in h.rows])
        for h in hyperplanes
    )
    return new_mod, new_hyps


def _coprime_order_block(rng, ell: int, size: int) -> Matrix:
    """A size x size invertible matrix of order coprime to ell: a diagonal
    of units for odd ell, blocks of the order-3 companion of x^2+x+1 for
    ell = 2.  Commuting choices keep closures abelian and coprime."""
    if ell > 2:
        return tuple(
            tuple(rng.randrange(1, ell) if i == j else 0 for j in range(size))
            for i in range(size)
        )
    rows = [[0] * size for _ in range(size)]
    i = 0
    while i < size:
        if size - i >= 2 and rng.random() < 0.8:
            power = rng.randrange(3)
            # companion C of x^2+x+1 over F_2 has order 3; use C^power
            block = [
                identity_matrix(2),
                ((0, 1), (1, 1)),
                ((1, 1), (1, 0)),
            ][power]
            for a in range(2):
                for b in range(2):
                    rows[i + a][i + b] = block[a][b]
            i += 2
        else:
            rows[i][i] = 1
            i += 1
    return tuple(tuple(r) for r in rows)


def random_semisimple_pointed_config(rng, ell: int, g: int, n: int) -> PointedConfiguration:
    """A random semisimple pointed configuration of order n in dimension 2g.

    Generators are block-diagonal: identity on the first n coordinates
    (pointedness w.r.t. the coordinate hyperplanes) and commuting blocks of
    order coprime to ell on the rest, so semisimplicity is guaranteed by
    Maschke; everything is then conjugated by a random change of basis.
    """
    dim = 2 * g
    if not 1 <= n <= dim:
        raise ValueError("order n must satisfy 1 <= n <= 2g")
    rest = dim - n
    n_gens = rng.randrange(1, 4)
    gens = []
    for _ in range(n_gens):
        if rest:
            block = _coprime_order_block(rng, ell, rest)
        else:
            block = ()
        rows = []
        for i in range(n):
            rows.append(tuple(1 if j == i else 0 for j in range(dim)))
        for i in range(rest):
            rows.append((0,) * n + tuple(block[i]))
        gens.append(tuple(rows))
    module = GaloisModule(ell=ell, dim=dim, generators=tuple(gens))
    hyps = tuple(_coordinate_hyperplane(ell, dim, i) for i in range(n))
    module, hyps = _conjugate_config(rng, module, hyps)
    return PointedConfiguration(module=module, hyperplanes=hyps)


def random_cyclic_pointed_config(rng, ell: int, g: int, n: int) -> PointedConfiguration:
    """A random single-generator pointed configuration of order n; no
    semisimplicity guarantee (the bottom-left block is arbitrary)."""
    dim = 2 * g
    if not 1 <= n <= dim:
        raise ValueError("order n must satisfy 1 <= n <= 2g")
    rest = dim - n
    rows = []
    for i in range(n):
        rows.append(tuple(1 if j == i else 0 for j in range(dim)))
    if rest:
        d = _random_invertible(rng, ell, rest)
        for i in range(rest):
            left = tuple(rng.randrange(ell) for _ in range(n))
            rows.append(left + tuple(d[i]))
    gen = tuple(rows)
    module = GaloisModule(ell=ell, dim=dim, generators=(gen,))
    hyps = tuple(_coordinate_hyperplane(ell, dim, i) for i in range(n))
    module, hyps = _conjugate_config(rng, module, hyps)
    return PointedConfiguration(module=module, hyperplanes=hyps)


def _coordinate_hyperplane(ell: int, dim: int, i: int) -> Subspace:
    rows = [tuple(1 if j == k else 0 for j in range(dim)) for k in range(dim) if k != i]
    return Subspace.from_vectors(ell, dim, rows)


def necessity_witness_config() -> PointedConfiguration:
    """The order-2 pointed, non-semisimple configuration over F_3 in
    dimension 4 (two copies of the affine group's standard representation)
    whose fixed subspace is zero."""
    m = GaloisModule.from_matrices(3, [[[2, 0], [0, 1]], [[1, 1], [0, 1]]])
    mm = product_module(m, m)
    h1 = Subspace.from_vectors(3, 4, [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    h2 = Subspace.from_vectors(3, 4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    return PointedConfiguration(module=mm, hyperplanes=(h1, h2))
