"""The hypercube Q_D over Q(i): Bose-Mesner and dual Bose-Mesner matrices,
Go's sl2 structure, and the induced anticommutator-algebra structures.

Vertices are integers 0..2^D-1, bit j is coordinate j, distance is XOR
popcount, and the base vertex is the all-zeros string.  The primitive
idempotents are interpolated from the adjacency matrix, staying inside
integer eigenvalue arithmetic throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .acsa import ModuleActionTriple, check_relations
from .exactnum import GaussianRational, gr
from .linalg import ExactMatrix, VectorBasis
from .sl2rep import Sl2Action, build_h, check_brackets, verify_skew


@dataclass(frozen=True)
class CubeContext:
    """Q_D with the base vertex fixed at the all-zeros string."""

    D: int

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("cube diameter must be positive")

    @property
    def nvertices(self) -> int:
        return 1 << self.D

    @property
    def base_vertex(self) -> int:
        return 0

    def weight(self, y: int) -> int:
        return y.bit_count()

    def distance(self, y: int, z: int) -> int:
        return (y ^ z).bit_count()

    def antipode(self, y: int) -> int:
        return y ^ (self.nvertices - 1)

    def vertices(self):
        return range(self.nvertices)

    def edges(self):
        """Ordered pairs (y, z) with z = y + one bit."""
        for y in self.vertices():
            for b in range(self.D):
                z = y ^ (1 << b)
                yield (y, z)


def cube(D: int) -> CubeContext:
    return CubeContext(D)


def distance_matrix(ctx: CubeContext, i: int) -> ExactMatrix:
    """The 0/1 matrix pairing vertices at distance exactly i."""
    _check_index(ctx, i)
    return _distance_matrix(ctx.D, i)


@lru_cache(maxsize=None)
def _distance_matrix(D: int, i: int) -> ExactMatrix:
    n = 1 << D
    one = gr(1)
    masks = [_bits_to_mask(bits) for bits in combinations(range(D), i)]
    entries = {(y, y ^ m): one for y in range(n) for m in masks}
    return ExactMatrix(n, n, entries)


def _bits_to_mask(bits) -> int:
    m = 0
    for b in bits:
        m |= 1 << b
    return m


def adjacency(ctx: CubeContext) -> ExactMatrix:
    return distance_matrix(ctx, 1)


def eigenvalue(ctx: CubeContext, i: int) -> int:
    """The i-th eigenvalue D - 2i of the first Q-polynomial ordering."""
    _check_index(ctx, i)
    return ctx.D - 2 * i


def primitive_idempotent(ctx: CubeContext, i: int) -> ExactMatrix:
    """E_i by linear interpolation in the adjacency matrix."""
    _check_index(ctx, i)
    return _primitive_idempotent(ctx.D, i)


@lru_cache(maxsize=None)
def _primitive_idempotent(D: int, i: int) -> ExactMatrix:
    ctx = CubeContext(D)
    a = adjacency(ctx)
    eye = ExactMatrix.identity(ctx.nvertices)
    theta_i = D - 2 * i
    m = eye
    for j in range(D + 1):
        if j == i:
            continue
        theta_j = D - 2 * j
        m = (m @ (a - eye * theta_j)) * Fraction(1, theta_i - theta_j)
    return m


def dual_idempotent(ctx: CubeContext, i: int) -> ExactMatrix:
    """Diagonal 0/1 projector onto the Hamming-weight-i vertices."""
    _check_index(ctx, i)
    one = gr(1)
    entries = {(y, y): one for y in ctx.vertices() if ctx.weight(y) == i}
    return ExactMatrix(ctx.nvertices, ctx.nvertices, entries)


def _interpolation_coefficients(D: int, i: int):
    """Coefficients of prod_{j != i} (t - theta_j)/(theta_i - theta_j)."""
    coeffs = [Fraction(1)]
    denom = 1
    theta_i = D - 2 * i
    for j in range(D + 1):
        if j == i:
            continue
        theta_j = D - 2 * j
        denom *= theta_i - theta_j
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] -= c * theta_j
            nxt[k + 1] += c
        coeffs = nxt
    return [c / denom for c in coeffs]


@lru_cache(maxsize=None)
def _idempotent_base_column(D: int, i: int) -> ExactMatrix:
    """E_i applied to the base vertex, via Krylov iteration on A."""
    ctx = CubeContext(D)
    a = adjacency(ctx)
    coeffs = _interpolation_coefficients(D, i)
    vec = ExactMatrix.column_vector([1] + [0] * (ctx.nvertices - 1))
    total = ExactMatrix.zeros(ctx.nvertices, 1)
    for c in coeffs:
        if c:
            total = total + vec * c
        vec = a @ vec
    return total


def dual_distance_matrix(ctx: CubeContext, i: int) -> ExactMatrix:
    """Diagonal matrix with (y,y)-entry 2^D times the base-vertex row of E_i."""
    _check_index(ctx, i)
    col = _idempotent_base_column(ctx.D, i)
    scale = ctx.nvertices
    return ExactMatrix.diagonal([col.get(y, 0) * scale for y in ctx.vertices()])


def dual_adjacency(ctx: CubeContext) -> ExactMatrix:
    return dual_distance_matrix(ctx, 1)


def second_dual_adjacency(ctx: CubeContext) -> ExactMatrix:
    """The dual adjacency of the second eigenvalue ordering: diagonal with
    entry (-1)^w (D-2w) at a weight-w vertex."""
    return dual_distance_matrix(ctx, ctx.D - 1)


def go_sl2_structure(ctx: CubeContext) -> Sl2Action:
    """X = A, Y = A*, Z = (XY - YX)/(2i); the brackets are re-verified."""
    return _go_sl2_structure(ctx.D)


@lru_cache(maxsize=None)
def _go_sl2_structure(D: int) -> Sl2Action:
    ctx = CubeContext(D)
    x = adjacency(ctx)
    y = dual_adjacency(ctx)
    z = (x @ y - y @ x) * gr(0, Fraction(-1, 2))
    action = Sl2Action(x, y, z)
    if not check_brackets(action):
        raise AssertionError(f"sl2 brackets fail on Q_{D}; construction bug")
    return action


def positive_structure(ctx: CubeContext) -> ModuleActionTriple:
    """x = A, y = A*_{D-1}, z = (xy+yx)/2; all three relations verified."""
    return _signed_structure(ctx.D, +1)


def negative_structure(ctx: CubeContext) -> ModuleActionTriple:
    return _signed_structure(ctx.D, -1)


@lru_cache(maxsize=None)
def _signed_structure(D: int, sign: int) -> ModuleActionTriple:
    ctx = CubeContext(D)
    x = adjacency(ctx)
    y = second_dual_adjacency(ctx) * sign
    z = (x @ y + y @ x) * Fraction(1, 2)
    triple = ModuleActionTriple(x, y, z)
    ok, detail = check_relations(triple)
    if not ok:
        raise AssertionError(f"Q_{D} {'positive' if sign > 0 else 'negative'} structure: {detail}")
    return triple


def weighted_adjacency(ctx: CubeContext) -> ExactMatrix:
    """The z-matrix of the positive structure; a signed adjacency matrix."""
    return positive_structure(ctx).z_mat


def antipodal_pairs(ctx: CubeContext):
    """Vertex pairs (y, antipode(y)) keyed by the smaller representative."""
    half = ctx.nvertices >> 1
    return [(y, ctx.antipode(y)) for y in range(half)]


def v_plus_minus(ctx: CubeContext) -> tuple[VectorBasis, VectorBasis]:
    """Bases of the symmetric and antisymmetric halves under the antipodal map."""
    n = ctx.nvertices
    one = gr(1)
    plus_cols = [{y: one, yp: one} for (y, yp) in antipodal_pairs(ctx)]
    minus_cols = [{y: one, yp: -one} for (y, yp) in antipodal_pairs(ctx)]
    return (
        VectorBasis.from_columns(n, plus_cols),
        VectorBasis.from_columns(n, minus_cols),
    )


def k_scalar(ctx: CubeContext) -> GaussianRational:
    """k acts on the whole standard module as 1 (even D) or -i (odd D);
    every irreducible submodule has dimension of the same parity."""
    return gr(1) if ctx.D % 2 == 0 else gr(0, -1)


def s_diagonal(ctx: CubeContext) -> ExactMatrix:
    """The skew involution on the standard module: diagonal entry
    (-1)^(floor(D/2)+w) at a weight-w vertex; cross-checked against the
    triple-exponential construction of h times k."""
    return _s_diagonal(ctx.D)


@lru_cache(maxsize=None)
def _s_diagonal(D: int) -> ExactMatrix:
    ctx = CubeContext(D)
    base = D // 2
    closed = ExactMatrix.diagonal(
        [(-1) ** (base + ctx.weight(y)) for y in ctx.vertices()]
    )
    action = go_sl2_structure(ctx)
    h = build_h(action, D + 1)
    s = h * k_scalar(ctx)
    if s != closed:
        raise AssertionError(
            f"skew operator on Q_{D}: closed form disagrees with the exponential construction"
        )
    if not verify_skew(action, closed):
        raise AssertionError(f"skew relations fail on Q_{D}")
    return closed


def _check_index(ctx: CubeContext, i: int) -> None:
    if not 0 <= i <= ctx.D:
        raise ValueError(f"index {i} out of range 0..{ctx.D}")
