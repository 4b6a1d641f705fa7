"""The anticommutator spin algebra: canonical irreducible modules and their
classification.

Generators x, y, z obey xy+yx=2z, yz+zy=2x, zx+xz=2y.  Finite-dimensional
irreducible modules fall into five families: B(d) for even d, and AB(d,n)
for n in {0,x,y,z}.  In the AB families the top basis vector folds back
(v_{d+1}=v_d), which puts the single nonzero corner on the diagonal.
"""
from __future__ import annotations

import re as _re
from dataclasses import dataclass

from .exactnum import GaussianRational, ZERO
from .linalg import ExactMatrix, kernel_basis

AB_VARIANTS = ("0", "x", "y", "z")


@dataclass(frozen=True)
class ModuleType:
    """Isomorphism type of an irreducible module: B(d) or AB(d,n)."""

    family: str
    d: int
    n: str | None = None

    def __post_init__(self):
        if self.family == "B":
            if self.d < 0 or self.d % 2:
                raise ValueError(f"type B requires even d >= 0, got {self.d}")
            if self.n is not None:
                raise ValueError("type B carries no variant")
        elif self.family == "AB":
            if self.d < 0:
                raise ValueError("negative diameter")
            if self.n not in AB_VARIANTS:
                raise ValueError(f"AB variant must be one of {AB_VARIANTS}, got {self.n!r}")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def dimension(self) -> int:
        return self.d + 1

    def __str__(self):
        if self.family == "B":
            return f"B({self.d})"
        return f"AB({self.d},{self.n})"

    @classmethod
    def parse(cls, text: str) -> "ModuleType":
        m = _re.fullmatch(r"\s*B\((\d+)\)\s*", text)
        if m:
            return cls("B", int(m.group(1)))
        m = _re.fullmatch(r"\s*AB\((\d+),\s*([0xyz])\)\s*", text)
        if m:
            return cls("AB", int(m.group(1)), m.group(2))
        raise ValueError(f"malformed module type: {text!r}")


def b_type(d: int) -> ModuleType:
    return ModuleType("B", d)


def ab_type(d: int, n: str) -> ModuleType:
    return ModuleType("AB", d, n)


@dataclass(frozen=True)
class ModuleActionTriple:
    """Actions of the generators x, y, z as square matrices of equal size."""

    x_mat: ExactMatrix
    y_mat: ExactMatrix
    z_mat: ExactMatrix

    def __post_init__(self):
        dims = {m.nrows for m in self.matrices()} | {m.ncols for m in self.matrices()}
        if len(dims) != 1:
            raise ValueError("generator matrices must be square and of equal size")

    def matrices(self):
        return (self.x_mat, self.y_mat, self.z_mat)

    @property
    def dimension(self) -> int:
        return self.x_mat.nrows

    @property
    def diameter(self) -> int:
        return self.dimension - 1

    def traces(self):
        return tuple(m.trace() for m in self.matrices())


def _sign(k: int) -> int:
    return 1 if k % 2 == 0 else -1


def _chain(d: int, lower, upper, fold: bool) -> ExactMatrix:
    """Matrix sending v_i -> lower(i) v_{i-1} + upper(i) v_{i+1}.

    With fold=True the out-of-range v_{d+1} is identified with v_d.
    """
    entries: dict = {}
    for i in range(d + 1):
        lo = lower(i)
        if i > 0 and lo:
            entries[(i - 1, i)] = entries.get((i - 1, i), 0) + lo
        up = upper(i)
        if up:
            if i < d:
                entries[(i + 1, i)] = entries.get((i + 1, i), 0) + up
            elif fold:
                entries[(d, d)] = entries.get((d, d), 0) + up
    return ExactMatrix(d + 1, d + 1, {k: GaussianRational(v) for k, v in entries.items() if v})


def build_canonical(t: ModuleType) -> ModuleActionTriple:
    """Generator matrices in the family's standard basis {v_0..v_d}."""
    d = t.d
    if t.family == "B":
        x = ExactMatrix.diagonal([_sign(i) * (d - 2 * i) for i in range(d + 1)])
        y = _chain(d, lambda i: d - i + 1, lambda i: i + 1, fold=False)
        z = _chain(
            d,
            lambda i: _sign(i - 1) * (d - i + 1),
            lambda i: _sign(i) * (i + 1),
            fold=False,
        )
    else:
        sx = _sign(d) if t.n in ("0", "x") else _sign(d + 1)
        sy = 0 if t.n in ("0", "y") else 1
        x = _chain(
            d,
            lambda i: sx * (2 * d - i + 2),
            lambda i: sx * (i + 1),
            fold=True,
        )
        y = ExactMatrix.diagonal(
            [_sign(d + i + sy) * (2 * d - 2 * i + 1) for i in range(d + 1)]
        )
        if t.n in ("0", "z"):
            z = _chain(
                d,
                lambda i: _sign(i - 1) * (2 * d - i + 2),
                lambda i: _sign(i) * (i + 1),
                fold=True,
            )
        else:
            z = _chain(
                d,
                lambda i: _sign(i) * (2 * d - i + 2),
                lambda i: _sign(i + 1) * (i + 1),
                fold=True,
            )
    triple = ModuleActionTriple(x, y, z)
    ok, detail = check_relations(triple)
    if not ok:
        raise AssertionError(f"canonical module {t} fails its defining relations: {detail}")
    return triple


_RELATIONS = (
    ("xy+yx=2z", 0, 1, 2),
    ("yz+zy=2x", 1, 2, 0),
    ("zx+xz=2y", 2, 0, 1),
)


def check_relations(m: ModuleActionTriple) -> tuple[bool, str | None]:
    """True iff all three anticommutator relations hold; else names the first failure."""
    mats = m.matrices()
    for label, a, b, c in _RELATIONS:
        lhs = mats[a] @ mats[b] + mats[b] @ mats[a]
        rhs = mats[c] * 2
        diff = lhs - rhs
        if not diff.is_zero():
            (r, col) = min(diff.entries)
            return False, f"{label} fails at entry ({r},{col}): residue {diff.entries[(r, col)]}"
    return True, None


def _integer_eigenspaces(m: ExactMatrix, bound: int):
    """All (eigenvalue, kernel basis) pairs with integer eigenvalues in [-bound, bound].

    Raises if the eigenspaces found do not span, i.e. the matrix is outside
    the class this package supports (integer spectrum, diagonalizable).
    """
    n = m.nrows
    found = []
    total = 0
    eye = ExactMatrix.identity(n)
    for theta in range(-bound, bound + 1):
        k = kernel_basis(m - eye * theta)
        if k.size:
            found.append((theta, k))
            total += k.size
            if total == n:
                break
    if total != n:
        raise ValueError(
            f"integer eigenvalue scan in [-{bound},{bound}] found {total} of {n} dimensions; "
            "input is outside the supported class"
        )
    return found


def _closure_dimension(seed: ExactMatrix, mats) -> int:
    """Dimension of the smallest subspace containing seed and invariant under mats."""
    n = seed.nrows
    basis_rows: list[list[GaussianRational]] = []
    pivots: list[int] = []

    def reduce_and_add(vec_entries: dict) -> bool:
        row = [ZERO] * n
        for r, v in vec_entries.items():
            row[r] = v
        for pos, existing in zip(pivots, basis_rows):
            f = row[pos]
            if f:
                for j in range(n):
                    if existing[j]:
                        row[j] = row[j] - f * existing[j]
        lead = next((j for j in range(n) if row[j]), None)
        if lead is None:
            return False
        inv = row[lead].inverse()
        basis_rows.append([x * inv for x in row])
        pivots.append(lead)
        return True

    queue = [seed]
    reduce_and_add({r: v for (r, _c), v in seed.entries.items()})
    while queue and len(basis_rows) < n:
        vec = queue.pop()
        for m in mats:
            img = m @ vec
            if reduce_and_add({r: v for (r, _c), v in img.entries.items()}):
                queue.append(img)
    return len(basis_rows)


def is_irreducible(m: ModuleActionTriple) -> bool:
    """True iff every x-eigenvector generates the whole space under {x, y}.

    Irreducible modules of the five families have multiplicity-free integer
    x-spectrum, so a repeated eigenvalue already witnesses reducibility.
    """
    n = m.dimension
    bound = 2 * m.diameter + 1
    eigenspaces = _integer_eigenspaces(m.x_mat, bound)
    for _theta, basis in eigenspaces:
        if basis.size > 1:
            return False
    gens = (m.x_mat, m.y_mat)
    for _theta, basis in eigenspaces:
        if _closure_dimension(basis.column(0), gens) < n:
            return False
    return True


def trace_table(d: int) -> dict:
    """Trace triples of the four almost-bipartite variants at diameter d."""
    s = GaussianRational(_sign(d) * (d + 1))
    return {
        "0": (s, s, s),
        "x": (s, -s, -s),
        "y": (-s, s, -s),
        "z": (-s, -s, s),
    }


def trace_variant(traces, d: int) -> str | None:
    """The variant whose trace row matches, or None."""
    for n, pattern in trace_table(d).items():
        if tuple(traces) == pattern:
            return n
    return None


def classify(m: ModuleActionTriple) -> ModuleType:
    """The unique type of an irreducible triple, from its dimension and traces."""
    d = m.diameter
    tx, ty, tz = m.traces()
    zero = GaussianRational(0)
    if (tx, ty, tz) == (zero, zero, zero):
        if d % 2:
            raise ValueError(f"traceless module of odd diameter {d} matches no classified family")
        return b_type(d)
    n = trace_variant((tx, ty, tz), d)
    if n is not None:
        return ab_type(d, n)
    raise ValueError(
        f"trace triple ({tx},{ty},{tz}) at diameter {d} matches no row of the classification table"
    )


def scale_to_normalized(
    m: ModuleActionTriple | None,
    nu: GaussianRational,
    nu_star: GaussianRational,
    nu_eps: GaussianRational,
):
    """All four scalar triples (xi, xi*, xi^eps) that normalize a triple with
    the given anticommutator scalars; each is verified on m when provided."""
    nu = GaussianRational.coerce(nu)
    nu_star = GaussianRational.coerce(nu_star)
    nu_eps = GaussianRational.coerce(nu_eps)
    if not (nu and nu_star and nu_eps):
        raise ValueError("normalization requires nonzero nu scalars")
    four = GaussianRational(4)
    xi = (four / (nu_star * nu_eps)).sqrt()
    xi_star = (four / (nu_eps * nu)).sqrt()
    xi_eps = (four / (nu * nu_star)).sqrt()
    if xi is None or xi_star is None or xi_eps is None:
        raise ValueError("normalizing scalars do not lie in Q(i)")
    target = GaussianRational(8) / (nu * nu_star * nu_eps)
    base = (xi, xi_star, xi_eps)
    if xi * xi_star * xi_eps == target:
        signs = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
    else:
        signs = ((-1, 1, 1), (1, -1, 1), (1, 1, -1), (-1, -1, -1))
    solutions = [tuple(v * s for v, s in zip(base, sig)) for sig in signs]
    if m is not None:
        for sol in solutions:
            _verify_normalizing(m, sol)
    return solutions


def _verify_normalizing(m: ModuleActionTriple, scalars) -> None:
    xi, xi_star, xi_eps = scalars
    a = m.x_mat * xi
    a_star = m.y_mat * xi_star
    a_eps = m.z_mat * xi_eps
    checks = (
        (a @ a_star + a_star @ a, a_eps),
        (a_star @ a_eps + a_eps @ a_star, a),
        (a_eps @ a + a @ a_eps, a_star),
    )
    for lhs, rhs in checks:
        if lhs != rhs * 2:
            raise ValueError(
                f"scaling ({xi},{xi_star},{xi_eps}) does not normalize the triple; "
                "were the supplied nu scalars computed from it?"
            )
