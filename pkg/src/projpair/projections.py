# src/projpair/projections.py
"""Construction, validation, and decomposition of orthogonal projection pairs."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import adjoint, as_matrix, hermitian_eigen, spectral_norm

# Constructed projections must satisfy ||P^2 - P|| and ||P - P*|| below this.
PROJ_TOL = 1e-10
# f-eigenvalues inside this band belong to neither the range nor the kernel;
# such an f is not numerically a projection and is rejected, not rounded.
SPLIT_BAND = (0.25, 0.75)


class DecompositionError(RuntimeError):
    """Block decomposition failed; carries the offending residuals when known."""

    def __init__(self, message: str, residuals: dict | None = None):
        super().__init__(message)
        self.residuals = residuals or {}


@dataclass(frozen=True)
class Provenance:
    """How a pair was built: random | angles | reference2x2 | universal_grid | file."""

    tag: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ProjectionPair:
    """Two projections of equal dimension plus construction metadata."""

    f: np.ndarray
    g: np.ndarray
    dim: int
    provenance: Provenance

    def __post_init__(self):
        f = as_matrix(self.f)
        g = as_matrix(self.g)
        if f.shape[0] != self.dim or g.shape[0] != self.dim:
            raise ValueError(
                f"pair members must be {self.dim}x{self.dim}, "
                f"got {f.shape} and {g.shape}"
            )
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)


@dataclass(frozen=True)
class ValidationReport:
    """Residuals of the two defining projection properties plus the verdict."""

    idempotency_residual: float  # ||P^2 - P||
    hermiticity_residual: float  # ||P - P*||
    tol: float
    ok: bool


def validate_projection(P: np.ndarray, tol: float = PROJ_TOL) -> ValidationReport:
    """Check P = P* = P^2 within tol; reports residuals, never raises."""
    P = as_matrix(P)
    idem = spectral_norm(P @ P - P)
    herm = spectral_norm(P - adjoint(P))
    return ValidationReport(idem, herm, tol, idem <= tol and herm <= tol)


def _box_muller_normals(rng: np.random.Generator, count: int) -> np.ndarray:
    # Box-Muller on the generator's uniform stream; 1 - u keeps the log finite.
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    z = np.concatenate([radius * np.cos(2.0 * np.pi * u2), radius * np.sin(2.0 * np.pi * u2)])
    return z[:count]


def random_projection(dim: int, rank: int, seed: int) -> np.ndarray:
    """Random orthogonal projection of the given rank, reproducible from seed.

    A dim x rank complex Gaussian matrix (Box-Muller samples from a seeded
    PCG64 stream, real and imaginary parts independent) is orthonormalized by
    Householder QR; the projection onto its column space is Q Q*. Identical
    (dim, rank, seed) yields bit-identical output.
    """
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    if not 0 <= rank <= dim:
        raise ValueError(f"rank must lie in [0, {dim}], got {rank}")
    if rank == 0:
        return np.zeros((dim, dim), dtype=np.complex128)
    if rank == dim:
        return np.eye(dim, dtype=np.complex128)
    rng = np.random.Generator(np.random.PCG64(seed))
    re = _box_muller_normals(rng, dim * rank)
    im = _box_muller_normals(rng, dim * rank)
    gauss = (re + 1j * im).reshape(dim, rank)
    q, _ = np.linalg.qr(gauss)
    proj = q @ adjoint(q)
    return (proj + adjoint(proj)) / 2.0


def random_pair(dim: int, seed: int) -> ProjectionPair:
    """Random pair with independent ranks drawn uniformly from [1, dim-1].

    All randomness (both ranks, both member seeds) derives from the single
    seed, so a pair is reproducible from (dim, seed) alone.
    """
    if dim < 2:
        raise ValueError(f"random pairs need dim >= 2, got {dim}")
    rng = np.random.Generator(np.random.PCG64(seed))
    rank_f = int(rng.integers(1, dim))
    rank_g = int(rng.integers(1, dim))
    seed_f = int(rng.integers(0, 2**63))
    seed_g = int(rng.integers(0, 2**63))
    f = random_projection(dim, rank_f, seed_f)
    g = random_projection(dim, rank_g, seed_g)
    prov = Provenance("random", {"seed": seed, "rank_f": rank_f, "rank_g": rank_g})
    return ProjectionPair(f, g, dim, prov)


@dataclass(frozen=True)
class AngleSpec:
    """Principal-angle recipe for a pair: one 2x2 cell per angle in [0, pi/2],
    plus optional dimensions where exactly one of the projections acts."""

    angles: tuple[float, ...]
    extra_f_dims: int = 0
    extra_g_dims: int = 0

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(float(t) for t in self.angles))
        for theta in self.angles:
            if not 0.0 <= theta <= math.pi / 2:
                raise ValueError(f"angle {theta} outside [0, pi/2]")
        if self.extra_f_dims < 0 or self.extra_g_dims < 0:
            raise ValueError("extra dimensions must be nonnegative")
        if not self.angles and self.extra_f_dims + self.extra_g_dims == 0:
            raise ValueError("empty angle list requires positive extra dimensions")

    @property
    def dim(self) -> int:
        return 2 * len(self.angles) + self.extra_f_dims + self.extra_g_dims


def _angle_cell(theta: float) -> tuple[np.ndarray, np.ndarray]:
    c, s = math.cos(theta), math.sin(theta)
    f = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
    g = np.array([[c * c, c * s], [c * s, s * s]], dtype=np.complex128)
    return f, g


def pair_from_angles(spec: AngleSpec) -> ProjectionPair:
    """Canonical pair realizing the given principal angles.

    Each angle theta contributes a 2x2 diagonal cell where f projects onto the
    first coordinate and g onto (cos theta, sin theta); ||fg|| over the direct
    sum is max cos theta. Extra dimensions add coordinates where only f (or
    only g) acts.
    """
    dim = spec.dim
    f = np.zeros((dim, dim), dtype=np.complex128)
    g = np.zeros((dim, dim), dtype=np.complex128)
    off = 0
    for theta in spec.angles:
        cf, cg = _angle_cell(theta)
        f[off : off + 2, off : off + 2] = cf
        g[off : off + 2, off : off + 2] = cg
        off += 2
    for _ in range(spec.extra_f_dims):
        f[off, off] = 1.0
        off += 1
    for _ in range(spec.extra_g_dims):
        g[off, off] = 1.0
        off += 1
    prov = Provenance(
        "angles",
        {
            "angles": list(spec.angles),
            "extra_f_dims": spec.extra_f_dims,
            "extra_g_dims": spec.extra_g_dims,
        },
    )
    return ProjectionPair(f, g, dim, prov)


def reference_2x2_pair() -> ProjectionPair:
    """The canonical non-commuting 2x2 pair: f = diag(1, 0), g = (1/2) ones.

    Its product norm is 1/sqrt(2) and its commutator norm 1/2, which makes it
    the standing fixture for every identity in the package.
    """
    f = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
    g = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=np.complex128)
    return ProjectionPair(f, g, 2, Provenance("reference2x2"))


@dataclass(frozen=True)
class HalmosBlocks:
    """Blocks of g in an orthonormal basis whose first r columns span range(f).

    g splits as [[D, V], [V*, Dprime]] with D of size r x r, V of size
    r x (dim - r), and Dprime of size (dim - r) x (dim - r); projectionhood of
    g forces D - D^2 = V V*, D V + V Dprime = V, and Dprime - Dprime^2 = V* V.
    """

    D: np.ndarray
    Dprime: np.ndarray
    V: np.ndarray
    basis: np.ndarray


def block_relation_residuals(blocks: HalmosBlocks) -> dict[str, float]:
    """Residuals of the three relations projectionhood of g imposes on the blocks."""
    D, V, Dp = blocks.D, blocks.V, blocks.Dprime
    return {
        "range_block": spectral_norm(D - D @ D - V @ adjoint(V)),
        "mixed_block": spectral_norm(D @ V + V @ Dp - V),
        "kernel_block": spectral_norm(Dp - Dp @ Dp - adjoint(V) @ V),
    }


def halmos_decompose(pair: ProjectionPair, tol: float = 1e-9) -> HalmosBlocks:
    """Split g into blocks relative to range(f) + its orthogonal complement.

    The basis comes from the eigendecomposition of f: eigenvalues above 0.5
    classify range, below 0.25 kernel; anything in between means f is not
    numerically a projection and is rejected. The three block relations are
    verified along with ||fg||^2 = ||D|| before returning.
    """
    eig = hermitian_eigen(pair.f)
    w = eig.eigenvalues
    bad = [float(x) for x in w if SPLIT_BAND[0] <= x <= SPLIT_BAND[1]]
    if bad:
        raise DecompositionError(
            f"f has eigenvalues {bad} inside {list(SPLIT_BAND)}; not a projection"
        )
    r = int(np.sum(w > 0.5))
    basis = eig.eigenvectors  # descending order puts range(f) vectors first
    g_in_basis = adjoint(basis) @ pair.g @ basis
    blocks = HalmosBlocks(g_in_basis[:r, :r], g_in_basis[r:, r:], g_in_basis[:r, r:], basis)
    residuals = block_relation_residuals(blocks)
    residuals["norm_identity"] = abs(
        spectral_norm(pair.f @ pair.g) ** 2 - spectral_norm(blocks.D)
    )
    worst = max(residuals.values())
    if worst > tol:
        raise DecompositionError(
            f"block relations violated beyond tol={tol:.3e}: {residuals}", residuals
        )
    return blocks


@dataclass(frozen=True)
class UniversalPairApprox:
    """Direct sum of 2x2 principal-angle cells approximating the extremal pair
    whose product norm is 1 while its commutator norm stays 1/2.

    Norm queries run blockwise (the norm of a direct sum is the max over
    blocks), so large grids never materialize a dense matrix.
    """

    angles: tuple[float, ...]
    grid_size: int

    def _stacks(self) -> tuple[np.ndarray, np.ndarray]:
        k = len(self.angles)
        t = np.asarray(self.angles)
        c, s = np.cos(t), np.sin(t)
        f = np.zeros((k, 2, 2), dtype=np.complex128)
        f[:, 0, 0] = 1.0
        g = np.empty((k, 2, 2), dtype=np.complex128)
        g[:, 0, 0] = c * c
        g[:, 0, 1] = c * s
        g[:, 1, 0] = c * s
        g[:, 1, 1] = s * s
        return f, g

    @staticmethod
    def _stack_norm(m: np.ndarray) -> float:
        gram = np.matmul(np.conj(np.swapaxes(m, -1, -2)), m)
        w = np.linalg.eigvalsh(gram)
        return float(np.sqrt(max(float(np.max(w)), 0.0)))

    def norm_product(self) -> float:
        f, g = self._stacks()
        return self._stack_norm(np.matmul(f, g))

    def norm_commutator(self) -> float:
        f, g = self._stacks()
        return self._stack_norm(np.matmul(f, g) - np.matmul(g, f))

    def norm_anticommutator(self) -> float:
        f, g = self._stacks()
        return self._stack_norm(np.matmul(f, g) + np.matmul(g, f))

    def anticommutator_residual(self) -> float:
        """|  ||pq+qp|| - (||pq|| + ||pq||^2)  | for the grid pair."""
        a = self.norm_product()
        return abs(self.norm_anticommutator() - (a + a * a))

    @property
    def dim(self) -> int:
        return 2 * len(self.angles)

    def materialize(self) -> ProjectionPair:
        """Dense realization; intended for modest grids (cross-checks, export)."""
        spec = AngleSpec(self.angles)
        pair = pair_from_angles(spec)
        prov = Provenance(
            "universal_grid", {"grid_size": self.grid_size, "cells": len(self.angles)}
        )
        return ProjectionPair(pair.f, pair.g, pair.dim, prov)


def universal_pair_approx(grid_size: int) -> UniversalPairApprox:
    """Angle-grid approximant theta_k = (k/(K+1)) * pi/2, k = 1..K.

    pi/4 is inserted when the grid misses it (even K), pinning the commutator
    norm at exactly 1/2; as K grows the product norm climbs to 1.
    """
    if grid_size < 1:
        raise ValueError(f"grid size must be >= 1, got {grid_size}")
    k = grid_size
    angles = [(i / (k + 1)) * (math.pi / 2) for i in range(1, k + 1)]
    quarter = math.pi / 4
    if quarter not in angles:
        angles.append(quarter)
        angles.sort()
    return UniversalPairApprox(tuple(angles), k)


# --- pair file format -------------------------------------------------------
#
# {"dim": n, "f": [[re, im], ...], "g": [[re, im], ...]}
# with each matrix a row-major flat list of dim^2 [re, im] entries.


def matrix_to_pairs(A: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in A.ravel(order="C")]


def _pairs_to_matrix(entries, dim: int, name: str) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise ValueError(f'"{name}" must be a flat list of {dim * dim} [re, im] pairs')
    values = np.empty(dim * dim, dtype=np.complex128)
    for i, entry in enumerate(entries):
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ValueError(f'"{name}"[{i}] is not an [re, im] pair')
        re, im = entry
        if not (isinstance(re, (int, float)) and isinstance(im, (int, float))):
            raise ValueError(f'"{name}"[{i}] has non-numeric parts')
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError(f'"{name}"[{i}] has non-finite parts')
        values[i] = complex(re, im)
    return values.reshape(dim, dim)


def save_pair_json(pair: ProjectionPair, path) -> None:
    """Write a pair to the shared JSON matrix format."""
    payload = {
        "dim": pair.dim,
        "f": matrix_to_pairs(pair.f),
        "g": matrix_to_pairs(pair.g),
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def load_pair_json(path) -> ProjectionPair:
    """Read a pair from the shared JSON matrix format, rejecting malformed or
    non-finite input. Projectionhood is the caller's check, not the reader's."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError("pair file must contain a JSON object")
    dim = raw.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise ValueError('"dim" must be a positive integer')
    f = _pairs_to_matrix(raw.get("f"), dim, "f")
    g = _pairs_to_matrix(raw.get("g"), dim, "g")
    return ProjectionPair(f, g, dim, Provenance("file", {"path": str(path)}))
