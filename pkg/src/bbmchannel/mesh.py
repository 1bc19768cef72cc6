"""Uniform 1-D mesh, P1 finite-element assembly, and weighted norms.

All nodal fields carry homogeneous Dirichlet data at both channel ends.  The
assembled mass/stiffness matrices act on the interior degrees of freedom only
(constrained rows and columns are eliminated, not penalized), and every field
constructor pins the two boundary values to zero exactly.

Quadrature is a fixed 3-point Gauss--Legendre rule per element, used uniformly
for all variable-coefficient and nonlinear terms so that forward and adjoint
assembly see bit-identical integrals.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import solve_banded


class InvalidMeshError(ValueError):
    """Raised for meshes that violate the a < b, n_nodes >= 3 contract."""


# 3-point Gauss-Legendre rule on the reference element [-1, 1].
GAUSS_NODES = np.array([-np.sqrt(0.6), 0.0, np.sqrt(0.6)])
GAUSS_WEIGHTS = np.array([5.0, 8.0, 5.0]) / 9.0

# P1 shape functions at the reference quadrature nodes.
_SHAPE_LEFT = 0.5 * (1.0 - GAUSS_NODES)
_SHAPE_RIGHT = 0.5 * (1.0 + GAUSS_NODES)


@dataclass(frozen=True)
class Mesh:
    """Uniform partition of the channel [a, b] with P1 nodal basis metadata.

    Node i sits at a + i*(b-a)/(n_nodes-1) exactly; both boundary nodes are
    constrained, leaving n_nodes - 2 interior degrees of freedom.
    """

    a: float
    b: float
    n_nodes: int

    def __post_init__(self):
        if not self.n_nodes >= 3:
            raise InvalidMeshError(f"need n_nodes >= 3, got {self.n_nodes}")
        if not self.a < self.b:
            raise InvalidMeshError(f"need a < b, got a={self.a}, b={self.b}")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.n_nodes - 1)

    @property
    def n_elements(self) -> int:
        return self.n_nodes - 1

    @property
    def n_interior(self) -> int:
        return self.n_nodes - 2

    def nodes(self) -> np.ndarray:
        i = np.arange(self.n_nodes)
        return self.a + i * (self.b - self.a) / (self.n_nodes - 1)

    def quad_points(self) -> np.ndarray:
        """Physical Gauss abscissae, shape (n_elements, 3)."""
        left = self.nodes()[:-1]
        return left[:, None] + 0.5 * (GAUSS_NODES + 1.0) * self.h

    def quad_weights(self) -> np.ndarray:
        """Quadrature weights per point (Jacobian h/2 included), shape (3,)."""
        return GAUSS_WEIGHTS * (0.5 * self.h)

    def interpolate_quad(self, f: np.ndarray) -> np.ndarray:
        """P1 interpolant of nodal values f at the Gauss points, (n_el, 3)."""
        f = np.asarray(f)
        return f[:-1, None] * _SHAPE_LEFT + f[1:, None] * _SHAPE_RIGHT


@dataclass
class StatePair:
    """Nodal wave elevation N and velocity V at one time level.

    Both fields have length n_nodes and exactly zero boundary values; the
    constructor pins the end entries so the Dirichlet invariant can never be
    violated by accumulated roundoff.
    """

    N: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        self.N = np.array(self.N, dtype=float)
        self.V = np.array(self.V, dtype=float)
        if self.N.ndim != 1 or self.N.shape != self.V.shape:
            raise ValueError(
                f"N and V must be 1-D vectors of equal length, got "
                f"{self.N.shape} and {self.V.shape}"
            )
        for f in (self.N, self.V):
            f[0] = 0.0
            f[-1] = 0.0

    @classmethod
    def zeros(cls, n_nodes: int) -> "StatePair":
        return cls(np.zeros(n_nodes), np.zeros(n_nodes))

    @property
    def n_nodes(self) -> int:
        return self.N.shape[0]

    def copy(self) -> "StatePair":
        return StatePair(self.N.copy(), self.V.copy())


class BandedMatrix:
    """Square banded matrix stored by diagonals (LAPACK/solve_banded layout).

    entry(i, j) lives at data[half_bandwidth + i - j, j] for |i - j| within
    the band; everything outside is structurally zero.
    """

    def __init__(self, order: int, half_bandwidth: int, data: np.ndarray = None):
        self.order = order
        self.half_bandwidth = half_bandwidth
        if data is None:
            data = np.zeros((2 * half_bandwidth + 1, order))
        if data.shape != (2 * half_bandwidth + 1, order):
            raise ValueError(f"band storage must be {(2 * half_bandwidth + 1, order)}")
        self.data = data

    @classmethod
    def tridiagonal(cls, lower, diag, upper) -> "BandedMatrix":
        diag = np.asarray(diag, dtype=float)
        n = diag.shape[0]
        out = cls(n, 1)
        out.data[1, :] = diag
        if n > 1:
            out.data[0, 1:] = upper
            out.data[2, :-1] = lower
        return out

    def entry(self, i: int, j: int) -> float:
        if abs(i - j) > self.half_bandwidth:
            return 0.0
        return self.data[self.half_bandwidth + i - j, j]

    def diagonal(self, offset: int = 0) -> np.ndarray:
        """The j - i = offset diagonal as a contiguous vector."""
        p = self.half_bandwidth
        if abs(offset) > p:
            return np.zeros(0)
        row = self.data[p - offset]
        return row[offset:] if offset > 0 else row[: self.order + offset]

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        y = np.zeros_like(x, dtype=float)
        n, p = self.order, self.half_bandwidth
        for k in range(-p, p + 1):
            i0, i1 = max(0, k), min(n, n + k)
            if i0 < i1:
                y[i0:i1] += self.data[p + k, i0 - k : i1 - k] * x[i0 - k : i1 - k]
        return y

    def __matmul__(self, x):
        return self.matvec(x)

    def __add__(self, other: "BandedMatrix") -> "BandedMatrix":
        if (other.order, other.half_bandwidth) != (self.order, self.half_bandwidth):
            raise ValueError("shape/bandwidth mismatch")
        return BandedMatrix(self.order, self.half_bandwidth, self.data + other.data)

    def scaled(self, c: float) -> "BandedMatrix":
        return BandedMatrix(self.order, self.half_bandwidth, c * self.data)

    def transpose(self) -> "BandedMatrix":
        n, p = self.order, self.half_bandwidth
        out = BandedMatrix(n, p)
        for k in range(-p, p + 1):
            i0, i1 = max(0, k), min(n, n + k)
            if i0 < i1:
                # A^T[j, i] = A[i, j] for the i - j = k diagonal
                out.data[p - k, i0:i1] = self.data[p + k, i0 - k : i1 - k]
        return out

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        p = self.half_bandwidth
        return solve_banded((p, p), self.data, rhs, check_finite=False)

    def toarray(self) -> np.ndarray:
        n, p = self.order, self.half_bandwidth
        dense = np.zeros((n, n))
        for k in range(-p, p + 1):
            i0, i1 = max(0, k), min(n, n + k)
            if i0 < i1:
                dense[np.arange(i0, i1), np.arange(i0, i1) - k] = self.data[
                    p + k, i0 - k : i1 - k
                ]
        return dense

    def symmetry_error(self) -> float:
        dense = self.toarray()
        return float(np.max(np.abs(dense - dense.T), initial=0.0))

    def copy(self) -> "BandedMatrix":
        return BandedMatrix(self.order, self.half_bandwidth, self.data.copy())


def assemble_mass(mesh: Mesh) -> BandedMatrix:
    """Tridiagonal P1 mass matrix on the interior DOFs (diag 2h/3, off h/6)."""
    m, h = mesh.n_interior, mesh.h
    return BandedMatrix.tridiagonal(
        np.full(m - 1, h / 6.0), np.full(m, 2.0 * h / 3.0), np.full(m - 1, h / 6.0)
    )


def assemble_stiffness(mesh: Mesh) -> BandedMatrix:
    """Tridiagonal P1 stiffness matrix on the interior DOFs (unscaled).

    The beta/6 dispersion factor is applied by callers.
    """
    m, h = mesh.n_interior, mesh.h
    return BandedMatrix.tridiagonal(
        np.full(m - 1, -1.0 / h), np.full(m, 2.0 / h), np.full(m - 1, -1.0 / h)
    )


@lru_cache(maxsize=32)
def _mass_cached(mesh: Mesh) -> BandedMatrix:
    return assemble_mass(mesh)


@lru_cache(maxsize=32)
def _stiffness_cached(mesh: Mesh) -> BandedMatrix:
    return assemble_stiffness(mesh)


def _integrand_quad_values(mesh: Mesh, integrand) -> np.ndarray:
    """Normalize an integrand to its values at the Gauss points, (n_el, 3)."""
    if callable(integrand):
        return np.asarray(integrand(mesh.quad_points()), dtype=float)
    vals = np.asarray(integrand, dtype=float)
    if vals.shape == (mesh.n_elements, 3):
        return vals
    if vals.shape == (mesh.n_nodes,):
        return mesh.interpolate_quad(vals)
    raise ValueError(
        f"integrand must be callable, ({mesh.n_elements}, 3) quadrature values, "
        f"or ({mesh.n_nodes},) nodal values; got shape {vals.shape}"
    )


def assemble_flux_load(mesh: Mesh, integrand) -> np.ndarray:
    """Load vector F_i = integral of integrand(xi) * phi_i'(xi), interior DOFs.

    phi_i' is +-1/h on the two elements adjacent to node i, so a globally
    constant integrand telescopes to the zero vector.
    """
    vals = _integrand_quad_values(mesh, integrand)
    elem = vals @ mesh.quad_weights()
    return (elem[:-1] - elem[1:]) / mesh.h


def assemble_flux_jacobian(mesh: Mesh, weight) -> BandedMatrix:
    """Tridiagonal B with B_ij = integral of weight(xi) * phi_j(xi) * phi_i'(xi).

    This is the Jacobian of assemble_flux_load with respect to a nodal factor
    inside the integrand, restricted to the interior DOFs.
    """
    vals = _integrand_quad_values(mesh, weight)
    w = mesh.quad_weights()
    h, n = mesh.h, mesh.n_nodes
    p_left = vals @ (w * _SHAPE_LEFT)
    p_right = vals @ (w * _SHAPE_RIGHT)

    main = np.zeros(n)
    main[:-1] -= p_left / h
    main[1:] += p_right / h
    upper = -p_right / h  # (e, e+1) couplings
    lower = p_left / h  # (e+1, e) couplings
    return BandedMatrix.tridiagonal(lower[1:-1], main[1:-1], upper[1:-1])


def _check_field(mesh: Mesh, f: np.ndarray, name: str = "field") -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape != (mesh.n_nodes,):
        raise ValueError(f"{name} must have length {mesh.n_nodes}, got {f.shape}")
    return f


def l2_inner(mesh: Mesh, f: np.ndarray, g: np.ndarray) -> float:
    """Mass-matrix-weighted inner product of two Dirichlet nodal fields."""
    f = _check_field(mesh, f, "f")
    g = _check_field(mesh, g, "g")
    fi, gi = f[1:-1], g[1:-1]
    return float(fi @ _mass_cached(mesh).matvec(gi))


def l2_norm(mesh: Mesh, f: np.ndarray) -> float:
    return float(np.sqrt(max(l2_inner(mesh, f, f), 0.0)))


def h1_norm(mesh: Mesh, f: np.ndarray, beta: float) -> float:
    """Dispersion-weighted H1 norm (f' M f + (beta/6) f' S f)^(1/2)."""
    if not beta > 0.0:
        raise ValueError(f"beta must be positive, got {beta}")
    f = _check_field(mesh, f)
    fi = f[1:-1]
    quad = fi @ _mass_cached(mesh).matvec(fi)
    quad += (beta / 6.0) * (fi @ _stiffness_cached(mesh).matvec(fi))
    return float(np.sqrt(max(quad, 0.0)))


def gaussian_field(
    mesh: Mesh, center: float, width: float = 1.0, amplitude: float = 1.0
) -> np.ndarray:
    """Nodal samples of amplitude * exp(-((xi - center)/width)^2)."""
    x = mesh.nodes()
    return amplitude * np.exp(-(((x - center) / width) ** 2))
