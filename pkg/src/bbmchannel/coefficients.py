"""Variable depth coefficient c(xi) in its supported representations.

Profiles are immutable, pure, and vectorized: calling one with an array of
abscissae returns the sampled values.  ``sample_quadrature`` caches c and c^2
at every Gauss point of a mesh so forward and adjoint assembly see
bit-identical coefficients.
"""

import csv
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .mesh import Mesh


class InvalidProfileError(ValueError):
    """Raised for empty or non-monotone coefficient data."""


@dataclass(frozen=True)
class ConstantProfile:
    value: float = 1.0
    kind = "constant"

    def __call__(self, xi):
        return np.full_like(np.asarray(xi, dtype=float), self.value)


@dataclass(frozen=True)
class GaussSineProfile:
    """Smooth oscillatory depth with a localized Gaussian bump.

    c(xi) = base + amp_sin * sin(wavenumber * xi)
                 + amp_gauss * exp(-((xi - center)/width)^2)

    The defaults give the channel with a sinusoidal bottom of period 10 and a
    bump at xi = 8 used throughout the bundled experiment configs.
    """

    base: float = 1.0
    amp_sin: float = 0.3
    wavenumber: float = math.pi / 5.0
    amp_gauss: float = 0.6
    center: float = 8.0
    width: float = 1.0
    kind = "gauss_sine"

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        return (
            self.base
            + self.amp_sin * np.sin(self.wavenumber * xi)
            + self.amp_gauss * np.exp(-(((xi - self.center) / self.width) ** 2))
        )


@dataclass(frozen=True)
class StepProfile:
    """Piecewise-constant depth simulating abrupt bathymetry changes.

    ``pieces`` is an ordered tuple of (upper_edge, value) pairs: value applies
    on the right-closed interval (previous_edge, upper_edge].  Abscissae above
    the last edge clamp to the last value, so an inf final edge is idiomatic.
    """

    pieces: tuple
    kind = "step"

    def __post_init__(self):
        if len(self.pieces) == 0:
            raise InvalidProfileError("step profile needs at least one piece")
        edges = [e for e, _ in self.pieces]
        if any(e2 <= e1 for e1, e2 in zip(edges, edges[1:])):
            raise InvalidProfileError(f"breakpoints must strictly increase: {edges}")
        if any(not np.isfinite(v) for _, v in self.pieces):
            raise InvalidProfileError("step values must be finite")

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        edges = np.array([e for e, _ in self.pieces])
        values = np.array([v for _, v in self.pieces])
        idx = np.minimum(np.searchsorted(edges, xi, side="left"), len(values) - 1)
        return values[idx]


@dataclass(frozen=True, eq=False)
class TabulatedProfile:
    """Piecewise-linear interpolant of sorted (xi, c) samples.

    Evaluation clamps to the nearest sample outside the tabulated range.
    """

    xi: np.ndarray
    values: np.ndarray
    kind = "tabulated"

    def __post_init__(self):
        object.__setattr__(self, "xi", np.asarray(self.xi, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.xi.size == 0:
            raise InvalidProfileError("tabulated profile is empty")
        if self.xi.shape != self.values.shape or self.xi.ndim != 1:
            raise InvalidProfileError("xi and values must be matching 1-D arrays")
        if np.any(np.diff(self.xi) <= 0):
            raise InvalidProfileError("tabulated abscissae must strictly increase")
        if not np.all(np.isfinite(self.values)):
            raise InvalidProfileError("tabulated values must be finite")

    def __call__(self, xi):
        return np.interp(np.asarray(xi, dtype=float), self.xi, self.values)


CoefficientProfile = Union[ConstantProfile, GaussSineProfile, StepProfile, TabulatedProfile]


def evaluate(profile: CoefficientProfile, xi):
    """Evaluate c at xi (scalar or array); pure and deterministic."""
    out = profile(xi)
    return float(out) if np.isscalar(xi) else out


def reference_gauss_sine() -> GaussSineProfile:
    """The smooth oscillatory-Gaussian depth of the bundled experiments."""
    return GaussSineProfile()


def reference_step() -> StepProfile:
    """The 7-plateau layered-medium depth of the bundled experiments."""
    return StepProfile(
        pieces=(
            (20.0, 0.8),
            (22.0, 1.5),
            (27.0, 2.0),
            (28.0, 1.8),
            (30.0, 1.3),
            (32.0, 1.6),
            (math.inf, 0.9),
        )
    )


def load_tabulated_csv(path) -> TabulatedProfile:
    """Read a two-column (xi, c) CSV with a header row."""
    xi, values = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InvalidProfileError(f"{path}: empty coefficient CSV")
        for row in reader:
            if not row:
                continue
            xi.append(float(row[0]))
            values.append(float(row[1]))
    if not xi:
        raise InvalidProfileError(f"{path}: no coefficient samples")
    return TabulatedProfile(np.array(xi), np.array(values))


@dataclass(frozen=True, eq=False)
class QuadratureSamples:
    """c and c^2 cached at every Gauss point of a mesh, shape (n_el, 3)."""

    c: np.ndarray
    c_sq: np.ndarray

    @property
    def min_c(self) -> float:
        return float(np.min(self.c))


def sample_quadrature(profile: CoefficientProfile, mesh: Mesh) -> QuadratureSamples:
    """Sample the profile at the mesh's Gauss points.

    Step discontinuities are not snapped to element boundaries; quadrature
    simply samples the discontinuous function (local O(h) consistency error
    accepted).  Tabulated profiles must span the mesh interval.
    """
    if isinstance(profile, TabulatedProfile):
        if profile.xi[0] > mesh.a or profile.xi[-1] < mesh.b:
            raise InvalidProfileError(
                f"tabulated range [{profile.xi[0]}, {profile.xi[-1]}] does not "
                f"span the mesh interval [{mesh.a}, {mesh.b}]"
            )
    c = np.asarray(profile(mesh.quad_points()), dtype=float)
    if not np.all(np.isfinite(c)):
        raise InvalidProfileError("coefficient evaluated to non-finite values")
    return QuadratureSamples(c=c, c_sq=c * c)
