"""Uniform 1D main/auxiliary meshes and the discrete averaging and difference operators.

The main mesh carries the evolved unknowns at nodes x_i = -X + i h,
i = 0..N; the auxiliary (half) mesh carries fluxes and regularizers at
x_{i+1/2}.  Fields remember which mesh they live on, so applying an
operator to the wrong kind of field is a type error rather than a
silent off-by-one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import LengthMismatch


@dataclass(frozen=True)
class Mesh:
    """Uniform symmetric mesh on [-X, X] with N cells (N+1 main nodes, N half nodes)."""

    x_half_extent: float
    n_cells: int

    def __post_init__(self):
        if self.x_half_extent <= 0.0:
            raise LengthMismatch("mesh half extent must be positive")
        if self.n_cells < 2:
            raise LengthMismatch("mesh needs at least two cells")

    @property
    def h(self) -> float:
        return 2.0 * self.x_half_extent / self.n_cells

    def main_x(self) -> np.ndarray:
        """Main node coordinates, length N+1."""
        x = self.x_half_extent
        return -x + self.h * np.arange(self.n_cells + 1)

    def half_x(self) -> np.ndarray:
        """Auxiliary node coordinates x_{i+1/2}, length N."""
        x = self.x_half_extent
        return -x + self.h * (np.arange(self.n_cells) + 0.5)


@dataclass(frozen=True)
class NodeField:
    """Values on the main mesh (length N+1)."""

    mesh: Mesh
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        if v.shape != (self.mesh.n_cells + 1,):
            raise LengthMismatch(
                f"node field has {v.shape[0]} entries, mesh wants {self.mesh.n_cells + 1}"
            )

    def _wrap(self, values):
        return NodeField(self.mesh, values)

    def __add__(self, other):
        return self._wrap(self.values + _values_like(self, other))

    def __sub__(self, other):
        return self._wrap(self.values - _values_like(self, other))

    def __mul__(self, other):
        return self._wrap(self.values * _values_like(self, other))

    __rmul__ = __mul__


@dataclass(frozen=True)
class HalfField:
    """Values on the auxiliary mesh (length N)."""

    mesh: Mesh
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        if v.shape != (self.mesh.n_cells,):
            raise LengthMismatch(
                f"half field has {v.shape[0]} entries, mesh wants {self.mesh.n_cells}"
            )

    def _wrap(self, values):
        return HalfField(self.mesh, values)

    def __add__(self, other):
        return self._wrap(self.values + _values_like(self, other))

    def __sub__(self, other):
        return self._wrap(self.values - _values_like(self, other))

    def __mul__(self, other):
        return self._wrap(self.values * _values_like(self, other))

    __rmul__ = __mul__


def _values_like(ref, other):
    if isinstance(other, (int, float)):
        return other
    if type(other) is not type(ref):
        raise LengthMismatch(
            f"cannot combine {type(ref).__name__} with {type(other).__name__}"
        )
    if other.mesh != ref.mesh:
        raise LengthMismatch("fields live on different meshes")
    return other.values


def _require(kind, f):
    if not isinstance(f, kind):
        raise LengthMismatch(f"expected a {kind.__name__}, got {type(f).__name__}")
    return f


def avg(v: NodeField) -> HalfField:
    """[v]_{i+1/2} = (v_i + v_{i+1}) / 2."""
    _require(NodeField, v)
    a = v.values
    return HalfField(v.mesh, 0.5 * (a[:-1] + a[1:]))


def delta(v: NodeField) -> HalfField:
    """delta v_{i+1/2} = (v_{i+1} - v_i) / h."""
    _require(NodeField, v)
    a = v.values
    return HalfField(v.mesh, (a[1:] - a[:-1]) / v.mesh.h)


def avg_star(w: HalfField) -> NodeField:
    """[w]*_i = (w_{i-1/2} + w_{i+1/2}) / 2 at interior nodes; boundary slots stay zero."""
    _require(HalfField, w)
    a = w.values
    out = np.zeros(w.mesh.n_cells + 1)
    out[1:-1] = 0.5 * (a[:-1] + a[1:])
    return NodeField(w.mesh, out)


def delta_star(w: HalfField) -> NodeField:
    """delta* w_i = (w_{i+1/2} - w_{i-1/2}) / h at interior nodes; boundary slots stay zero."""
    _require(HalfField, w)
    a = w.values
    out = np.zeros(w.mesh.n_cells + 1)
    out[1:-1] = (a[1:] - a[:-1]) / w.mesh.h
    return NodeField(w.mesh, out)


def fill_copy_boundary(v: NodeField) -> NodeField:
    """Copy boundary closure: v_0 := v_1 and v_N := v_{N-1}."""
    _require(NodeField, v)
    out = v.values.copy()
    out[0] = out[1]
    out[-1] = out[-2]
    return NodeField(v.mesh, out)
