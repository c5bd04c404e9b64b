"""Mesh-refinement error study against a pseudo-exact fine-mesh solution.

The reference run uses N_ref cells; each study run uses N dividing
N_ref, so coarse main nodes coincide with every (N_ref/N)-th reference
node and no interpolation is needed.  Errors are scaled mesh L1 norms

    e_N(r) = (1/(2X)) sum_i |r_i - r_ref(x_i)| h

over all N+1 main nodes, and practical orders are
o_N(r) = log2(e_{N/2}(r) / e_N(r)) whenever both errors are available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .cases import CaseSpec, build_initial
from .exceptions import NonNestedMesh
from .grid import Mesh
from .scheme import MeshState, SchemeConfig, run

ERROR_FIELDS = ("rho", "y1", "alpha1", "p", "u", "theta")

#: presentation scalings used in the text table (errors are divided by these)
TABLE_SCALING = {"rho": 1e2, "y1": 1.0, "alpha1": 1.0, "p": 1e7, "u": 1e1, "theta": 1e2}


def field_values(state: MeshState, name: str) -> np.ndarray:
    if name not in ERROR_FIELDS:
        raise KeyError(f"unknown error field {name!r}")
    return np.asarray(getattr(state, name), dtype=np.float64)


def restriction_stride(n_coarse: int, n_ref: int) -> int:
    """Reference-node stride hitting the coarse nodes; requires n_coarse | n_ref."""
    if n_ref % n_coarse != 0:
        raise NonNestedMesh(f"N = {n_coarse} does not divide N_ref = {n_ref}")
    return n_ref // n_coarse


def l1_error(coarse: np.ndarray, reference: np.ndarray) -> float:
    """Scaled L1 norm (1/(2X)) sum |diff| h = mean absolute difference over nodes.

    `reference` must already be restricted to the coarse nodes.
    """
    if coarse.shape != reference.shape:
        raise NonNestedMesh("restricted reference and coarse solution differ in length")
    return float(np.sum(np.abs(coarse - reference)) / (coarse.shape[0] - 1))


@dataclass
class ErrorReport:
    """Errors e_N(r) and orders o_N(r) for each field, one row per N."""

    case_id: str
    n_ref: int
    n_list: list
    errors: dict   # field -> list of e_N, aligned with n_list
    orders: dict   # field -> list of o_N or None

    def to_csv_text(self) -> str:
        cols = ["N"]
        for f in ERROR_FIELDS:
            cols += [f"e_{f}", f"o_{f}"]
        lines = [",".join(cols)]
        for i, n in enumerate(self.n_list):
            row = [str(n)]
            for f in ERROR_FIELDS:
                row.append("%.17g" % self.errors[f][i])
                o = self.orders[f][i]
                row.append("" if o is None else "%.17g" % o)
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def to_table_text(self) -> str:
        """Aligned table with the conventional per-field scalings for visual comparison."""
        header = ["N"]
        for f in ERROR_FIELDS:
            s = TABLE_SCALING[f]
            label = f"e({f})" if s == 1.0 else f"e({f})/{s:.0e}"
            header += [label, f"o({f})"]
        rows = [header]
        for i, n in enumerate(self.n_list):
            row = [str(n)]
            for f in ERROR_FIELDS:
                row.append("%.4E" % (self.errors[f][i] / TABLE_SCALING[f]))
                o = self.orders[f][i]
                row.append("--" if o is None else "%.3f" % o)
            rows.append(row)
        widths = [max(len(r[j]) for r in rows) for j in range(len(header))]
        out = []
        for r in rows:
            out.append("  ".join(val.rjust(w) for val, w in zip(r, widths)))
        return "\n".join(out) + "\n"


def error_study(spec: CaseSpec, n_list: Sequence[int], n_ref: int,
                cfg: Optional[SchemeConfig] = None) -> ErrorReport:
    """Run the case at n_ref and at each N in n_list; report L1 errors and orders."""
    n_list = sorted(int(n) for n in n_list)
    strides = {n: restriction_stride(n, n_ref) for n in n_list}
    if cfg is None:
        cfg = spec.scheme_config()

    def solve(n):
        mesh = Mesh(spec.x_half_extent, n)
        initial = build_initial(spec, mesh)
        return run(initial, cfg, spec.t_fin, diag_stride=0).final

    reference = solve(n_ref)
    errors = {f: [] for f in ERROR_FIELDS}
    for n in n_list:
        final = solve(n)
        stride = strides[n]
        for f in ERROR_FIELDS:
            ref_vals = field_values(reference, f)[::stride]
            errors[f].append(l1_error(field_values(final, f), ref_vals))

    orders = {f: practical_orders(n_list, errors[f]) for f in ERROR_FIELDS}
    return ErrorReport(case_id=spec.case_id, n_ref=n_ref, n_list=list(n_list),
                       errors=errors, orders=orders)


def practical_orders(n_list: Sequence[int], errors: Sequence[float]) -> list:
    """o_N = log2(e_{N/2} / e_N); None where e_{N/2} is absent or either error vanishes."""
    index = {n: i for i, n in enumerate(n_list)}
    out = []
    for i, n in enumerate(n_list):
        half = n // 2
        if n % 2 == 0 and half in index:
            e_half = errors[index[half]]
            e_n = errors[i]
            if e_half > 0.0 and e_n > 0.0:
                out.append(math.log2(e_half / e_n))
                continue
        out.append(None)
    return out
