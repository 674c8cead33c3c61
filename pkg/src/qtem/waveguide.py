"""Cutoff wavenumbers of hollow rectangular waveguides.

TM modes solve the scalar Helmholtz problem with the field eliminated on the
wall; TE modes use the natural (Neumann) condition and drop the constant
mode.  The eigenvalue of ``K x = k_c^2 M x`` is the squared cutoff wavenumber.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .assembly import assemble, build_dof_map
from .eigen import solve_generalized
from .elemental import MatrixKind
from .mesh import gen_rect_mesh

__all__ = [
    "BudgetExceeded",
    "MAX_DOFS",
    "ModeRow",
    "analytic_cutoffs",
    "cutoff_modes",
    "ConvergenceRow",
    "convergence_study",
]

#: dense-solver budget
MAX_DOFS = 1200

STIFFNESS = [MatrixKind.stiff_xx, MatrixKind.stiff_yy]


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ModeRow:
    index: int
    k_c: float
    analytic: float
    rel_error: float
    m: int
    n: int


def analytic_cutoffs(width: float, height: float, mode_type: str, count: int):
    """Lowest ``count`` values of pi * sqrt((m/a)^2 + (n/b)^2) with their (m, n).

    TM needs m, n >= 1; TE allows one of them to be zero.  Ties are ordered by
    (m, n).
    """
    lo = 1 if mode_type == "tm" else 0
    top = count + 2
    cands = []
    for m in range(lo, top):
        for n in range(lo, top):
            if m == 0 and n == 0:
                continue
            cands.append((math.pi * math.hypot(m / width, n / height), m, n))
    cands.sort()
    return cands[:count]


def _check_mode_type(mode_type):
    if mode_type not in ("tm", "te"):
        raise ValueError(f"mode type must be 'tm' or 'te', got {mode_type!r}")


def _pencil(width, height, nx, ny, mode_type):
    mesh = gen_rect_mesh(width, height, nx, ny)
    dofs = build_dof_map(mesh, "nodal", dirichlet=(mode_type == "tm"))
    if dofs.n_dofs > MAX_DOFS:
        raise BudgetExceeded(f"{dofs.n_dofs} DOFs exceed the dense-solver budget of {MAX_DOFS}")
    K = assemble(mesh, dofs, STIFFNESS)
    M = assemble(mesh, dofs, MatrixKind.mass_NN)
    return K, M


def cutoff_modes(width: float, height: float, nx: int, ny: int, mode_type: str, n_modes: int) -> list[ModeRow]:
    """Computed and analytic cutoff wavenumbers of the lowest ``n_modes`` modes."""
    _check_mode_type(mode_type)
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    K, M = _pencil(width, height, nx, ny, mode_type)
    skip = 1 if mode_type == "te" else 0
    wanted = n_modes + skip
    if wanted > K.shape[0]:
        raise ValueError(f"mesh has only {K.shape[0]} DOFs, cannot return {n_modes} modes")
    res = solve_generalized(K, M, wanted)
    lam = res.eigenvalues[skip:]
    exact = analytic_cutoffs(width, height, mode_type, n_modes)
    rows = []
    for i, (value, (kc, m, n)) in enumerate(zip(lam, exact), start=1):
        k_c = math.sqrt(max(float(value), 0.0))
        rows.append(ModeRow(i, k_c, kc, (k_c - kc) / kc, m, n))
    return rows


@dataclass(frozen=True)
class ConvergenceRow:
    level: int
    nx: int
    h: float
    eigenvalue: float
    k_c: float
    error: float  # relative error of the eigenvalue
    order: float | None  # log2(previous error / error)


def convergence_study(mode_type: str = "tm", levels: int = 3, base: int = 2) -> list[ConvergenceRow]:
    """Lowest eigenvalue on the unit square under successive mesh halvings."""
    _check_mode_type(mode_type)
    if levels < 3:
        raise ValueError("at least 3 levels are needed")
    skip = 1 if mode_type == "te" else 0
    exact_kc, _, _ = analytic_cutoffs(1.0, 1.0, mode_type, 1)[0]
    exact = exact_kc ** 2
    rows: list[ConvergenceRow] = []
    prev = None
    for level in range(levels):
        nx = base * 2 ** level
        K, M = _pencil(1.0, 1.0, nx, nx, mode_type)
        lam = float(solve_generalized(K, M, 1 + skip).eigenvalues[skip])
        err = abs(lam - exact) / exact
        order = None if prev is None else math.log2(prev / err)
        rows.append(ConvergenceRow(level, nx, 1.0 / nx, lam, math.sqrt(lam), err, order))
        prev = err
    return rows
