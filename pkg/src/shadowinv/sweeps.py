"""Grid sweeps that regenerate the figure data as plain rows."""

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .povms import bloch_projector, canonical_estimators, equatorial_projector
from .variance import OptimizerOptions, coefficients_from_estimators, optimize_shadow_norm, shadow_norm

THREADS_ENV = "SHADOWINV_THREADS"


def worker_count():
    raw = os.environ.get(THREADS_ENV)
    cpus = os.cpu_count() or 1
    if raw is None:
        return cpus
    return max(1, min(int(raw), cpus))


def _ordered_map(func, items):
    # results come back in input order whatever the execution order
    workers = worker_count()
    if workers <= 1 or len(items) < 2 * workers:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (8 * workers))))


class _PointTask:
    def __init__(self, povm, opts, reference):
        self.povm = povm
        self.opts = opts
        self.reference = reference

    def __call__(self, A):
        res = optimize_shadow_norm(A, self.povm.dual, self.povm, self.opts)
        if self.reference is not None:
            baseline = shadow_norm(coefficients_from_estimators(A, self.reference), self.povm)
        else:
            baseline = res.norm_standard
        return baseline, res


def sphere_grid(n_theta=61, n_phi=61):
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    return [(t, p) for t in thetas for p in phis]


def sweep_sphere(povm, n_theta=61, n_phi=61, opts=None, builtin=None):
    """Baseline and optimised norms of Bloch projectors over a ``theta x phi`` grid.

    ``theta`` spans ``[0, pi]`` inclusive and ``phi`` spans ``[0, 2 pi)``.
    The baseline uses the canonical estimators when ``builtin`` names a
    built-in POVM, and ``h = 0`` otherwise.
    """
    opts = OptimizerOptions() if opts is None else opts
    reference = canonical_estimators(builtin) if builtin else None
    grid = sphere_grid(n_theta, n_phi)
    task = _PointTask(povm, opts, reference)
    results = _ordered_map(task, [bloch_projector(t, p) for t, p in grid])
    rows = []
    for (theta, phi), (baseline, res) in zip(grid, results):
        row = {"theta": theta, "phi": phi, "norm_canonical": baseline, "norm_opt": res.norm_opt}
        for j, h in enumerate(res.h_opt):
            row[f"h{j}_re"] = h.real
            row[f"h{j}_im"] = h.imag
        rows.append(row)
    return rows


def sweep_equator(povm, n_points=181, opts=None):
    """Optimised norm of equatorial projectors for ``phi`` in ``[0, pi]``.

    ``p`` is the homogeneous shift applied to the first outcome, i.e. the
    coefficient of the null vector in the ``(p, p, -p, -p)`` convention of
    the planar POVM.
    """
    opts = OptimizerOptions() if opts is None else opts
    phis = np.linspace(0.0, np.pi, n_points)
    task = _PointTask(povm, opts, None)
    results = _ordered_map(task, [equatorial_projector(p) for p in phis])
    rows = []
    for phi, (_, res) in zip(phis, results):
        shift = povm.dual.null_basis @ res.h_opt if res.h_opt.size else np.zeros(1)
        rows.append(
            {"phi": phi, "norm_opt": res.norm_opt, "p_r_opt": shift[0].real, "p_i_opt": shift[0].imag}
        )
    return rows
