"""Numerical study of the steering monogamy gap on the pure-state family.

The object of interest is

    f(x, y, z, h) = H_{A->BC} - (H_{A->B} + H_{A->C} + H_{B->C})

evaluated on the family x|000> + y|100> + z|101> + h|110> over the unit
3-sphere octant (all coordinates nonnegative). Monogamy of steering is the
claim f >= 0 everywhere on that domain. This module provides:

* f_pipeline      - per-point evaluation through the generic steering stack
                    (the source of truth),
* schmidt_f_batch - an independent vectorized evaluation route built from
                    analytic marginals (used for bulk sampling/optimization and
                    cross-checked against f_pipeline in the tests),
* fgwv / sign_region - the auxiliary quantities whose four absolute values
                    split the domain into 16 sign regions,
* closed_form_f   - a literal transcription of the published single-expression
                    form of f (unreliable away from special points; kept for
                    cross-validation only),
* boundary_f      - exact closed forms of f restricted to the x=0 / y=0 /
                    z=0 / h=0 faces,
* minimize_f      - multi-start search for constrained critical points
                    (descent for minima plus a projected-gradient-norm phase
                    for saddle/maximum-type stationary points),
* verify_monogamy - quasi-random sphere scan with per-region minima and a
                    PASS/FAIL verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .pauli import PAULI2
from .states import SchmidtParams, density_from_pure, partial_trace, schmidt_state
from .steering import h_one_to_two, h_pair

__all__ = [
    "ALL_SIGN_REGIONS",
    "CriticalPoint",
    "MinimizeConfig",
    "MinimizeResult",
    "VerifyConfig",
    "VerifyReport",
    "f_pipeline",
    "f_components",
    "schmidt_f_batch",
    "fgwv",
    "sign_region",
    "closed_form_f",
    "boundary_f",
    "minimize_f",
    "verify_monogamy",
]

ALL_SIGN_REGIONS = ["".join(s) for s in itertools.product("+-", repeat=4)]

RADICAND_TOL = -1e-12
SIGN_BOUNDARY_TOL = 1e-12
FACE_TOL = 1e-6

_COORDS = ("x", "y", "z", "h")
_PAULI2_REAL = PAULI2.real  # family states are real, so only the real parts couple


# ---------------------------------------------------------------------------
# pipeline and vectorized evaluation


def f_pipeline(p) -> float:
    """Monogamy gap at one parameter point, via the generic steering stack."""
    rho = density_from_pure(schmidt_state(p))
    h_abc = h_one_to_two(rho)
    h_ab = h_pair(partial_trace(rho, ("A", "B")))
    h_ac = h_pair(partial_trace(rho, ("A", "C")))
    h_bc = h_pair(partial_trace(rho, ("B", "C")))
    return h_abc - (h_ab + h_ac + h_bc)


def f_components(p) -> dict:
    """The gap together with its four H ingredients."""
    rho = density_from_pure(schmidt_state(p))
    h_abc = h_one_to_two(rho)
    h_ab = h_pair(partial_trace(rho, ("A", "B")))
    h_ac = h_pair(partial_trace(rho, ("A", "C")))
    h_bc = h_pair(partial_trace(rho, ("B", "C")))
    return {
        "f": h_abc - (h_ab + h_ac + h_bc),
        "h_a_bc": h_abc,
        "h_ab": h_ab,
        "h_ac": h_ac,
        "h_bc": h_bc,
    }


def _pair_block_norms(rho_batch: np.ndarray) -> np.ndarray:
    """Trace norms of pair covariance matrices for a (n, 4, 4) real batch."""
    theta = np.einsum("pij,nji->np", _PAULI2_REAL, rho_batch).reshape(-1, 4, 4)
    cov = theta - theta[:, :, :1] * theta[:, :1, :]
    # row 0 / column 0 vanish identically; the spatial 3x3 block carries the norm
    block = 0.5 * cov[:, 1:, 1:]
    return np.linalg.svd(block, compute_uv=False).sum(axis=1)


def schmidt_f_batch(params: np.ndarray) -> dict:
    """Vectorized monogamy gap over an (n, 4) array of sphere points.

    Independent of the 8x8 pipeline: marginals and pair states are written
    directly in terms of (x, y, z, h), purity deficits use cancellation-free
    product forms, and the cut trace norm uses the closed pure-state form
    sqrt(2q) + q with q = 1 - tr(rho_a^2).
    """
    params = np.atleast_2d(np.asarray(params, dtype=float))
    x, y, z, h = params.T
    x2, y2, z2, h2 = x * x, y * y, z * z, h * h

    q_a = 2.0 * x2 * (z2 + h2)  # 1 - tr(rho_a^2)
    q_b = 2.0 * h2 * (x2 + z2)  # 1 - tr(rho_b^2)
    q_c = 2.0 * z2 * (x2 + h2)  # 1 - tr(rho_c^2)

    h_abc = np.sqrt(2.0 * q_a) + q_a - np.sqrt(q_a * (1.0 + q_a))

    n = params.shape[0]
    rho_ab = np.zeros((n, 4, 4))
    rho_ab[:, 0, 0] = x2
    rho_ab[:, 0, 2] = rho_ab[:, 2, 0] = x * y
    rho_ab[:, 0, 3] = rho_ab[:, 3, 0] = x * h
    rho_ab[:, 2, 2] = y2 + z2
    rho_ab[:, 2, 3] = rho_ab[:, 3, 2] = y * h
    rho_ab[:, 3, 3] = h2

    rho_ac = np.zeros((n, 4, 4))
    rho_ac[:, 0, 0] = x2
    rho_ac[:, 0, 2] = rho_ac[:, 2, 0] = x * y
    rho_ac[:, 0, 3] = rho_ac[:, 3, 0] = x * z
    rho_ac[:, 2, 2] = y2 + h2
    rho_ac[:, 2, 3] = rho_ac[:, 3, 2] = y * z
    rho_ac[:, 3, 3] = z2

    rho_bc = np.zeros((n, 4, 4))
    rho_bc[:, 0, 0] = x2 + y2
    rho_bc[:, 0, 1] = rho_bc[:, 1, 0] = y * z
    rho_bc[:, 0, 2] = rho_bc[:, 2, 0] = y * h
    rho_bc[:, 1, 1] = z2
    rho_bc[:, 1, 2] = rho_bc[:, 2, 1] = z * h
    rho_bc[:, 2, 2] = h2

    norms = _pair_block_norms(np.concatenate([rho_ab, rho_ac, rho_bc]))
    n_ab, n_ac, n_bc = norms[:n], norms[n : 2 * n], norms[2 * n :]

    h_ab = n_ab - np.sqrt((1.0 + q_a) * q_b)
    h_ac = n_ac - np.sqrt((1.0 + q_a) * q_c)
    h_bc = n_bc - np.sqrt((1.0 + q_b) * q_c)

    return {
        "f": h_abc - (h_ab + h_ac + h_bc),
        "h_a_bc": h_abc,
        "h_ab": h_ab,
        "h_ac": h_ac,
        "h_bc": h_bc,
    }


# ---------------------------------------------------------------------------
# sign regions and published closed forms


def _fgwv_arrays(params: np.ndarray):
    params = np.atleast_2d(np.asarray(params, dtype=float))
    x, y, z, h = params.T
    y2 = y * y
    common = 1.0 - 2.0 * y2 + 2.0 * x * x
    f = x * h * common
    w = x * z * common
    g_rad = h * h * (1.0 + 4.0 * y2 * y2 - 4.0 * y2 * (1.0 + 2.0 * x * h + h * h)
                     - 4.0 * h * (x + (z * z - 1.0) * h + h**3))
    v_rad = z * z * (1.0 + 4.0 * y2 * y2 - 4.0 * y2 * (1.0 + 2.0 * x * z + z * z)
                     - 4.0 * z * (x + (h * h - 1.0) * z + z**3))
    defined = (g_rad >= RADICAND_TOL) & (v_rad >= RADICAND_TOL)
    g = x * np.sqrt(np.clip(g_rad, 0.0, None))
    v = x * np.sqrt(np.clip(v_rad, 0.0, None))
    return f, g, w, v, defined


def fgwv(p) -> tuple[float, float, float, float]:
    """Auxiliary quantities (f, g, w, v) behind the four absolute values.

    Radicands are clamped at zero when within rounding of it and reported as
    errors when genuinely negative (the printed expressions leave the real
    domain there).
    """
    f, g, w, v, defined = _fgwv_arrays(SchmidtParams(*p).validate().as_array())
    if not defined[0]:
        raise ValueError(f"negative radicand in auxiliary quantities at {tuple(p)}")
    return float(f[0]), float(g[0]), float(w[0]), float(v[0])


def _region_codes(params: np.ndarray, tol: float = SIGN_BOUNDARY_TOL) -> np.ndarray:
    """Region string per point: one of the 16 sign patterns, 'boundary', or 'undefined'."""
    f, g, w, v, defined = _fgwv_arrays(params)
    quads = np.stack([f + g, f - g, w + v, w - v], axis=1)
    codes = np.full(len(quads), "boundary", dtype=object)
    on_boundary = (np.abs(quads) <= tol).any(axis=1)
    interior = defined & ~on_boundary
    signs = np.where(quads > 0, "+", "-")
    codes[interior] = ["".join(row) for row in signs[interior]]
    codes[~defined] = "undefined"
    return codes


def sign_region(p) -> str:
    """Sign pattern of (f+g, f-g, w+v, w-v), or 'boundary' near a zero."""
    code = _region_codes(SchmidtParams(*p).validate().as_array())[0]
    if code == "undefined":
        raise ValueError(f"negative radicand in auxiliary quantities at {tuple(p)}")
    return str(code)


def closed_form_f(p) -> float:
    """Literal transcription of the published one-line expression for f.

    Reliable only at special points: the terms folding the pair covariance
    blocks into |f+g|, |f-g|, |w+v|, |w-v| underestimate the true block trace
    norms away from those points, so the pipeline value is authoritative
    wherever the two disagree.
    """
    x, y, z, h = SchmidtParams(*p).validate()
    fa, ga, wa, va = fgwv(p)
    s2 = np.sqrt(2.0)
    zh2 = z * z + h * h
    xh2 = x * x + h * h
    xz2 = x * x + z * z
    total = (
        s2 * z * np.sqrt((1.0 + 2.0 * x * x * zh2) * xh2)
        - x * h
        - z * (x + h)
        + s2 * h * np.sqrt((1.0 + 2.0 * x * x * zh2) * xz2)
        + 2.0 * x * np.sqrt(zh2)
        + 2.0 * x * x * zh2
        - z * h * np.sqrt(8.0 * z * h + (-1.0 + 2.0 * y * y + 2.0 * z * h) ** 2)
        + s2 * z * np.sqrt((1.0 + 2.0 * h * h * xz2) * xh2)
        - s2 * x * np.sqrt((1.0 + 2.0 * x * x * zh2) * zh2)
        - 0.5 * (abs(fa + ga) + abs(fa - ga) + abs(wa + va) + abs(wa - va))
    )
    return float(total)


def boundary_f(p, boundary: str) -> float:
    """Exact closed form of f restricted to one face of the octant.

    The named coordinate must vanish. On each face the marginals collapse to
    closed 2x2 expressions:

      x=0: f depends on t = z*h only:  sqrt(2) t (2 + sqrt(1+2t^2)) - 2t(1+t)
      y=0: all pair covariance matrices are diagonal; see the component form
      z=0: qubit C factorizes and both steered deficits vanish, so f == 0
      h=0: qubit B factorizes and f reduces to sqrt(2) x z
    """
    x, y, z, h = SchmidtParams(*p).validate()
    if boundary not in _COORDS:
        raise ValueError(f"boundary must be one of {_COORDS}, got {boundary!r}")
    coord = dict(zip(_COORDS, (x, y, z, h)))[boundary]
    if abs(coord) > 1e-12:
        raise ValueError(f"point is not on the {boundary}=0 face (value {coord:.3e})")

    if boundary == "x":
        t = z * h
        return float(np.sqrt(2.0) * t * (2.0 + np.sqrt(1.0 + 2.0 * t * t)) - 2.0 * t * (1.0 + t))
    if boundary == "z":
        return 0.0
    if boundary == "h":
        return float(np.sqrt(2.0) * x * z)

    # y = 0
    x2, z2, h2 = x * x, z * z, h * h
    q_a = 2.0 * x2 * (z2 + h2)
    q_b = 2.0 * h2 * (x2 + z2)
    q_c = 2.0 * z2 * (x2 + h2)
    h_abc = np.sqrt(2.0 * q_a) + q_a - np.sqrt(q_a * (1.0 + q_a))
    czz_ab = 0.5 * ((x2 - z2 + h2) - (x2 - z2 - h2) * (x2 + z2 - h2))
    czz_ac = 0.5 * ((x2 - h2 + z2) - (x2 - h2 - z2) * (x2 + h2 - z2))
    czz_bc = 0.5 * ((x2 - z2 - h2) - (x2 + z2 - h2) * (x2 - z2 + h2))
    h_ab = 2.0 * x * h + abs(czz_ab) - np.sqrt((1.0 + q_a) * q_b)
    h_ac = 2.0 * x * z + abs(czz_ac) - np.sqrt((1.0 + q_a) * q_c)
    h_bc = 2.0 * z * h + abs(czz_bc) - np.sqrt((1.0 + q_b) * q_c)
    return float(h_abc - (h_ab + h_ac + h_bc))


# ---------------------------------------------------------------------------
# multi-start critical point search


@dataclass(frozen=True)
class MinimizeConfig:
    """Search configuration for minimize_f."""

    starts: int = 2000
    seed: int = 0
    grad_tol: float = 1e-10
    max_iter: int = 400
    fd_step: float = 1e-6
    dedup_radius: float = 1e-6
    boundary: str | None = None  # restrict the search to one face
    stationary_starts: int = 256  # projected-gradient-norm phase
    face_starts: int = 64  # per-face stationary passes (full-domain runs only)


@dataclass
class CriticalPoint:
    """A converged constrained critical point of f on the octant sphere."""

    params: SchmidtParams
    f_value: float
    location: str  # interior | internal-boundary | x=0 | y=0 | z=0 | h=0
    region: str
    grad_norm: float
    kind: str  # descent | stationary

    def as_dict(self) -> dict:
        return {
            "params": list(self.params),
            "f": self.f_value,
            "location": self.location,
            "region": self.region,
            "grad_norm": self.grad_norm,
            "kind": self.kind,
        }


@dataclass
class MinimizeResult:
    points: list[CriticalPoint]
    starts: int
    converged: int
    dropped: int

    def min_value(self) -> float:
        return min(pt.f_value for pt in self.points)

    def best_matching(self, target, radius: float) -> CriticalPoint | None:
        """Closest returned point within `radius` of the target coordinates."""
        target = np.asarray(target, dtype=float)
        best, best_d = None, radius
        for pt in self.points:
            d = float(np.linalg.norm(pt.params.as_array() - target))
            if d <= best_d:
                best, best_d = pt, d
        return best


def _octant_points(u: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Fold an unconstrained batch onto the octant sphere (abs + normalize)."""
    p = np.abs(u) * mask
    return p / np.linalg.norm(p, axis=-1, keepdims=True)


def _batch_f(u: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return schmidt_f_batch(_octant_points(u, mask))["f"]


def _batch_grad(u: np.ndarray, mask: np.ndarray, step: float) -> np.ndarray:
    """Central-difference gradient of the folded objective, batched."""
    n, d = u.shape
    shifts = step * np.eye(d)
    pts = np.concatenate([u[:, None, :] + shifts, u[:, None, :] - shifts], axis=1)
    fv = _batch_f(pts.reshape(-1, d), mask).reshape(n, 2 * d)
    return (fv[:, :d] - fv[:, d:]) / (2.0 * step) * mask


def _descent(u0: np.ndarray, mask: np.ndarray, cfg: MinimizeConfig,
             fd_step: float, eta_floor: float, max_iter: int):
    """Lockstep projected descent with backtracking; returns endpoints and flags."""
    u = u0.copy()
    fval = _batch_f(u, mask)
    eta = np.full(len(u), 0.1)
    active = np.ones(len(u), dtype=bool)
    converged = np.zeros(len(u), dtype=bool)
    gnorm = np.zeros(len(u))

    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        g = _batch_grad(u[idx], mask, fd_step)
        gn = np.linalg.norm(g, axis=1)
        gnorm[idx] = gn
        done = gn <= cfg.grad_tol
        converged[idx[done]] = True
        active[idx[done]] = False
        idx = idx[~done]
        g = g[~done]
        gn = gn[~done]
        if idx.size == 0:
            continue

        searching = np.ones(idx.size, dtype=bool)
        for _ in range(60):
            if not searching.any():
                break
            sub = np.flatnonzero(searching)
            cand = u[idx[sub]] - eta[idx[sub], None] * g[sub]
            fnew = _batch_f(cand, mask)
            ok = fnew <= fval[idx[sub]] - 1e-4 * eta[idx[sub]] * gn[sub] ** 2
            acc = idx[sub[ok]]
            u[acc] = cand[ok] / np.linalg.norm(np.abs(cand[ok]) * mask, axis=1, keepdims=True)
            fval[acc] = fnew[ok]
            eta[acc] = np.minimum(eta[acc] * 1.3, 1.0)
            eta[idx[sub[~ok]]] /= 2.0
            searching[sub[ok]] = False
            stalled = eta[idx[sub]] < eta_floor
            if stalled.any():
                st = idx[sub[stalled]]
                converged[st] = True
                active[st] = False
                searching[sub[stalled]] = False
    dropped = active.copy()
    return u, fval, gnorm, converged, dropped


def _grad_norm_sq_batch(u: np.ndarray, mask: np.ndarray, step: float) -> np.ndarray:
    g = _batch_grad(np.atleast_2d(u), mask, step)
    return np.einsum("ij,ij->i", g, g)


def _lockstep_nelder_mead(phi, x0s: np.ndarray, iters: int = 300,
                          xatol: float = 1e-9, fatol: float = 1e-22,
                          spread: float = 0.05):
    """Nelder-Mead over many starts in lockstep, one batched call per step.

    phi maps an (n, d) batch to (n,) values. Standard reflection/expansion/
    contraction/shrink moves, applied simultaneously to every simplex so the
    objective is always evaluated in large batches.
    """
    n, d = x0s.shape
    simplex = np.repeat(x0s[:, None, :], d + 1, axis=1)
    for j in range(d):
        simplex[:, j + 1, j] += spread
    values = phi(simplex.reshape(-1, d)).reshape(n, d + 1)
    rows = np.arange(n)

    for _ in range(iters):
        order = np.argsort(values, axis=1)
        simplex = simplex[rows[:, None], order]
        values = values[rows[:, None], order]
        diam = np.max(np.abs(simplex - simplex[:, :1]), axis=(1, 2))
        span = values[:, -1] - values[:, 0]
        live = (diam > xatol) & (span > fatol)
        if not live.any():
            break

        centroid = simplex[:, :-1].mean(axis=1)
        worst = simplex[:, -1]
        xr = centroid + (centroid - worst)
        fr = phi(xr)

        better_best = fr < values[:, 0]
        better_second = fr < values[:, -2]
        # one extra candidate per simplex: expansion, outside or inside contraction
        cand = np.where(
            better_best[:, None], centroid + 2.0 * (centroid - worst),
            np.where((fr < values[:, -1])[:, None],
                     centroid + 0.5 * (centroid - worst),
                     centroid - 0.5 * (centroid - worst)),
        )
        fc = phi(cand)

        new_pt = worst.copy()
        new_val = values[:, -1].copy()
        use_cand = (better_best & (fc < fr)) | (~better_second & (fc < np.minimum(fr, values[:, -1])))
        use_refl = ~use_cand & better_second
        new_pt[use_cand] = cand[use_cand]
        new_val[use_cand] = fc[use_cand]
        new_pt[use_refl] = xr[use_refl]
        new_val[use_refl] = fr[use_refl]
        improved = use_cand | use_refl

        upd = live & improved
        simplex[upd, -1] = new_pt[upd]
        values[upd, -1] = new_val[upd]

        shrink = live & ~improved
        if shrink.any():
            sub = np.flatnonzero(shrink)
            simplex[sub, 1:] = simplex[sub, :1] + 0.5 * (simplex[sub, 1:] - simplex[sub, :1])
            values[sub, 1:] = phi(simplex[sub, 1:].reshape(-1, d)).reshape(len(sub), d)

    best = np.argmin(values, axis=1)
    return simplex[rows, best], values[rows, best]


# converged coordinates are only resolved to ~1e-8, so sign quantities below
# FACE_TOL cannot be distinguished from a region boundary when labeling
def _critical_region(p: np.ndarray) -> str:
    return str(_region_codes(p[None, :], tol=FACE_TOL)[0])


def _classify_location(p: np.ndarray) -> str:
    for name, val in zip(_COORDS, p):
        if val <= FACE_TOL:
            return f"{name}=0"
    if _critical_region(p) == "boundary":
        return "internal-boundary"
    return "interior"


def minimize_f(config: MinimizeConfig | None = None) -> MinimizeResult:
    """Multi-start search for constrained critical points of f.

    Phase one runs lockstep projected descent (numerical central-difference
    gradients on the folded sphere parametrization) and collects local minima;
    phase two polishes quasi-random starts with a Nelder-Mead minimization of
    the squared projected-gradient norm, which also captures saddle- and
    maximum-type stationary points. Results are deduplicated, refined, and
    re-evaluated through f_pipeline.
    """
    cfg = config or MinimizeConfig()
    rng = np.random.default_rng(cfg.seed)
    mask = np.ones(4)
    if cfg.boundary is not None:
        if cfg.boundary not in _COORDS:
            raise ValueError(f"boundary must be one of {_COORDS}")
        mask[_COORDS.index(cfg.boundary)] = 0.0

    u0 = np.abs(rng.standard_normal((cfg.starts, 4))) * mask
    u0 /= np.linalg.norm(u0, axis=1, keepdims=True)

    u, fval, gnorm, converged, dropped = _descent(
        u0, mask, cfg, cfg.fd_step, eta_floor=1e-13, max_iter=cfg.max_iter
    )

    candidates: list[tuple[np.ndarray, float, str]] = []
    for i in np.flatnonzero(converged):
        candidates.append((_octant_points(u[i], mask), gnorm[i], "descent"))

    # stationary phase: minimize ||grad||^2 in lockstep Nelder-Mead; unlike the
    # descent it also lands on saddle- and maximum-type critical points
    def _stationary_pass(pass_mask: np.ndarray, n_starts: int):
        if n_starts <= 0:
            return
        starts = np.abs(rng.standard_normal((n_starts, 4))) * pass_mask
        starts /= np.linalg.norm(starts, axis=1, keepdims=True)
        phi = lambda pts: _grad_norm_sq_batch(pts * pass_mask, pass_mask, cfg.fd_step)
        xs, vals = _lockstep_nelder_mead(phi, starts)
        for xv, gv in zip(xs, vals):
            gn = float(np.sqrt(max(gv, 0.0)))
            if gn <= 1e-6:
                candidates.append((_octant_points(xv, pass_mask), gn, "stationary"))

    _stationary_pass(mask, min(cfg.stationary_starts, cfg.starts))
    if cfg.boundary is None:
        # each face of the octant gets its own pass; face-critical points such
        # as maxima along the face are invisible to full-domain descent
        for coord in range(4):
            face_mask = np.ones(4)
            face_mask[coord] = 0.0
            _stationary_pass(face_mask, cfg.face_starts)

    # final refinement at tighter tolerance, then dedup (radius in parameter space)
    refined: list[tuple[np.ndarray, float, float, str]] = []
    if candidates:
        pts = np.stack([c[0] for c in candidates])
        u2, f2, g2, _, _ = _descent(
            pts, mask, cfg, fd_step=1e-7, eta_floor=1e-14, max_iter=150
        )
        for i, (_, gn, kind) in enumerate(candidates):
            p = _octant_points(u2[i], mask)
            refined.append((p, float(f2[i]), min(float(g2[i]), gn), kind))

    refined.sort(key=lambda item: item[1])
    accepted: list[tuple[np.ndarray, float, float, str]] = []
    for p, fv, gn, kind in refined:
        if all(np.linalg.norm(p - other[0]) > cfg.dedup_radius for other in accepted):
            accepted.append((p, fv, gn, kind))

    points = []
    for p, _, gn, kind in accepted:
        sp = SchmidtParams(*np.clip(p, 0.0, None))
        fv = f_pipeline(sp)
        points.append(
            CriticalPoint(
                params=sp,
                f_value=fv,
                location=_classify_location(p),
                region=_critical_region(p),
                grad_norm=gn,
                kind=kind,
            )
        )
    return MinimizeResult(
        points=points,
        starts=cfg.starts,
        converged=int(converged.sum()),
        dropped=int(dropped.sum()),
    )


# ---------------------------------------------------------------------------
# sphere scan


@dataclass(frozen=True)
class VerifyConfig:
    """Configuration for the monogamy sphere scan."""

    samples: int = 2**20
    seed: int = 0
    restrict_region: str | None = None
    restrict_boundary: str | None = None
    chunk: int = 2**16
    pass_tol: float = -1e-9


@dataclass
class VerifyReport:
    """Scan outcome.

    min_value ranges over every scanned point (samples plus critical points
    within the configured restriction); critical_min ranges over the critical
    points alone, which is the number a per-region stationary analysis
    tabulates (a region's sampled infimum can sit at its closure instead).
    """

    min_value: float
    argmin: list[float]
    samples: int
    seed: int
    passed: bool
    generator: str
    critical_min: float | None = None
    critical_argmin: list[float] | None = None
    regions: dict[str, dict] = field(default_factory=dict)
    critical_points: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "min": self.min_value,
            "argmin": self.argmin,
            "samples": self.samples,
            "seed": self.seed,
            "pass": self.passed,
            "generator": self.generator,
            "critical_min": self.critical_min,
            "critical_argmin": self.critical_argmin,
            "regions": self.regions,
            "critical_points": self.critical_points,
        }


def _sobol_sphere(n: int, dim: int, seed: int) -> np.ndarray:
    """Quasi-uniform points on the positive octant of the unit (dim-1)-sphere."""
    eng = qmc.Sobol(d=dim, scramble=True, seed=seed)
    m = int(np.ceil(np.log2(max(n, 2))))
    u = eng.random_base2(m)[:n]
    g = np.abs(ndtri(np.clip(u, 1e-12, 1.0 - 1e-12)))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def verify_monogamy(
    config: VerifyConfig | None = None,
    critical_points: list[CriticalPoint] | None = None,
) -> VerifyReport:
    """Scan the octant sphere with low-discrepancy samples plus critical points.

    Reports the global minimum found, per-region minima, and PASS iff the
    minimum stays above the tolerance floor. Restriction options narrow the
    scan to one sign region or one boundary face.
    """
    cfg = config or VerifyConfig()
    if cfg.restrict_boundary is not None and cfg.restrict_boundary not in _COORDS:
        raise ValueError(f"restrict_boundary must be one of {_COORDS}")
    if cfg.restrict_region is not None and cfg.restrict_region not in ALL_SIGN_REGIONS:
        raise ValueError("restrict_region must be one of the 16 sign patterns")

    if cfg.restrict_boundary is None:
        samples = _sobol_sphere(cfg.samples, 4, cfg.seed)
    else:
        face = _sobol_sphere(cfg.samples, 3, cfg.seed)
        samples = np.zeros((cfg.samples, 4))
        keep = [i for i in range(4) if i != _COORDS.index(cfg.restrict_boundary)]
        samples[:, keep] = face

    best_val = np.inf
    best_arg = None
    regions: dict[str, dict] = {}
    for lo in range(0, len(samples), cfg.chunk):
        block = samples[lo : lo + cfg.chunk]
        fvals = schmidt_f_batch(block)["f"]
        codes = _region_codes(block)
        if cfg.restrict_region is not None:
            sel = codes == cfg.restrict_region
            if not sel.any():
                continue
            block, fvals, codes = block[sel], fvals[sel], codes[sel]
        i = int(np.argmin(fvals))
        if fvals[i] < best_val:
            best_val = float(fvals[i])
            best_arg = block[i]
        for code in np.unique(codes):
            sel = codes == code
            j = int(np.argmin(fvals[sel]))
            entry = regions.setdefault(str(code), {
                "samples": 0, "sampled_min": np.inf, "sampled_argmin": None,
                "critical_count": 0, "critical_min": None,
            })
            entry["samples"] += int(sel.sum())
            if fvals[sel][j] < entry["sampled_min"]:
                entry["sampled_min"] = float(fvals[sel][j])
                entry["sampled_argmin"] = [float(v) for v in block[sel][j]]

    crit_dicts = []
    crit_min = None
    crit_arg = None
    for pt in critical_points or []:
        if cfg.restrict_boundary is not None:
            if pt.params[_COORDS.index(cfg.restrict_boundary)] > FACE_TOL:
                continue
        if cfg.restrict_region is not None and pt.region != cfg.restrict_region:
            continue
        crit_dicts.append(pt.as_dict())
        entry = regions.setdefault(pt.region, {
            "samples": 0, "sampled_min": np.inf, "sampled_argmin": None,
            "critical_count": 0, "critical_min": None,
        })
        entry["critical_count"] += 1
        if entry["critical_min"] is None or pt.f_value < entry["critical_min"]:
            entry["critical_min"] = pt.f_value
        if crit_min is None or pt.f_value < crit_min:
            crit_min = pt.f_value
            crit_arg = [float(v) for v in pt.params]
        if pt.f_value < best_val:
            best_val = pt.f_value
            best_arg = pt.params.as_array()

    return VerifyReport(
        min_value=float(best_val),
        argmin=[float(v) for v in (best_arg if best_arg is not None else [])],
        samples=int(cfg.samples),
        seed=int(cfg.seed),
        passed=bool(best_val >= cfg.pass_tol),
        generator="sobol-scrambled+gauss-fold",
        critical_min=crit_min,
        critical_argmin=crit_arg,
        regions=regions,
        critical_points=crit_dicts,
    )
