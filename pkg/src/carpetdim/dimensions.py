"""Closed-form and variational dimension formulas for diagonal carpets.

For a wider-than-tall (GatzourasLalley) system everything reduces to two
scalar root-findings and one simplex maximization:

* projected box dimension ``s_eta``:  sum_l r1_l^{s_eta} = 1  over columns,
* box dimension ``s``:  sum_i r1_i^{s_eta} r2_i^{s - s_eta} = 1,
* Assouad / lower dimension ``s_eta + max_l t(l)`` / ``s_eta + min_l t(l)``
  where t(l) is the Moran exponent of column l's vertical ratios,
* Hausdorff dimension: the supremum over probability vectors w of the
  Ledrappier-Young value

      s_1(w) = H(eta_1 w)/chi_1(w) + (H(w) - H(eta_1 w))/chi_2(w),

  always attained at an interior point.

For a Baranski system the two axes compete.  The axis-j value s_j(w) (same
shape with j and the orthogonal axis j' swapped in) is maximized over
P_j = {w : chi_j(w) <= chi_{j'}(w)} and dimH = max_j d_j.  On the boundary
chi_j = chi_{j'} the value collapses to H(w)/chi_j(w), and the constrained
maximum is found by a Lagrange sweep on the linear constraint.  Directional
totals A_j = dimB eta_j(K) + t_j give dimA = max_j A_j; no closed form for
the Baranski box dimension is provided, only the empirical estimate from the
geometry layer.

The simplex searches run as projected-gradient ascent in the softmax
parameterization, batched over 16 deterministic restarts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OptimizerFailure, RangeError, WrongClass, WrongShape
from .moran import solve_moran
from .systems import (BARANSKI, DIAGONAL_ONLY, GATZOURAS_LALLEY,
                      CarpetSystem, ProbabilityVector)

_GRAD_TOL = 1e-9
_RESTARTS = 16
_MAX_ITER = 4000
_INTERIOR_MIN = 1e-9


@dataclass(frozen=True)
class DimensionReport:
    dim_proj_box_1: float
    dim_proj_box_2: object          # None when rows are not aligned
    dimB: object
    dimH: float
    dimA: float
    dimL: float
    argmax_p: ProbabilityVector
    diagnostics: dict


@dataclass(frozen=True)
class BaranskiDirectional:
    """Per-axis quantities: constrained Hausdorff value d_j, projected box
    dimension, worst slice exponent t_j, and the total A_j = dimB_eta_j + t_j.
    Entries are None when the axis does not support them (empty P_j, or a
    projection without Moran structure)."""
    d1: object
    d2: object
    dimB_eta1: object
    dimB_eta2: object
    t1: object
    t2: object
    A1: object
    A2: object


# --------------------------------------------------------------- entropies

def _xlogx(v):
    return v * math.log(v) if v > 0.0 else 0.0


def entropy_stats(system: CarpetSystem, p):
    """(H(p), H(eta1 p), H(eta2 p), chi1(p), chi2(p)) with natural logs and
    the 0*log 0 = 0 convention."""
    if not isinstance(p, ProbabilityVector):
        p = ProbabilityVector(tuple(p))
    w = list(p)
    if len(w) != len(system.maps):
        raise WrongShape("vector of length %d for %d maps"
                         % (len(w), len(system.maps)))
    H = -math.fsum(_xlogx(v) for v in w)
    marginals = []
    for axis in (1, 2):
        lookup = system.class_index(axis)
        acc = [0.0] * len(system.classes(axis))
        for i, v in enumerate(w):
            acc[lookup[i]] += v
        marginals.append(-math.fsum(_xlogx(v) for v in acc))
    chi = [-math.fsum(w[i] * math.log(float(system.maps[i].ratio(axis)))
                      for i in range(len(w)))
           for axis in (1, 2)]
    return (H, marginals[0], marginals[1], chi[0], chi[1])


# ------------------------------------------------- batched simplex ascent

def _softmax(u):
    shifted = u - u.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def _entropy_terms(w):
    safe = np.maximum(w, 1e-300)
    return -np.sum(w * np.log(safe), axis=1), -(1.0 + np.log(safe))


class _AxisObjective:
    """Ledrappier-Young value/gradient for one projection axis, batched over
    rows of probability vectors."""

    def __init__(self, system: CarpetSystem, j: int):
        n = len(system.maps)
        other = 2 if j == 1 else 1
        self.log_rj = np.array([math.log(float(m.ratio(j)))
                                for m in system.maps])
        self.log_ro = np.array([math.log(float(m.ratio(other)))
                                for m in system.maps])
        lookup = system.class_index(j)
        self.member = np.zeros((len(system.classes(j)), n))
        for i in range(n):
            self.member[lookup[i], i] = 1.0

    def __call__(self, w, need_grad=True):
        wc = w @ self.member.T
        H, gH = _entropy_terms(w)
        Hn, gHnc = _entropy_terms(wc)
        chij = -(w @ self.log_rj)
        chio = -(w @ self.log_ro)
        val = Hn / chij + (H - Hn) / chio
        if not need_grad:
            return val, None
        gHn = gHnc @ self.member
        gchij = -self.log_rj
        gchio = -self.log_ro
        grad = ((gHn * chij[:, None] - Hn[:, None] * gchij) / chij[:, None] ** 2
                + ((gH - gHn) * chio[:, None] - (H - Hn)[:, None] * gchio)
                / chio[:, None] ** 2)
        return val, grad


class _BoundaryObjective:
    """H(w)/chi_j(w) + lam * (chi_j'(w) - chi_j(w)): the boundary value of
    the axis objective plus a Lagrange term on the linear constraint."""

    def __init__(self, system: CarpetSystem, j: int, lam: float):
        other = 2 if j == 1 else 1
        self.log_rj = np.array([math.log(float(m.ratio(j)))
                                for m in system.maps])
        self.log_ro = np.array([math.log(float(m.ratio(other)))
                                for m in system.maps])
        self.lam = lam

    def constraint(self, w):
        return w @ (self.log_rj - self.log_ro)

    def __call__(self, w, need_grad=True):
        H, gH = _entropy_terms(w)
        chij = -(w @ self.log_rj)
        val = H / chij + self.lam * self.constraint(w)
        if not need_grad:
            return val, None
        gchij = -self.log_rj
        grad = ((gH * chij[:, None] - H[:, None] * gchij)
                / chij[:, None] ** 2
                + self.lam * (self.log_rj - self.log_ro))
        return val, grad


def _ascend(objective, n, seed=0, start=None, restarts=_RESTARTS,
            max_iter=_MAX_ITER, strict=True):
    """Maximize over the open simplex; returns (value, w, diagnostics).

    Projected-gradient ascent in softmax coordinates with per-restart
    adaptive steps; a restart counts as converged when the simplex-tangent
    gradient drops below 1e-9 in the sup norm.  With strict=False the best
    row is returned even when no restart met the tolerance, for callers that
    refine the answer themselves.
    """
    rng = np.random.default_rng(seed)
    u = rng.normal(0.0, 1.0, size=(restarts, n))
    if start is not None:
        u[0] = np.log(np.maximum(start, 1e-300))
    alpha = np.full(restarts, 0.25)
    w = _softmax(u)
    val, gw = objective(w)
    gu = w * (gw - np.sum(gw * w, axis=1, keepdims=True))
    gnorm = np.max(np.abs(gu), axis=1)
    iterations = 0
    # rows are frozen once they converge so stragglers set the cost alone
    while iterations < max_iter and np.any(gnorm >= _GRAD_TOL):
        iterations += 1
        idx = np.flatnonzero(gnorm >= _GRAD_TOL)
        trial = u[idx] + alpha[idx, None] * gu[idx]
        tval, _ = objective(_softmax(trial), need_grad=False)
        better = tval >= val[idx]
        u[idx] = np.where(better[:, None], trial, u[idx])
        alpha[idx] = np.where(better, np.minimum(alpha[idx] * 1.3, 50.0),
                              np.maximum(alpha[idx] * 0.5, 1e-18))
        w[idx] = _softmax(u[idx])
        val[idx], sub_gw = objective(w[idx])
        sub_gu = w[idx] * (sub_gw - np.sum(sub_gw * w[idx], axis=1,
                                           keepdims=True))
        gu[idx] = sub_gu
        gnorm[idx] = np.max(np.abs(sub_gu), axis=1)
    converged = gnorm < _GRAD_TOL
    if converged.any():
        val = np.where(converged, val, -np.inf)
    elif strict:
        raise OptimizerFailure(
            "no restart converged; best value %.12f with gradient %.3e"
            % (float(val.max()), float(gnorm.min())))
    best = int(np.argmax(val))
    diag = {"iterations": int(iterations),
            "restarts": int(restarts),
            "converged_restarts": int(converged.sum()),
            "grad_inf": float(gnorm[best])}
    return float(val[best]), w[best], diag


# ----------------------------------------------------------- GL closed form

def _column_moran(system, axis):
    return solve_moran([float(c.ratio) for c in system.classes(axis)])


def _axis_intervals_aligned(system, axis):
    """Distinct projection classes pairwise have disjoint open intervals."""
    classes = system.classes(axis)
    spans = sorted((float(c.offset), float(c.offset + c.ratio))
                   for c in classes)
    return all(spans[k][1] <= spans[k + 1][0] + 1e-12
               for k in range(len(spans) - 1))


def _solve_box_dimension(system, s_eta):
    """Root of sum_i r1_i^{s_eta} r2_i^{s - s_eta} = 1, decreasing in s."""
    r1 = np.array([float(m.r1) for m in system.maps])
    r2 = np.array([float(m.r2) for m in system.maps])
    a = r1 ** s_eta

    def f(s):
        return float(np.sum(a * r2 ** (s - s_eta))) - 1.0

    lo = s_eta
    hi = s_eta + math.log(float(np.sum(a))) / -math.log(float(r2.max())) + 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    s = 0.5 * (lo + hi)
    for _ in range(5):
        fs = f(s)
        dfs = float(np.sum(a * r2 ** (s - s_eta) * np.log(r2)))
        if dfs == 0.0:
            break
        step = fs / dfs
        s = min(max(s - step, lo - 1.0), hi + 1.0)
    return s, abs(f(s))


def _slice_exponents(system, axis):
    """t(l) for each axis class: Moran exponent of the orthogonal ratios of
    the class members."""
    other = 2 if axis == 1 else 1
    return [solve_moran([float(system.maps[i].ratio(other))
                         for i in c.members])
            for c in system.classes(axis)]


def gl_hausdorff(system: CarpetSystem, seed=0):
    """Hausdorff dimension of a GatzourasLalley carpet: maximize the axis-1
    Ledrappier-Young value over the simplex.  Returns (value, argmax)."""
    if system.klass != GATZOURAS_LALLEY:
        raise WrongClass("need GatzourasLalley, got %s" % system.klass)
    value, w, _ = _ascend(_AxisObjective(system, 1), len(system.maps),
                          seed=seed)
    if w.min() < _INTERIOR_MIN:
        raise OptimizerFailure(
            "maximizer touched the simplex boundary (min weight %.3e)"
            % float(w.min()))
    return value, ProbabilityVector(tuple(float(v) for v in w))


def gl_dims(system: CarpetSystem, seed=0) -> DimensionReport:
    """Full dimension report for a GatzourasLalley carpet."""
    if system.klass != GATZOURAS_LALLEY:
        raise WrongClass("need GatzourasLalley, got %s" % system.klass)
    s_eta = _column_moran(system, 1)
    proj2 = (_column_moran(system, 2)
             if _axis_intervals_aligned(system, 2) else None)
    dimB, box_residual = _solve_box_dimension(system, s_eta)
    t = _slice_exponents(system, 1)
    dimA = s_eta + max(t)
    dimL = s_eta + min(t)
    objective = _AxisObjective(system, 1)
    dimH, w, opt_diag = _ascend(objective, len(system.maps), seed=seed)
    if w.min() < _INTERIOR_MIN:
        raise OptimizerFailure(
            "maximizer touched the simplex boundary (min weight %.3e)"
            % float(w.min()))
    argmax = ProbabilityVector(tuple(float(v) for v in w))
    ratios = [float(c.ratio) for c in system.classes(1)]
    proj_residual = abs(math.fsum(r ** s_eta for r in ratios) - 1.0)
    diagnostics = {"proj_moran_residual": proj_residual,
                   "dimB_residual": box_residual,
                   "slice_exponents": t,
                   "optimizer": opt_diag}
    return DimensionReport(
        dim_proj_box_1=s_eta, dim_proj_box_2=proj2, dimB=dimB, dimH=dimH,
        dimA=dimA, dimL=dimL, argmax_p=argmax, diagnostics=diagnostics)


# ------------------------------------------------------ Baranski directional

def _boundary_polish(system, j, w0, max_iter=4000):
    """Maximize H(w)/chi_j(w) over the slice {w in simplex : chi_j = chi_j'}.

    The slice is the intersection of the simplex with the hyperplane
    w . delta = 0 where delta_i is the log ratio gap of map i, so ascent
    directions are gradients projected onto {v . 1 = 0, v . delta = 0}.
    The objective is a concave numerator over a positive affine denominator,
    hence pseudoconcave on the convex slice: any stationary point is the
    global maximum and plain projected ascent suffices.
    """
    other = 2 if j == 1 else 1
    log_rj = np.array([math.log(float(m.ratio(j))) for m in system.maps])
    log_ro = np.array([math.log(float(m.ratio(other))) for m in system.maps])
    delta = log_rj - log_ro
    gram = np.array([[float(len(delta)), delta.sum()],
                     [delta.sum(), float(delta @ delta)]])

    def value_grad(w):
        H, gH = _entropy_terms(w[None, :])
        chi = -float(w @ log_rj)
        val = float(H[0]) / chi
        grad = (gH[0] * chi + float(H[0]) * log_rj) / chi ** 2
        return val, grad

    w = np.maximum(w0, 1e-300)
    a, b = np.linalg.solve(gram, [w.sum() - 1.0, float(w @ delta)])
    w = w - a - b * delta
    val, grad = value_grad(w)
    step, gnorm, it = 0.1, math.inf, 0
    for it in range(1, max_iter + 1):
        a, b = np.linalg.solve(gram, [grad.sum(), float(grad @ delta)])
        tangent = grad - a - b * delta
        gnorm = float(np.max(np.abs(tangent)))
        if gnorm < 1e-11:
            break
        trial = w + step * tangent
        if trial.min() <= 0.0:
            step *= 0.5
            continue
        tval, tgrad = value_grad(trial)
        if tval >= val:
            w, val, grad = trial, tval, tgrad
            step = min(step * 1.3, 10.0)
        else:
            step = max(step * 0.5, 1e-18)
    return val, w, {"polish_iterations": it, "polish_grad_inf": gnorm,
                    "constraint_residual": float(w @ delta)}


def _constrained_axis_max(system, j, seed=0):
    """max of the axis-j value over P_j = {chi_j <= chi_j'}.

    Returns (value, w, diagnostics) or None when P_j has no interior.  When
    the unconstrained maximizer is infeasible the maximum lies on the
    hyperplane chi_j = chi_j', where the objective equals H/chi_j.  A
    bisection on the Lagrange multiplier of the linear constraint brackets
    the boundary with penalized maximizers from both sides; the constraint
    is linear in w, so the bracket interpolates to an exact boundary point,
    which projected ascent along the slice then sharpens.
    """
    other = 2 if j == 1 else 1
    delta = np.array([math.log(float(m.ratio(j)))
                      - math.log(float(m.ratio(other)))
                      for m in system.maps])
    n = len(system.maps)
    if delta.max() < -1e-15:
        return None                       # chi_j > chi_j' everywhere
    value, w, diag = _ascend(_AxisObjective(system, j), n, seed=seed)
    slack = float(w @ delta)              # chi_j'(w) - chi_j(w)
    if slack >= -1e-10:
        diag["boundary"] = False
        return value, w, diag

    def solve(lam, start):
        # coarse inner solves: the bracket only seeds the boundary polish,
        # which owns the precision
        objective = _BoundaryObjective(system, j, lam)
        _, wl, _ = _ascend(objective, n, seed=seed + 1, start=start,
                           restarts=2, max_iter=300, strict=False)
        return float(wl @ delta), wl

    lam_hi, start = 1.0, w
    for _ in range(60):
        c_hi, w_hi = solve(lam_hi, start)
        if c_hi >= 0.0:
            break
        start = w_hi
        lam_hi *= 2.0
    else:
        return None                       # constraint unreachable in practice
    lam_lo, c_lo, w_lo = 0.0, slack, w
    for _ in range(10):
        if lam_hi - lam_lo <= 1e-9 * lam_hi:
            break
        lam = 0.5 * (lam_lo + lam_hi)
        c, w_lam = solve(lam, w_hi)
        if c < 0.0:
            lam_lo, c_lo, w_lo = lam, c, w_lam
        else:
            lam_hi, c_hi, w_hi = lam, c, w_lam
    t = c_lo / (c_lo - c_hi) if c_hi > c_lo else 0.0
    w_cross = w_lo + t * (w_hi - w_lo)
    value, w_star, polish = _boundary_polish(system, j, w_cross)
    diag = {"boundary": True, "lambda": float(lam_hi), **polish}
    return value, w_star, diag


def baranski_dims(system: CarpetSystem, seed=0):
    """(BaranskiDirectional, dimH, dimA) for a Baranski (or GL) system."""
    if system.klass not in (BARANSKI, GATZOURAS_LALLEY):
        raise WrongClass("need Baranski or GatzourasLalley, got %s"
                         % system.klass)
    per_axis = {}
    for j in (1, 2):
        aligned = _axis_intervals_aligned(system, j)
        proj = _column_moran(system, j) if aligned else None
        t_j = max(_slice_exponents(system, j)) if aligned else None
        best = _constrained_axis_max(system, j, seed=seed)
        d_j = best[0] if best is not None else None
        a_j = proj + t_j if (proj is not None and t_j is not None) else None
        per_axis[j] = (d_j, proj, t_j, a_j)
    directional = BaranskiDirectional(
        d1=per_axis[1][0], d2=per_axis[2][0],
        dimB_eta1=per_axis[1][1], dimB_eta2=per_axis[2][1],
        t1=per_axis[1][2], t2=per_axis[2][2],
        A1=per_axis[1][3], A2=per_axis[2][3])
    d_values = [v for v in (directional.d1, directional.d2) if v is not None]
    a_values = [v for v in (directional.A1, directional.A2) if v is not None]
    if not d_values or not a_values:
        raise WrongClass("no axis supports the directional formulas")
    return directional, max(d_values), max(a_values)


# ---------------------------------------------------- two-group reduction

def _two_group_shape(system):
    """(alpha1, alpha2, beta) when the system is 4 copies of one map shape
    plus 8 of another with a shared height; WrongShape otherwise."""
    groups = {}
    for m in system.maps:
        groups.setdefault((float(m.r1), float(m.r2)), []).append(m)
    if len(groups) != 2:
        raise WrongShape("need exactly two map shapes, got %d" % len(groups))
    (shape_a, members_a), (shape_b, members_b) = sorted(
        groups.items(), key=lambda kv: len(kv[1]))
    if (len(members_a), len(members_b)) != (4, 8):
        raise WrongShape("need group sizes 4 and 8, got %d and %d"
                         % (len(members_a), len(members_b)))
    if shape_a[1] != shape_b[1]:
        raise WrongShape("groups must share a common height")
    alpha1, alpha2, beta = shape_a[0], shape_b[0], shape_a[1]
    if alpha1 == alpha2:
        raise WrongShape("group widths must differ")
    return alpha1, alpha2, beta


def baranski_1d_reduction(system: CarpetSystem, p: float):
    """Two-group reduction curve for the 4+8 family: returns
    (D1(p), D2(p), p0) where p is the total weight on the 8-map group.

    D1(p) = h(p)/chi1(p) and
    D2(p) = log 4/(-log beta) + (h(p) - log 4)/chi1(p), with h the two-point
    entropy, chi1(p) = -p log alpha2 - (1-p) log alpha1, and p0 the weight
    where chi1 crosses -log beta.
    """
    if not 0.0 <= p <= 1.0:
        raise RangeError("p=%r outside [0, 1]" % (p,))
    alpha1, alpha2, beta = _two_group_shape(system)
    h = -(_xlogx(p) + _xlogx(1.0 - p))
    chi1 = -p * math.log(alpha2) - (1.0 - p) * math.log(alpha1)
    log4 = math.log(4.0)
    d1 = h / chi1
    d2 = log4 / -math.log(beta) + (h - log4) / chi1
    p0 = ((math.log(alpha1) - math.log(beta))
          / (math.log(alpha1) - math.log(alpha2)))
    return d1, d2, p0


def _golden_max(fun, lo, hi, tol=1e-12):
    """Maximize a unimodal function on [lo, hi] by golden-section search."""
    if hi <= lo:
        return lo, fun(lo)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    mid = 0.5 * (a + b)
    return mid, fun(mid)


def reduction_suprema(system: CarpetSystem):
    """Maxima of the two-group reduction curves over p in [0, 1].

    Both curves divide a concave numerator by a positive affine denominator,
    so they are unimodal and golden-section search finds the exact maximum.
    Returns a dict with each curve's supremum and maximizer, the crossover
    weight p0, and ``dimH``: the supremum of the spliced curve (D1 left of
    p0, D2 right of it), the reduction's own headline value.
    """
    _, _, p0 = baranski_1d_reduction(system, 0.5)

    def curve(index):
        return lambda p: baranski_1d_reduction(system, p)[index]

    x1, v1 = _golden_max(curve(0), 0.0, 1.0)
    x2, v2 = _golden_max(curve(1), 0.0, 1.0)
    cut = min(max(p0, 0.0), 1.0)
    _, left = _golden_max(curve(0), 0.0, cut)
    _, right = _golden_max(curve(1), cut, 1.0)
    return {"sup_D1": v1, "argmax_D1": x1, "sup_D2": v2, "argmax_D2": x2,
            "p0": p0, "dimH": max(left, right)}
