"""One-parameter polynomial families and their birth-death events.

A family is a real polynomial F(t, x) on R^k x R^d (k in {0, 1} is what the
tracing code exercises).  Fiber 3-jets come from exact polynomial
differentiation, never finite differences.  Critical points are found by
Newton iteration from a seed grid; birth-death parameter values are located
by bisection on critical-point counts and by refining minima of the
smallest-magnitude Hessian eigenvalue along matched tracks.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .jet_core import (
    BIRTH_DEATH,
    DEGENERATE,
    GmfClass,
    Jet3,
    classify,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# polynomial families


@dataclass(frozen=True)
class PolyFamily:
    """Terms are (powers, coeff) with powers of length param_dim + fiber_dim.

    The first param_dim exponents belong to the parameters, the rest to the
    fiber variables.
    """

    param_dim: int
    fiber_dim: int
    terms: tuple

    def __post_init__(self):
        k, d = int(self.param_dim), int(self.fiber_dim)
        if k < 0 or d < 1:
            raise ValueError("need param_dim >= 0 and fiber_dim >= 1")
        norm = []
        for powers, coeff in self.terms:
            powers = tuple(int(p) for p in powers)
            if len(powers) != k + d or any(p < 0 for p in powers):
                raise ValueError(f"bad powers {powers} for param_dim={k}, fiber_dim={d}")
            norm.append((powers, float(coeff)))
        object.__setattr__(self, "terms", tuple(norm))


def _diff_terms(terms, var):
    out = []
    for powers, coeff in terms:
        p = powers[var]
        if p:
            q = list(powers)
            q[var] = p - 1
            out.append((tuple(q), coeff * p))
    return tuple(out)


def _eval_terms(terms, point):
    val = 0.0
    for powers, coeff in terms:
        v = coeff
        for x, p in zip(point, powers):
            if p:
                v *= x ** p
        val += v
    return val


class _FamilyCalculus:
    """Cached exact derivatives of a family with respect to fiber variables."""

    def __init__(self, F: PolyFamily):
        self.F = F
        k, d = F.param_dim, F.fiber_dim
        self.k, self.d = k, d
        self.grad = [_diff_terms(F.terms, k + j) for j in range(d)]
        self.hess = [
            [_diff_terms(self.grad[j], k + l) for l in range(j, d)] for j in range(d)
        ]
        self.third = {}
        for j in range(d):
            for l in range(j, d):
                for m in range(l, d):
                    self.third[(j, l, m)] = _diff_terms(self.hess[j][l - j], k + m)

    def point(self, t, x):
        return tuple(t) + tuple(x)

    def value(self, t, x) -> float:
        return _eval_terms(self.F.terms, self.point(t, x))

    def gradient(self, t, x) -> np.ndarray:
        pt = self.point(t, x)
        return np.array([_eval_terms(g, pt) for g in self.grad])

    def hessian(self, t, x) -> np.ndarray:
        pt = self.point(t, x)
        d = self.d
        H = np.zeros((d, d))
        for j in range(d):
            for l in range(j, d):
                v = _eval_terms(self.hess[j][l - j], pt)
                H[j, l] = v
                H[l, j] = v
        return H

    def third_tensor_entries(self, t, x):
        pt = self.point(t, x)
        return {key: _eval_terms(terms, pt) for key, terms in self.third.items()}


_CALCULUS_CACHE: dict = {}


def _calculus(F: PolyFamily) -> _FamilyCalculus:
    key = (F.param_dim, F.fiber_dim, F.terms)
    if key not in _CALCULUS_CACHE:
        _CALCULUS_CACHE[key] = _FamilyCalculus(F)
    return _CALCULUS_CACHE[key]


def fiber_jet3(F: PolyFamily, t, x) -> Jet3:
    """Degree-3 Taylor data of f_t at x, by exact polynomial differentiation."""
    t = tuple(float(v) for v in np.atleast_1d(t)) if np.ndim(t) else (float(t),) if F.param_dim == 1 else tuple()
    if len(t) != F.param_dim:
        raise ValueError(f"parameter has {len(t)} entries, expected {F.param_dim}")
    x = np.asarray(x, dtype=float).reshape(F.fiber_dim)
    calc = _calculus(F)
    d = F.fiber_dim
    c = calc.value(t, x)
    lin = calc.gradient(t, x)
    quad = calc.hessian(t, x) / 2.0
    quad = np.triu(quad) + np.triu(quad, 1).T  # exactly symmetric storage
    cubic = {}
    for (j, l, m), v in calc.third_tensor_entries(t, x).items():
        if v != 0.0:
            cubic[(j + 1, l + 1, m + 1)] = v / 6.0
    return Jet3(d, c, lin, quad, cubic)


# ---------------------------------------------------------------------------
# critical points in a fiber


@dataclass(frozen=True)
class Tolerances:
    newton_tol: float = 1e-10
    classify_tol: float = 1e-9
    event_tol: float = 1e-5
    max_iter: int = 50
    dedup_factor: float = 10.0

    @property
    def dedup_radius(self) -> float:
        return self.dedup_factor * self.newton_tol


@dataclass(frozen=True)
class CriticalPoint:
    t: float | None
    x: np.ndarray
    value: float
    cls: GmfClass
    grad_norm: float


def _newton(calc: _FamilyCalculus, t, x0, box, tol: Tolerances):
    """Newton iteration for grad f_t = 0; returns the point or None.

    Iteration continues after the gradient criterion is met: at a multiple
    root Newton converges only linearly and stops far from the point if cut
    off at the first small gradient, which would leave distinct copies of
    the same critical point beyond the dedup radius.  The loop ends when
    the step stalls or the budget runs out.
    """
    x = np.array(x0, dtype=float)
    lo, hi = box
    diam = float(np.max(hi - lo))
    best = None
    for _ in range(tol.max_iter):
        g = calc.gradient(t, x)
        if float(np.linalg.norm(g)) <= tol.newton_tol:
            best = x.copy()
        H = calc.hessian(t, x)
        try:
            step = np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        xn = x - step
        if float(np.max(np.abs(xn))) > 10.0 * (diam + 1.0):
            break
        x = xn
        if float(np.linalg.norm(step)) <= 1e-14 * (1.0 + float(np.linalg.norm(x))):
            break
    if float(np.linalg.norm(calc.gradient(t, x))) <= tol.newton_tol:
        return x
    return best


def _box_arrays(box, d):
    lo = np.asarray([b[0] for b in box], dtype=float)
    hi = np.asarray([b[1] for b in box], dtype=float)
    if lo.shape != (d,) or np.any(hi <= lo):
        raise ValueError("box must be a list of (lo, hi) pairs, one per fiber variable")
    return lo, hi


def _dedup(points, radius):
    kept = []
    for x in points:
        if all(np.linalg.norm(x - y) > radius for y in kept):
            kept.append(x)
    return kept


def fiber_critical_points(
    F: PolyFamily,
    t,
    box,
    grid_per_axis: int | None = None,
    tol: Tolerances = Tolerances(),
    seeds=None,
):
    """Newton from a seed grid; converged in-box points, deduplicated.

    Non-converged seeds are dropped (a count is logged).  Each point is
    classified from its fiber 3-jet, whose linear part is the gradient at
    the point and hence ~0 by construction.
    """
    t = tuple(np.atleast_1d(np.asarray(t, dtype=float))) if F.param_dim else tuple()
    if len(t) != F.param_dim:
        raise ValueError(f"parameter has {len(t)} entries, expected {F.param_dim}")
    calc = _calculus(F)
    d = F.fiber_dim
    lo, hi = _box_arrays(box, d)
    if seeds is None:
        if grid_per_axis is None:
            grid_per_axis = _auto_grid(d)
        axes = [np.linspace(lo[j], hi[j], grid_per_axis) for j in range(d)]
        seeds = [np.array(p) for p in itertools.product(*axes)]
    dropped = 0
    found = []
    for s in seeds:
        x = _newton(calc, t, s, (lo, hi), tol)
        if x is None:
            dropped += 1
            continue
        if np.all(x >= lo - 1e-12) and np.all(x <= hi + 1e-12):
            found.append(x)
    if dropped:
        log.info("fiber_critical_points: %d of %d seeds did not converge", dropped, len(seeds))
    points = []
    for x in _dedup(found, tol.dedup_radius):
        jet = fiber_jet3(F, t, x)
        cls = classify(jet, tol.classify_tol)
        points.append(
            CriticalPoint(
                t=t[0] if F.param_dim == 1 else None,
                x=x,
                value=calc.value(t, x),
                cls=cls,
                grad_norm=float(np.linalg.norm(calc.gradient(t, x))),
            )
        )
    points.sort(key=lambda p: tuple(p.x))
    return points


# ---------------------------------------------------------------------------
# birth-death tracing along a one-parameter family


@dataclass(frozen=True)
class BirthDeathEvent:
    t_star: float
    x_star: np.ndarray
    index: int
    det_hessian: float


@dataclass(frozen=True)
class DegenerateFlag:
    t: float
    x: np.ndarray
    reason: str


@dataclass(frozen=True)
class TraceResult:
    events: tuple
    degenerate: tuple
    warnings: tuple
    samples: tuple  # (t, list of CriticalPoint) per grid value


def _min_eig(calc, t, x):
    """Signed smallest-magnitude eigenvalue of the Hessian of f_t."""
    w = np.linalg.eigvalsh(calc.hessian(t, x))
    return float(w[np.argmin(np.abs(w))])


def _continue_point(calc, t, x_prev, box, tol):
    return _newton(calc, (t,), x_prev, box, tol)


def _auto_grid(d: int) -> int:
    # cap the seed count so high-dimensional fibers stay tractable
    if d == 1:
        return 8
    return max(2, int(round(64.0 ** (1.0 / d))))


def _dt_calculus(F: PolyFamily) -> _FamilyCalculus:
    return _calculus(PolyFamily(F.param_dim, F.fiber_dim, _diff_terms(F.terms, 0)))


def _third_slices(calc, t, x):
    d = calc.d
    T = np.zeros((d, d, d))
    for (i, j, k), v in calc.third_tensor_entries(t, x).items():
        for a, b, c in set(itertools.permutations((i, j, k))):
            T[a, b, c] = v
    return T  # T[:, :, c] = dH/dx_c


def _refine_fold(calc, calc_dt, t, x, box, tol: Tolerances):
    """Newton on the augmented system (grad f_t(x), mu_min(H_t(x))) = 0 in (x, t).

    Locates the degenerate point itself rather than a nearby critical
    point, which one-dimensional refinements cannot do when the smallest
    eigenvalue touches zero without crossing (the kernel-cubic test at the
    returned point then reads the true local model, not grid-scale noise).
    Returns (t, x) or None if the iteration fails to converge.
    """
    d = calc.d
    x = np.array(x, dtype=float)
    t = float(t)
    lo, hi = box
    diam = float(np.max(hi - lo))
    # polish until the step stalls: the residual can be quadratic in the
    # distance to the fold (e.g. a tangential touch), so a residual-only
    # stop would accept points ~sqrt(tol) away
    for _ in range(tol.max_iter):
        g = calc.gradient((t,), x)
        H = calc.hessian((t,), x)
        w, V = np.linalg.eigh(H)
        i0 = int(np.argmin(np.abs(w)))
        v = V[:, i0]
        G = np.append(g, float(w[i0]))
        J = np.zeros((d + 1, d + 1))
        J[:d, :d] = H
        J[:d, d] = calc_dt.gradient((t,), x)
        T = _third_slices(calc, (t,), x)
        for c in range(d):
            J[d, c] = float(v @ T[:, :, c] @ v)
        J[d, d] = float(v @ calc_dt.hessian((t,), x) @ v)
        try:
            delta = np.linalg.solve(J, G)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(delta)):
            break
        xn = x - delta[:d]
        tn = t - float(delta[d])
        if float(np.max(np.abs(xn))) > 10.0 * (diam + 1.0) or not math.isfinite(tn):
            break
        x, t = xn, tn
        scale_pt = 1.0 + float(np.linalg.norm(x)) + abs(t)
        if float(np.linalg.norm(delta)) <= 1e-14 * scale_pt:
            break
    g = calc.gradient((t,), x)
    mu = _min_eig(calc, (t,), x)
    if float(np.linalg.norm(np.append(g, mu))) <= tol.newton_tol:
        return t, x
    return None


def _match_tracks(prev_pts, next_pts, dedup_radius, warnings):
    """Greedy nearest-neighbor matching; ambiguities are surfaced, not resolved."""
    pairs = []
    if not prev_pts or not next_pts:
        return pairs
    dists = [
        (np.linalg.norm(p.x - q.x), i, j)
        for i, p in enumerate(prev_pts)
        for j, q in enumerate(next_pts)
    ]
    dists.sort(key=lambda r: r[0])
    used_i, used_j = set(), set()
    for dist, i, j in dists:
        if i in used_i or j in used_j:
            continue
        close = [jj for jj, q in enumerate(next_pts)
                 if jj != j and abs(np.linalg.norm(prev_pts[i].x - q.x) - dist) <= dedup_radius]
        if close:
            warnings.append(
                f"track-matching ambiguity near x={prev_pts[i].x.tolist()}: "
                f"candidates {j} and {close} at equal distance"
            )
        used_i.add(i)
        used_j.add(j)
        pairs.append((i, j))
    return pairs


def trace_birth_death(
    F: PolyFamily,
    t0: float,
    t1: float,
    steps: int = 41,
    box=None,
    tol: Tolerances = Tolerances(),
    grid_per_axis: int | None = None,
) -> TraceResult:
    """Locate birth-death parameter values of f_t on [t0, t1].

    Candidate events come from changes in the critical-point count between
    grid samples (refined by bisection on the count to
    |dt| <= 1e-10 * (t1 - t0)) and from sign changes or near-zero local
    minima of the smallest-magnitude Hessian eigenvalue along matched
    tracks (refined by bisection or golden-section).  Each candidate is
    verified through classification of the fiber jet at (t*, x*); a
    degenerate verdict is reported as a flag, not an event.
    """
    if F.param_dim != 1:
        raise ValueError("tracing requires a one-parameter family")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if t1 <= t0:
        raise ValueError("need t1 > t0")
    d = F.fiber_dim
    if box is None:
        box = [(-2.0, 2.0)] * d
    lo, hi = _box_arrays(box, d)
    diam = float(np.max(hi - lo))
    calc = _calculus(F)
    span = t1 - t0
    dt_min = 1e-10 * span
    warnings: list = []

    ts = np.linspace(t0, t1, steps)
    samples = [fiber_critical_points(F, (t,), box, grid_per_axis, tol) for t in ts]

    def count_at(t, seed_pts):
        seeds = [p for p in seed_pts]
        pts = []
        for s in seeds:
            x = _newton(calc, (t,), s, (lo, hi), tol)
            if x is not None and np.all(x >= lo - 1e-12) and np.all(x <= hi + 1e-12):
                pts.append(x)
        return _dedup(pts, tol.dedup_radius)

    candidates = []  # (t_star, x_star)

    # count changes between consecutive samples
    for a in range(steps - 1):
        ca, cb = len(samples[a]), len(samples[a + 1])
        if ca == cb:
            continue
        ta, tb = float(ts[a]), float(ts[a + 1])
        seed_pool = [p.x for p in samples[a]] + [p.x for p in samples[a + 1]]
        left_count = ca
        while tb - ta > dt_min:
            tm = 0.5 * (ta + tb)
            cm = len(count_at(tm, seed_pool))
            if cm == left_count:
                ta = tm
            else:
                tb = tm
        t_star = 0.5 * (ta + tb)
        rich_t = ta if ca > cb else tb
        rich = count_at(rich_t, seed_pool)
        if len(rich) >= 2:
            # the closest pair is always a candidate; further pairs within
            # the merge separation cover simultaneous events at distinct
            # fiber locations (a count jump of 4 means two merging pairs)
            merge_sep = max(1e3 * tol.dedup_radius, 1e-4 * (1.0 + diam))
            remaining = list(rich)
            while len(remaining) >= 2:
                best = None
                for p, q in itertools.combinations(remaining, 2):
                    dist = float(np.linalg.norm(p - q))
                    if best is None or dist < best[0]:
                        best = (dist, p, q)
                if best[0] > merge_sep and len(remaining) < len(rich):
                    break
                candidates.append((t_star, (best[1] + best[2]) / 2.0))
                remaining = [r for r in remaining if r is not best[1] and r is not best[2]]
        elif rich:
            candidates.append((t_star, rich[0]))
        else:
            warnings.append(f"count change near t={t_star} but no points to merge")

    # tracks: eigenvalue sign changes and near-zero minima
    tracks = []  # list of lists of (sample_index, CriticalPoint)
    open_tracks = [[(0, p)] for p in samples[0]]
    for a in range(1, steps):
        pairs = _match_tracks([tr[-1][1] for tr in open_tracks], samples[a],
                              tol.dedup_radius, warnings)
        matched_next = set()
        still_open = []
        by_prev = {i: j for i, j in pairs}
        for i, tr in enumerate(open_tracks):
            if i in by_prev:
                j = by_prev[i]
                tr.append((a, samples[a][j]))
                matched_next.add(j)
                still_open.append(tr)
            else:
                tracks.append(tr)
        for j, p in enumerate(samples[a]):
            if j not in matched_next:
                still_open.append([(a, p)])
        open_tracks = still_open
    tracks.extend(open_tracks)

    for tr in tracks:
        if len(tr) < 2:
            continue
        mus = [_min_eig(calc, (float(ts[a]),), p.x) for a, p in tr]
        for u in range(len(tr) - 1):
            (a, pa), (b, pb) = tr[u], tr[u + 1]
            if mus[u] == 0.0 or mus[u] * mus[u + 1] < 0.0:
                ta, tb = float(ts[a]), float(ts[b])
                xa = pa.x
                sign_left = math.copysign(1.0, mus[u]) if mus[u] != 0.0 else 0.0
                while tb - ta > dt_min:
                    tm = 0.5 * (ta + tb)
                    xm = _continue_point(calc, tm, xa, (lo, hi), tol)
                    if xm is None:
                        break
                    mu = _min_eig(calc, (tm,), xm)
                    if mu != 0.0 and math.copysign(1.0, mu) == sign_left:
                        ta, xa = tm, xm
                    else:
                        tb = tm
                x_star = _continue_point(calc, 0.5 * (ta + tb), xa, (lo, hi), tol)
                if x_star is None:
                    x_star = xa
                candidates.append((0.5 * (ta + tb), x_star))
        # interior local minima of |mu| without a sign change
        for u in range(1, len(tr) - 1):
            if abs(mus[u]) < abs(mus[u - 1]) and abs(mus[u]) <= abs(mus[u + 1]):
                ta, tb = float(ts[tr[u - 1][0]]), float(ts[tr[u + 1][0]])
                if mus[u - 1] * mus[u] < 0.0 or mus[u] * mus[u + 1] < 0.0:
                    continue  # handled by the sign-change branch
                refined = _golden_min(calc, ta, tb, tr[u][1].x, (lo, hi), tol, span)
                if refined is not None:
                    candidates.append(refined)

    # polish each candidate on the augmented fold system; keep the original
    # when the solver fails or wanders off (more than a grid cell in t, or
    # out of the fiber box)
    calc_dt = _dt_calculus(F)
    grid_dt = span / (steps - 1)
    refined = []
    for t_star, x_star in candidates:
        ref = _refine_fold(calc, calc_dt, t_star, x_star, (lo, hi), tol)
        if ref is not None:
            t_r, x_r = ref
            if (
                abs(t_r - t_star) <= 2.0 * grid_dt
                and np.all(x_r >= lo - 1e-9) and np.all(x_r <= hi + 1e-9)
            ):
                t_star, x_star = t_r, np.asarray(x_r)
        refined.append((t_star, x_star))

    events: list = []
    degenerate: list = []
    for t_star, x_star in refined:
        jet = fiber_jet3(F, (t_star,), x_star)
        cls = classify(jet, tol.event_tol)
        H = calc.hessian((t_star,), x_star)
        det_h = float(np.linalg.det(H))
        if cls.kind == BIRTH_DEATH:
            if _near_duplicate(events, t_star, x_star, span):
                continue
            events.append(BirthDeathEvent(t_star, x_star, cls.index, det_h))
        elif cls.kind == DEGENERATE:
            if _near_duplicate(degenerate, t_star, x_star, span):
                continue
            degenerate.append(DegenerateFlag(t_star, x_star, cls.reason))
        # a nondegenerate verdict means the candidate was a benign minimum

    events.sort(key=lambda e: e.t_star)
    degenerate.sort(key=lambda f: f.t)
    return TraceResult(tuple(events), tuple(degenerate), tuple(warnings),
                       tuple((float(t), pts) for t, pts in zip(ts, samples)))


def _near_duplicate(records, t_star, x_star, span):
    for r in records:
        t_r = r.t_star if isinstance(r, BirthDeathEvent) else r.t
        x_r = r.x_star if isinstance(r, BirthDeathEvent) else r.x
        if abs(t_r - t_star) <= 1e-6 * span and np.linalg.norm(x_r - x_star) <= 1e-4:
            return True
    return False


def _golden_min(calc, ta, tb, x_seed, box, tol, span):
    """Golden-section minimization of |mu(t)| along a continued track."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0

    def mu_at(t, x_warm):
        x = _continue_point(calc, t, x_warm, box, tol)
        if x is None:
            return None, None
        return abs(_min_eig(calc, (t,), x)), x

    a, b = ta, tb
    x_warm = x_seed
    c = b - invphi * (b - a)
    dd = a + invphi * (b - a)
    fc, xc = mu_at(c, x_warm)
    fd, xd = mu_at(dd, x_warm)
    if fc is None or fd is None:
        return None
    while b - a > 1e-12 * span:
        if fc < fd:
            b, dd, fd, xd = dd, c, fc, xc
            c = b - invphi * (b - a)
            fc, xc = mu_at(c, xd if xd is not None else x_seed)
            if fc is None:
                return None
        else:
            a, c, fc, xc = c, dd, fd, xd
            dd = a + invphi * (b - a)
            fd, xd = mu_at(dd, xc if xc is not None else x_seed)
            if fd is None:
                return None
    t_star = 0.5 * (a + b)
    x_star = _continue_point(calc, t_star, xc if xc is not None else x_seed, box, tol)
    if x_star is None:
        return None
    return t_star, x_star


# ---------------------------------------------------------------------------
# axiom report


PASS = "Pass"
FAIL = "Fail"
NOT_CHECKED = "NotChecked"


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    verdict: str
    note: str


@dataclass(frozen=True)
class FamilyAxiomReport:
    verdicts: tuple
    events: tuple
    degenerate: tuple
    warnings: tuple

    def verdict(self, axiom: str) -> str:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v.verdict
        raise KeyError(axiom)


def _boundary_min(calc, t, lo, hi, grid_per_axis):
    d = len(lo)
    best = math.inf
    axes = [np.linspace(lo[j], hi[j], grid_per_axis) for j in range(d)]
    for face_var in range(d):
        for face_val in (lo[face_var], hi[face_var]):
            free = [axes[j] if j != face_var else np.array([face_val]) for j in range(d)]
            for p in itertools.product(*free):
                best = min(best, calc.value(t, np.array(p)))
    return best


def check_family_axioms(
    F: PolyFamily,
    t0: float | None = None,
    t1: float | None = None,
    steps: int = 41,
    box=None,
    tol: Tolerances = Tolerances(),
    grid_per_axis: int | None = None,
) -> FamilyAxiomReport:
    """Sampled verdicts for the generalized-Morse family conditions.

    (i) properness proxy: at each sampled t the box-boundary minimum of f_t
        must lie above every interior critical value found (a boundary-
        dominance surrogate for behavior at infinity; a Fail here flags
        possible escape, it does not disprove properness).
    (ii) graph embeddings x -> (f(x), x) are embeddings by construction;
        recorded, not independently verified.
    (iii) the parameter projection is a coordinate projection, a submersion
        by construction.
    (iv) every critical point found must classify as nondegenerate or
        birth-death; any Degenerate verdict (at a sample or at a refined
        event) fails the axiom.
    """
    d = F.fiber_dim
    if box is None:
        box = [(-2.0, 2.0)] * d
    lo, hi = _box_arrays(box, d)
    calc = _calculus(F)

    events: tuple = ()
    degenerate: list = []
    warnings: list = []

    if F.param_dim == 0:
        grids = [tuple()]
        sampled = [(tuple(), fiber_critical_points(F, tuple(), box, grid_per_axis, tol))]
    elif F.param_dim == 1:
        if t0 is None or t1 is None:
            raise ValueError("one-parameter family needs a t-window")
        trace = trace_birth_death(F, t0, t1, steps, box, tol, grid_per_axis)
        events = trace.events
        degenerate.extend(trace.degenerate)
        warnings.extend(trace.warnings)
        sampled = [((t,), pts) for t, pts in trace.samples]
    else:
        raise ValueError("axiom checks support param_dim 0 or 1")

    prop_ok, prop_note = True, "boundary minimum above interior critical values at all samples"
    boundary_grid = grid_per_axis if grid_per_axis is not None else 8
    for t, pts in sampled:
        if not pts:
            continue
        bmin = _boundary_min(calc, t, lo, hi, boundary_grid)
        vmax = max(p.value for p in pts)
        if bmin <= vmax:
            prop_ok = False
            prop_note = (
                f"boundary minimum {bmin:.6g} not above interior critical value "
                f"{vmax:.6g} at t={t}; possible escape through the box"
            )
            break

    for t, pts in sampled:
        for p in pts:
            if p.cls.kind == DEGENERATE:
                degenerate.append(DegenerateFlag(
                    t[0] if t else 0.0, p.x, p.cls.reason))

    iv_ok = not degenerate
    verdicts = (
        AxiomVerdict("properness", PASS if prop_ok else FAIL, prop_note),
        AxiomVerdict("embedding", PASS, "graph embedding by construction; not independently verified"),
        AxiomVerdict("submersion", PASS, "coordinate projection, submersion by construction"),
        AxiomVerdict(
            "gmf",
            PASS if iv_ok else FAIL,
            "all critical points nondegenerate or birth-death"
            if iv_ok
            else f"degenerate point at t={degenerate[0].t:.6g}: {degenerate[0].reason}",
        ),
    )
    return FamilyAxiomReport(verdicts, events, tuple(degenerate), tuple(warnings))


# ---------------------------------------------------------------------------
# presets and JSON schema


def preset_family(name: str) -> PolyFamily:
    """Built-in one-parameter families on fiber boxes [-2, 2]^d.

    cusp: x^3 - t x.
    suspended-cusp-i: x^3 - t x - y_1^2 - ... - y_i^2 + y_{i+1}^2
        (the cusp axis plus i negative squares, padded by one positive
        square), so the event has index i.
    swallowtail: x^4 - t x (degenerate at t = 0: the fiber jet there has
        vanishing kernel cubic).
    """
    if name == "cusp":
        return PolyFamily(1, 1, (((0, 3), 1.0), ((1, 1), -1.0)))
    if name == "swallowtail":
        return PolyFamily(1, 1, (((0, 4), 1.0), ((1, 1), -1.0)))
    if name.startswith("suspended-cusp-"):
        try:
            i = int(name.rsplit("-", 1)[1])
        except ValueError:
            raise KeyError(name) from None
        if i < 0:
            raise KeyError(name)
        d = i + 2
        terms = [((0,) + (3,) + (0,) * (d - 1), 1.0), ((1,) + (1,) + (0,) * (d - 1), -1.0)]
        for j in range(i):
            pw = [0] * (1 + d)
            pw[2 + j] = 2
            terms.append((tuple(pw), -1.0))
        pw = [0] * (1 + d)
        pw[1 + d - 1] = 2
        terms.append((tuple(pw), 1.0))
        return PolyFamily(1, d, tuple(terms))
    raise KeyError(name)


def family_to_json_dict(F: PolyFamily) -> dict:
    return {
        "param_dim": F.param_dim,
        "fiber_dim": F.fiber_dim,
        "terms": [{"powers": list(p), "coeff": c} for p, c in F.terms],
    }


def family_from_json_dict(data: dict) -> PolyFamily:
    try:
        k = int(data["param_dim"])
        d = int(data["fiber_dim"])
        terms = tuple(
            (tuple(int(p) for p in item["powers"]), float(item["coeff"]))
            for item in data["terms"]
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed family JSON: {e}") from e
    return PolyFamily(k, d, terms)
