"""Floating-point contour calculus for vector-valued functions.

Values live in a fixed finite-dimensional coordinate space (the weight
truncation of the graded algebra in a fixed monomial basis); the working
seminorm is the max-norm over coordinates.  Circles are integrated with
the uniform-angle trapezoid rule, which is spectrally exact for the
trigonometric-polynomial integrands this system produces; line segments
use the midpoint rule with dyadic refinement.  Laurent coefficients come
from the circle rule, and singularity classification is a bounded-window
heuristic with an explicit threshold: with finitely many samples the tail
of the expansion can only be probed, never decided, so reports say
"within the probed window".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np

from .jetalg import AlgebraPresentation
from .reports import check_entry
from .scalars import Scalar
from .vertex import VertexAlgebra, locality_sides, vertex_op
from .reconstruct import InsertionSeries, insert, mode_of

__all__ = [
    "Annulus",
    "Circle",
    "Line",
    "Curve",
    "ContourFunction",
    "element_vector",
    "series_function",
    "riemann_integral",
    "riemann_integral_tagged",
    "contour_integral",
    "cauchy_coeff",
    "classify_singularity",
    "SingularityReport",
    "mode_agreement_check",
    "residue_swap_check",
    "max_norm",
]


def max_norm(v) -> float:
    v = np.asarray(v)
    return float(np.max(np.abs(v))) if v.size else 0.0


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    orientation: int = 1

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("circle radius must be positive")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    @property
    def start(self) -> complex:
        return self.center + self.radius

    @property
    def end(self) -> complex:
        return self.center + self.radius

    def nodes(self, n: int):
        theta = 2 * pi * np.arange(n) / n * self.orientation
        points = self.center + self.radius * np.exp(1j * theta)
        dgamma = (
            1j * self.radius * np.exp(1j * theta) * self.orientation * (2 * pi / n)
        )
        return points, dgamma


@dataclass(frozen=True)
class Line:
    z0: complex
    z1: complex

    @property
    def start(self) -> complex:
        return self.z0

    @property
    def end(self) -> complex:
        return self.z1


@dataclass(frozen=True)
class Curve:
    """Piecewise path: circles and line segments with matching endpoints."""

    segments: tuple = field(default_factory=tuple)

    def __init__(self, segments):
        object.__setattr__(self, "segments", tuple(segments))
        for a, b in zip(self.segments, self.segments[1:]):
            if abs(a.end - b.start) > 1e-12:
                raise ValueError("consecutive segments do not share endpoints")

    @classmethod
    def circle(cls, center, radius, orientation: int = 1) -> "Curve":
        return cls([Circle(complex(center), float(radius), orientation)])

    @classmethod
    def polygon(cls, vertices) -> "Curve":
        vertices = [complex(v) for v in vertices]
        segs = [
            Line(vertices[i], vertices[(i + 1) % len(vertices)])
            for i in range(len(vertices))
        ]
        return cls(segs)


@dataclass(frozen=True)
class Annulus:
    """Declared domain inner < |z - center| < outer; inner may be 0 (a
    punctured or full disk) and outer may be inf."""

    center: complex = 0j
    inner: float = 0.0
    outer: float = float("inf")

    def __post_init__(self):
        if not 0 <= self.inner < self.outer:
            raise ValueError("need 0 <= inner < outer")

    def contains_radius(self, r: float) -> bool:
        return self.inner < r < self.outer


class ContourFunction:
    """Evaluation procedure from the plane to the coordinate space.

    fn maps one complex point to an array; with vectorized=True it maps an
    array of points to a (npoints, dim) array instead.  excluded lists
    points where evaluation is undefined; quadrature nodes are checked
    against it.  domain optionally declares the annulus on which the
    function is defined; circle quadrature validates its radius against
    it.
    """

    def __init__(self, fn, excluded=(), vectorized: bool = False, domain: Annulus = None):
        self._fn = fn
        self.excluded = tuple(complex(e) for e in excluded)
        self.vectorized = vectorized
        self.domain = domain

    def check_circle(self, center: complex, radius: float):
        if self.domain is None:
            return
        if abs(center - self.domain.center) > 1e-12:
            raise ValueError("circle is not centered in the declared annulus")
        if not self.domain.contains_radius(radius):
            raise ValueError(
                f"radius {radius} outside the declared annulus "
                f"({self.domain.inner}, {self.domain.outer})"
            )

    def check_nodes(self, zs):
        for e in self.excluded:
            if np.any(np.abs(zs - e) < 1e-12):
                raise ValueError(f"quadrature node hits excluded point {e}")

    def eval_many(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        self.check_nodes(zs)
        if self.vectorized:
            return np.asarray(self._fn(zs), dtype=complex)
        return np.stack([np.atleast_1d(np.asarray(self._fn(z), dtype=complex)) for z in zs])

    def __call__(self, z) -> np.ndarray:
        self.check_nodes(np.asarray([z], dtype=complex))
        if self.vectorized:
            return np.asarray(self._fn(np.asarray([z], dtype=complex)), dtype=complex)[0]
        return np.atleast_1d(np.asarray(self._fn(z), dtype=complex))


def _as_contour_function(f) -> ContourFunction:
    return f if isinstance(f, ContourFunction) else ContourFunction(f)


def element_vector(elem, P: AlgebraPresentation) -> np.ndarray:
    """Float coordinates of an exact element over the full monomial basis."""
    return np.array([complex(c) for c in P.coordinates(elem)], dtype=complex)


def series_function(series: InsertionSeries, P: AlgebraPresentation):
    """Numeric evaluator of an insertion series at complex variable values.

    Returns fn(*points) -> coordinate array, broadcasting over numpy
    inputs.  Coefficients are converted to coordinates once.
    """
    coeff_vectors = {
        exps: element_vector(elem, P) for exps, elem in series.coeffs.items()
    }
    dim = len(P.basis_monomials())

    def fn(*points):
        points = [np.asarray(p, dtype=complex) for p in points]
        if len(points) != len(series.variables):
            raise ValueError("wrong number of point arguments")
        shape = np.broadcast(*points).shape if points else ()
        out = np.zeros(shape + (dim,), dtype=complex)
        for exps, vec in coeff_vectors.items():
            mono = np.ones(shape, dtype=complex)
            for p, e in zip(points, exps):
                if e:
                    mono = mono * p**e
            out += mono[..., None] * vec
        return out

    return fn


# -- quadrature ----------------------------------------------------------------


def riemann_integral(f, interval, n: int) -> np.ndarray:
    """Midpoint-rule integral of a vector-valued function over [a, b]."""
    if n < 1:
        raise ValueError("need at least one subdivision")
    f = _as_contour_function(f)
    a, b = interval
    h = (b - a) / n
    ts = a + (np.arange(n) + 0.5) * h
    values = f.eval_many(ts.astype(complex))
    return values.sum(axis=0) * h


def riemann_integral_tagged(f, interval, partition, tags) -> np.ndarray:
    """Riemann sum over an explicit tagged partition (validation mode).

    partition is an increasing sequence from a to b; tags picks one point
    per cell.  Used to compare arbitrary tagged partitions against the
    uniform rule; the production integrator is riemann_integral.
    """
    f = _as_contour_function(f)
    a, b = interval
    xs = list(partition)
    if xs[0] != a or xs[-1] != b or any(x >= y for x, y in zip(xs, xs[1:])):
        raise ValueError("partition must increase from a to b")
    if len(tags) != len(xs) - 1:
        raise ValueError("need one tag per cell")
    for t, lo, hi in zip(tags, xs, xs[1:]):
        if not lo <= t <= hi:
            raise ValueError("tag outside its cell")
    values = f.eval_many(np.asarray(tags, dtype=complex))
    widths = np.diff(np.asarray(xs, dtype=float))
    return (values * widths[:, None]).sum(axis=0)


def _integrate_circle(f: ContourFunction, seg: Circle, nodes: int) -> np.ndarray:
    f.check_circle(seg.center, seg.radius)
    points, dgamma = seg.nodes(nodes)
    values = f.eval_many(points)
    return (values * dgamma[:, None]).sum(axis=0)


def _integrate_line(f: ContourFunction, seg: Line, nodes: int, tol: float) -> np.ndarray:
    direction = seg.z1 - seg.z0

    def estimate(n):
        ts = (np.arange(n) + 0.5) / n
        points = seg.z0 + direction * ts
        values = f.eval_many(points)
        return values.sum(axis=0) * (direction / n)

    n = max(nodes, 8)
    prev = estimate(n)
    while n < (1 << 21):
        n *= 2
        cur = estimate(n)
        if max_norm(cur - prev) / 3.0 <= tol:
            return cur
        prev = cur
    return prev


def contour_integral(f, curve: Curve, nodes: int = 128, line_tol: float = 1e-12) -> np.ndarray:
    """Integral over a piecewise curve: trapezoid on circles (exact for
    trigonometric polynomials up to the node count), refined midpoint on
    line segments."""
    f = _as_contour_function(f)
    total = None
    for seg in curve.segments:
        if isinstance(seg, Circle):
            part = _integrate_circle(f, seg, nodes)
        elif isinstance(seg, Line):
            part = _integrate_line(f, seg, nodes, line_tol)
        else:
            raise TypeError(f"unknown segment type {type(seg).__name__}")
        total = part if total is None else total + part
    if total is None:
        raise ValueError("curve has no segments")
    return total


def cauchy_coeff(f, center, n: int, radius, nodes: int = 128) -> np.ndarray:
    """The n-th Laurent coefficient estimate on a circle of the given radius.

    Computes 1/(2 pi i) times the integral of f(z) / (z - center)^(n + 1)
    over the positively oriented circle; simplified to a plain average in
    the angle, the trapezoid rule is exact for polynomial sections with
    enough nodes.
    """
    f = _as_contour_function(f)
    center = complex(center)
    radius = float(radius)
    f.check_circle(center, radius)
    theta = 2 * pi * np.arange(nodes) / nodes
    points = center + radius * np.exp(1j * theta)
    values = f.eval_many(points)
    weights = np.exp(-1j * n * theta) * radius ** (-n)
    return (values * weights[:, None]).sum(axis=0) / nodes


@dataclass
class SingularityReport:
    kind: str
    order: int
    residue: np.ndarray
    window: int
    threshold: float
    magnitudes: dict

    def __str__(self):
        if self.kind == "pole":
            return f"pole of order {self.order} (within probed window {self.window})"
        return f"{self.kind} (within probed window {self.window})"


def classify_singularity(
    f,
    center,
    probe_radii=(0.5, 0.25),
    window: int = 6,
    threshold: float = 1e-8,
    nodes: int = 128,
) -> SingularityReport:
    """Bounded-window classification of an isolated singularity.

    Probes the negative Laurent coefficients a_{-1} .. a_{-window} at each
    radius and takes the worst magnitude.  Removable: all below the
    threshold.  Pole of order k: a_{-k} significant, deeper ones below.
    Otherwise the deepest probed coefficient is still significant and the
    report says essential within the window.
    """
    if window < 1:
        raise ValueError("window must probe at least a_{-1}")
    f = _as_contour_function(f)
    mags = {}
    residue = None
    for k in range(1, window + 1):
        worst = 0.0
        for r in probe_radii:
            coeff = cauchy_coeff(f, center, -k, r, nodes)
            worst = max(worst, max_norm(coeff))
            if k == 1 and residue is None:
                residue = coeff
        mags[-k] = worst
    significant = [k for k in range(1, window + 1) if mags[-k] > threshold]
    if not significant:
        kind, order = "removable", 0
    elif max(significant) == window:
        kind, order = "essential", window
    else:
        kind, order = "pole", max(significant)
    return SingularityReport(kind, order, residue, window, threshold, mags)


def mode_agreement_check(
    a,
    b,
    V: VertexAlgebra,
    nmax: int = 6,
    radius: float = 0.75,
    nodes: int = 128,
    tolerance: float = 1e-9,
) -> dict:
    """Laurent coefficients of the numeric two-point insertion against the
    exact modes, for |n| <= nmax, in the max-norm."""
    P = V.presentation
    series = insert(["z", Scalar(0)], [a, b], V)
    fn = series_function(series, P)
    f = ContourFunction(lambda zs: fn(zs), vectorized=True)
    gaps = {}
    for n in range(-nmax, nmax + 1):
        numeric = cauchy_coeff(f, 0.0, -n - 1, radius, nodes)
        exact = element_vector(mode_of(a, b, n, V), P)
        gaps[n] = max_norm(numeric - exact)
    worst = max(gaps.values())
    checks = [
        check_entry(
            "numeric_symbolic_modes",
            worst <= tolerance,
            {"worst_gap": worst, "tolerance": tolerance, "nmax": nmax},
        )
    ]
    return {"checks": checks, "gaps": {str(k): v for k, v in gaps.items()}}


def residue_swap_check(
    a,
    b,
    c,
    m: int,
    n: int,
    N: int,
    V: VertexAlgebra,
    inner_radius: float = 0.5,
    outer_radius: float = 1.5,
    nodes: int = 64,
    tolerance: float = 1e-8,
) -> dict:
    """Compare both iterated contour orders of the weighted three-point
    insertion against the exact binomial mode sums.

    The integrand is z^m w^n (z - w)^N times the series of states placed
    at (z, w, 0).  Taking the w-contour inside the z-contour matches the
    mode sum with the first state outermost; swapping the radii matches
    the other association.  Both numeric values and both exact sums must
    agree within the tolerance in the max-norm.
    """
    if not 0 < inner_radius < outer_radius:
        raise ValueError("need 0 < inner radius < outer radius")
    P = V.presentation
    series = insert(["z", "w", Scalar(0)], [a, b, c], V)
    fn = series_function(series, P)

    def double_residue(r_z: float, r_w: float) -> np.ndarray:
        # Res_z Res_w of the integrand: on circles |z| = r_z, |w| = r_w the
        # residue in each variable is the node average of g(z, w) * z * w,
        # exact for Laurent polynomials whose exponents stay below the node
        # count.  Which radius is larger decides the expansion region.
        theta = 2 * pi * np.arange(nodes) / nodes
        Z = (r_z * np.exp(1j * theta))[:, None]
        W = (r_w * np.exp(1j * theta))[None, :]
        vals = fn(
            np.broadcast_to(Z, (nodes, nodes)), np.broadcast_to(W, (nodes, nodes))
        )
        integrand = (Z**m * W**n * (Z - W) ** N * Z * W)[..., None] * vals
        return integrand.sum(axis=(0, 1)) / (nodes * nodes)

    order_w_inner = double_residue(outer_radius, inner_radius)
    order_z_inner = double_residue(inner_radius, outer_radius)

    lhs, rhs = locality_sides(
        a, b, c, m, n, N, V, lambda x, y, k: vertex_op(x, y, V)[k]
    )
    lhs_vec = element_vector(lhs, P)
    rhs_vec = element_vector(rhs, P)

    gap_orders = max_norm(order_w_inner - order_z_inner)
    gap_lhs = max_norm(order_w_inner - lhs_vec)
    gap_rhs = max_norm(order_z_inner - rhs_vec)
    checks = [
        check_entry(
            "iterated_orders_agree",
            gap_orders <= tolerance,
            {"max_gap": gap_orders, "tolerance": tolerance},
        ),
        check_entry(
            "matches_mode_sum_first_order",
            gap_lhs <= tolerance,
            {"max_gap": gap_lhs, "tolerance": tolerance},
        ),
        check_entry(
            "matches_mode_sum_second_order",
            gap_rhs <= tolerance,
            {"max_gap": gap_rhs, "tolerance": tolerance},
        ),
    ]
    return {
        "checks": checks,
        "params": {"m": m, "n": n, "N": N, "nodes": nodes},
        "exact_sides_equal": lhs == rhs,
    }
