"""
Zero finder
Argument-principle counting on rectangles, moment-based isolation, recursive
subdivision and multiplicity-aware Newton refinement
"""

import math
from typing import Callable

import numpy as np
from scipy.integrate import fixed_quad
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from ZS_engine.data_models.zeta_models import ZeroLocation
from ZS_engine.errors import BoundaryZero, InvalidLength, NonConvergence
from utils.util import log_debug, log_info


Rect = tuple[float, float, float, float]
LogDerivative = Callable[[np.ndarray], np.ndarray]

# irrational-looking split points keep split lines off lattice-like zero sets
SPLIT_FRACTIONS = (0.4717, 0.5281, 0.4129, 0.5873, 0.3571)
MAX_EDGE_DEPTH = 24
CLEARANCE_SAMPLES = 33
WINDING_SLACK = 0.05
NEWTON_STEPS = 60


def _corners(rect: Rect) -> list[complex]:
    x0, x1, y0, y1 = rect
    return [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]


def _diameter(rect: Rect) -> float:
    x0, x1, y0, y1 = rect
    return math.hypot(x1 - x0, y1 - y0)


class _ContourIntegrator:
    """Moments (1/2 pi i) contour integral of (z - c)^k g(z) dz, k = 0, 1, 2."""

    def __init__(self, log_derivative: LogDerivative, quad_points: int, tol: float):
        self.g = log_derivative
        self.quad_points = quad_points
        self.tol = tol

    def _evaluate(self, z: np.ndarray) -> np.ndarray:
        with np.errstate(all="ignore"):
            values = np.asarray(self.g(z), dtype=complex)
        if not np.all(np.isfinite(values)):
            raise BoundaryZero(
                "Log-derivative is not finite on a contour",
                suggested_shift=max(1e3 * self.tol, 1e-6),
            )
        return values

    def _check_clearance(self, z0: complex, z1: complex) -> None:
        z = z0 + np.linspace(0.0, 1.0, CLEARANCE_SAMPLES) * (z1 - z0)
        values = self._evaluate(z)
        nearest = float(np.min(1.0 / np.abs(values)))
        if nearest < self.tol:
            raise BoundaryZero(
                f"Zero within {nearest:.3g} of the edge {z0} -> {z1}",
                suggested_shift=max(1e3 * self.tol, 1e-6 * abs(z1 - z0)),
            )

    def _edge(self, z0: complex, z1: complex, center: complex, radius: float, depth: int) -> np.ndarray:
        # offsets are scaled by the rectangle radius so all three moments are O(1)
        delta = z1 - z0

        def integrand(u):
            z = z0 + np.asarray(u) * delta
            values = self._evaluate(z)
            offset = (z - center) / radius
            return np.stack([values, values * offset, values * offset * offset]) * delta

        coarse, _ = fixed_quad(integrand, 0.0, 1.0, n=self.quad_points)
        fine, _ = fixed_quad(integrand, 0.0, 1.0, n=2 * self.quad_points)
        if np.all(np.abs(fine - coarse) <= 1e-10 * np.maximum(1.0, np.abs(fine))):
            return fine
        if depth >= MAX_EDGE_DEPTH:
            raise BoundaryZero(
                f"Edge integral {z0} -> {z1} does not converge; a zero sits on or next to it",
                suggested_shift=max(1e3 * self.tol, 1e-6 * abs(delta)),
            )
        middle = z0 + delta / 2.0
        return self._edge(z0, middle, center, radius, depth + 1) + self._edge(middle, z1, center, radius, depth + 1)

    def moments(self, rect: Rect) -> tuple[int, np.ndarray]:
        """
        Winding count and the moments sum m_j (z_j - c)^k about the rectangle center.

        Raises:
            BoundaryZero: If the count is not close to an integer or a zero is on the contour
        """
        x0, x1, y0, y1 = rect
        center = complex((x0 + x1) / 2.0, (y0 + y1) / 2.0)
        radius = _diameter(rect) / 2.0
        corners = _corners(rect)
        total = np.zeros(3, dtype=complex)
        for index in range(4):
            z0, z1 = corners[index], corners[(index + 1) % 4]
            self._check_clearance(z0, z1)
            total += self._edge(z0, z1, center, radius, 0)
        moments = total / (2j * math.pi) * np.array([1.0, radius, radius * radius])
        count = moments[0]
        nearest = round(count.real)
        if abs(count - nearest) > WINDING_SLACK:
            raise BoundaryZero(
                f"Winding number {count.real:.4f}{count.imag:+.4f}i is not an integer on {rect}",
                suggested_shift=1e-3 * max(1.0, _diameter(rect)),
            )
        return int(nearest), moments


class _ZeroSearch:
    def __init__(self, log_derivative: LogDerivative, tol: float, max_depth: int, quad_points: int):
        self.g = log_derivative
        self.tol = tol
        self.max_depth = max_depth
        self.integrator = _ContourIntegrator(log_derivative, quad_points, tol)

    def _scalar(self, z: complex) -> complex:
        with np.errstate(all="ignore"):
            return complex(np.asarray(self.g(np.array([z], dtype=complex)))[0])

    def _newton(self, start: complex, multiplicity: int) -> complex | None:
        z = start
        for _ in range(NEWTON_STEPS):
            value = self._scalar(z)
            if not np.isfinite(value):
                # landed on the zero
                return z
            if value == 0:
                return None
            step = multiplicity / value
            z = z - step
            if abs(step) <= 1e-3 * self.tol + 4e-16 * abs(z):
                return z
        return None

    def _isolated(self, z: complex, multiplicity: int) -> bool:
        half = max(100.0 * self.tol, 1e-9 * max(1.0, abs(z)))
        square = (z.real - half, z.real + half, z.imag - half, z.imag + half)
        try:
            count, _ = self.integrator.moments(square)
        except BoundaryZero:
            return False
        return count == multiplicity

    def _split(self, rect: Rect, fraction: float) -> tuple[Rect, Rect]:
        x0, x1, y0, y1 = rect
        if x1 - x0 >= y1 - y0:
            cut = x0 + fraction * (x1 - x0)
            return (x0, cut, y0, y1), (cut, x1, y0, y1)
        cut = y0 + fraction * (y1 - y0)
        return (x0, x1, y0, cut), (x0, x1, cut, y1)

    def _children(self, rect: Rect, count: int) -> list[tuple[Rect, int, np.ndarray]]:
        """Split the longer side; retried at another fraction when the cut meets a zero."""
        for attempt in Retrying(
            stop=stop_after_attempt(len(SPLIT_FRACTIONS)),
            retry=retry_if_exception_type(BoundaryZero),
            reraise=True,
        ):
            with attempt:
                fraction = SPLIT_FRACTIONS[attempt.retry_state.attempt_number - 1]
                children = []
                for child in self._split(rect, fraction):
                    child_count, child_moments = self.integrator.moments(child)
                    children.append((child, child_count, child_moments))
                if sum(c[1] for c in children) != count:
                    raise BoundaryZero(f"Split of {rect} at {fraction} loses winding", suggested_shift=0.0)
        return children

    def solve(self, rect: Rect, count: int, moments: np.ndarray, depth: int) -> list[ZeroLocation]:
        if count == 0:
            return []
        if depth > self.max_depth:
            raise NonConvergence(f"Zeros in {rect} not isolated after {self.max_depth} subdivisions")

        x0, x1, y0, y1 = rect
        center = complex((x0 + x1) / 2.0, (y0 + y1) / 2.0)
        mean = moments[1] / count
        spread = abs(moments[2] / count - mean * mean)
        if spread <= (1e-2 * _diameter(rect)) ** 2:
            z = self._newton(center + mean, count)
            inside = z is not None and x0 <= z.real <= x1 and y0 <= z.imag <= y1
            if inside and self._isolated(z, count):
                return [ZeroLocation(location=z, multiplicity=count)]

        found = []
        for child, child_count, child_moments in self._children(rect, count):
            found.extend(self.solve(child, child_count, child_moments, depth + 1))
        return found


def find_zeros(
    log_derivative: LogDerivative,
    rect: Rect,
    tol: float = 1e-10,
    max_depth: int = 40,
    quad_points: int = 64,
) -> list[ZeroLocation]:
    """
    Zeros of an analytic function inside a rectangle, from its log-derivative.

    The total multiplicity is the winding integral (1/2 pi i) contour integral
    of g = f'/f. A rectangle whose zeros share one location (small second
    moment) is finished by Newton steps z <- z - m/g(z) and a winding check
    on a small square; otherwise the longer side is split.

    Args:
        log_derivative: Vectorized g(z) = f'(z)/f(z)
        rect: (x0, x1, y0, y1)
        tol: Location tolerance
        max_depth: Subdivision limit
        quad_points: Gauss-Legendre points per edge (checked against twice as many)

    Returns:
        Zeros sorted by (Re, Im), each with its multiplicity

    Raises:
        BoundaryZero: If a zero lies on the contour (suggested_shift attached)
        NonConvergence: If zeros cannot be isolated within max_depth
    """
    x0, x1, y0, y1 = rect
    if not (x1 > x0 and y1 > y0):
        raise InvalidLength(f"Empty rectangle {rect}")
    search = _ZeroSearch(log_derivative, tol, max_depth, quad_points)
    count, moments = search.integrator.moments(rect)
    log_debug("Zeros", f"Winding count {count} on {rect}")
    zeros = search.solve(rect, count, moments, 0)
    zeros.sort(key=lambda z: (round(z.location.real, 12), round(z.location.imag, 12)))
    log_info("Zeros", f"{len(zeros)} distinct zeros (total multiplicity {count}) in {rect}")
    return zeros
