"""Dense complex linear algebra and scalar utilities shared by the physics modules.

Closed-form expressions with n-dependent exponents (powers like 2^{4n} or
n^{2n+4}) overflow double precision long before the final ratio does, so all
of them are evaluated through :func:`log_product`.  Hermitian matrix
functions go through the eigendecomposition; the matrix exponential of
non-Hermitian generators (Liouvillians) uses scaling-and-squaring via scipy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np
from scipy.linalg import expm as _scipy_expm

from .errors import NotHermitianError, NotPositiveSemidefiniteError, ValidationError

Array = np.ndarray


@dataclass(frozen=True)
class LogFactor:
    """A real number stored as sign * exp(log_magnitude).

    Multiplication adds log magnitudes, so products of factors that would
    individually overflow a double stay representable.
    """

    sign: int
    log_magnitude: float

    @classmethod
    def from_value(cls, x: float) -> "LogFactor":
        if x == 0.0:
            return cls(0, float("-inf"))
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_power(cls, base: float, exponent: float) -> "LogFactor":
        if base <= 0.0:
            raise ValidationError(f"log-space factor requires base > 0, got {base}")
        return cls(1, exponent * math.log(base))

    def __mul__(self, other: "LogFactor") -> "LogFactor":
        return LogFactor(self.sign * other.sign, self.log_magnitude + other.log_magnitude)

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log_magnitude)


def log_product(factors: Iterable[tuple[float, float]], leading_sign: float = 1.0) -> float:
    """Evaluate leading_sign * prod(base**exponent) in log space.

    ``factors`` is an iterable of (base, exponent) pairs with base > 0.  The
    exponent-weighted logs are accumulated with math.fsum, which makes the
    result independent of factor order to within one ulp.
    """
    total = math.fsum(_checked_log(base) * exponent for base, exponent in factors)
    return leading_sign * math.exp(total)


def _checked_log(base: float) -> float:
    if base <= 0.0:
        raise ValidationError(f"log_product requires positive bases, got {base}")
    return math.log(base)


def is_hermitian(m: Array, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = max(np.abs(m).max(), 1.0)
    return bool(np.abs(m - m.conj().T).max() <= tol * scale)


def hermitian_eig(m: Array, tol: float = 1e-12) -> tuple[Array, Array]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvectors as columns).  Raises
    NotHermitianError if the input departs from M = M^dagger by more than
    ``tol`` relative to its largest entry.
    """
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m, tol):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(m)
    return w, v


def psd_sqrt(m: Array, tol: float = 1e-12) -> Array:
    """Principal square root of a Hermitian positive-semidefinite matrix.

    Eigenvalues in [-tol, 0) are clamped to zero (iterative estimators
    produce PSD matrices only to numerical precision); anything below -tol
    raises NotPositiveSemidefiniteError.
    """
    w, v = hermitian_eig(m, tol=max(tol, 1e-12))
    if w.min() < -tol:
        raise NotPositiveSemidefiniteError(
            f"eigenvalue {w.min():.3e} below PSD tolerance {-tol:.1e}"
        )
    w = np.clip(w, 0.0, None)
    s = (v * np.sqrt(w)) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def kron(a: Array, b: Array) -> Array:
    """Kronecker product (thin alias kept for a uniform import surface)."""
    return np.kron(a, b)


def matrix_exp(m: Array) -> Array:
    """exp(M) for a square complex matrix via scaling-and-squaring."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError("matrix_exp requires a square matrix")
    return _scipy_expm(m)


def rk4_integrate(
    generator: Callable[[float], Array] | Array,
    y0: Array,
    t_span: tuple[float, float],
    steps: int,
) -> Array:
    """Classical fixed-step RK4 for dy/dt = G(t) y.

    ``generator`` may be a matrix-valued function of t or a constant matrix.
    Kept as an independent cross-check for the exponential-propagator path.
    """
    if steps < 1:
        raise ValidationError("rk4_integrate requires steps >= 1")
    t0, t1 = t_span
    h = (t1 - t0) / steps
    y = np.array(y0, dtype=complex)
    if callable(generator):
        t = t0
        for _ in range(steps):
            k1 = generator(t) @ y
            k2 = generator(t + 0.5 * h) @ (y + 0.5 * h * k1)
            k3 = generator(t + 0.5 * h) @ (y + 0.5 * h * k2)
            k4 = generator(t + h) @ (y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += h
        return y
    g = np.asarray(generator, dtype=complex)
    for _ in range(steps):
        k1 = g @ y
        k2 = g @ (y + 0.5 * h * k1)
        k3 = g @ (y + 0.5 * h * k2)
        k4 = g @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def trace_distance(a: Array, b: Array) -> float:
    """Trace distance (1/2)*||a - b||_1 between Hermitian matrices."""
    w, _ = hermitian_eig(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex),
                         tol=1e-9)
    return 0.5 * float(np.abs(w).sum())


def _twice(x: float, name: str) -> int:
    t = round(2.0 * x)
    if abs(2.0 * x - t) > 1e-9:
        raise ValidationError(f"{name} must be integer or half-integer, got {x}")
    return int(t)


def _fact2(twice_value: int) -> int:
    # factorial of an angular-momentum combination known to be integral
    return math.factorial(twice_value // 2)


def clebsch_gordan(j1: float, m1: float, j2: float, m2: float, j: float, m: float) -> float:
    """Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>.

    Evaluated with exact rational arithmetic (Racah's closed sum over
    big-integer factorials), converted to float only at the end, so it stays
    accurate for the stretched-state coefficients at large j that appear in
    circular-state matrix elements.  Triangle-rule violations return 0.
    """
    tj1, tm1 = _twice(j1, "j1"), _twice(m1, "m1")
    tj2, tm2 = _twice(j2, "j2"), _twice(m2, "m2")
    tj, tm = _twice(j, "j"), _twice(m, "m")
    for tjx, tmx, name in ((tj1, tm1, "1"), (tj2, tm2, "2"), (tj, tm, "")):
        if tjx < 0:
            raise ValidationError(f"j{name} must be non-negative")
        if abs(tmx) > tjx:
            raise ValidationError(f"|m{name}| must not exceed j{name}")
        if (tjx - tmx) % 2:
            raise ValidationError(f"j{name} and m{name} must differ by an integer")
    if tm1 + tm2 != tm:
        return 0.0
    if not (abs(tj1 - tj2) <= tj <= tj1 + tj2) or (tj1 + tj2 + tj) % 2:
        return 0.0

    pref2 = (
        Fraction(tj + 1)
        * Fraction(
            _fact2(tj1 + tj2 - tj) * _fact2(tj1 - tj2 + tj) * _fact2(-tj1 + tj2 + tj),
            _fact2(tj1 + tj2 + tj + 2),
        )
        * Fraction(
            _fact2(tj + tm) * _fact2(tj - tm)
            * _fact2(tj1 - tm1) * _fact2(tj1 + tm1)
            * _fact2(tj2 - tm2) * _fact2(tj2 + tm2)
        )
    )

    kmin = max(0, (tj2 - tj - tm1) // 2, (tj1 + tm2 - tj) // 2)
    kmax = min((tj1 + tj2 - tj) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        denom = (
            math.factorial(k)
            * _fact2(tj1 + tj2 - tj - 2 * k)
            * _fact2(tj1 - tm1 - 2 * k)
            * _fact2(tj2 + tm2 - 2 * k)
            * _fact2(tj - tj2 + tm1 + 2 * k)
            * _fact2(tj - tj1 - tm2 + 2 * k)
        )
        total += Fraction((-1) ** k, denom)
    if total == 0:
        return 0.0
    sign = 1.0 if total > 0 else -1.0
    return sign * math.sqrt(float(pref2 * total * total))
