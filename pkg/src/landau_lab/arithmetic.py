"""Frequencies a = log x, the von Mangoldt function and the predicted limits."""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

from .errors import DomainError

TRIAL_LIMIT = 10**6
DETECT_RTOL = 1e-9


def smallest_prime_factor(m: int) -> int:
    if m < 2:
        raise DomainError(f"no prime factor for {m}")
    if m % 2 == 0:
        return 2
    f = 3
    while f * f <= m:
        if f > TRIAL_LIMIT:
            raise DomainError(f"{m} is beyond the trial-division range")
        if m % f == 0:
            return f
        f += 2
    return m


def is_prime(m: int) -> bool:
    return m >= 2 and smallest_prime_factor(m) == m


def prime_power(m: int) -> tuple[int, int] | None:
    """(p, k) with m == p**k, or None."""
    p = smallest_prime_factor(m)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def von_mangoldt(m: int) -> float:
    """log p when m = p^k, else 0.  Integer arithmetic only."""
    if isinstance(m, bool) or int(m) != m:
        raise DomainError(f"von_mangoldt needs an integer, got {m!r}")
    m = int(m)
    if m < 2:
        raise DomainError(f"von_mangoldt needs m >= 2, got {m}")
    pk = prime_power(m)
    return math.log(pk[0]) if pk else 0.0


@dataclass(frozen=True)
class Frequency:
    a: float
    x: float
    kind: str  # "symbolic" or "numeric"
    lambda_x: float
    p: int | None = None
    k: int | None = None

    @property
    def is_prime_power(self) -> bool:
        return self.lambda_x > 0

    @property
    def orbit_radius(self) -> float:
        """(Lambda(e^a)/a) e^{-a/2}: radius of the circle relating the two densities."""
        return self.lambda_x / self.a * math.exp(-0.5 * self.a)

    def describe(self) -> str:
        if self.p is not None:
            base = f"log({self.p}^{self.k})" if self.k != 1 else f"log({self.p})"
            return base if self.kind == "symbolic" else f"{self.a!r}~{base}"
        return repr(self.a)


def symbolic_frequency(p: int, k: int = 1) -> Frequency:
    if not is_prime(int(p)) or int(p) != p:
        raise DomainError(f"{p} is not prime")
    if int(k) != k or k < 1:
        raise DomainError(f"exponent must be a positive integer, got {k}")
    p, k = int(p), int(k)
    a = k * math.log(p)
    return Frequency(a=a, x=float(p**k), kind="symbolic", lambda_x=math.log(p), p=p, k=k)


def numeric_frequency(a: float) -> Frequency:
    """Classify a float frequency; prime powers are detected within a relative 1e-9."""
    a = float(a)
    if not a > 0 or not math.isfinite(a):
        raise DomainError(f"frequency must be positive, got {a}")
    if a > math.log(TRIAL_LIMIT) * 2:
        raise DomainError("frequency too large for exact prime-power classification")
    tol = DETECT_RTOL * a
    lo = math.ceil(math.exp(a - tol))
    hi = math.floor(math.exp(a + tol))
    for m in range(max(lo, 2), hi + 1):
        pk = prime_power(m)
        if pk and abs(a - pk[1] * math.log(pk[0])) <= tol:
            return Frequency(a, math.exp(a), "numeric", math.log(pk[0]), pk[0], pk[1])
    return Frequency(a, math.exp(a), "numeric", 0.0)


def classify_frequency(spec) -> Frequency:
    """Accepts {"symbolic": (p, k)} / {"symbolic": {"p": .., "k": ..}} or {"numeric": a}."""
    if isinstance(spec, Frequency):
        return spec
    if isinstance(spec, dict) and len(spec) == 1:
        (kind, val), = spec.items()
        if kind == "symbolic":
            if isinstance(val, dict):
                return symbolic_frequency(val["p"], val.get("k", 1))
            p, k = val if isinstance(val, (tuple, list)) else (val, 1)
            return symbolic_frequency(p, k)
        if kind == "numeric":
            return numeric_frequency(val)
    raise DomainError(f"cannot interpret frequency spec {spec!r}")


def integer_frequency(x: int) -> Frequency:
    """a = log x for an integer x >= 2, classified exactly."""
    if int(x) != x or x < 2:
        raise DomainError(f"x must be an integer >= 2, got {x}")
    x = int(x)
    pk = prime_power(x)
    if pk:
        return symbolic_frequency(*pk)
    return Frequency(math.log(x), float(x), "numeric", 0.0)


_LOG_RE = re.compile(r"^\s*log\(\s*(\d+)\s*\)\s*$")


def parse_frequency(text: str) -> Frequency:
    """Parse ``<float>`` or ``log(<int>)``."""
    m = _LOG_RE.match(text)
    if m:
        return integer_frequency(int(m.group(1)))
    try:
        value = float(text)
    except ValueError:
        raise DomainError(f"cannot parse frequency {text!r}") from None
    return numeric_frequency(value)


def predicted_landau_limit(freq: Frequency) -> float:
    """-(1/2pi) Lambda(x) x^{-1/2}."""
    return -freq.lambda_x / (2.0 * math.pi * math.sqrt(freq.x))


def predicted_eta_mean(freq: Frequency, h: float = 0.0) -> complex:
    """-(Lambda(x)/log x) x^{-1/2} e^{-i h log x}."""
    if freq.lambda_x == 0.0:
        return 0j
    return -(freq.lambda_x / freq.a) / math.sqrt(freq.x) * cmath.exp(-1j * h * freq.a)
