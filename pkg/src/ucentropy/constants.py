"""Critical constants of the improved union-closed bound.

Everything here is a root or closed form of the binary entropy function:

* psi = (3 - sqrt(5))/2, the classical constant,
* b1 < b2, the roots of sharpness_gap(x) = h(x)(2 - h(x)) - h(2x - x^2),
* a = (1 - h(b2))/(2 - h(b2)) and c = a + (1 - a) b2, the two-point law
  {b2: 1-a, 1: a} at which all three functional terms coincide.

The mixing weight alpha has no closed form; DEFAULT_ALPHA stores the
working value and optimizer.find_alpha re-derives it by search.
"""
import math
from dataclasses import dataclass

from .entropy import binary_entropy as h

#: Mixing weight between the independent and coupled union terms.
DEFAULT_ALPHA = 0.0356069
#: Expectation bound certified together with DEFAULT_ALPHA.
DEFAULT_C = 0.3823455


def solve_psi() -> float:
    """Smallest root of x^2 - 3x + 1 = 0, i.e. (3 - sqrt(5))/2."""
    return (3.0 - math.sqrt(5.0)) / 2.0


def sharpness_gap(x: float) -> float:
    """h(x)(2 - h(x)) - h(2x - x^2); its roots mark the atom positions
    where the two-point construction makes all functional terms equal."""
    return h(x) * (2.0 - h(x)) - h(2.0 * x - x * x)


def _h_prime(x: float) -> float:
    return math.log2((1.0 - x) / x)


def _sharpness_gap_prime(x: float) -> float:
    return 2.0 * _h_prime(x) * (1.0 - h(x)) - (2.0 - 2.0 * x) * _h_prime(2.0 * x - x * x)


def _bisect(f, lo: float, hi: float, width: float = 1e-15) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0.0) == (fhi < 0.0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_b_roots() -> tuple[float, float]:
    """Both roots of sharpness_gap in (0, 1/2).

    Bisection down to 1e-15 interval width, then five Newton steps with
    the analytic derivative.  Fails loudly if the sign-change brackets
    (0, 0.2) and (0.2, 0.5) do not hold.
    """
    roots = []
    for lo, hi in ((1e-9, 0.2), (0.2, 0.5 - 1e-9)):
        x = _bisect(sharpness_gap, lo, hi)
        for _ in range(5):
            x -= sharpness_gap(x) / _sharpness_gap_prime(x)
        if abs(sharpness_gap(x)) > 1e-14:
            raise ArithmeticError(f"root polish failed at {x!r}")
        roots.append(x)
    b1, b2 = roots
    return b1, b2


def derive_a(b: float) -> float:
    """a = (1 - h(b))/(2 - h(b)), the mass placed at 1 in the two-point law."""
    if not 0.0 < b < 0.5 + 1e-12:
        raise ValueError(f"b = {b!r} outside (0, 1/2]")
    hb = h(b)
    return (1.0 - hb) / (2.0 - hb)


def derive_c(a: float, b: float) -> float:
    """Expectation a + (1 - a) b of the two-point law {b: 1-a, 1: a}."""
    return a + (1.0 - a) * b


@dataclass(frozen=True)
class CriticalConstants:
    psi: float
    b1: float
    b2: float
    a: float
    c: float
    alpha: float

    def as_dict(self) -> dict:
        return {
            "psi": self.psi,
            "b1": self.b1,
            "b2": self.b2,
            "a": self.a,
            "c": self.c,
            "alpha": self.alpha,
        }


def critical_constants(alpha: float = DEFAULT_ALPHA) -> CriticalConstants:
    """Solve every constant from scratch; alpha is passed through."""
    b1, b2 = solve_b_roots()
    a = derive_a(b2)
    c = derive_c(a, b2)
    cc = CriticalConstants(psi=solve_psi(), b1=b1, b2=b2, a=a, c=c, alpha=alpha)
    if not (0.0 < cc.b1 < cc.b2 < 0.5 and 0.0 < cc.a < 0.5):
        raise ArithmeticError(f"constants out of order: {cc}")
    return cc


@dataclass(frozen=True)
class SharpnessIdentityReport:
    """The three functional terms of the two-point law {b: 1-a, 1: a},
    evaluated in closed form, plus their pairwise absolute differences."""

    b: float
    a: float
    indep_value: float      # (1-a)^2 h(2b - b^2)
    coupled_value: float    # 1 - 2a
    self_value: float       # (1-a) h(b)

    @property
    def max_pairwise_diff(self) -> float:
        vals = (self.indep_value, self.coupled_value, self.self_value)
        return max(abs(x - y) for x in vals for y in vals)


def sharpness_identity_check(b: float | None = None) -> SharpnessIdentityReport:
    """Evaluate (1-a)^2 h(2b-b^2), 1-2a and (1-a)h(b) at a = derive_a(b).

    With b = b2 (the default) the three agree to ~1e-15; off the root the
    differences are large, which is what makes this a usable check.
    """
    if b is None:
        b = solve_b_roots()[1]
    a = derive_a(b)
    return SharpnessIdentityReport(
        b=b,
        a=a,
        indep_value=(1.0 - a) ** 2 * h(2.0 * b - b * b),
        coupled_value=1.0 - 2.0 * a,
        self_value=(1.0 - a) * h(b),
    )
