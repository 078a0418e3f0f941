"""Finitely supported distributions on [0,1] and couplings with identical
marginals, together with the mass-redistribution operators used to reduce
the support of a candidate law.

All operators preserve total mass and expectation exactly up to floating
point; atoms closer than MERGE_TOL are merged since redistribution
repeatedly targets the values 0.5 and 1.
"""
import json
import math
from dataclasses import dataclass

from .entropy import as_prob, binary_entropy as h

MERGE_TOL = 1e-12
MASS_TOL = 1e-12


def _merge_pairs(pairs) -> tuple[tuple[float, float], ...]:
    """Sort (value, mass) pairs, merge values within MERGE_TOL, drop zeros."""
    live = [(as_prob(v), float(m)) for v, m in pairs if m != 0.0]
    for v, m in live:
        if m < 0.0:
            raise ValueError(f"negative mass {m!r} at {v!r}")
    live.sort()
    merged: list[list[float]] = []
    for v, m in live:
        if merged and v - merged[-1][0] <= MERGE_TOL:
            merged[-1][1] += m
        else:
            merged.append([v, m])
    return tuple((v, m) for v, m in merged if m > 0.0)


@dataclass(frozen=True)
class Dist:
    """A probability distribution with finitely many atoms in [0,1].

    atoms is a tuple of (value, mass) pairs with strictly increasing
    values and masses summing to 1.
    """

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("empty distribution")
        total = math.fsum(m for _, m in self.atoms)
        if abs(total - 1.0) > MASS_TOL:
            raise ValueError(f"masses sum to {total!r}, not 1")
        vals = self.values()
        if any(b - a <= 0.0 for a, b in zip(vals, vals[1:])):
            raise ValueError("atom values not strictly increasing")

    @classmethod
    def from_pairs(cls, pairs) -> "Dist":
        return cls(_merge_pairs(pairs))

    @classmethod
    def point(cls, v: float) -> "Dist":
        return cls(((as_prob(v), 1.0),))

    def values(self) -> tuple[float, ...]:
        return tuple(v for v, _ in self.atoms)

    def masses(self) -> tuple[float, ...]:
        return tuple(m for _, m in self.atoms)

    def expectation(self) -> float:
        return math.fsum(v * m for v, m in self.atoms)

    def mass_at(self, v: float) -> float:
        for av, m in self.atoms:
            if abs(av - v) <= MERGE_TOL:
                return m
        return 0.0

    def has_atom_in(self, lo: float, hi: float) -> bool:
        """True if some atom lies in the open interval (lo, hi)."""
        return any(lo < v < hi for v, _ in self.atoms)

    def to_json(self) -> str:
        return json.dumps([{"value": v, "mass": m} for v, m in self.atoms])

    @classmethod
    def from_json(cls, text: str) -> "Dist":
        data = json.loads(text)
        return cls.from_pairs((row["value"], row["mass"]) for row in data)


def expectation(d: Dist) -> float:
    return d.expectation()


def reduce_upper_atom(d: Dist, y: float) -> Dist:
    """Move the atom at y in (0.5, 1) onto {0.5, 1} with the linear weights
    (2y-1) at 1 and (2-2y) at 0.5, which preserve the expectation."""
    if not 0.5 < y < 1.0:
        raise ValueError(f"y = {y!r} not in (0.5, 1)")
    m = d.mass_at(y)
    if m == 0.0:
        raise ValueError(f"{y!r} is not an atom")
    pairs = [(v, mm) for v, mm in d.atoms if abs(v - y) > MERGE_TOL]
    pairs.append((1.0, (2.0 * y - 1.0) * m))
    pairs.append((0.5, (2.0 - 2.0 * y) * m))
    return Dist.from_pairs(pairs)


def strip_upper_interval(d: Dist) -> Dist:
    """Apply reduce_upper_atom to every atom in (0.5, 1)."""
    out = d
    for v in d.values():
        if 0.5 < v < 1.0:
            out = reduce_upper_atom(out, v)
    return out


def upper_atom_gain(x: float, y: float) -> float:
    """Per-mass first-order change of the independent union term when an
    epsilon of mass moves from the atom y onto {0.5, 1}:

        (2 - 2y) h((1-x)/2) - h((1-y)(1-x)).

    Increasing and concave in x on [0, 1] for every fixed y in (0.5, 1).
    """
    if not 0.5 < y < 1.0:
        raise ValueError(f"y = {y!r} not in (0.5, 1)")
    x = as_prob(x)
    return (2.0 - 2.0 * y) * h(0.5 * (1.0 - x)) - h((1.0 - y) * (1.0 - x))


def upper_atom_gain_derivative(x: float, y: float) -> float:
    """Closed form of d/dx upper_atom_gain: (y-1) ln((1-y)(1+x)/(x+y-xy)) / ln 2."""
    return (y - 1.0) * math.log((1.0 - y) * (1.0 + x) / (x + y - x * y)) / math.log(2.0)


@dataclass(frozen=True)
class GainDerivativeReport:
    x: float
    y: float
    fd_first: float
    analytic_first: float
    fd_second: float

    @property
    def first_error(self) -> float:
        return abs(self.fd_first - self.analytic_first)

    @property
    def second_negative(self) -> bool:
        return self.fd_second < 0.0


def upper_atom_gain_derivative_check(x: float, y: float,
                                     step: float = 1e-5) -> GainDerivativeReport:
    """Central finite differences of upper_atom_gain against the analytic
    first derivative; also reports the (negative) second derivative."""
    f = lambda t: upper_atom_gain(t, y)
    fd1 = (f(x + step) - f(x - step)) / (2.0 * step)
    fd2 = (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step)
    return GainDerivativeReport(
        x=x, y=y, fd_first=fd1,
        analytic_first=upper_atom_gain_derivative(x, y),
        fd_second=fd2,
    )


# ---------------------------------------------------------------------------
# Couplings


def _snap(v: float, values: tuple[float, ...]) -> float:
    for av in values:
        if abs(av - v) <= MERGE_TOL:
            return av
    raise ValueError(f"cell coordinate {v!r} is not a marginal atom")


@dataclass(frozen=True)
class Coupling:
    """A joint law on [0,1]^2 whose two marginals are the same Dist."""

    cells: tuple[tuple[float, float, float], ...]  # (x, y, mass)
    marginal: Dist

    def __post_init__(self):
        total = math.fsum(m for _, _, m in self.cells)
        if abs(total - 1.0) > MASS_TOL:
            raise ValueError(f"cell masses sum to {total!r}, not 1")
        for side in (0, 1):
            got = {}
            for cell in self.cells:
                v = cell[side]
                got[v] = got.get(v, 0.0) + cell[2]
            for v, m in self.marginal.atoms:
                if abs(got.pop(v, 0.0) - m) > 10 * MASS_TOL:
                    raise ValueError(f"marginal mismatch at {v!r} (side {side})")
            if any(m > 10 * MASS_TOL for m in got.values()):
                raise ValueError(f"stray marginal mass {got!r} (side {side})")

    @classmethod
    def from_cells(cls, cells) -> "Coupling":
        """Build a coupling from (x, y, mass) triples, deriving the marginal.

        Coordinates are snapped to the merged x-marginal atom values, and
        the y-marginal is required to match it.
        """
        raw = [(x, y, float(m)) for x, y, m in cells if m != 0.0]
        marg = Dist.from_pairs([(x, m) for x, _, m in raw])
        vals = marg.values()
        acc: dict[tuple[float, float], float] = {}
        for x, y, m in raw:
            key = (_snap(x, vals), _snap(y, vals))
            acc[key] = acc.get(key, 0.0) + m
        ordered = tuple((x, y, m) for (x, y), m in sorted(acc.items()) if m > 0.0)
        return cls(ordered, marg)

    def expectation(self) -> float:
        return self.marginal.expectation()


def independent_coupling(d: Dist) -> Coupling:
    cells = [(x, y, mx * my) for x, mx in d.atoms for y, my in d.atoms]
    return Coupling.from_cells(cells)


def diagonal_coupling(d: Dist) -> Coupling:
    return Coupling.from_cells([(v, v, m) for v, m in d.atoms])


@dataclass(frozen=True)
class QuantileSpec:
    """Location of the diagonal part of the extremal coupling: a is the
    marginal mass at 1, x0 the smallest value v with Pr(p <= v) >= 1-2a."""

    a: float
    x0: float


def quantile_spec(d: Dist) -> QuantileSpec:
    a = d.mass_at(1.0)
    if a > 0.5 + MASS_TOL:
        raise ValueError(f"mass at 1 is {a!r} > 1/2")
    target = 1.0 - 2.0 * a
    cum = 0.0
    for v, m in d.atoms:
        cum += m
        if cum >= target - MASS_TOL:
            return QuantileSpec(a=a, x0=v)
    raise ValueError("quantile not reached; masses do not sum to 1?")


def quantile_coupling(d: Dist) -> Coupling:
    """The extremal coupling of d with itself: diagonal on the (1-2a)
    quantile, no mass at (1,1), everything else paired against 1.

    Requires the support of d to avoid (0.5, 1) and the mass a at 1 to be
    at most 1/2.  Leftover mass of each atom below 1 appears in both
    off-diagonal orientations (x,1) and (1,x), keeping the coupling
    exchangeable.
    """
    if d.has_atom_in(0.5, 1.0):
        raise ValueError("support intersects (0.5, 1); reduce the law first")
    a = d.mass_at(1.0)
    if a > 0.5 + MASS_TOL:
        raise ValueError(f"mass at 1 is {a!r} > 1/2")
    budget = max(0.0, 1.0 - 2.0 * a)
    cells = []
    for v, m in d.atoms:
        if v == 1.0:
            continue
        diag = min(m, budget)
        budget -= diag
        left = m - diag
        if diag > 0.0:
            cells.append((v, v, diag))
        if left > 0.0:
            cells.append((v, 1.0, left))
            cells.append((1.0, v, left))
    return Coupling.from_cells(cells)


def redistribute_coupling_atom(cp: Coupling, y: float) -> Coupling:
    """Move the marginal atom at y in (0.5, 1) onto {y', 1}, where y' is the
    next lower marginal value in (0.5, 1) or 0.5 if none exists.

    Weights are the linear mean-preserving ones; diagonal cells stay
    diagonal ((y,y) splits onto (y',y') and (1,1)), other cells keep their
    untouched coordinate.
    """
    vals = cp.marginal.values()
    if not 0.5 < y < 1.0 or cp.marginal.mass_at(y) == 0.0:
        raise ValueError(f"{y!r} is not a marginal atom in (0.5, 1)")
    y = _snap(y, vals)
    lower = [v for v in vals if 0.5 < v < y]
    y2 = max(lower) if lower else 0.5
    lam = (1.0 - y) / (1.0 - y2)
    cells = []
    for x, z, m in cp.cells:
        if x == y and z == y:
            cells.append((y2, y2, lam * m))
            cells.append((1.0, 1.0, (1.0 - lam) * m))
        elif x == y:
            cells.append((y2, z, lam * m))
            cells.append((1.0, z, (1.0 - lam) * m))
        elif z == y:
            cells.append((x, y2, lam * m))
            cells.append((x, 1.0, (1.0 - lam) * m))
        else:
            cells.append((x, z, m))
    return Coupling.from_cells(cells)


def strip_coupling_upper_interval(cp: Coupling) -> Coupling:
    """Iterate redistribute_coupling_atom until no marginal atom remains
    in (0.5, 1), always taking the largest such atom."""
    out = cp
    while True:
        upper = [v for v in out.marginal.values() if 0.5 < v < 1.0]
        if not upper:
            return out
        out = redistribute_coupling_atom(out, max(upper))


@dataclass(frozen=True)
class DiagonalSwapReport:
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs - 1e-12


def diagonal_swap_check(x: float, x2: float, y: float, y2: float) -> DiagonalSwapReport:
    """Rearrangement inequality for g(t) = h(min(t, 1/2)): moving coupled
    mass toward the diagonal can only help,

        g(x+y) + g(x2+y2) >= g(x+y2) + g(x2+y)

    for x < x2, y > y2, all in [0, 1/2].  The boundary case y == y2 is
    allowed and gives equality.
    """
    if not (x < x2 and y >= y2):
        raise ValueError("need x < x2 and y >= y2")
    for t in (x, x2, y, y2):
        if not 0.0 <= t <= 0.5 + 1e-15:
            raise ValueError(f"{t!r} outside [0, 1/2]")
    g = lambda t: h(min(t, 0.5))
    return DiagonalSwapReport(lhs=g(x + y) + g(x2 + y2), rhs=g(x + y2) + g(x2 + y))
