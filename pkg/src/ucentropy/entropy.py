"""Binary and Shannon entropy primitives, all in bits (base-2 logarithm).

The zero-mass convention 0*log2(0) = 0 is applied through explicit
branches, never by relying on floating-point limits, so no NaN can leak
out of these functions.
"""
import math
from collections.abc import Iterable, Mapping

#: Probabilities within this distance outside [0,1] are clamped; anything
#: farther out is a domain error.  Root finders legitimately produce
#: values a few ulp outside the interval.
PROB_SLACK = 1e-15

LAW_TOL = 1e-12


def as_prob(x: float, slack: float = PROB_SLACK) -> float:
    """Validate and clamp a probability to [0, 1].

    Raises ValueError if x lies more than `slack` outside the interval.
    """
    if x < 0.0:
        if x < -slack:
            raise ValueError(f"probability {x!r} below 0")
        return 0.0
    if x > 1.0:
        if x > 1.0 + slack:
            raise ValueError(f"probability {x!r} above 1")
        return 1.0
    return float(x)


def binary_entropy(p: float) -> float:
    """Entropy h(p) of a coin with bias p, with h(0) = h(1) = 0."""
    p = as_prob(p)
    if p == 0.0 or p == 1.0:
        return 0.0
    q = 1.0 - p
    return -(p * math.log2(p) + q * math.log2(q))


def union_param(p: float, q: float) -> float:
    """Bernoulli parameter p + q - pq of the union of independent events.

    Satisfies 1 - union_param(p, q) = (1-p)(1-q).
    """
    p = as_prob(p)
    q = as_prob(q)
    return p + q - p * q


def _law_pairs(law) -> list[tuple[object, float]]:
    """Normalize a law given as mapping or (label, mass) iterable; validate."""
    if isinstance(law, Mapping):
        pairs = list(law.items())
    else:
        pairs = [(lbl, m) for lbl, m in law]
    if not pairs:
        raise ValueError("empty law")
    labels = [lbl for lbl, _ in pairs]
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate labels in law")
    total = 0.0
    for lbl, m in pairs:
        if m <= 0.0:
            raise ValueError(f"nonpositive mass {m!r} at {lbl!r}")
        total += m
    if abs(total - 1.0) > LAW_TOL:
        raise ValueError(f"masses sum to {total!r}, not 1")
    return pairs


def shannon_entropy(law) -> float:
    """Shannon entropy H of a finite law, given as mapping label->mass or
    as an iterable of (label, mass) pairs.
    """
    pairs = _law_pairs(law)
    return -sum(m * math.log2(m) for _, m in pairs)


def conditional_entropy(joint) -> float:
    """H(Y|X) of a finite joint law whose labels are (x, y) pairs.

    Computed from the defining sum -sum Pr(x,y) log2(Pr(x,y)/Pr(x)).
    """
    pairs = _law_pairs(joint)
    px: dict = {}
    for (x, _y), m in pairs:
        px[x] = px.get(x, 0.0) + m
    acc = 0.0
    for (x, _y), m in pairs:
        acc -= m * math.log2(m / px[x])
    return acc
