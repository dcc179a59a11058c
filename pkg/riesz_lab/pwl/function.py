from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from riesz_lab.lattice.rational import RationalLike, format_rational, to_rational

Breakpoint = tuple[Fraction, Fraction]


def _collinear(p: Breakpoint, q: Breakpoint, r: Breakpoint) -> bool:
    return (q[1] - p[1]) * (r[0] - q[0]) == (r[1] - q[1]) * (q[0] - p[0])


def _canonical(points: list[Breakpoint]) -> tuple[Breakpoint, ...]:
    kept: list[Breakpoint] = []
    for point in points:
        while len(kept) >= 2 and _collinear(kept[-2], kept[-1], point):
            kept.pop()
        kept.append(point)
    return tuple(kept)


@dataclass(frozen=True)
class PwlFunc:
    """A continuous piecewise-linear function on [0, 1] with exact rational breakpoints.

    The function is affine between consecutive breakpoints. Breakpoints are stored in canonical form:
    t-coordinates strictly increasing from 0 to 1 and no interior breakpoint lying on the segment joining
    its neighbours, so two functions are equal exactly when their breakpoint tuples are equal.

    Examples:
        >>> from fractions import Fraction
        >>> from riesz_lab.pwl import PwlFunc, pwl_eval
        >>> tent = PwlFunc([(0, 0), ("1/2", 1), (1, 0)])
        >>> pwl_eval(tent, Fraction(1, 4))
        Fraction(1, 2)
    """

    breakpoints: tuple[Breakpoint, ...]

    def __init__(self, breakpoints: Iterable[tuple[RationalLike, RationalLike]]):
        points = [(to_rational(t), to_rational(v)) for t, v in breakpoints]
        if len(points) < 2:
            raise ValueError("A PWL function needs at least the breakpoints at t=0 and t=1")
        if points[0][0] != 0 or points[-1][0] != 1:
            raise ValueError("Breakpoints must start at t=0 and end at t=1")
        if any(b[0] <= a[0] for a, b in zip(points, points[1:])):
            raise ValueError("Breakpoint t-coordinates must be strictly increasing")
        object.__setattr__(self, "breakpoints", _canonical(points))

    @classmethod
    def constant(cls, value: RationalLike) -> PwlFunc:
        return cls([(0, value), (1, value)])

    @property
    def ts(self) -> tuple[Fraction, ...]:
        return tuple(t for t, _ in self.breakpoints)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(v for _, v in self.breakpoints)

    def is_positive(self) -> bool:
        return all(v >= 0 for v in self.values)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(t), format_rational(v)] for t, v in self.breakpoints]

    @classmethod
    def from_json(cls, payload: Sequence[Sequence[RationalLike]]) -> PwlFunc:
        return cls((t, v) for t, v in payload)

    def __repr__(self) -> str:
        inner = ", ".join(f"({format_rational(t)}, {format_rational(v)})" for t, v in self.breakpoints)
        return f"PwlFunc[{inner}]"


def pwl_eval(f: PwlFunc, t: RationalLike) -> Fraction:
    """Exact value of f at a rational t in [0, 1]."""
    t = to_rational(t)
    if not 0 <= t <= 1:
        raise ValueError(f"t={t} lies outside [0, 1]")
    ts = f.ts
    i = bisect_right(ts, t) - 1
    if i >= len(ts) - 1:
        return f.breakpoints[-1][1]
    (t0, v0), (t1, v1) = f.breakpoints[i], f.breakpoints[i + 1]
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0)


def _merged_ts(f: PwlFunc, g: PwlFunc) -> list[Fraction]:
    return sorted(set(f.ts) | set(g.ts))


def _envelope(f: PwlFunc, g: PwlFunc, pick: Callable[[Fraction, Fraction], Fraction]) -> PwlFunc:
    ts = _merged_ts(f, g)
    points: list[Fraction] = []
    for a, b in zip(ts, ts[1:]):
        points.append(a)
        da = pwl_eval(f, a) - pwl_eval(g, a)
        db = pwl_eval(f, b) - pwl_eval(g, b)
        if da * db < 0:
            # f - g is affine on [a, b]; its zero is where the envelope switches sides
            points.append(a + (b - a) * da / (da - db))
    points.append(ts[-1])
    return PwlFunc((t, pick(pwl_eval(f, t), pwl_eval(g, t))) for t in points)


def pwl_join(f: PwlFunc, g: PwlFunc) -> PwlFunc:
    """Pointwise maximum; breakpoints are the union of both sets plus every crossing of f and g."""
    return _envelope(f, g, max)


def pwl_meet(f: PwlFunc, g: PwlFunc) -> PwlFunc:
    """Pointwise minimum, equal to -((-f) v (-g))."""
    return _envelope(f, g, min)


def pwl_negate(f: PwlFunc) -> PwlFunc:
    return PwlFunc((t, -v) for t, v in f.breakpoints)


def pwl_scale(f: PwlFunc, factor: RationalLike) -> PwlFunc:
    c = to_rational(factor)
    return PwlFunc((t, c * v) for t, v in f.breakpoints)


def pwl_add(f: PwlFunc, g: PwlFunc) -> PwlFunc:
    return PwlFunc((t, pwl_eval(f, t) + pwl_eval(g, t)) for t in _merged_ts(f, g))


def pwl_abs(f: PwlFunc) -> PwlFunc:
    return pwl_join(f, pwl_negate(f))


def pwl_leq(f: PwlFunc, g: PwlFunc) -> bool:
    """f <= g everywhere on [0, 1].

    g - f is affine between merged breakpoints, so comparing there decides the order exactly.
    """
    return all(pwl_eval(f, t) <= pwl_eval(g, t) for t in _merged_ts(f, g))


def pwl_sup_norm(f: PwlFunc) -> Fraction:
    return max(abs(v) for v in f.values)


def pwl_l1_norm(f: PwlFunc) -> Fraction:
    """Exact integral of |f| over [0, 1]."""
    total = Fraction(0)
    for (a, va), (b, vb) in zip(f.breakpoints, f.breakpoints[1:]):
        if va * vb >= 0:
            total += (b - a) * (abs(va) + abs(vb)) / 2
        else:
            zero = a + (b - a) * va / (va - vb)
            total += (zero - a) * abs(va) / 2 + (b - zero) * abs(vb) / 2
    return total


def pwl_max_slope(f: PwlFunc) -> Fraction:
    return max(abs((vb - va) / (b - a)) for (a, va), (b, vb) in zip(f.breakpoints, f.breakpoints[1:]))


def tent_family(k: int) -> PwlFunc:
    """The k-th member of the decreasing tents u_k with u_k(0) = 1 and support [0, 1/k]."""
    if k < 1:
        raise ValueError("Tent index must be a positive integer")
    if k == 1:
        return PwlFunc([(0, 1), (1, 0)])
    return PwlFunc([(0, 1), (Fraction(1, k), 0), (1, 0)])


def ramp_family(k: int) -> PwlFunc:
    """The k-th member of the increasing ramps f_k(t) = min(1, k t)."""
    if k < 1:
        raise ValueError("Ramp index must be a positive integer")
    if k == 1:
        return PwlFunc([(0, 0), (1, 1)])
    return PwlFunc([(0, 0), (Fraction(1, k), 1), (1, 1)])


def disjoint_tents(count: int) -> list[PwlFunc]:
    """``count`` positive tents of unit L1 norm with pairwise disjoint supports.

    Tent i lives on [i/count, (i+1)/count] and peaks at height 2*count in the middle.
    """
    if count < 1:
        raise ValueError("At least one tent is required")
    width = Fraction(1, count)
    tents = []
    for i in range(count):
        left, right = i * width, (i + 1) * width
        points: list[tuple[Fraction, Fraction]] = []
        if left > 0:
            points.append((Fraction(0), Fraction(0)))
        points += [(left, Fraction(0)), ((left + right) / 2, Fraction(2 * count)), (right, Fraction(0))]
        if right < 1:
            points.append((Fraction(1), Fraction(0)))
        tents.append(PwlFunc(points))
    return tents
