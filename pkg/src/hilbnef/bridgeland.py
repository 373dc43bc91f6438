"""Numerical stability-condition machinery on an (A, P)-slice.

A slice is the half-plane of stability conditions (s, t), t > 0, attached to
a polarization A and a twist divisor P.  Everything here is numerical: Chern
characters are (rank, c1, ch2) triples, walls are loci where two characters
have equal tilted slope, and all decisions are made in exact rational
arithmetic.  t never appears directly; every formula is polynomial in s and
t^2, so walls come out as circles with rational center and radius squared.

Two independent wall computations are kept side by side: numerical_wall uses
the closed slope/discriminant formula, wall_oracle expands the central-charge
equality as a polynomial identity in (s, t^2).  They must agree exactly; the
test suite enforces this on random inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .lattice import (
    RANK,
    DivisorClass,
    E,
    F,
    H,
    K,
    ZERO,
    divisor,
    dot_int,
    format_rational,
    intersect,
    self_intersection,
)
from .hilb import HilbDivisor
from .surface_cones import a1_polarization, a2_polarization


@dataclass(frozen=True)
class ChernChar:
    """Numerical Chern character (ch0, ch1, ch2)."""

    rank: int
    c1: DivisorClass
    ch2: Fraction

    def __post_init__(self) -> None:
        if type(self.ch2) is not Fraction:
            object.__setattr__(self, "ch2", Fraction(self.ch2))

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "c1": self.c1.to_json(),
            "ch2": format_rational(self.ch2),
        }

    def __str__(self) -> str:
        return f"({self.rank}, {self.c1}, {format_rational(self.ch2)})"


def twist(ch: ChernChar, q: DivisorClass) -> ChernChar:
    """exp(-q)-twisted character: (r, c1 - r q, ch2 - q.c1 + r q^2/2)."""
    return ChernChar(
        ch.rank,
        ch.c1 - ch.rank * q,
        ch.ch2 - intersect(q, ch.c1) + Fraction(ch.rank) * self_intersection(q) / 2,
    )


def ideal_points_char(n: int) -> ChernChar:
    """Character (1, 0, -n) of the ideal sheaf of n points."""
    if n < 1:
        raise ValueError("n >= 1 required")
    return ChernChar(1, ZERO, Fraction(-n))


def line_bundle_char(c1: DivisorClass, points: int = 0) -> ChernChar:
    """(1, c1, c1^2/2 - points): a line bundle, optionally twisted by points."""
    if points < 0:
        raise ValueError("points >= 0 required")
    return ChernChar(1, c1, self_intersection(c1) / 2 - points)


@dataclass(frozen=True)
class Slice:
    """The (A, P) half-plane of stability conditions for the n-point problem.

    quoted_self_intersection is the closed-form value of A.A that circulates
    with this polarization; for the H-family it disagrees with the exact
    self-intersection (see reporting.discrepancy_table) and is kept only so
    the rank-2 radius bound can be replayed with either value.
    """

    label: str
    polarization: DivisorClass
    twist: DivisorClass
    n: int
    quoted_self_intersection: Fraction
    ruling_based: bool

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("n >= 3 required")
        a_sq = self_intersection(self.polarization)
        if a_sq <= 0:
            raise ValueError("polarization must have positive self-intersection")
        if intersect(self.polarization, F) <= 0:
            raise ValueError("polarization must meet the fiber positively")

    @property
    def a_squared(self) -> Fraction:
        return self_intersection(self.polarization)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "polarization": self.polarization.to_json(),
            "twist": self.twist.to_json(),
            "n": self.n,
        }


def slice_a1(n: int) -> Slice:
    """Slice on the H-family polarization (n/3)H + (n - 3/2)F, twist -F."""
    quoted = Fraction(10 * n * n, 9) - Fraction(3 * n, 2)
    return Slice("A1", a1_polarization(n), -1 * F, n, quoted, ruling_based=False)


def slice_a2(n: int) -> Slice:
    """Slice on the ruling-family polarization (n/2)(H - E1) + (n - 3/2)F."""
    quoted = Fraction(n * (2 * n - 3))
    return Slice("A2", a2_polarization(n), -1 * F, n, quoted, ruling_based=True)


def mu_ap(sl: Slice, ch: ChernChar) -> Fraction | None:
    """Twisted slope A.ch1^P / (A^2 ch0).  None encodes +infinity (rank 0)."""
    if ch.rank == 0:
        return None
    tw = twist(ch, sl.twist)
    return intersect(sl.polarization, tw.c1) / (sl.a_squared * ch.rank)


def delta_ap(sl: Slice, ch: ChernChar) -> Fraction:
    """Twisted discriminant mu^2/2 - ch2^P / (A^2 ch0)."""
    if ch.rank == 0:
        raise ValueError("discriminant needs nonzero rank")
    mu = mu_ap(sl, ch)
    tw = twist(ch, sl.twist)
    return mu * mu / 2 - tw.ch2 / (sl.a_squared * ch.rank)


def central_charge(
    sl: Slice, s: Fraction, t_sq: Fraction, ch: ChernChar
) -> tuple[Fraction, Fraction]:
    """Exact (re, im) of Z_{s,t}.  im is reported as its coefficient of t:
    the full imaginary part is t * im, and t > 0 never changes a sign."""
    s = Fraction(s)
    t_sq = Fraction(t_sq)
    if t_sq <= 0:
        raise ValueError("t^2 > 0 required")
    tw = twist(ch, sl.twist + s * sl.polarization)
    re = -tw.ch2 + t_sq * sl.a_squared * tw.rank / 2
    im = intersect(sl.polarization, tw.c1)
    return re, im


@dataclass(frozen=True)
class Wall:
    """Semicircular wall: (s - center)^2 + t^2 = radius_sq.  Empty if
    radius_sq <= 0 (the locus needs t > 0)."""

    center: Fraction
    radius_sq: Fraction

    @property
    def is_empty(self) -> bool:
        return self.radius_sq <= 0

    def to_json(self) -> dict:
        return {
            "center": format_rational(self.center),
            "radius_sq": format_rational(self.radius_sq),
        }

    def __str__(self) -> str:
        return (
            f"wall center {format_rational(self.center)}"
            f" radius^2 {format_rational(self.radius_sq)}"
        )


@dataclass(frozen=True)
class VerticalWall:
    """Degenerate wall: the vertical line s = const (equal slopes)."""

    s: Fraction

    def to_json(self) -> dict:
        return {"vertical_at": format_rational(self.s)}

    def __str__(self) -> str:
        return f"vertical wall s = {format_rational(self.s)}"


@dataclass(frozen=True)
class DegenerateWall:
    """Proportional charges (everywhere) or an unsatisfiable equation (empty)."""

    everywhere: bool

    def to_json(self) -> dict:
        return {"degenerate": "everywhere" if self.everywhere else "empty"}

    def __str__(self) -> str:
        return "degenerate wall (everywhere)" if self.everywhere else "empty wall locus"


NumericalWall = Wall | VerticalWall | DegenerateWall


def numerical_wall(sl: Slice, ch_e: ChernChar, ch_f: ChernChar) -> NumericalWall:
    """Wall between two finite-slope characters via the closed formula
    s0 = (mu_e + mu_f)/2 - (delta_e - delta_f)/(mu_e - mu_f),
    rho^2 = (mu_e - s0)^2 - 2 delta_e."""
    if ch_e.rank == 0 or ch_f.rank == 0:
        raise ValueError("numerical_wall needs finite slopes; use wall_oracle")
    mu_e, mu_f = mu_ap(sl, ch_e), mu_ap(sl, ch_f)
    d_e, d_f = delta_ap(sl, ch_e), delta_ap(sl, ch_f)
    if mu_e == mu_f:
        if d_e == d_f:
            return DegenerateWall(everywhere=True)
        return VerticalWall(mu_e)
    center = (mu_e + mu_f) / 2 - (d_e - d_f) / (mu_e - mu_f)
    radius_sq = (mu_e - center) ** 2 - 2 * d_e
    return Wall(center, radius_sq)


def _charge_polynomials(sl: Slice, ch: ChernChar):
    # re(s, tau) and im(s)/t as coefficient dicts over monomials s^i tau^j
    a_sq = sl.a_squared
    alpha = intersect(sl.polarization, ch.c1) - ch.rank * intersect(
        sl.polarization, sl.twist
    )
    gamma = (
        -ch.ch2
        + intersect(sl.twist, ch.c1)
        - Fraction(ch.rank) * self_intersection(sl.twist) / 2
    )
    half_ra = Fraction(ch.rank) * a_sq / 2
    re = {(0, 0): gamma, (1, 0): alpha, (2, 0): -half_ra, (0, 1): half_ra}
    im = {(0, 0): alpha, (1, 0): -Fraction(ch.rank) * a_sq}
    return re, im


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (i, j), c in p.items():
        if c == 0:
            continue
        for (k, l), d in q.items():
            key = (i + k, j + l)
            out[key] = out.get(key, Fraction(0)) + c * d
    return out


def wall_oracle(sl: Slice, ch_e: ChernChar, ch_f: ChernChar) -> NumericalWall:
    """Wall from first principles: expand re(Z_E) im(Z_F) - re(Z_F) im(Z_E)
    as a polynomial in (s, t^2) and read off the circle it cuts out."""
    re_e, im_e = _charge_polynomials(sl, ch_e)
    re_f, im_f = _charge_polynomials(sl, ch_f)
    eq = _poly_mul(re_e, im_f)
    for key, c in _poly_mul(re_f, im_e).items():
        eq[key] = eq.get(key, Fraction(0)) - c
    eq = {key: c for key, c in eq.items() if c != 0}
    stray = set(eq) - {(2, 0), (0, 1), (1, 0), (0, 0)}
    if stray:
        raise ArithmeticError(f"wall locus is not a circle: monomials {sorted(stray)}")
    c20 = eq.get((2, 0), Fraction(0))
    c01 = eq.get((0, 1), Fraction(0))
    c10 = eq.get((1, 0), Fraction(0))
    c00 = eq.get((0, 0), Fraction(0))
    if c20 != c01:
        raise ArithmeticError("s^2 and t^2 coefficients differ; not a circle")
    if c20 != 0:
        center = -c10 / (2 * c20)
        return Wall(center, center * center - c00 / c20)
    if c10 != 0:
        return VerticalWall(-c00 / c10)
    return DegenerateWall(everywhere=(c00 == 0))


def rank_one_center(sl: Slice, l: DivisorClass, points: int = 0) -> Fraction:
    """Closed-form center of the wall between O(l) twisted by `points` points
    and the ideal of n points: (n - m + l^2/2 - l.P) / (l.A)."""
    la = intersect(l, sl.polarization)
    if la == 0:
        raise ValueError("l.A = 0 gives a vertical wall, not a circle")
    return (
        Fraction(sl.n - points)
        + self_intersection(l) / 2
        - intersect(l, sl.twist)
    ) / la


def quoted_rank_one_center(sl: Slice, l: DivisorClass, points: int = 0) -> Fraction:
    """The commonly quoted special-case reduction of the same center, with
    l.P/2 in place of l.P.  It disagrees with rank_one_center and with
    wall_oracle; kept as a diagnostic for the discrepancy report."""
    minus_la = intersect(-1 * l, sl.polarization)
    if minus_la == 0:
        raise ValueError("l.A = 0 gives a vertical wall, not a circle")
    return -(
        Fraction(sl.n - points)
        + self_intersection(l) / 2
        - intersect(l, sl.twist) / 2
    ) / minus_la


# -- radical comparisons -----------------------------------------------------


def _sqrt_bounds(q: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    # sqrt(p/d) = sqrt(p d)/d; isqrt gives a 2^-prec-wide rational bracket
    if q < 0:
        raise ValueError("negative radicand")
    big = q.numerator * q.denominator
    scale = 1 << prec
    root = isqrt(big * scale * scale)
    return (
        Fraction(root, q.denominator * scale),
        Fraction(root + 1, q.denominator * scale),
    )


def radical_sign(a: Fraction, b: Fraction, r: Fraction) -> int:
    """Exact sign of sqrt(a) - sqrt(b) - r for rationals a, b >= 0."""
    a, b, r = Fraction(a), Fraction(b), Fraction(r)
    if a < 0 or b < 0:
        raise ValueError("radicands must be nonnegative")
    # exact-zero test first: sqrt(a) = sqrt(b) + r has rational witnesses only
    if r == 0:
        if a == b:
            return 0
    elif r > 0:
        u = (a - b - r * r) / (2 * r)  # would-be value of sqrt(b)
        if u >= 0 and u * u == b:
            return 0
    else:
        u = (b - a - r * r) / (-2 * r)  # would-be value of sqrt(a)
        if u >= 0 and u * u == a:
            return 0
    prec = 8
    while True:
        lo_a, hi_a = _sqrt_bounds(a, prec)
        lo_b, hi_b = _sqrt_bounds(b, prec)
        if lo_a - hi_b - r > 0:
            return 1
        if hi_a - lo_b - r < 0:
            return -1
        prec *= 2


def wall_contains(outer: Wall, inner: Wall) -> bool:
    """Closed containment of semicircles: every point of inner lies on or
    inside outer.  Empty walls are contained in everything."""
    if inner.is_empty:
        return True
    if outer.is_empty:
        return False
    gap = abs(outer.center - inner.center)
    return radical_sign(outer.radius_sq, inner.radius_sq, gap) >= 0


def wall_strictly_contains(outer: Wall, inner: Wall) -> bool:
    if inner.is_empty:
        return not outer.is_empty
    if outer.is_empty:
        return False
    gap = abs(outer.center - inner.center)
    return radical_sign(outer.radius_sq, inner.radius_sq, gap) > 0


# -- rank-1 candidate search -------------------------------------------------


@dataclass(frozen=True)
class WallCandidate:
    """One antieffective candidate O(l) with l = -shape.  shape is stored as
    integer coordinates; filtered_by is the first eliminating filter or None
    for survivors, which carry their wall."""

    shape: tuple[int, ...]
    filtered_by: str | None
    wall: NumericalWall | None

    def shape_class(self) -> DivisorClass:
        return DivisorClass(self.shape)

    def to_json(self) -> dict:
        row: dict = {"shape": str(self.shape_class())}
        row["filter"] = self.filtered_by
        if self.wall is not None:
            row["wall"] = self.wall.to_json()
        return row


FILTER_ORDER = ("slope", "fiber_degree", "fiber_component", "ruling_excess")


@lru_cache(maxsize=4)
def _shape_pool(max_h_degree: int):
    """All candidate shapes -l: the E_i plus aH - sum b_i E_i with
    1 <= a <= bound, 0 <= b_i <= a, sum b_i <= 3a (effectivity caps).
    Rows are (coords, fiber_degree, a, b1, sum of b_2..b_9)."""
    rows = []
    for i in range(9):
        coords = tuple(1 if j == i + 1 else 0 for j in range(RANK))
        rows.append((coords, 1, 0, 0, 0))
    for a in range(1, max_h_degree + 1):
        for b in itertools.product(range(a + 1), repeat=9):
            total = sum(b)
            if total > 3 * a:
                continue
            coords = (a,) + tuple(-x for x in b)
            rows.append((coords, 3 * a - total, a, b[0], total - b[0]))
    return tuple(rows)


def _is_fiber_multiple(coords: tuple[int, ...]) -> bool:
    a = coords[0]
    if a <= 0 or a % 3:
        return False
    k = a // 3
    return all(e == -k for e in coords[1:])


def rank1_candidates(sl: Slice, max_h_degree: int = 3) -> list[WallCandidate]:
    """Enumerate rank-1 destabilizer candidates and replay the case filters.

    A candidate is eliminated by the first filter it trips, in FILTER_ORDER:
    slope (meets A more than n, so it cannot destabilize the ideal sheaf),
    fiber_degree (meets F at least twice), fiber_component (vertical class
    that is not a full fiber multiple), and, on the ruling-based slice only,
    ruling_excess (ruling multiples with more exceptional multiplicity than
    ruling degree).  Survivors get their wall against the ideal character.
    """
    if max_h_degree < 0:
        raise ValueError("max_h_degree >= 0 required")
    a_ints, a_den = sl.polarization.scaled_int_coords()
    slope_cap = sl.n * a_den
    ideal = ideal_points_char(sl.n)
    out: list[WallCandidate] = []
    for coords, f_deg, a, b1, rest in _shape_pool(max_h_degree):
        if dot_int(coords, a_ints) > slope_cap:
            filtered = "slope"
        elif f_deg >= 2:
            filtered = "fiber_degree"
        elif f_deg == 0 and not _is_fiber_multiple(coords):
            filtered = "fiber_component"
        elif sl.ruling_based and a == b1 >= 1 and rest > a:
            filtered = "ruling_excess"
        else:
            filtered = None
        wall = None
        if filtered is None:
            l_cls = -1 * DivisorClass(coords)
            wall = wall_oracle(sl, line_bundle_char(l_cls), ideal)
        out.append(WallCandidate(coords, filtered, wall))
    return out


def rank2_radius_bound(sl: Slice) -> Fraction:
    """Radius^2 cap for rank >= 2 destabilizers,
    (2n A^2 + (A.F)^2 - A^2 F^2) / (8 (A^2)^2),
    replayed with the quoted closed-form value of A^2."""
    return _rank2_bound_from(sl, sl.quoted_self_intersection)


def rank2_radius_bound_exact(sl: Slice) -> Fraction:
    """Same cap evaluated with the exact A.A."""
    return _rank2_bound_from(sl, sl.a_squared)


def _rank2_bound_from(sl: Slice, a_sq: Fraction) -> Fraction:
    n = sl.n
    a_dot_f = intersect(sl.polarization, F)
    f_sq = self_intersection(F)
    return (2 * n * a_sq + a_dot_f**2 - a_sq * f_sq) / (8 * a_sq * a_sq)


class GiesekerFalsified(Exception):
    """The claimed extremal wall is not extremal at this n and bound."""

    def __init__(self, message: str, witness: WallCandidate | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class GiesekerCertificate:
    slice_label: str
    n: int
    degree_bound: int
    fiber_wall: Wall
    candidate_count: int
    eliminated: tuple[tuple[str, int], ...]
    survivor_count: int
    empty_survivor_walls: int
    min_survivor_center: Fraction | None
    walls_equal_to_fiber_wall: int
    rank2_bound_quoted: Fraction
    rank2_bound_exact: Fraction
    certified: bool
    candidates: tuple[WallCandidate, ...]

    def to_json(self, include_candidates: bool = True) -> dict:
        data = {
            "slice": self.slice_label,
            "n": self.n,
            "degree_bound": self.degree_bound,
            "fiber_wall": self.fiber_wall.to_json(),
            "candidate_count": self.candidate_count,
            "eliminated": {name: count for name, count in self.eliminated},
            "survivor_count": self.survivor_count,
            "empty_survivor_walls": self.empty_survivor_walls,
            "min_survivor_center": (
                None
                if self.min_survivor_center is None
                else format_rational(self.min_survivor_center)
            ),
            "walls_equal_to_fiber_wall": self.walls_equal_to_fiber_wall,
            "rank2_radius_bound": format_rational(self.rank2_bound_quoted),
            "rank2_radius_bound_exact": format_rational(self.rank2_bound_exact),
            "certified": self.certified,
        }
        if include_candidates:
            data["candidates"] = [c.to_json() for c in self.candidates]
        return data


def gieseker_wall(
    sl: Slice, max_h_degree: int = 3
) -> tuple[Wall, GiesekerCertificate]:
    """Certify the wall where ideal sheaves of n points first destabilize.

    The claim: the fiber wall W(O(-F), ideal) is the largest wall.  Checked
    by (i) the nesting rule (smaller center = larger wall), requiring every
    nonempty rank-1 candidate wall to have center >= the fiber wall's, and
    (ii) the rank-2 radius cap staying below the fiber wall's radius^2.
    Raises GiesekerFalsified on any violation.
    """
    ideal = ideal_points_char(sl.n)
    fiber_wall = numerical_wall(sl, line_bundle_char(-1 * F), ideal)
    if not isinstance(fiber_wall, Wall) or fiber_wall.is_empty:
        raise GiesekerFalsified(f"fiber wall degenerated: {fiber_wall}")
    oracle_fiber = wall_oracle(sl, line_bundle_char(-1 * F), ideal)
    if oracle_fiber != fiber_wall:
        raise GiesekerFalsified(
            f"wall formulas disagree on the fiber wall: {fiber_wall} vs {oracle_fiber}"
        )

    candidates = rank1_candidates(sl, max_h_degree)
    eliminated = {name: 0 for name in FILTER_ORDER}
    survivors = 0
    empty_walls = 0
    coincident = 0
    min_center: Fraction | None = None
    for cand in candidates:
        if cand.filtered_by is not None:
            eliminated[cand.filtered_by] += 1
            continue
        survivors += 1
        wall = cand.wall
        if not isinstance(wall, Wall):
            raise GiesekerFalsified(
                f"candidate {cand.shape_class()} gave a non-circular wall {wall}",
                witness=cand,
            )
        if wall.is_empty:
            empty_walls += 1
            continue
        if min_center is None or wall.center < min_center:
            min_center = wall.center
        if wall.center < fiber_wall.center:
            raise GiesekerFalsified(
                f"candidate {cand.shape_class()} has wall center "
                f"{format_rational(wall.center)} left of the fiber wall",
                witness=cand,
            )
        if wall == fiber_wall:
            coincident += 1

    bound_quoted = rank2_radius_bound(sl)
    bound_exact = rank2_radius_bound_exact(sl)
    for name, bound in (("quoted", bound_quoted), ("exact", bound_exact)):
        if bound >= fiber_wall.radius_sq:
            raise GiesekerFalsified(
                f"rank-2 radius bound ({name}) {format_rational(bound)} reaches "
                f"the fiber wall radius^2 {format_rational(fiber_wall.radius_sq)}"
            )

    cert = GiesekerCertificate(
        slice_label=sl.label,
        n=sl.n,
        degree_bound=max_h_degree,
        fiber_wall=fiber_wall,
        candidate_count=len(candidates),
        eliminated=tuple((name, eliminated[name]) for name in FILTER_ORDER),
        survivor_count=survivors,
        empty_survivor_walls=empty_walls,
        min_survivor_center=min_center,
        walls_equal_to_fiber_wall=coincident,
        rank2_bound_quoted=bound_quoted,
        rank2_bound_exact=bound_exact,
        certified=True,
        candidates=tuple(candidates),
    )
    return fiber_wall, cert


def nef_from_wall(sl: Slice, s_w: Fraction) -> HilbDivisor:
    """The divisor K/2 - s_W A - P on the surface side, minus B/2: at the
    certified wall center this lands exactly on the orthogonal-lift classes
    (epsilon of H on the H-family slice, of H - E1 on the ruling slice)."""
    s_w = Fraction(s_w)
    surf = Fraction(1, 2) * K - s_w * sl.polarization - sl.twist
    return HilbDivisor(surf, Fraction(-1))
