"""Divisor and curve classes on the Hilbert scheme of n points.

Pic of the Hilbert scheme is Pic(X) plus one class B/2, where B is the locus
of nonreduced subschemes.  A divisor is stored as (surf, b_half), meaning
surf^[n] + b_half*(B/2).  Curves are either the class contracted by the
Hilbert-Chow morphism (a pencil of length-2 structures on a fixed point set)
or the class induced by a curve on the surface (n points moving on it).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    DivisorClass,
    E,
    F,
    H,
    ZERO,
    arithmetic_genus,
    dot_int,
    format_rational,
    intersect,
)
from .weyl import enumerate_minus_one_classes, weyl_orbit


@dataclass(frozen=True, order=True)
class HilbDivisor:
    surf: DivisorClass
    b_half: Fraction

    def __post_init__(self) -> None:
        if type(self.b_half) is not Fraction:
            object.__setattr__(self, "b_half", Fraction(self.b_half))

    def __add__(self, other: "HilbDivisor") -> "HilbDivisor":
        return HilbDivisor(self.surf + other.surf, self.b_half + other.b_half)

    def __sub__(self, other: "HilbDivisor") -> "HilbDivisor":
        return HilbDivisor(self.surf - other.surf, self.b_half - other.b_half)

    def __mul__(self, scalar: Fraction | int) -> "HilbDivisor":
        s = Fraction(scalar)
        return HilbDivisor(s * self.surf, s * self.b_half)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"surf": self.surf.to_json(), "b_half": format_rational(self.b_half)}

    @classmethod
    def from_json(cls, data: dict) -> "HilbDivisor":
        return cls(DivisorClass.from_json(data["surf"]), Fraction(data["b_half"]))

    def __str__(self) -> str:
        if self.b_half == 0:
            return f"({self.surf})^[n]"
        sign = "+" if self.b_half > 0 else "-"
        return f"({self.surf})^[n] {sign} {format_rational(abs(self.b_half))}*B/2"


def lift(surf: DivisorClass) -> HilbDivisor:
    """The induced divisor surf^[n] (no B component)."""
    return HilbDivisor(surf, Fraction(0))


B_CLASS = HilbDivisor(ZERO, Fraction(2))


@dataclass(frozen=True)
class ContractedCurve:
    """The Hilbert-Chow contracted curve: pairs 0 with every surf^[n], -2 with B."""


@dataclass(frozen=True)
class InducedCurve:
    """n points moving along a curve of class c on the surface."""

    c: DivisorClass


CurveClass = ContractedCurve | InducedCurve

C0 = ContractedCurve()


def pair_hilb(d: HilbDivisor, curve: CurveClass, n: int) -> Fraction:
    """Intersection of a Hilbert-scheme divisor with a curve class.

    Contracted curve: -b_half.  Induced curve of class c:
    c.surf + b_half*(g(c) - 1 + n), from C_[n].B = 2g(c) - 2 + 2n.
    """
    if n < 2:
        raise ValueError("the Hilbert scheme pairing needs n >= 2")
    if isinstance(curve, ContractedCurve):
        return -d.b_half
    g = arithmetic_genus(curve.c)
    return intersect(curve.c, d.surf) + d.b_half * (g - 1 + n)


def b_negative_ray(n: int) -> HilbDivisor:
    """(n-1) F^[n] - B/2, the extreme B-negative edge of the bounding cone hull."""
    if n < 2:
        raise ValueError("n >= 2 required")
    return HilbDivisor((n - 1) * F, Fraction(-1))


def fiber_orthogonal_lift(c: DivisorClass, n: int) -> HilbDivisor:
    """x*c^[n] + (n-1)F^[n] - B/2 with x = n/(c.F), the unique member of that
    pencil pairing to zero with the induced fiber curve."""
    if n < 3:
        raise ValueError("n >= 3 required")
    cf = intersect(c, F)
    if cf == 0:
        raise ValueError("class pairs to zero with the fiber; no orthogonal lift")
    x = Fraction(n) / cf
    return HilbDivisor(x * c + (n - 1) * F, Fraction(-1))


@dataclass(frozen=True)
class MembershipCertificate:
    """Pairings of a divisor against the contracted curve, the induced fiber
    curve, and every induced (-1)-curve up to the degree bound."""

    divisor: HilbDivisor
    n: int
    degree_bound: int
    in_cone: bool
    contracted_pairing: Fraction
    fiber_pairing: Fraction
    min_curve_pairing: Fraction
    min_curve_witness: DivisorClass | None
    violations: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "divisor": self.divisor.to_json(),
            "n": self.n,
            "degree_bound": self.degree_bound,
            "in_cone": self.in_cone,
            "pairings": {
                "contracted_curve": format_rational(self.contracted_pairing),
                "induced_fiber": format_rational(self.fiber_pairing),
                "min_induced_minus_one": format_rational(self.min_curve_pairing),
            },
            "violations": list(self.violations),
        }


def bounding_cone_membership(
    d: HilbDivisor, n: int, max_h_degree: int = 3
) -> MembershipCertificate:
    """Check nonnegativity against the known curve classes (degree-bounded)."""
    c0_val = pair_hilb(d, C0, n)
    fib_val = pair_hilb(d, InducedCurve(F), n)
    min_val: Fraction | None = None
    min_witness: DivisorClass | None = None
    for e_cls in enumerate_minus_one_classes(max_h_degree):
        v = pair_hilb(d, InducedCurve(e_cls), n)
        if min_val is None or v < min_val:
            min_val = v
            min_witness = e_cls
    violations = []
    if c0_val < 0:
        violations.append("not nef: negative against the contracted curve")
    if fib_val < 0:
        violations.append(
            f"not nef: pairs {format_rational(fib_val)} with the induced fiber curve"
        )
    if min_val < 0:
        violations.append(
            f"not nef: pairs {format_rational(min_val)} with an induced (-1)-curve"
        )
    return MembershipCertificate(
        divisor=d,
        n=n,
        degree_bound=max_h_degree,
        in_cone=not violations,
        contracted_pairing=c0_val,
        fiber_pairing=fib_val,
        min_curve_pairing=min_val,
        min_curve_witness=min_witness,
        violations=tuple(violations),
    )


class DecompositionError(ValueError):
    """Raised when a divisor cannot be written as nef part plus B-negative ray."""

    def __init__(self, message: str, witness: DivisorClass | None = None, pairing=None):
        super().__init__(message)
        self.witness = witness
        self.pairing = pairing


def bounding_cone_decompose(
    d: HilbDivisor, n: int, max_h_degree: int = 3
) -> tuple[DivisorClass, Fraction]:
    """Write d = nef_part^[n] + t * ((n-1)F^[n] - B/2) with t = -b_half >= 0.

    The nef part surf + b_half*(n-1)F is certified nef up to the degree bound:
    its fiber pairing equals surf.F and its pairing with a (-1)-curve equals
    the pairing of d with the induced curve, so membership transfers exactly.
    """
    if n < 3:
        raise ValueError("n >= 3 required")
    if d.b_half > 0:
        raise DecompositionError(
            "positive B/2 coefficient pairs negatively with the contracted curve"
        )
    t = -d.b_half
    nef_part = d.surf + d.b_half * (n - 1) * F
    fib = intersect(nef_part, F)
    if fib < 0:
        raise DecompositionError(
            "nef part fails against the fiber class", witness=F, pairing=fib
        )
    for e_cls in enumerate_minus_one_classes(max_h_degree):
        v = intersect(nef_part, e_cls)
        if v < 0:
            raise DecompositionError(
                "nef part fails against a (-1)-curve", witness=e_cls, pairing=v
            )
    return nef_part, t


def recompose(nef_part: DivisorClass, t: Fraction, n: int) -> HilbDivisor:
    return lift(nef_part) + t * b_negative_ray(n)


@dataclass(frozen=True)
class CurveRow:
    """Per-curve summary of the duality scan: the smallest pairing seen, how
    many nef candidates hit zero, and one of them as extremality witness."""

    curve: str
    min_pairing: Fraction
    zero_count: int
    witness: str | None

    def to_json(self) -> dict:
        return {
            "curve": self.curve,
            "min_pairing": format_rational(self.min_pairing),
            "zero_count": self.zero_count,
            "orthogonality_witness": self.witness,
        }


@dataclass(frozen=True)
class DualityReport:
    """Exhaustive degree-bounded scan of candidate nef generators against
    candidate curve generators, with orthogonality witnesses for extremality."""

    n: int
    degree_bound: int
    nef_candidate_count: int
    curve_candidate_count: int
    pairings_checked: int
    violations: tuple[str, ...]
    unwitnessed_curves: tuple[str, ...]
    min_pairing: Fraction
    passed: bool
    curve_rows: tuple[CurveRow, ...]

    def to_json(self, include_curves: bool = True) -> dict:
        data = {
            "n": self.n,
            "degree_bound": self.degree_bound,
            "nef_candidates": self.nef_candidate_count,
            "curve_candidates": self.curve_candidate_count,
            "pairings_checked": self.pairings_checked,
            "violations": list(self.violations),
            "curves_without_orthogonality_witness": list(self.unwitnessed_curves),
            "min_pairing": format_rational(self.min_pairing),
            "passed": self.passed,
        }
        if include_curves:
            data["curves"] = [row.to_json() for row in self.curve_rows]
        return data


def cone_duality_check(n: int, max_h_degree: int = 3) -> DualityReport:
    """Scan every candidate nef generator against every candidate curve class.

    Nef candidates: lifted Weyl images of H and H-E1, the lifted fiber class,
    and the fiber-orthogonal lift of each Weyl image.  Curve candidates: the
    contracted curve, the induced fiber curve, and every induced (-1)-curve
    up to the bound.  Passing means no negative pairing and, for every curve,
    some nef candidate pairing to exactly zero.
    """
    if n < 3:
        raise ValueError("n >= 3 required")
    orbit_h = weyl_orbit(H, max_h_degree)
    orbit_ruling = weyl_orbit(H - E[0], max_h_degree)
    minus_ones = enumerate_minus_one_classes(max_h_degree)

    nef_candidates: list[HilbDivisor] = [lift(F)]
    nef_candidates += [lift(c) for c in orbit_h]
    nef_candidates += [lift(c) for c in orbit_ruling]
    eps_candidates = [fiber_orthogonal_lift(c, n) for c in orbit_h]
    eps_candidates += [fiber_orthogonal_lift(c, n) for c in orbit_ruling]
    nef_candidates += eps_candidates

    # Scaled-integer fast path: pairing * den = dot(surf_int, curve_int)
    # + b_half_int * (g - 1 + n), with den the divisor's common denominator.
    scaled = []
    for d in nef_candidates:
        ints, den = d.surf.scaled_int_coords()
        b_num = d.b_half * den
        if b_num.denominator != 1:
            raise ValueError("candidate B coefficient does not clear the denominator")
        scaled.append((ints, int(b_num), den))

    curves: list[tuple[str, tuple[int, ...] | None, int]] = [("contracted", None, 0)]
    curves.append(("fiber", F.int_coords(), n))  # genus 1: g - 1 + n = n
    for e_cls in minus_ones:
        curves.append((str(e_cls), e_cls.int_coords(), n - 1))  # genus 0

    violations: list[str] = []
    # per curve: min pairing as an int pair (num, den), zero hits, witness
    cmin: list[tuple[int, int] | None] = [None] * len(curves)
    zero_counts = [0] * len(curves)
    witness_at = [-1] * len(curves)
    checked = 0
    for cand_idx, (d, (ints, b_num, den)) in enumerate(zip(nef_candidates, scaled)):
        for idx, (label, cvec, gfac) in enumerate(curves):
            if cvec is None:
                num = -b_num
            else:
                num = dot_int(ints, cvec) + b_num * gfac
            checked += 1
            if num == 0:
                zero_counts[idx] += 1
                if witness_at[idx] < 0:
                    witness_at[idx] = cand_idx
            elif num < 0:
                violations.append(f"{d} against {label}: {Fraction(num, den)}")
            prev = cmin[idx]
            if prev is None or num * prev[1] < prev[0] * den:
                cmin[idx] = (num, den)

    # The fiber-orthogonal lifts must kill the induced fiber curve exactly.
    for d in eps_candidates:
        if pair_hilb(d, InducedCurve(F), n) != 0:
            violations.append(f"{d} is not orthogonal to the induced fiber curve")

    rows = tuple(
        CurveRow(
            curve=label,
            min_pairing=Fraction(*cmin[idx]),
            zero_count=zero_counts[idx],
            witness=str(nef_candidates[witness_at[idx]])
            if witness_at[idx] >= 0
            else None,
        )
        for idx, (label, _, _) in enumerate(curves)
    )
    unwitnessed = tuple(row.curve for row in rows if row.witness is None)
    return DualityReport(
        n=n,
        degree_bound=max_h_degree,
        nef_candidate_count=len(nef_candidates),
        curve_candidate_count=len(curves),
        pairings_checked=checked,
        violations=tuple(violations),
        unwitnessed_curves=unwitnessed,
        min_pairing=min(row.min_pairing for row in rows),
        passed=not violations and not unwitnessed,
        curve_rows=rows,
    )
