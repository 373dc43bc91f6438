"""Lattice translations attached to sections of the elliptic fibration.

Every (-1)-class P with P.F = 1 determines an integral isometry
    T(x) = x + (x.F) v - [(x.v) + (v.v/2)(x.F)] F,   v = P - E1,
fixing F and K and carrying E1 to P.  These are the candidates for the
automorphisms furnished by fiberwise translation; this module checks the
lattice-level necessary conditions and runs the fundamental-domain
reduction experiment on the Hilbert scheme's bounding cone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    DivisorClass,
    E,
    F,
    H,
    K,
    ZERO,
    dot_int,
    format_rational,
    intersect,
    is_minus_one_class,
    self_intersection,
)
from .weyl import LatticeMap, enumerate_minus_one_classes, root_basis, weyl_orbit
from .hilb import (
    DecompositionError,
    HilbDivisor,
    bounding_cone_decompose,
    fiber_orthogonal_lift,
    lift,
)

_BASIS = (H,) + E


@dataclass(frozen=True)
class Translation:
    """A section class together with its transvection on the lattice."""

    section: DivisorClass
    map: LatticeMap

    def __str__(self) -> str:
        return f"translation by {self.section}"


def translation(p: DivisorClass) -> Translation:
    """Transvection sending E1 to p; p = E1 gives the identity."""
    if not is_minus_one_class(p):
        raise ValueError(f"section must be a (-1)-class: {p}")
    if intersect(p, F) != 1:
        raise ValueError(f"section must meet the fiber once: {p}")
    v = p - E[0]
    half_v_sq = self_intersection(v) / 2
    if half_v_sq.denominator != 1:
        raise ArithmeticError("v.v is always even for a section difference")

    def image(x: DivisorClass) -> DivisorClass:
        xf = intersect(x, F)
        return x + xf * v - (intersect(x, v) + half_v_sq * xf) * F

    return Translation(p, LatticeMap.from_basis_images([image(b) for b in _BASIS]))


def translate_hilb(t: Translation, d: HilbDivisor) -> HilbDivisor:
    """Translations fix the exceptional B-direction; only surf moves."""
    return HilbDivisor(t.map.apply(d.surf), d.b_half)


def weyl_condition_failures(
    m: LatticeMap, section: DivisorClass | None = None
) -> tuple[str, ...]:
    """Necessary conditions for m to come from a fibration automorphism:
    integral isometry, fixes F and K, unit determinant, preserves the root
    lattice.  section, when given, must be the image of E1.  These do not
    certify that an automorphism exists; they can only rule one out."""
    failures: list[str] = []
    if not m.is_integral():
        failures.append("map is not integral")
    if not m.is_isometry():
        failures.append("map is not an isometry")
    if m.apply(F) != F:
        failures.append("map does not fix the fiber class")
    if m.apply(K) != K:
        failures.append("map does not fix the canonical class")
    if abs(m.determinant()) != 1:
        failures.append("determinant is not a unit")
    for root in root_basis():
        img = m.apply(root.cls)
        if not img.is_integral():
            failures.append(f"image of root {root.cls} is not integral")
        elif intersect(img, F) != 0:
            failures.append(f"image of root {root.cls} leaves the fiber-orthogonal")
        elif self_intersection(img) != -2:
            failures.append(f"image of root {root.cls} is not a root")
    if section is not None and m.apply(E[0]) != section:
        failures.append("map does not send E1 to the section")
    return tuple(failures)


@dataclass(frozen=True)
class TranslationReport:
    section: DivisorClass
    determinant: Fraction
    failures: tuple[str, ...]
    passed: bool

    def to_json(self) -> dict:
        return {
            "section": str(self.section),
            "determinant": format_rational(self.determinant),
            "failures": list(self.failures),
            "passed": self.passed,
        }


def verify_weyl_necessary_conditions(t: Translation) -> TranslationReport:
    failures = weyl_condition_failures(t.map, section=t.section)
    return TranslationReport(
        section=t.section,
        determinant=t.map.determinant(),
        failures=failures,
        passed=not failures,
    )


# -- fundamental-domain reduction ---------------------------------------------


def low_degree_sections(max_h_degree: int = 1) -> list[DivisorClass]:
    """Sections usable as reduction moves; degree <= 1 gives the 45 classes
    E_i and H - E_i - E_j."""
    return enumerate_minus_one_classes(max_h_degree)


@dataclass(frozen=True)
class _FastTransvection:
    # integer-coordinate form of x -> x + (x.F)v - [(x.v) + c(x.F)]F
    label: str
    v: tuple[int, ...]
    c: int

    def apply_ints(self, x: tuple[int, ...]) -> tuple[int, ...]:
        xf = dot_int(x, _F_INTS)
        bracket = dot_int(x, self.v) + self.c * xf
        return tuple(
            xi + xf * vi - bracket * fi for xi, vi, fi in zip(x, self.v, _F_INTS)
        )


_F_INTS = F.int_coords()


def _fast_transvections(sections: list[DivisorClass]) -> list[_FastTransvection]:
    out = []
    for p in sections:
        v = p - E[0]
        c = self_intersection(v) / 2
        out.append(_FastTransvection(str(p), v.int_coords(), int(c)))
    return out


def reduce_surface_class(
    surf: DivisorClass,
    moves: list[_FastTransvection] | None = None,
    max_steps: int = 256,
) -> tuple[DivisorClass, int, tuple[str, ...], bool]:
    """Greedy descent of the H-degree under the section transvections.

    Each step applies the move giving the lexicographically least image
    among those that strictly drop the H-coefficient, so runs are
    reproducible.  Returns (reduced class, steps, move labels, hit_cap).
    The degree is a nonneg integer multiple of 1/den and strictly drops,
    so termination is guaranteed; the cap is only a defensive bound.
    """
    if moves is None:
        moves = _fast_transvections(low_degree_sections())
    ints, den = surf.scaled_int_coords()
    labels: list[str] = []
    steps = 0
    hit_cap = False
    while True:
        best: tuple[int, ...] | None = None
        best_label = ""
        for mv in moves:
            img = mv.apply_ints(ints)
            if img[0] < ints[0] and (best is None or img < best):
                best = img
                best_label = mv.label
        if best is None:
            break
        if steps >= max_steps:
            hit_cap = True
            break
        ints = best
        labels.append(best_label)
        steps += 1
    reduced = DivisorClass(tuple(Fraction(x, den) for x in ints))
    return reduced, steps, tuple(labels), hit_cap


@dataclass(frozen=True)
class CoverageConfig:
    """Knobs for the bounding-cone coverage experiment."""

    n: int
    samples: int = 100
    seed: int = 0
    max_h_degree: int = 3
    max_terms: int = 5
    max_coeff: int = 3
    # a reduced nef part above this degree with no descent move left is
    # flagged as a non-terminating reduction (combos of max_terms * max_coeff
    # window-degree generators should land well below it)
    stall_degree: int = 15
    max_steps: int = 256


@dataclass(frozen=True)
class CoverageTrial:
    index: int
    terms: int
    start_h: Fraction
    reduced_h: Fraction
    steps: int
    stalled: bool
    decomposed: bool

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "terms": self.terms,
            "start_h": format_rational(self.start_h),
            "reduced_h": format_rational(self.reduced_h),
            "steps": self.steps,
            "stalled": self.stalled,
            "decomposed": self.decomposed,
        }


@dataclass(frozen=True)
class CoverageReport:
    config: CoverageConfig
    successes: int
    stalled_count: int
    max_reduced_h: Fraction
    passed: bool
    trials: tuple[CoverageTrial, ...]

    def to_json(self, include_trials: bool = True) -> dict:
        data = {
            "n": self.config.n,
            "samples": self.config.samples,
            "seed": self.config.seed,
            "max_h_degree": self.config.max_h_degree,
            "stall_degree": self.config.stall_degree,
            "successes": self.successes,
            "stalled": self.stalled_count,
            "max_reduced_h": format_rational(self.max_reduced_h),
            "passed": self.passed,
        }
        if include_trials:
            data["trials"] = [t.to_json() for t in self.trials]
        return data


def coverage_experiment(cfg: CoverageConfig) -> CoverageReport:
    """Sample nonnegative combinations of the certified nef generators,
    reduce each by section transvections, and decompose the reduction.

    A trial succeeds when the reduced representative splits as
    nef part + t * (B-negative ray); since the generators are nef and the
    moves are isometries fixing F, this must hold, and the experiment is a
    consistency check of the whole pipeline rather than a theorem prover.
    """
    if cfg.n < 3:
        raise ValueError("n >= 3 required")
    if cfg.samples < 1 or cfg.max_terms < 1 or cfg.max_coeff < 1:
        raise ValueError("samples, max_terms, max_coeff must be positive")
    rng = random.Random(cfg.seed)
    orbit_h = weyl_orbit(H, cfg.max_h_degree)
    orbit_ruling = weyl_orbit(H - E[0], cfg.max_h_degree)
    pool: list[HilbDivisor] = [lift(F)]
    pool += [fiber_orthogonal_lift(c, cfg.n) for c in orbit_h]
    pool += [fiber_orthogonal_lift(c, cfg.n) for c in orbit_ruling]
    moves = _fast_transvections(low_degree_sections())

    trials: list[CoverageTrial] = []
    successes = 0
    stalled_count = 0
    max_reduced = Fraction(0)
    for index in range(cfg.samples):
        terms = rng.randint(1, cfg.max_terms)
        d = HilbDivisor(ZERO, Fraction(0))
        for _ in range(terms):
            coeff = rng.randint(1, cfg.max_coeff)
            d = d + coeff * pool[rng.randrange(len(pool))]
        reduced_surf, steps, _, hit_cap = reduce_surface_class(
            d.surf, moves, cfg.max_steps
        )
        reduced = HilbDivisor(reduced_surf, d.b_half)
        # degree of the nef part: the t*(n-1)F summand is move-invariant
        nef_h = reduced_surf.h + d.b_half * 3 * (cfg.n - 1)
        stalled = hit_cap or nef_h > cfg.stall_degree
        try:
            bounding_cone_decompose(reduced, cfg.n, cfg.max_h_degree)
            decomposed = True
        except DecompositionError:
            decomposed = False
        if decomposed:
            successes += 1
        if stalled:
            stalled_count += 1
        if nef_h > max_reduced:
            max_reduced = nef_h
        trials.append(
            CoverageTrial(
                index=index,
                terms=terms,
                start_h=d.surf.h,
                reduced_h=nef_h,
                steps=steps,
                stalled=stalled,
                decomposed=decomposed,
            )
        )
    return CoverageReport(
        config=cfg,
        successes=successes,
        stalled_count=stalled_count,
        max_reduced_h=max_reduced,
        passed=successes == cfg.samples,
        trials=tuple(trials),
    )
