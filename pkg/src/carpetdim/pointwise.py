"""Pointwise dimension along coded points and the few-large-tangents family.

This module hosts the operations that depend on a coded point gamma: the
non-autonomous fiber induced by its column word, the pointwise Assouad
dimension, level sets, and the 12-map example family whose pointwise
dimension exceeds the box dimension only on a small set of points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dimensions import (_column_moran, _solve_box_dimension, baranski_dims,
                         gl_dims)
from .errors import InvalidSystem, Unsupported, WrongClass
from .moran import ColumnSequence, nonauto_assouad
from .systems import (BARANSKI, GATZOURAS_LALLEY, CarpetSystem, DiagonalMap,
                      EventuallyPeriodicWord, classify_word, validate)


@dataclass(frozen=True)
class PointwiseReport:
    """Pointwise Assouad data at one coded point.

    fiber_dim is the Assouad dimension of the symbolic slice through the
    point, tangent_dim the dimension of the largest tangent set there, and
    pointwise_assouad the pointwise Assouad dimension itself.  When the
    relevant projected system is not strongly separated the formulas are
    still reported but only guaranteed to be lower bounds, which
    regularity_warning records.  For systems without a closed-form box
    dimension the box term is an empirical estimate and dimB_estimate /
    dimB_band carry it with its spread.
    """

    fiber_dim: float
    tangent_dim: float
    pointwise_assouad: float
    axis: int
    regularity_warning: bool
    omega_class: str
    dimB_estimate: float = None
    dimB_band: tuple = None


def symbolic_slice(system: CarpetSystem, gamma: EventuallyPeriodicWord,
                   axis: int = 1) -> ColumnSequence:
    """Fiber ratio multisets read off along gamma.

    Step n of the slice is the multiset of orthogonal-axis ratios of the
    maps sharing the axis-j projection class of gamma_n; the preperiod and
    period of gamma carry over unchanged.
    """
    gamma.check_alphabet(system)
    other = 2 if axis == 1 else 1
    lookup = system.class_index(axis)
    classes = system.classes(axis)

    def fiber(letter):
        members = classes[lookup[letter]].members
        return tuple(sorted(float(system.maps[i].ratio(other))
                            for i in members))

    return ColumnSequence(preperiod=tuple(fiber(i) for i in gamma.preperiod),
                          period=tuple(fiber(i) for i in gamma.period))


def pointwise_assouad_gl(system: CarpetSystem,
                         gamma: EventuallyPeriodicWord) -> PointwiseReport:
    """Pointwise Assouad dimension at the point coded by gamma.

    The fiber exponent comes from the non-autonomous slice through the
    point's column word; adding the projected box dimension gives the
    largest tangent there, and the pointwise value is that total capped
    below by the global box dimension.  Without strong separation of the
    column projection the value is a guaranteed lower bound only, so the
    report sets regularity_warning instead of failing.
    """
    if system.klass != GATZOURAS_LALLEY:
        raise WrongClass("pointwise formula needs GatzourasLalley, got %s"
                         % system.klass)
    omega, _ = classify_word(system, gamma)
    fiber = nonauto_assouad(symbolic_slice(system, gamma, axis=1))
    s_eta = _column_moran(system, 1)
    dim_b, _ = _solve_box_dimension(system, s_eta)
    tangent = s_eta + fiber
    return PointwiseReport(
        fiber_dim=fiber, tangent_dim=tangent,
        pointwise_assouad=max(dim_b, tangent), axis=1,
        regularity_warning=not system.eta1_ssc, omega_class=omega)


def pointwise_assouad_baranski(system: CarpetSystem,
                               gamma: EventuallyPeriodicWord,
                               ) -> PointwiseReport:
    """Pointwise Assouad dimension on the axis singled out by gamma.

    Words contracting asymptotically faster in the vertical slice along
    columns (axis 1), the opposite ones along rows (axis 2); balanced words
    admit no formula and are rejected.  The box-dimension term has no
    closed form here, so the report carries an empirical estimate with its
    band next to the unconditional tangent term.
    """
    if system.klass not in (BARANSKI, GATZOURAS_LALLEY):
        raise WrongClass("pointwise formula needs a Baranski system, got %s"
                         % system.klass)
    omega, _ = classify_word(system, gamma)
    if omega == "Omega0":
        raise Unsupported(
            "word contracts at the same asymptotic rate on both axes "
            "(Omega0); no pointwise formula applies")
    j = 1 if omega == "Omega1" else 2
    if not (system.eta1_ssc if j == 1 else system.eta2_ssc):
        raise Unsupported(
            "axis-%d projection is not strongly separated, so the slice "
            "formula does not apply" % j)
    fiber = nonauto_assouad(symbolic_slice(system, gamma, axis=j))
    proj = _column_moran(system, j)
    tangent = proj + fiber
    from .geometry import box_dimension_estimate
    estimate, band = box_dimension_estimate(system)
    return PointwiseReport(
        fiber_dim=fiber, tangent_dim=tangent,
        pointwise_assouad=max(estimate, tangent), axis=j,
        regularity_warning=False, omega_class=omega,
        dimB_estimate=estimate, dimB_band=band)


def level_set_dim(system: CarpetSystem, alpha):
    """Hausdorff dimension of the level set of the pointwise Assouad map.

    Returns (value, full_measure): every non-empty level within
    [dimB, dimA] has full Hausdorff dimension, and the top level alpha =
    dimA is the one attained at almost every point, which the flag
    records.  Levels outside the interval are empty: (None, False).
    """
    report = gl_dims(system)
    if not report.dimB - 1e-12 <= alpha <= report.dimA + 1e-12:
        return None, False
    return report.dimH, bool(abs(alpha - report.dimA) <= 1e-12)


def few_large_tangents(system: CarpetSystem):
    """Whether large tangents occur only on a small set of points.

    Returns (True, j) when some axis j has the strictly smaller directional
    Hausdorff value d_j but the strictly larger directional total A_j: then
    points whose pointwise Assouad dimension reaches the global maximum
    form a set of Hausdorff dimension d_j < dimH.  Returns (False, None)
    when no axis splits this way.  Needs both projections strongly
    separated and both contraction-order classes of maps present.
    """
    if system.klass not in (BARANSKI, GATZOURAS_LALLEY):
        raise WrongClass("few-large-tangents test needs a Baranski system, "
                         "got %s" % system.klass)
    has_wide = any(float(m.r1) > float(m.r2) for m in system.maps)
    has_tall = any(float(m.r1) < float(m.r2) for m in system.maps)
    # one-sided systems can satisfy the split criterion spuriously, so they
    # are rejected; all-square systems evaluate it honestly (to False)
    if has_wide and not has_tall:
        raise Unsupported("no map contracts faster horizontally, so no "
                          "word is vertical-slice dominant (Omega2 empty)")
    if has_tall and not has_wide:
        raise Unsupported("no map contracts faster vertically, so no word "
                          "is horizontal-slice dominant (Omega1 empty)")
    for j, flag in ((1, system.eta1_ssc), (2, system.eta2_ssc)):
        if not flag:
            raise Unsupported("axis-%d projection is not strongly "
                              "separated" % j)
    directional, _, _ = baranski_dims(system)
    pairs = ((1, directional.d1, directional.d2,
              directional.A1, directional.A2),
             (2, directional.d2, directional.d1,
              directional.A2, directional.A1))
    for j, d_j, d_other, a_j, a_other in pairs:
        if d_j < d_other and a_j > a_other:
            return True, j
    return False, None


def baranski_level_profile(system: CarpetSystem, alpha, unverified=False):
    """Piecewise profile of level-set dimensions for split systems.

    For systems where few_large_tangents holds with witness j, the level
    set at alpha has dimension dimH for alpha up to the smaller directional
    total A_j' and drops to d_j above it.  The lower cut-off needs the box
    dimension, which is only available empirically here, and the formula
    itself is stated without proof in the source material, so the call is
    gated: pass unverified=True to acknowledge that the output is
    documented but not verified.  Returns (value or None, details dict).
    """
    if not unverified:
        raise Unsupported(
            "the piecewise level profile is documented but unverified; "
            "pass unverified=True to compute it anyway")
    split, j = few_large_tangents(system)
    if not split:
        raise Unsupported("needs strictly split directional dimensions")
    directional, dim_h, dim_a = baranski_dims(system)
    cut = directional.A2 if j == 1 else directional.A1
    low = directional.d1 if j == 1 else directional.d2
    from .geometry import box_dimension_estimate
    estimate, band = box_dimension_estimate(system)
    details = {"witness": j, "cut": cut, "dimB_estimate": estimate,
               "dimB_band": band, "unverified": True}
    if alpha < estimate - 1e-12 or alpha > dim_a + 1e-12:
        return None, details
    return (dim_h if alpha <= cut + 1e-12 else low), details


def build_exceptional(delta):
    """Build the 12-map height-and-width interpolation family.

    For ``delta`` in [0, 1/6) the system has one wide column of four cells
    stacked over the full height (width ``a1 = 1/3 - delta``) and four narrow
    columns of two cells each (width ``a2 = 1/6 - delta``); all cells share
    height ``b = 1/4 - delta``.  The two left narrow columns use the bottom
    two rows, the two right ones the top two rows.  Columns are spaced by
    ``5*delta/4`` and rows by ``4*delta/3`` so the layout exactly fills the
    unit square: at ``delta = 0`` the cells touch, for ``delta > 0`` the
    system is strongly separated on both axes.

    ``delta`` may be an int, Fraction, or decimal/fraction string (kept
    exact), or a float (inexact).  Out-of-range values raise InvalidSystem.
    """
    if isinstance(delta, str):
        delta = Fraction(delta)
    elif isinstance(delta, int):
        delta = Fraction(delta)
    if not 0 <= delta < Fraction(1, 6):
        raise InvalidSystem("delta %r outside [0, 1/6)" % (delta,))

    if isinstance(delta, Fraction):
        third, sixth, quarter = (Fraction(1, 3), Fraction(1, 6),
                                 Fraction(1, 4))
    else:
        third, sixth, quarter = 1.0 / 3.0, 1.0 / 6.0, 0.25
    a1 = third - delta
    a2 = sixth - delta
    b = quarter - delta
    gap_x = 5 * delta / 4
    gap_y = 4 * delta / 3

    col_x = [a1 + (j + 1) * gap_x + j * a2 for j in range(4)]
    row_y = [i * (b + gap_y) for i in range(4)]

    maps = [DiagonalMap(a1, b, 0 * a1, row_y[i]) for i in range(4)]
    for j in (0, 1):
        for i in (0, 1):
            maps.append(DiagonalMap(a2, b, col_x[j], row_y[i]))
    for j in (2, 3):
        for i in (2, 3):
            maps.append(DiagonalMap(a2, b, col_x[j], row_y[i]))
    return validate(maps)
