"""Diagonal planar IFS model: maps, validation, projections, symbolic words.

A system is a finite list of affine contractions of the unit square

    T_i(x, y) = (r1_i * x + d1_i,  r2_i * y + d2_i),   0 < r1_i, r2_i < 1.

Class detection follows the usual carpet taxonomy:

* ``GatzourasLalley`` -- open images pairwise disjoint, the axis-1
  projections of any two maps are either identical or have disjoint open
  intervals (column structure), and every map is wider than tall
  (r1_i > r2_i).
* ``Baranski`` -- open images pairwise disjoint and the projection condition
  holds on *both* axes (columns and rows), with no ratio ordering.
* ``DiagonalOnly`` -- anything else with valid ratios; the symbolic machinery
  still works but no closed-form dimension applies.

Entries given as ``fractions.Fraction`` (the config format's ``[num, den]``)
are kept exact and all separation tests are then exact; float entries fall
back to 1e-12 tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidSystem

_TOL = 1e-12

GATZOURAS_LALLEY = "GatzourasLalley"
BARANSKI = "Baranski"
DIAGONAL_ONLY = "DiagonalOnly"


def as_number(value):
    """Normalize a config scalar: int -> Fraction, [num, den] -> Fraction,
    Fraction stays, float stays float (inexact)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidSystem("boolean is not a number: %r" % value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, (list, tuple)) and len(value) == 2 \
            and all(isinstance(v, int) for v in value):
        return Fraction(value[0], value[1])
    raise InvalidSystem("cannot read number from %r" % (value,))


@dataclass(frozen=True)
class DiagonalMap:
    r1: object
    r2: object
    d1: object
    d2: object

    def ratio(self, axis: int):
        return self.r1 if axis == 1 else self.r2

    def offset(self, axis: int):
        return self.d1 if axis == 1 else self.d2

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction)
                   for v in (self.r1, self.r2, self.d1, self.d2))


@dataclass(frozen=True)
class ProjectionClass:
    """One eta_j equivalence class: maps sharing the exact axis-j similarity."""
    ratio: object
    offset: object
    members: tuple


@dataclass(frozen=True)
class CarpetSystem:
    maps: tuple
    klass: str
    columns: tuple          # eta_1 classes, sorted by offset
    rows: tuple             # eta_2 classes, sorted by offset
    eta1_ssc: bool
    eta2_ssc: bool
    warnings: tuple = field(default=())

    def __len__(self):
        return len(self.maps)

    @property
    def exact(self) -> bool:
        return all(m.exact for m in self.maps)

    def classes(self, axis: int):
        return self.columns if axis == 1 else self.rows

    def class_index(self, axis: int):
        """map index -> class id on the given axis."""
        out = {}
        for cid, cls in enumerate(self.classes(axis)):
            for i in cls.members:
                out[i] = cid
        return out


def _close(a, b, exact):
    if exact:
        return a == b
    return abs(float(a) - float(b)) <= _TOL


def _open_intervals_disjoint(a0, a1, b0, b1, exact):
    """(a0,a1) and (b0,b1) disjoint?"""
    if exact:
        return a1 <= b0 or b1 <= a0
    return float(a1) <= float(b0) + _TOL or float(b1) <= float(a0) + _TOL


def _group_axis(maps, axis, exact):
    """Group maps by exact (ratio, offset) equality on one axis."""
    order = sorted(range(len(maps)),
                   key=lambda i: (float(maps[i].offset(axis)),
                                  float(maps[i].ratio(axis))))
    classes = []
    for i in order:
        m = maps[i]
        placed = False
        for cls in classes:
            if _close(cls[0], m.ratio(axis), exact) and \
                    _close(cls[1], m.offset(axis), exact):
                cls[2].append(i)
                placed = True
                break
        if not placed:
            classes.append([m.ratio(axis), m.offset(axis), [i]])
    return tuple(ProjectionClass(c[0], c[1], tuple(sorted(c[2])))
                 for c in classes)


def _axis_aligned(maps, classes, axis, exact):
    """Projection condition: distinct classes have disjoint open intervals."""
    for a in range(len(classes)):
        for b in range(a + 1, len(classes)):
            ca, cb = classes[a], classes[b]
            if not _open_intervals_disjoint(ca.offset, ca.offset + ca.ratio,
                                            cb.offset, cb.offset + cb.ratio,
                                            exact):
                return False
    return True


def _axis_ssc(classes, exact):
    """Strong separation on an axis: the first-level cylinders of the
    *projected attractor* are pairwise disjoint as compact intervals.

    The projected attractor's convex hull [a, b] has endpoints at fixed
    points of the extreme class maps (a = min_c o_c/(1-r_c), likewise b with
    max), so the class-c cylinder is [o_c + r_c*a, o_c + r_c*b].  This is
    strictly finer than testing the full intervals [o, o+r]: classes whose
    full intervals touch can still carry disjoint attractor pieces when the
    attractor does not fill its hull.
    """
    one = Fraction(1) if exact else 1.0
    lo = min(c.offset / (one - c.ratio) for c in classes)
    hi = max(c.offset / (one - c.ratio) for c in classes)
    ends = [(c.offset + c.ratio * lo, c.offset + c.ratio * hi)
            for c in classes]
    for a in range(len(ends)):
        for b in range(a + 1, len(ends)):
            (a0, a1), (b0, b1) = ends[a], ends[b]
            if exact:
                disjoint = a1 < b0 or b1 < a0
            else:
                disjoint = (float(a1) < float(b0) - _TOL
                            or float(b1) < float(a0) - _TOL)
            if not disjoint:
                return False
    return True


def _rects_disjoint(maps, exact):
    """Open image rectangles pairwise disjoint?"""
    for a in range(len(maps)):
        for b in range(a + 1, len(maps)):
            ma, mb = maps[a], maps[b]
            if not (_open_intervals_disjoint(ma.d1, ma.d1 + ma.r1,
                                             mb.d1, mb.d1 + mb.r1, exact)
                    or _open_intervals_disjoint(ma.d2, ma.d2 + ma.r2,
                                                mb.d2, mb.d2 + mb.r2, exact)):
                return False
    return True


def validate(maps) -> CarpetSystem:
    """Build a CarpetSystem from an iterable of DiagonalMap (or 4-tuples).

    Raises InvalidSystem for fewer than two maps or any ratio outside (0,1).
    Overlapping images or missing alignment only demote the class to
    DiagonalOnly.  Images extending outside the unit square produce a warning,
    not an error.
    """
    norm = []
    for m in maps:
        if not isinstance(m, DiagonalMap):
            m = DiagonalMap(*[as_number(v) for v in m])
        norm.append(m)
    if len(norm) < 2:
        raise InvalidSystem("need at least two maps, got %d" % len(norm))
    for m in norm:
        for r in (m.r1, m.r2):
            if not 0 < float(r) < 1:
                raise InvalidSystem("ratio %r outside (0, 1)" % (r,))
    norm = tuple(norm)
    exact = all(m.exact for m in norm)

    warnings = []
    for i, m in enumerate(norm):
        if float(m.d1) < -_TOL or float(m.d1 + m.r1) > 1 + _TOL \
                or float(m.d2) < -_TOL or float(m.d2 + m.r2) > 1 + _TOL:
            warnings.append("map %d image extends outside the unit square" % i)

    columns = _group_axis(norm, 1, exact)
    rows = _group_axis(norm, 2, exact)

    disjoint = _rects_disjoint(norm, exact)
    col_aligned = _axis_aligned(norm, columns, 1, exact)
    row_aligned = _axis_aligned(norm, rows, 2, exact)
    wider = all((m.r1 > m.r2) if exact else (float(m.r1) > float(m.r2) + _TOL)
                for m in norm)

    if disjoint and col_aligned and wider:
        klass = GATZOURAS_LALLEY
    elif disjoint and col_aligned and row_aligned:
        klass = BARANSKI
    else:
        klass = DIAGONAL_ONLY

    return CarpetSystem(
        maps=norm,
        klass=klass,
        columns=columns,
        rows=rows,
        eta1_ssc=_axis_ssc(columns, exact),
        eta2_ssc=_axis_ssc(rows, exact),
        warnings=tuple(warnings),
    )


def system_from_config(config: dict) -> CarpetSystem:
    """Parse the carpet config JSON object: {"maps": [{"r1": ..., ...}]},
    scalars either numbers or exact rationals as [num, den]."""
    if not isinstance(config, dict) or "maps" not in config:
        raise InvalidSystem("config must be an object with a 'maps' list")
    entries = config["maps"]
    if not isinstance(entries, list):
        raise InvalidSystem("'maps' must be a list")
    maps = []
    for e in entries:
        try:
            maps.append(DiagonalMap(as_number(e["r1"]), as_number(e["r2"]),
                                    as_number(e["d1"]), as_number(e["d2"])))
        except (KeyError, TypeError) as exc:
            raise InvalidSystem("bad map entry %r" % (e,)) from exc
    return validate(maps)


def system_to_config(system: CarpetSystem) -> dict:
    """Inverse of system_from_config; Fractions go out as [num, den]."""
    def dump(v):
        if isinstance(v, Fraction):
            return [v.numerator, v.denominator]
        return float(v)

    return {"maps": [{"r1": dump(m.r1), "r2": dump(m.r2),
                      "d1": dump(m.d1), "d2": dump(m.d2)}
                     for m in system.maps]}


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """gamma = preperiod . period^infinity over map indices."""
    preperiod: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise InvalidSystem("word needs a non-empty period")
        for i in self.preperiod + self.period:
            if not isinstance(i, int) or i < 0:
                raise InvalidSystem("bad letter %r" % (i,))

    def letter(self, n: int) -> int:
        if n < len(self.preperiod):
            return self.preperiod[n]
        return self.period[(n - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> tuple:
        return tuple(self.letter(t) for t in range(n))

    def check_alphabet(self, system: CarpetSystem):
        for i in self.preperiod + self.period:
            if i >= len(system.maps):
                raise IndexError("letter %d outside alphabet of size %d"
                                 % (i, len(system.maps)))


@dataclass(frozen=True)
class ProbabilityVector:
    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(v < 0 for v in vals):
            raise InvalidSystem("negative probability")
        if abs(math.fsum(vals) - 1.0) > _TOL:
            raise InvalidSystem("probabilities sum to %r, not 1"
                                % math.fsum(vals))

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def column_word(system: CarpetSystem, word, axis: int = 1) -> tuple:
    """Project a word of map indices to its class ids on the given axis."""
    lookup = system.class_index(axis)
    try:
        return tuple(lookup[i] for i in word)
    except KeyError as exc:
        raise IndexError("letter outside alphabet: %r" % (exc.args[0],)) from exc


def letter_frequencies(system: CarpetSystem, gamma: EventuallyPeriodicWord):
    """Frequency vector of the period letters (the limit of the running
    letter frequencies of gamma)."""
    gamma.check_alphabet(system)
    freq = [0.0] * len(system.maps)
    for i in gamma.period:
        freq[i] += 1.0
    n = len(gamma.period)
    return tuple(f / n for f in freq)


def classify_word(system: CarpetSystem, gamma: EventuallyPeriodicWord):
    """Asymptotic Lyapunov ratio class of gamma.

    Returns (omega, gamma_inf) where gamma_inf = chi_1(q)/chi_2(q) for the
    period frequency vector q, and omega is "Omega1" when the limit ratio is
    < 1 (contraction is asymptotically faster in the vertical), "Omega2"
    when > 1, and "Omega0" on a tie within 1e-12.
    """
    q = letter_frequencies(system, gamma)
    chi1 = -math.fsum(q[i] * math.log(float(system.maps[i].r1))
                      for i in range(len(q)) if q[i] > 0)
    chi2 = -math.fsum(q[i] * math.log(float(system.maps[i].r2))
                      for i in range(len(q)) if q[i] > 0)
    gamma_inf = chi1 / chi2
    if abs(gamma_inf - 1.0) <= _TOL:
        return "Omega0", gamma_inf
    return ("Omega1" if gamma_inf < 1.0 else "Omega2"), gamma_inf
