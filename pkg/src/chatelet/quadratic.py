"""Quadratic extensions L = Q_p(sqrt(d)): ramification, norms, unit filtration.

The norm-image subgroup of Q_p^*/(Q_p^*)^2 is computed at construction from an
integer grid of norms a^2 - d*b^2 and closed under multiplication; by local
class field theory it must have index exactly 2, and anything else is treated
as an arithmetic bug, never silently corrected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .padic import (
    FiltrationCapReached,
    PAdic,
    PrecisionError,
    SquareClass,
    as_padic,
    default_precision,
    frac_val_unit,
    rational_is_square,
    square_class_reps,
)


class NormSubgroupError(ArithmeticError):
    """The computed norm image does not have index 2; internal bug."""


class QuadExtElem:
    """a + b*sqrt(d) with exact rational coordinates in the base field.

    Elements are always assembled from rational data (uniformisers, unit
    representatives), so the coordinates stay exact; norms and valuations are
    then free of precision loss even when conjugate products cancel exactly.
    """

    __slots__ = ("parent", "a", "b")

    def __init__(self, parent: "QuadExt", a, b):
        self.parent = parent
        self.a = Fraction(a)
        self.b = Fraction(b)

    def _coerce(self, other) -> "QuadExtElem":
        if isinstance(other, QuadExtElem):
            if other.parent is not self.parent:
                raise ValueError("elements of different extensions")
            return other
        return QuadExtElem(self.parent, other, 0)

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def conjugate(self) -> "QuadExtElem":
        return QuadExtElem(self.parent, self.a, -self.b)

    def norm_rational(self) -> Fraction:
        return self.a * self.a - self.parent.d.rep * self.b * self.b

    def norm(self) -> PAdic:
        """N_{L/K}(a + b sqrt(d)) = a^2 - d b^2, as a base-field value."""
        return as_padic(self.parent.p, self.norm_rational(), self.parent.precision)

    def __mul__(self, other) -> "QuadExtElem":
        o = self._coerce(other)
        d = self.parent.d.rep
        return QuadExtElem(self.parent,
                           self.a * o.a + d * self.b * o.b,
                           self.a * o.b + self.b * o.a)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __add__(self, other) -> "QuadExtElem":
        o = self._coerce(other)
        return QuadExtElem(self.parent, self.a + o.a, self.b + o.b)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return QuadExtElem(self.parent, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __truediv__(self, other) -> "QuadExtElem":
        o = self._coerce(other)
        if o.is_zero:
            raise ZeroDivisionError("division by zero in extension field")
        n = o.norm_rational()
        num = self * o.conjugate()
        return QuadExtElem(self.parent, num.a / n, num.b / n)

    def valuation(self) -> int:
        """v_L, normalized so v_L(pi_L) = 1 when ramified, v_L = v_K unramified."""
        if self.is_zero:
            raise ZeroDivisionError("valuation of zero")
        vn = frac_val_unit(self.parent.p, self.norm_rational())[0]
        if self.parent.ramified:
            return vn
        assert vn % 2 == 0
        return vn // 2

    def filtration_level_in(self) -> int:
        """Largest i with this unit in U_{i,L}; i.e. v_L(1 - x)."""
        if self.valuation() != 0:
            raise ValueError("filtration level is defined for units only")
        diff = 1 - self
        if diff.is_zero:
            raise FiltrationCapReached("x = 1 exactly")
        return diff.valuation()

    def __repr__(self):
        return f"({self.a}) + ({self.b})*sqrt({self.parent.d.rep})"


@dataclass(frozen=True)
class QuadExt:
    """L = Q_p(sqrt(d)) for a nontrivial square class d.

    Immutable; the norm-image subgroup of the square-class group is computed
    eagerly and cached in the value.  For ramified L a uniformiser pi_L is
    fixed deterministically and pi_K = N(pi_L).
    """

    p: int
    d: SquareClass
    ramified: bool
    precision: int
    s: Optional[int] = None
    pi_L: Optional[QuadExtElem] = field(default=None, compare=False)
    pi_K: Optional[PAdic] = field(default=None, compare=False)
    norm_classes: frozenset = field(default_factory=frozenset, compare=False)

    def is_norm(self, x) -> bool:
        """x in N_{L/K}L^*, decided on square classes (Prop: norms contain squares)."""
        return SquareClass.of(self.p, x) in self.norm_classes

    def element(self, a, b) -> QuadExtElem:
        return QuadExtElem(self, a, b)

    def __repr__(self):
        kind = "ramified" if self.ramified else "unramified"
        return f"Q_{self.p}(sqrt({self.d.rep})) [{kind}]"


def _norm_class_subgroup(p: int, d_rep: int, limit: int = 8) -> frozenset:
    reps = square_class_reps(p)
    found = {SquareClass(p, 1)}
    for a in range(-limit, limit + 1):
        for b in range(-limit, limit + 1):
            n = a * a - d_rep * b * b
            if n == 0 or (a == 0 and b == 0):
                continue
            found.add(SquareClass.of(p, n))
    # close under multiplication
    while True:
        extra = {x * y for x in found for y in found} - found
        if not extra:
            break
        found |= extra
    if len(found) != len(reps) // 2:
        if limit < 20:
            return _norm_class_subgroup(p, d_rep, limit=20)
        raise NormSubgroupError(
            f"norm image of Q_{p}(sqrt({d_rep})) has {len(found)} classes, "
            f"expected {len(reps) // 2}")
    return frozenset(found)


def _choose_uniformiser(ext: QuadExt) -> QuadExtElem:
    """Deterministic uniformiser of a ramified L.

    v(d) = 1: pi_L = sqrt(d).  v(d) = 0: pi_L = 1 + sqrt(d) when its norm has
    valuation 1, else a small deterministic search over a + b*sqrt(d).
    """
    p, rep = ext.p, ext.d.rep
    v_d = frac_val_unit(p, rep)[0]
    if v_d == 1:
        return ext.element(0, 1)
    cand = ext.element(1, 1)
    if cand.norm().valuation == 1:
        return cand
    for a in range(1, 10):
        for b in range(1, 10):
            cand = ext.element(a, b)
            if not cand.is_zero and cand.norm().valuation == 1:
                return cand
    raise NormSubgroupError("no uniformiser found; arithmetic bug")


def s_invariant(ext: QuadExt) -> int:
    """Largest i with sigma(pi_L)/pi_L in U_{i,L}, from the chosen pi_L.

    Independent of the choice of uniformiser; defined for ramified 2-adic
    extensions, where it is 1 or 2 over Q_2.
    """
    if ext.p != 2 or not ext.ramified:
        raise ValueError("s-invariant needs a ramified 2-adic extension")
    pi = ext.pi_L
    t = pi.conjugate() / pi
    return (1 - t).valuation()


@lru_cache(maxsize=None)
def _build(p: int, d_rep: int, precision: int) -> QuadExt:
    d = SquareClass(p, d_rep)
    if p == 2:
        ramified = d_rep != 5
    else:
        ramified = frac_val_unit(p, d_rep)[0] % 2 == 1
    norm_classes = _norm_class_subgroup(p, d_rep)
    ext = QuadExt(p=p, d=d, ramified=ramified, precision=precision,
                  norm_classes=norm_classes)
    if ramified:
        pi_L = _choose_uniformiser(ext)
        pi_K = pi_L.norm()
        object.__setattr__(ext, "pi_L", pi_L)
        object.__setattr__(ext, "pi_K", pi_K)
        if pi_K.square_class() not in norm_classes:
            raise NormSubgroupError("N(pi_L) not in the computed norm image")
        if p == 2:
            object.__setattr__(ext, "s", s_invariant(ext))
    return ext


def build_extension(p: int, d, precision: Optional[int] = None) -> QuadExt:
    """Construct Q_p(sqrt(d)).  Raises ValueError when d is a square (split case)."""
    cls = SquareClass.of(p, d)
    if cls.is_trivial:
        raise ValueError("d is a square: K(sqrt(d)) is split, not a field")
    return _build(p, cls.rep, precision or default_precision(p))


# -- independent norm-membership criteria (odd residue characteristic) -------

def norm_criterion_unramified(p: int, x) -> bool:
    """Unramified F/K: x is a norm iff v_K(x) is even."""
    if isinstance(x, PAdic):
        x._require_nonzero()
        return x.valuation % 2 == 0
    return frac_val_unit(p, x)[0] % 2 == 0


def norm_criterion_ramified(p: int, x, pi_K) -> bool:
    """Ramified F/K with pi_K = N(pi_F): x is a norm iff x/pi_K^v(x) is a square."""
    if isinstance(x, PAdic) or isinstance(pi_K, PAdic):
        xv = as_padic(p, x)
        pk = as_padic(p, pi_K)
        return (xv / pk ** xv.valuation).is_square()
    v = frac_val_unit(p, x)[0]
    return rational_is_square(p, Fraction(x) / Fraction(pi_K) ** v)


def is_norm_valuation_criteria(p: int, x, ext: QuadExt) -> bool:
    """Valuation/squareness norm test (independent of the subgroup route).

    Unramified: norm iff even valuation, for every p.  Ramified with p odd:
    norm iff x/pi_K^v(x) is a square.  Ramified with p = 2 the squareness
    criterion fails (5 is a norm from Q_2(i) but not a square), so fall
    back to the closed 2-adic symbol formula, which is likewise
    independent of the norm-class subgroup.
    """
    if not ext.ramified:
        return norm_criterion_unramified(p, x)
    if p == 2:
        from .hilbert import hilbert_2
        return hilbert_2(x, ext.d.rep) == 1
    pi_K = Fraction(ext.pi_K.unit_residue(ext.pi_K.precision)) * \
        Fraction(p) ** ext.pi_K.valuation
    return norm_criterion_ramified(p, x, pi_K)


# -- the lambda maps on the unit filtration ----------------------------------

def lambda_base(ext: QuadExt, i: int, x) -> int:
    """lambda_{i,K}(1 + theta*pi_K^i) = theta mod 2, for x in U_{i,K}.

    Uses pi_K = N(pi_L) of the given ramified extension.  Vanishes exactly
    on U_{i+1,K}.
    """
    if ext.pi_K is None:
        raise ValueError("lambda_base needs a ramified extension (for pi_K)")
    xv = as_padic(ext.p, x, ext.precision)
    if xv.is_zero or xv.valuation != 0:
        raise ValueError(f"argument not in U_{i}")
    try:
        level = xv.filtration_level()
    except FiltrationCapReached:
        return 0  # x = 1 to full precision: theta vanishes at any tested depth
    if level < i:
        raise ValueError(f"argument not in U_{i}")
    return 1 if level == i else 0


def lambda_ext(ext: QuadExt, i: int, x: QuadExtElem) -> int:
    """lambda_{i,L}(1 + theta*pi_L^i) = theta mod 2, for x in U_{i,L}."""
    if ext.pi_L is None:
        raise ValueError("lambda_ext needs a ramified extension")
    if x.valuation() != 0:
        raise ValueError("argument is not a unit of L")
    try:
        level = x.filtration_level_in()
    except (PrecisionError, ZeroDivisionError):
        return 0  # x = 1 to full precision
    if level < i:
        raise ValueError(f"argument not in U_{{{i},L}}")
    # theta = (x-1)/pi_L^i is a unit iff v_L(1-x) is exactly i
    return 1 if level == i else 0
