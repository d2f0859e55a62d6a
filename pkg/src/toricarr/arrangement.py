"""Complexified toric arrangements and their periodic affine lifts.

An arrangement is a finite list of pairs (character, angle): the character
is an integer exponent vector, the angle a rational q standing for the
unit-modulus constant exp(2*pi*i*q).  On the universal cover of the
compact torus the arrangement pulls back to the periodic family of affine
hyperplanes <alpha, x> = q + k over all integers k; a rational window box
truncates that family to a finite list.
"""

import json
from fractions import Fraction
import math

from .errors import SpecError
from .exact import IntMatrix, hnf, rank, saturation_basis, solve_affine

Q = Fraction


class Character:
    """Integer exponent vector of a Laurent monomial; never zero."""

    __slots__ = ("alpha",)

    def __init__(self, alpha):
        alpha = tuple(int(a) for a in alpha)
        if not any(alpha):
            raise SpecError("character exponent vector must be nonzero")
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __eq__(self, other):
        return isinstance(other, Character) and self.alpha == other.alpha

    def __hash__(self):
        return hash(self.alpha)

    def __repr__(self):
        return "Character(%r)" % (self.alpha,)


class AngleQ:
    """Rational angle q in [0, 1), representing exp(2*pi*i*q)."""

    __slots__ = ("q",)

    def __init__(self, q):
        q = Fraction(q)
        if not (0 <= q < 1):
            raise SpecError("angle must lie in [0, 1), got %s" % q)
        object.__setattr__(self, "q", q)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __eq__(self, other):
        return isinstance(other, AngleQ) and self.q == other.q

    def __hash__(self):
        return hash(self.q)

    def __repr__(self):
        return "AngleQ(%s)" % (self.q,)


class ArrangementSpec:
    """A rank together with pairwise-distinct (character, angle) pairs.

    Rank 0 is allowed only for the degenerate empty arrangement that a
    trivial restriction produces.
    """

    def __init__(self, rank_, hypersurfaces):
        rank_ = int(rank_)
        if rank_ < 0:
            raise SpecError("rank must be nonnegative")
        pairs = []
        seen = set()
        for chi, a in hypersurfaces:
            if not isinstance(chi, Character):
                chi = Character(chi)
            if not isinstance(a, AngleQ):
                a = AngleQ(a)
            if len(chi.alpha) != rank_:
                raise SpecError("character length %d does not match rank %d"
                                % (len(chi.alpha), rank_))
            key = (chi.alpha, a.q)
            if key in seen:
                raise SpecError("duplicate hypersurface %r" % (key,))
            seen.add(key)
            pairs.append((chi, a))
        self.rank = rank_
        self.hypersurfaces = tuple(pairs)

    def character_matrix(self):
        return IntMatrix.from_rows([chi.alpha for chi, _ in self.hypersurfaces]) \
            if self.hypersurfaces else IntMatrix.zero(0, self.rank)

    def __eq__(self, other):
        return (isinstance(other, ArrangementSpec) and self.rank == other.rank
                and self.hypersurfaces == other.hypersurfaces)

    def __repr__(self):
        return "ArrangementSpec(rank=%d, %d hypersurfaces)" % (
            self.rank, len(self.hypersurfaces))


class AffineHyperplane:
    """One hyperplane <alpha, x> = c of the lifted periodic arrangement.

    `source` is the index of the originating hypersurface and `shift` the
    integer k with c = q + k.
    """

    __slots__ = ("alpha", "c", "source", "shift")

    def __init__(self, alpha, c, source, shift):
        alpha = tuple(int(a) for a in alpha)
        if not any(alpha):
            raise SpecError("hyperplane normal must be nonzero")
        self.alpha = alpha
        self.c = Fraction(c)
        self.source = source
        self.shift = shift

    def value(self, point):
        """<alpha, point> - c; its sign locates a point against the plane."""
        return sum(a * x for a, x in zip(self.alpha, point)) - self.c

    def geometric_key(self):
        """Canonical key identifying the hyperplane as a point set."""
        g = 0
        for a in self.alpha:
            g = math.gcd(g, a)
        lead = next(a for a in self.alpha if a != 0)
        sgn = 1 if lead > 0 else -1
        alpha = tuple(a // (sgn * g) for a in self.alpha)
        return alpha, self.c / (sgn * g)

    def __repr__(self):
        return "AffineHyperplane(alpha=%r, c=%s, source=%d, shift=%d)" % (
            self.alpha, self.c, self.source, self.shift)


class Window:
    """Closed rational box [lo, hi]^n; must contain the unit cube."""

    def __init__(self, lo, hi):
        self.lo = tuple(Fraction(x) for x in lo)
        self.hi = tuple(Fraction(x) for x in hi)
        if len(self.lo) != len(self.hi):
            raise SpecError("window bounds have mismatched lengths")
        for a, b in zip(self.lo, self.hi):
            if not a < b:
                raise SpecError("window must have positive extent")
        for a, b in zip(self.lo, self.hi):
            if a > 0 or b < 1:
                raise SpecError("window must contain the unit cube")

    @classmethod
    def standard(cls, n, k=1):
        """The box [-k, k+1]^n used by the command line (`--window k`)."""
        if k < 1:
            raise SpecError("window parameter must be >= 1")
        return cls([-k] * n, [k + 1] * n)

    @property
    def dim(self):
        return len(self.lo)

    def contains(self, point, strict=False):
        if strict:
            return all(a < x < b for a, x, b in zip(self.lo, point, self.hi))
        return all(a <= x <= b for a, x, b in zip(self.lo, point, self.hi))

    def covers_quotient_core(self):
        """True when the box contains [-1, 2]^n, enough for canonicalizing."""
        return all(a <= -1 for a in self.lo) and all(b >= 2 for b in self.hi)

    def __repr__(self):
        return "Window(%s, %s)" % (list(self.lo), list(self.hi))


def parse_spec(text):
    """Parse the JSON arrangement document into an ArrangementSpec."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError("invalid JSON: %s" % e) from None
    if not isinstance(doc, dict):
        raise SpecError("top-level JSON value must be an object")
    if "rank" not in doc or "hypersurfaces" not in doc:
        raise SpecError("document needs 'rank' and 'hypersurfaces'")
    rank_ = doc["rank"]
    if not isinstance(rank_, int) or rank_ < 1:
        raise SpecError("'rank' must be a positive integer")
    hs = doc["hypersurfaces"]
    if not isinstance(hs, list):
        raise SpecError("'hypersurfaces' must be a list")
    pairs = []
    for i, item in enumerate(hs):
        if not isinstance(item, dict) or "chi" not in item or "q" not in item:
            raise SpecError("hypersurface %d needs 'chi' and 'q'" % i)
        chi = item["chi"]
        if (not isinstance(chi, list) or not all(isinstance(a, int) for a in chi)):
            raise SpecError("hypersurface %d: 'chi' must be a list of integers" % i)
        qraw = item["q"]
        if not isinstance(qraw, str):
            raise SpecError("hypersurface %d: 'q' must be a rational string" % i)
        try:
            q = Fraction(qraw)
        except (ValueError, ZeroDivisionError):
            raise SpecError("hypersurface %d: cannot parse rational %r" % (i, qraw)) from None
        pairs.append((Character(chi), AngleQ(q)))
    return ArrangementSpec(rank_, pairs)


def spec_to_json_dict(spec):
    return {
        "rank": spec.rank,
        "hypersurfaces": [
            {"chi": list(chi.alpha), "q": str(a.q)} for chi, a in spec.hypersurfaces
        ],
    }


def is_essential(spec):
    """True when the characters span a finite-index sublattice."""
    if spec.rank == 0:
        return True
    if not spec.hypersurfaces:
        return False
    return rank(spec.character_matrix()) == spec.rank


def essentialize(spec):
    """Project onto the saturation of the character span.

    Returns (essential_spec, basis) where the basis rows generate the
    saturated sublattice in the original coordinates; an essential input
    comes back unchanged with the identity basis.
    """
    if is_essential(spec):
        ident = IntMatrix.identity(spec.rank).tolists()
        return spec, ident
    basis = saturation_basis([chi.alpha for chi, _ in spec.hypersurfaces], spec.rank)
    r = len(basis)
    new_pairs = []
    for chi, a in spec.hypersurfaces:
        # coordinates of chi in the saturation basis: y with y * basis = chi
        cols = [[basis[i][j] for i in range(r)] for j in range(spec.rank)]
        sol = solve_affine(cols, list(chi.alpha), r)
        assert sol is not None, "character escaped its own saturation"
        y = sol[0]
        assert all(c.denominator == 1 for c in y)
        new_pairs.append((Character([c.numerator for c in y]), a))
    return ArrangementSpec(r, new_pairs), basis


def restrict(spec, gamma_rows):
    """Sub-arrangement of characters inside the integer row span of gamma.

    The result is rewritten in coordinates of the span's HNF basis; a
    trivial gamma yields the empty rank-0 arrangement.
    """
    gamma_rows = [list(r) for r in gamma_rows]
    for row in gamma_rows:
        if len(row) != spec.rank:
            raise SpecError("gamma rows must have length %d" % spec.rank)
    nonzero = [r for r in gamma_rows if any(r)]
    if not nonzero:
        return ArrangementSpec(0, [])
    h, _ = hnf(IntMatrix.from_rows(nonzero))
    basis = [list(h.row(i)) for i in range(h.rows) if any(h.row(i))]
    r = len(basis)
    cols = [[basis[i][j] for i in range(r)] for j in range(spec.rank)]
    new_pairs = []
    for chi, a in spec.hypersurfaces:
        sol = solve_affine(cols, list(chi.alpha), r)
        if sol is None:
            continue
        y, kern = sol
        if kern:
            continue  # cannot happen: basis rows are independent
        if all(c.denominator == 1 for c in y):
            new_pairs.append((Character([c.numerator for c in y]), a))
    return ArrangementSpec(r, new_pairs)


def lift_to_window(spec, window):
    """All hyperplanes <alpha, x> = q + k meeting the closed box.

    Ordered by (source index, shift); requires an essential spec so the
    induced cell structure has bounded faces.
    """
    if spec.rank != window.dim:
        raise SpecError("window dimension does not match arrangement rank")
    if not is_essential(spec):
        raise SpecError("arrangement must be essential; essentialize first")
    out = []
    for src, (chi, a) in enumerate(spec.hypersurfaces):
        lo_val = Fraction(0)
        hi_val = Fraction(0)
        for coef, lo, hi in zip(chi.alpha, window.lo, window.hi):
            lo_val += min(coef * lo, coef * hi)
            hi_val += max(coef * lo, coef * hi)
        k = math.ceil(lo_val - a.q)
        while a.q + k <= hi_val:
            out.append(AffineHyperplane(chi.alpha, a.q + k, src, k))
            k += 1
    return out
