"""Linear sets on the projective line PG(1, q^n).

A point <(x, y)> is stored by its canonical representative: (1, y/x)
when x != 0, else (0, 1).  Points are coded as the integer y/x, with
q^n as the sentinel for (0, 1), so point lists sort reproducibly.

`LinearSet` computes the weight of every point twice -- by a linear
solve (intersection with the line through the representative) and by
vector-multiplicity counting -- and asserts the two routes and the
weight identities

    sum N_i = |L|,   sum N_i (q^(i-1) + ... + 1) = q^(k-1) + ... + 1

exactly on construction.
"""

from __future__ import annotations

from .errors import CertificateMismatch, ZeroSubspace
from .gf import FieldTower, FqnElem
from .linpoly import LinPoly
from .subspace import FQN2, Subspace


class ProjPoint:
    """A point of PG(1, q^n) in canonical representative form."""

    __slots__ = ("tower", "code")

    def __init__(self, tower, x, y=None):
        if y is None:
            code = x
        else:
            cx = x.code if isinstance(x, FqnElem) else x
            cy = y.code if isinstance(y, FqnElem) else y
            if cx == 0 and cy == 0:
                raise ZeroSubspace("(0, 0) spans no projective point")
            code = tower.size if cx == 0 else tower.div(cy, cx)
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "code", code)

    def __setattr__(self, *a):
        raise AttributeError("ProjPoint is immutable")

    @property
    def representative(self):
        tw = self.tower
        if self.code == tw.size:
            return (FqnElem(tw, 0), FqnElem(tw, 1))
        return (FqnElem(tw, 1), FqnElem(tw, self.code))

    @property
    def is_infinity(self):
        """Whether this is <(0, 1)>."""
        return self.code == self.tower.size

    def __eq__(self, other):
        return (isinstance(other, ProjPoint) and other.tower == self.tower
                and other.code == self.code)

    def __hash__(self):
        return hash((self.code, self.tower.params))

    def __lt__(self, other):
        return self.code < other.code

    def __repr__(self):
        if self.is_infinity:
            return "ProjPoint<(0, 1)>"
        return "ProjPoint<(1, %s)>" % self.tower.render_code(self.code)

    def to_json(self):
        x, y = self.representative
        return [x.to_json(), y.to_json()]


def point_line_subspace(tower, point: ProjPoint) -> Subspace:
    """{lambda v : lambda in F_{q^n}} for a representative v, as an
    n-dimensional F_q-subspace of F_{q^n}^2."""
    x, y = point.representative
    rows = []
    for i in range(tower.n):
        zi = tower.q**i
        rows.append((tower.mul(zi, x.code), tower.mul(zi, y.code)))
    return Subspace.span(tower, rows, ambient=FQN2)


class LinearSet:
    """The linear set of a subspace U <= F_{q^n}^2, with per-point weights."""

    __slots__ = ("tower", "source", "rank", "points", "spectrum", "size")

    def __init__(self, source: Subspace):
        if source.ambient != FQN2:
            raise ZeroSubspace("linear sets need a subspace of F_{q^n}^2")
        if source.dim == 0:
            raise ZeroSubspace("the zero subspace spans no points")
        tw = source.tower
        counts = _point_multiplicities(source)
        points = []
        for code in sorted(counts):
            P = ProjPoint(tw, code)
            w = source.intersect(point_line_subspace(tw, P)).dim
            if tw.q**w - 1 != counts[code]:
                raise CertificateMismatch(
                    "weight solve disagrees with vector multiplicity",
                    point=code, solve=w, multiplicity=counts[code])
            points.append((P, w))
        spectrum = {}
        for _, w in points:
            spectrum[w] = spectrum.get(w, 0) + 1
        object.__setattr__(self, "tower", tw)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "rank", source.dim)
        object.__setattr__(self, "points", tuple(points))
        object.__setattr__(self, "spectrum", spectrum)
        object.__setattr__(self, "size", len(points))
        self._assert_weight_identities()

    def __setattr__(self, *a):
        raise AttributeError("LinearSet is immutable")

    def _assert_weight_identities(self):
        q, k = self.tower.q, self.rank
        if sum(self.spectrum.values()) != self.size:
            raise CertificateMismatch("point count disagrees with spectrum")
        lhs = sum(n_i * (q**i - 1) // (q - 1) for i, n_i in self.spectrum.items())
        rhs = (q**k - 1) // (q - 1)
        if lhs != rhs:
            raise CertificateMismatch(
                "weight identity fails", lhs=lhs, rhs=rhs,
                spectrum=self.spectrum)
        if self.size > rhs:
            raise CertificateMismatch("cardinality bound exceeded")

    # -- queries ---------------------------------------------------------------

    def weight(self, point: ProjPoint):
        for P, w in self.points:
            if P == point:
                return w
        return 0

    def point_codes(self):
        return tuple(P.code for P, _ in self.points)

    def is_scattered(self):
        return all(w == 1 for _, w in self.points)

    def complementary_pair(self):
        """First pair of distinct points (canonical order) whose weights
        sum to the rank, or None."""
        pts = self.points
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if pts[i][1] + pts[j][1] == self.rank:
                    return ComplementaryPair(pts[i][0], pts[j][0],
                                             pts[i][1], pts[j][1])
        return None

    def to_report(self, include_points=False):
        q, k = self.tower.q, self.rank
        report = {
            "rank": k,
            "size": self.size,
            "spectrum": {str(i): n for i, n in sorted(self.spectrum.items())},
            "checks": {
                "point_count": True,
                "weight_identity": True,
                "card_bound": self.size <= (q**k - 1) // (q - 1),
            },
        }
        if include_points:
            report["points"] = [
                {"point": P.to_json(), "weight": w} for P, w in self.points]
        return report

    def __repr__(self):
        return "LinearSet(rank=%d, size=%d, spectrum=%s)" % (
            self.rank, self.size, dict(sorted(self.spectrum.items())))


class ComplementaryPair:
    __slots__ = ("first", "second", "weight_first", "weight_second")

    def __init__(self, first, second, weight_first, weight_second):
        self.first = first
        self.second = second
        self.weight_first = weight_first
        self.weight_second = weight_second

    def __repr__(self):
        return "ComplementaryPair(%r w=%d, %r w=%d)" % (
            self.first, self.weight_first, self.second, self.weight_second)


# ---------------------------------------------------------------------------
# spectrum primitives (multiplicity route; also the fast path for scans)


def _point_multiplicities(source: Subspace):
    """point code -> number of nonzero vectors of U on that point.

    The count for a point of weight w is q^w - 1, which makes this an
    independent oracle for the solve-based weights.
    """
    tw = source.tower
    counts = {}
    for x, y in source.member_codes():
        if x == 0 and y == 0:
            continue
        code = tw.size if x == 0 else tw.div(y, x)
        counts[code] = counts.get(code, 0) + 1
    return counts


def spectrum_of_subspace(source: Subspace):
    """{weight: count} from vector multiplicities only (no solves)."""
    tw = source.tower
    spectrum = {}
    for c in _point_multiplicities(source).values():
        w = _weight_from_multiplicity(tw.q, c)
        spectrum[w] = spectrum.get(w, 0) + 1
    return spectrum


def _weight_from_multiplicity(q, count):
    w = 0
    total = 1
    while total - 1 != count:
        total *= q
        w += 1
        if total > count + 1:
            raise CertificateMismatch(
                "vector multiplicity %d is not q^w - 1" % count)
    return w


def spectrum_of_poly(f: LinPoly):
    """{weight: count} of L_f from ratio fibers f(x)/x (no subspace)."""
    tw = f.tower
    counts = {}
    for x in range(1, tw.size):
        r = tw.div(f.eval_code(x), x)
        counts[r] = counts.get(r, 0) + 1
    spectrum = {}
    for c in counts.values():
        w = _weight_from_multiplicity(tw.q, c)
        spectrum[w] = spectrum.get(w, 0) + 1
    return spectrum


# ---------------------------------------------------------------------------
# constructions and operations


def linear_set(U: Subspace) -> LinearSet:
    return LinearSet(U)


def graph_subspace(f: LinPoly) -> Subspace:
    """U_f = {(x, f(x))}: the rank-n graph of f in F_{q^n}^2."""
    tw = f.tower
    rows = [(tw.q**i, f.eval_code(tw.q**i)) for i in range(tw.n)]
    return Subspace.span(tw, rows, ambient=FQN2)


def from_qpoly(f: LinPoly) -> LinearSet:
    return LinearSet(graph_subspace(f))


def dual_linear_set(f: LinPoly) -> LinearSet:
    """The dual (under the trace polarity) of the rank-n set L_f: L_{f^T}."""
    return from_qpoly(f.adjoint())


def check_bound_two_weight(L: LinearSet, t: int, s: int):
    """Size bounds for a product-shaped set with weights t and s at
    <(1,0)> and <(0,1)>: q^(k-1)+1 <= |L| <= q^(k-1)+...+q^max(t,s)
    - q^(min(t,s)-1) - ... - q + 1.  Reports rather than raises;
    `violated` must never be true for a set satisfying `applicable`.
    """
    q, k = L.tower.q, L.rank
    lo, hi = min(t, s), max(t, s)
    lower = q ** (k - 1) + 1
    upper = sum(q**i for i in range(hi, k)) - sum(q**i for i in range(1, lo)) + 1
    origin = ProjPoint(L.tower, 0)
    infinity = ProjPoint(L.tower, L.tower.size)
    applicable = (1 in L.spectrum and L.weight(origin) == t
                  and L.weight(infinity) == s)
    report = {
        "rank": k,
        "observed": L.size,
        "lower": lower,
        "upper": upper,
        "applicable": applicable,
        "violated": applicable and not lower <= L.size <= upper,
    }
    return report
