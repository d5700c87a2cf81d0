"""F_q-subspaces of F_{q^n} and of F_{q^n}^2.

A subspace is stored as its reduced row-echelon basis over F_q (a tuple
of tuples of F_q codes), which is a canonical form: two subspaces are
equal iff their matrices are equal.  Vectors of the ambient space are
element codes (ambient FQN) or pairs of codes (ambient FQN2); the
coordinate row of a vector is the concatenation of the base-q digit
vectors of its components.

Member enumeration walks coefficient vectors over F_q in lexicographic
order, so witnesses and serialized sets are reproducible across runs.
"""

from __future__ import annotations

from .errors import AmbientMismatch, NotADivisor, TowerMismatch
from .gf import FieldTower, FqnElem

FQN = 1
FQN2 = 2


# ---------------------------------------------------------------------------
# dense linear algebra over F_q (codes), shared by the whole package


def rref(fq, rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    cols = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = fq.inv(rows[rank][c])
        rows[rank] = [fq.mul(inv, x) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [fq.sub(x, fq.mul(f, y))
                           for x, y in zip(rows[r], rows[rank])]
        pivots.append(c)
        rank += 1
    return [tuple(r) for r in rows[:rank]], pivots


def nullspace(fq, rows, cols):
    """Canonical RREF basis of {x : rows . x = 0} (rows act on the left)."""
    reduced, pivots = rref(fq, rows) if rows else ([], [])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * cols
        vec[f] = 1
        for r, p in enumerate(pivots):
            vec[p] = fq.neg(reduced[r][f])
        basis.append(vec)
    out, _ = rref(fq, basis)
    return out


def row_reduce_contains(fq, reduced, pivots, vec):
    """Whether `vec` lies in the row space of an RREF matrix."""
    vec = list(vec)
    for r, p in enumerate(pivots):
        if vec[p]:
            f = vec[p]
            vec = [fq.sub(x, fq.mul(f, y)) for x, y in zip(vec, reduced[r])]
    return all(x == 0 for x in vec)


# ---------------------------------------------------------------------------


class Subspace:
    """An F_q-subspace in canonical RREF form."""

    __slots__ = ("tower", "ambient", "rows", "pivots")

    def __init__(self, tower: FieldTower, ambient: int, raw_rows):
        if ambient not in (FQN, FQN2):
            raise AmbientMismatch("ambient must be FQN or FQN2")
        cols = tower.n * ambient
        for r in raw_rows:
            if len(r) != cols:
                raise AmbientMismatch("coordinate row has wrong length")
        rows, pivots = rref(tower.fq, list(raw_rows))
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def span(cls, tower, vectors, ambient=None):
        """Span of FqnElem values (ambient FQN) or pairs (ambient FQN2)."""
        vectors = list(vectors)
        if ambient is None:
            if not vectors:
                raise AmbientMismatch("cannot infer ambient of empty span")
            ambient = FQN2 if isinstance(vectors[0], tuple) else FQN
        rows = [cls._coords(tower, v, ambient) for v in vectors]
        return cls(tower, ambient, rows)

    @classmethod
    def zero(cls, tower, ambient):
        return cls(tower, ambient, [])

    @classmethod
    def full(cls, tower, ambient):
        cols = tower.n * ambient
        eye = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
        return cls(tower, ambient, eye)

    @classmethod
    def subfield(cls, tower, t):
        """F_{q^t} as an F_q-subspace of F_{q^n}."""
        rows = [list(tower.unpack(c)) for c in tower.subfield_basis_codes(t)]
        return cls(tower, FQN, rows)

    @staticmethod
    def _coords(tower, v, ambient):
        if ambient == FQN:
            code = v.code if isinstance(v, FqnElem) else v
            return list(tower.unpack(code))
        x, y = v
        cx = x.code if isinstance(x, FqnElem) else x
        cy = y.code if isinstance(y, FqnElem) else y
        return list(tower.unpack(cx)) + list(tower.unpack(cy))

    # -- basic queries --------------------------------------------------------

    @property
    def dim(self):
        return len(self.rows)

    def _row_vector(self, row):
        n = self.tower.n
        if self.ambient == FQN:
            return self.tower.pack(row)
        return (self.tower.pack(row[:n]), self.tower.pack(row[n:]))

    def basis_vectors(self):
        """Basis as codes (FQN) or code pairs (FQN2)."""
        return [self._row_vector(r) for r in self.rows]

    def basis_elems(self):
        if self.ambient == FQN:
            return [FqnElem(self.tower, c) for c in self.basis_vectors()]
        return [(FqnElem(self.tower, x), FqnElem(self.tower, y))
                for x, y in self.basis_vectors()]

    def contains(self, v):
        return row_reduce_contains(
            self.tower.fq, self.rows, self.pivots,
            self._coords(self.tower, v, self.ambient))

    def member_codes(self):
        """All q^k members as codes/pairs, coefficient-lexicographic order."""
        tw = self.tower
        if self.ambient == FQN:
            members = [0]
            for r in self.rows:
                base = tw.pack(r)
                members = [tw.add(m, tw.mul(c, base))
                           for m in members for c in range(tw.q)]
        else:
            members = [(0, 0)]
            for r in self.rows:
                bx, by = self._row_vector(r)
                members = [(tw.add(mx, tw.mul(c, bx)), tw.add(my, tw.mul(c, by)))
                           for mx, my in members for c in range(tw.q)]
        return members

    def members(self):
        """ElementSet of all members (ambient FQN only)."""
        if self.ambient != FQN:
            raise AmbientMismatch("members() as ElementSet needs ambient FQN")
        return ElementSet(self.tower, self.member_codes())

    # -- lattice operations ----------------------------------------------------

    def _check_compatible(self, other):
        if self.tower != other.tower:
            raise TowerMismatch("subspaces from different towers")
        if self.ambient != other.ambient:
            raise AmbientMismatch("subspaces in different ambients")

    def intersect(self, other):
        self._check_compatible(other)
        cols = self.tower.n * self.ambient
        # rows of the left nullspace of [A; B] stacked give the intersection
        # via the Zassenhaus trick on [A|A; B|0]
        aug = [list(r) + list(r) for r in self.rows]
        aug += [list(r) + [0] * cols for r in other.rows]
        reduced, pivots = rref(self.tower.fq, aug)
        inter = [r[cols:] for r in reduced if all(x == 0 for x in r[:cols])]
        return Subspace(self.tower, self.ambient, inter)

    def sum_with(self, other):
        self._check_compatible(other)
        return Subspace(self.tower, self.ambient,
                        [list(r) for r in self.rows + other.rows])

    # -- product/ratio sets ------------------------------------------------------

    def ratio_set(self):
        """S . S^{-1} = {t/s : s in S nonzero, t in S}; contains 0 (t = 0)."""
        if self.ambient != FQN:
            raise AmbientMismatch("ratio_set needs ambient FQN")
        tw = self.tower
        codes = self.member_codes()
        out = set()
        for s in codes:
            if s == 0:
                continue
            si = tw.inv(s)
            for t in codes:
                out.add(tw.mul(t, si))
        return ElementSet(tw, out)

    def product_set(self, other):
        """S . T = {s t : s in S, t in T}."""
        self._check_compatible(other)
        if self.ambient != FQN:
            raise AmbientMismatch("product_set needs ambient FQN")
        tw = self.tower
        a = self.member_codes()
        b = other.member_codes()
        return ElementSet(tw, {tw.mul(s, t) for s in a for t in b})

    def scale(self, lam):
        """lam * S for a tower element lam."""
        tw = self.tower
        lam = lam.code if isinstance(lam, FqnElem) else lam
        if self.ambient != FQN:
            raise AmbientMismatch("scale needs ambient FQN")
        return Subspace(tw, FQN, [list(tw.unpack(tw.mul(lam, tw.pack(r))))
                                  for r in self.rows])

    def frob_image(self, e):
        """Image under x -> x^(p^e), coordinatewise for ambient FQN2."""
        tw = self.tower
        if self.ambient == FQN:
            vecs = [tw.pow_p(tw.pack(r), e) for r in self.rows]
            return Subspace(tw, FQN, [list(tw.unpack(v)) for v in vecs])
        n = tw.n
        rows = []
        for r in self.rows:
            x = tw.pow_p(tw.pack(r[:n]), e)
            y = tw.pow_p(tw.pack(r[n:]), e)
            rows.append(list(tw.unpack(x)) + list(tw.unpack(y)))
        return Subspace(tw, FQN2, rows)

    def scattered_wrt(self, t):
        """Whether dim(S ^ alpha F_{q^t}) <= 1 for every alpha != 0.

        Scans one alpha per coset of F_{q^n}*/F_{q^t}* (the intersection
        dimension is constant on cosets).  Returns (True, None) or
        (False, witness_alpha).
        """
        tw = self.tower
        if tw.n % t != 0:
            raise NotADivisor("t = %d does not divide n = %d" % (t, tw.n))
        if self.ambient != FQN:
            raise AmbientMismatch("scattered_wrt needs ambient FQN")
        sub = Subspace.subfield(tw, t)
        subfield = set(tw.subfield_codes(t))
        seen = set()
        for alpha in range(1, tw.size):
            if alpha in seen:
                continue
            for s in subfield:
                if s:
                    seen.add(tw.mul(alpha, s))
            if sub.scale(alpha).intersect(self).dim > 1:
                return False, FqnElem(tw, alpha)
        return True, None

    # -- plumbing ---------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Subspace) and other.tower == self.tower
                and other.ambient == self.ambient and other.rows == self.rows)

    def __hash__(self):
        return hash((self.ambient, self.rows, self.tower.params))

    def __repr__(self):
        return "Subspace(ambient=%d, dim=%d)" % (self.ambient, self.dim)

    def to_json(self):
        return {"ambient": "Fqn" if self.ambient == FQN else "Fqn2",
                "rref": [list(map(int, r)) for r in self.rows]}

    @classmethod
    def from_json(cls, tower, data):
        ambient = FQN if data["ambient"] == "Fqn" else FQN2
        return cls(tower, ambient, data["rref"])


class ElementSet:
    """A sorted, deduplicated set of F_{q^n} elements with exact membership."""

    __slots__ = ("tower", "codes")

    def __init__(self, tower, codes):
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "codes", tuple(sorted(set(codes))))

    def __setattr__(self, *a):
        raise AttributeError("ElementSet is immutable")

    def __contains__(self, item):
        code = item.code if isinstance(item, FqnElem) else item
        codes = self.codes
        lo, hi = 0, len(codes)
        while lo < hi:
            mid = (lo + hi) // 2
            if codes[mid] < code:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(codes) and codes[lo] == code

    def __iter__(self):
        return (FqnElem(self.tower, c) for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __eq__(self, other):
        return (isinstance(other, ElementSet) and other.tower == self.tower
                and other.codes == self.codes)

    def __hash__(self):
        return hash((self.codes, self.tower.params))

    def intersect(self, other):
        return ElementSet(self.tower, set(self.codes) & set(other.codes))

    def nonzero(self):
        return ElementSet(self.tower, (c for c in self.codes if c != 0))

    def to_json(self):
        return [FqnElem(self.tower, c).to_json() for c in self.codes]

    def __repr__(self):
        return "ElementSet(size=%d)" % len(self.codes)


# ---------------------------------------------------------------------------
# the two sides of the product-condition bridge: for F_q-subspaces S, T of
# F_{q^n}, "S.S^-1 ^ T.T^-1 = F_q" is equivalent to
# "dim(S ^ alpha T) <= 1 for every alpha != 0"; both directions are
# implemented independently and cross-checked in the test suite.


def ratio_condition(S: Subspace, T: Subspace) -> bool:
    """S.S^-1 ^ T.T^-1 = F_q (as sets containing 0)."""
    tw = S.tower
    inter = S.ratio_set().intersect(T.ratio_set())
    return inter.codes == tuple(range(tw.q))


def intersection_condition(S: Subspace, T: Subspace):
    """dim(S ^ alpha T) <= 1 for all alpha != 0; returns (ok, witness)."""
    tw = S.tower
    for alpha in range(1, tw.size):
        if T.scale(alpha).intersect(S).dim > 1:
            return False, FqnElem(tw, alpha)
    return True, None


def span(tower, vectors, ambient=None):
    return Subspace.span(tower, vectors, ambient)
