"""Ordered F_q-bases of F_{q^n}, Moore matrices and dual bases.

Three independent routes to the dual basis are provided: the cofactor
route through the Moore matrix, the polynomial-basis route through the
minimal polynomial of a generator, and closed forms for generators whose
minimal polynomial is a binomial x^n - d or a trinomial x^n - c x^k - 1.
Whatever the route, `DualPair` re-asserts trace-orthonormality on
construction, so a closed form is never trusted unverified.
"""

from __future__ import annotations

from .errors import (
    MinPolyMismatch,
    NotABasis,
    NotPrimitivePolynomialBasis,
    SingularMoore,
)
from .gf import FieldTower, FqnElem
from .subspace import rref


class OrderedBasis:
    """An ordered F_q-basis of F_{q^n} (independence checked)."""

    __slots__ = ("tower", "codes")

    def __init__(self, tower: FieldTower, elems):
        codes = [e.code if isinstance(e, FqnElem) else e for e in elems]
        if len(codes) != tower.n:
            raise NotABasis("expected %d elements, got %d"
                            % (tower.n, len(codes)))
        rows = [list(tower.unpack(c)) for c in codes]
        _, pivots = rref(tower.fq, rows)
        if len(pivots) != tower.n:
            raise NotABasis("elements are F_q-dependent")
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "codes", tuple(codes))

    def __setattr__(self, *a):
        raise AttributeError("OrderedBasis is immutable")

    @classmethod
    def powers(cls, lam: FqnElem):
        """(1, lam, ..., lam^(n-1)); requires lam of full degree n."""
        tower = lam.tower
        if len(tower.min_poly_code(lam.code)) != tower.n + 1:
            raise NotPrimitivePolynomialBasis(
                "element does not generate a degree-%d polynomial basis"
                % tower.n, element=lam.to_json())
        return cls(tower, [tower.pow(lam.code, i) for i in range(tower.n)])

    def elems(self):
        return [FqnElem(self.tower, c) for c in self.codes]

    def __getitem__(self, i):
        return FqnElem(self.tower, self.codes[i])

    def __len__(self):
        return len(self.codes)

    def __eq__(self, other):
        return (isinstance(other, OrderedBasis) and other.tower == self.tower
                and other.codes == self.codes)

    def __hash__(self):
        return hash((self.codes, self.tower.params))

    def __repr__(self):
        return "OrderedBasis(%s)" % ", ".join(
            self.tower.render_code(c) for c in self.codes)

    def to_json(self):
        return [FqnElem(self.tower, c).to_json() for c in self.codes]


class DualPair:
    """A basis and its trace-dual; orthonormality asserted on construction."""

    __slots__ = ("basis", "dual")

    def __init__(self, basis: OrderedBasis, dual: OrderedBasis):
        tw = basis.tower
        for i, bi in enumerate(basis.codes):
            for j, dj in enumerate(dual.codes):
                got = tw.trace_code(tw.mul(bi, dj), 1)
                if got != (1 if i == j else 0):
                    raise SingularMoore(
                        "trace orthonormality fails at (%d, %d)" % (i, j),
                        i=i, j=j)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "dual", dual)

    def __setattr__(self, *a):
        raise AttributeError("DualPair is immutable")

    def __eq__(self, other):
        return (isinstance(other, DualPair) and other.basis == self.basis
                and other.dual == self.dual)

    def __repr__(self):
        return "DualPair(%r, %r)" % (self.basis, self.dual)

    def to_json(self):
        return {"basis": self.basis.to_json(), "dual": self.dual.to_json()}


# ---------------------------------------------------------------------------
# determinants over F_{q^n} (plain Gaussian elimination; the field is exact)


def det(tower: FieldTower, matrix):
    m = [[e.code if isinstance(e, FqnElem) else e for e in row]
         for row in matrix]
    size = len(m)
    d = 1
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c]), None)
        if piv is None:
            return FqnElem(tower, 0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = tower.neg(d)
        d = tower.mul(d, m[c][c])
        inv = tower.inv(m[c][c])
        for r in range(c + 1, size):
            if m[r][c]:
                f = tower.mul(m[r][c], inv)
                m[r] = [tower.sub(x, tower.mul(f, y))
                        for x, y in zip(m[r], m[c])]
    return FqnElem(tower, d)


def moore_matrix(basis: OrderedBasis):
    """The matrix with entry (i, j) = basis[j]^(q^i)."""
    tw = basis.tower
    return [[FqnElem(tw, tw.frob(c, i)) for c in basis.codes]
            for i in range(tw.n)]


def dual_basis_cofactor(basis: OrderedBasis) -> DualPair:
    """Dual basis as (0, i)-cofactors of the Moore matrix over det."""
    tw = basis.tower
    V = [[c.code for c in row] for row in moore_matrix(basis)]
    D = det(tw, V).code
    if D == 0:
        raise SingularMoore("Moore matrix is singular")  # defensive
    Dinv = tw.inv(D)
    n = tw.n
    dual = []
    for i in range(n):
        minor = [[V[r][c] for c in range(n) if c != i] for r in range(1, n)]
        cof = det(tw, minor).code
        if i % 2:
            cof = tw.neg(cof)
        dual.append(tw.mul(cof, Dinv))
    return DualPair(basis, OrderedBasis(tw, dual))


def dual_basis_polybasis(lam: FqnElem) -> DualPair:
    """Dual of the polynomial basis (1, lam, ..., lam^(n-1)) from the
    coefficients of the minimal polynomial: the i-th dual element is
    (1/f'(lam)) * sum_{j=1..n-i} lam^(j-1) a_(i+j), with a_n = 1."""
    tw = lam.tower
    basis = OrderedBasis.powers(lam)
    minpoly = tw.min_poly_code(lam.code)  # length n+1, F_q codes
    delta = _formal_derivative_at(tw, minpoly, lam.code)
    dinv = tw.inv(delta)
    n = tw.n
    dual = []
    for i in range(n):
        acc = 0
        for j in range(1, n - i + 1):
            term = tw.mul(tw.pow(lam.code, j - 1), minpoly[i + j])
            acc = tw.add(acc, term)
        dual.append(tw.mul(dinv, acc))
    return DualPair(basis, OrderedBasis(tw, dual))


def _formal_derivative_at(tower, coeffs, x):
    acc = 0
    for i in range(1, len(coeffs)):
        c = coeffs[i]
        ic = 0
        for _ in range(i % tower.p):
            ic = tower.fq.add(ic, c)
        acc = tower.add(acc, tower.mul(ic, tower.pow(x, i - 1)))
    return acc


def _require_min_poly(tower, lam_code, expected, message):
    if tower.min_poly_code(lam_code) != tuple(expected):
        raise MinPolyMismatch(
            message,
            expected=[int(c) for c in expected],
            actual=[int(c) for c in tower.min_poly_code(lam_code)])


def dual_basis_binomial(lam: FqnElem, d) -> DualPair:
    """Closed-form dual of (1, lam, ..., lam^(n-1)) when the minimal
    polynomial is x^n - d: the dual is (lam^n/(nd), ..., lam/(nd)),
    a scaled permutation of the power basis."""
    tw = lam.tower
    d = d.code if isinstance(d, FqnElem) else d
    n = tw.n
    expected = [tw.fq.neg(d)] + [0] * (n - 1) + [1]
    _require_min_poly(tw, lam.code, expected,
                      "minimal polynomial is not x^%d - d" % n)
    basis = OrderedBasis.powers(lam)
    n_in_field = n % tw.p
    scale = tw.inv(tw.mul(n_in_field, d))  # p | n never passes irreducibility
    dual = [tw.mul(scale, tw.pow(lam.code, n - i)) for i in range(n)]
    return DualPair(basis, OrderedBasis(tw, dual))


def dual_basis_trinomial(lam: FqnElem, c, k) -> DualPair:
    """Closed-form dual of the power basis when the minimal polynomial is
    x^n - c x^k - 1: dual_i = lam^(k-1-i)/delta for i < k and
    lam^(n+k-1-i)/delta for i >= k, with
    delta = (n lam^(n-1) - c k lam^(k-1)) / (lam^(n-k) - c)."""
    tw = lam.tower
    c = c.code if isinstance(c, FqnElem) else c
    n = tw.n
    if not 1 <= k <= n - 1:
        raise MinPolyMismatch("trinomial exponent k out of range", k=k)
    expected = [0] * (n + 1)
    expected[0] = tw.fq.neg(1)
    expected[k] = tw.fq.add(expected[k], tw.fq.neg(c))
    expected[n] = 1
    _require_min_poly(tw, lam.code, expected,
                      "minimal polynomial is not x^%d - c x^%d - 1" % (n, k))
    lam_c = lam.code
    num = tw.sub(tw.mul(n % tw.p, tw.pow(lam_c, n - 1)),
                 tw.mul(tw.mul(c, k % tw.p), tw.pow(lam_c, k - 1)))
    den = tw.sub(tw.pow(lam_c, n - k), c)
    delta_inv = tw.div(den, num)
    basis = OrderedBasis.powers(lam)
    dual = []
    for i in range(n):
        e = k - 1 - i if i < k else n + k - 1 - i
        dual.append(tw.mul(delta_inv, tw.pow(lam_c, e)))
    return DualPair(basis, OrderedBasis(tw, dual))


def weak_self_duality_witness(pair: DualPair):
    """If the dual is a scaled permutation of the basis, return the
    (scalar, permutation) witness, else None."""
    tw = pair.basis.tower
    base = list(pair.basis.codes)
    for b0 in base:
        s = tw.div(pair.dual.codes[0], b0)
        scaled = {tw.mul(s, b): i for i, b in enumerate(base)}
        perm = [scaled.get(dcode) for dcode in pair.dual.codes]
        if None not in perm and len(set(perm)) == len(perm):
            return FqnElem(tw, s), tuple(perm)
    return None
