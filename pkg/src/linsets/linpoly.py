"""Linearized polynomials sum a_i x^(q^i) over F_{q^n}.

The canonical form is the dense length-n coefficient tuple, i.e. reduced
mod x^(q^n) - x; sigma-polynomials (sigma = x^(q^s), gcd(s, n) = 1) are
embedded into the same representation rather than kept as a second type.
"""

from __future__ import annotations

import math

from .errors import SigmaNotGenerator, TowerMismatch, ZeroPolynomial
from .gf import FieldTower, FqnElem
from .subspace import FQN, Subspace, nullspace, rref


class LinPoly:
    """A q-polynomial as an F_q-linear map on F_{q^n}."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs):
        coeffs = [c.code if isinstance(c, FqnElem) else c for c in coeffs]
        if len(coeffs) > tower.n:
            # reduce mod x^(q^n) - x: exponents wrap around
            folded = [0] * tower.n
            for i, c in enumerate(coeffs):
                j = i % tower.n
                folded[j] = tower.add(folded[j], c)
            coeffs = folded
        else:
            coeffs = coeffs + [0] * (tower.n - len(coeffs))
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("LinPoly is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, tower):
        return cls(tower, [])

    @classmethod
    def identity(cls, tower):
        return cls(tower, [1])

    @classmethod
    def monomial(cls, tower, i, c=1):
        """c x^(q^i)."""
        code = c.code if isinstance(c, FqnElem) else c
        coeffs = [0] * (i % tower.n) + [code]
        return cls(tower, coeffs)

    @classmethod
    def trace(cls, tower):
        """The Tr_{q^n/q} polynomial: all coefficients 1."""
        return cls(tower, [1] * tower.n)

    @classmethod
    def rel_trace(cls, tower, t):
        """Tr_{q^n/q^t} as a q-polynomial (support on multiples of t)."""
        coeffs = [0] * tower.n
        for i in range(0, tower.n, t):
            coeffs[i] = 1
        return cls(tower, coeffs)

    @classmethod
    def from_sigma(cls, tower, coeffs, s):
        """Embed sum b_j x^(sigma^j), sigma = x^(q^s), as a q-polynomial.

        Requires gcd(s, n) = 1 so that sigma generates the Galois group.
        """
        if math.gcd(s, tower.n) != 1:
            raise SigmaNotGenerator(
                "x -> x^(q^%d) does not generate Gal(F_{q^%d}/F_q): "
                "gcd(%d, %d) != 1" % (s, tower.n, s, tower.n),
                s=s, n=tower.n)
        out = [0] * tower.n
        for j, b in enumerate(coeffs):
            code = b.code if isinstance(b, FqnElem) else b
            e = (j * s) % tower.n
            out[e] = tower.add(out[e], code)
        return cls(tower, out)

    # -- evaluation -----------------------------------------------------------

    def eval_code(self, x):
        tw = self.tower
        acc = 0
        for i, c in enumerate(self.coeffs):
            if c:
                acc = tw.add(acc, tw.mul(c, tw.frob(x, i)))
        return acc

    def __call__(self, a):
        code = a.code if isinstance(a, FqnElem) else a
        return FqnElem(self.tower, self.eval_code(code))

    # -- algebra ----------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LinPoly):
            raise TypeError("expected LinPoly")
        if other.tower != self.tower:
            raise TowerMismatch("polynomials over different towers")

    def __add__(self, other):
        self._check(other)
        tw = self.tower
        return LinPoly(tw, [tw.add(a, b)
                            for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        tw = self.tower
        return LinPoly(tw, [tw.sub(a, b)
                            for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        tw = self.tower
        return LinPoly(tw, [tw.neg(c) for c in self.coeffs])

    def scale(self, c):
        tw = self.tower
        code = c.code if isinstance(c, FqnElem) else c
        return LinPoly(tw, [tw.mul(code, a) for a in self.coeffs])

    def compose(self, other):
        """self after other: eval(compose(f, g), a) = f(g(a))."""
        self._check(other)
        tw = self.tower
        out = [0] * tw.n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                e = (i + j) % tw.n
                out[e] = tw.add(out[e], tw.mul(a, tw.frob(b, i)))
        return LinPoly(tw, out)

    def adjoint(self):
        """The dual map under the trace form: coefficient a_i moves to
        exponent n-i as a_i^(q^(n-i))."""
        tw = self.tower
        out = [0] * tw.n
        for i, c in enumerate(self.coeffs):
            if c:
                e = (tw.n - i) % tw.n
                out[e] = tw.add(out[e], tw.frob(c, e))
        return LinPoly(tw, out)

    def shift_slope(self, m):
        """f(x) - m x, the kernel of which defines the weight of <(1, m)>."""
        tw = self.tower
        code = m.code if isinstance(m, FqnElem) else m
        out = list(self.coeffs)
        out[0] = tw.sub(out[0], code)
        return LinPoly(tw, out)

    # -- structure ---------------------------------------------------------------

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    @property
    def sigma_degree(self):
        """Largest i with a_i != 0 (q-degree of the reduced form); -1 for 0."""
        for i in range(self.tower.n - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def matrix_rows(self):
        """The n x n matrix of f over F_q: row j = coordinates of f(z^j)."""
        tw = self.tower
        return [list(tw.unpack(self.eval_code(tw.q**j))) for j in range(tw.n)]

    def kernel_space(self):
        tw = self.tower
        # x = sum c_j z^j maps to sum c_j f(z^j): kernel = left nullspace
        rows = self.matrix_rows()
        cols = list(zip(*rows))  # transpose: act on coefficient columns
        return Subspace(tw, FQN, nullspace(tw.fq, [list(c) for c in cols],
                                           tw.n))

    def image_space(self):
        tw = self.tower
        return Subspace(tw, FQN, self.matrix_rows())

    def kernel_dim(self):
        tw = self.tower
        _, pivots = rref(tw.fq, self.matrix_rows())
        return tw.n - len(pivots)

    def is_scattered(self):
        """Whether dim ker(f - m x) <= 1 for every slope m.

        Returns a ScatterednessResult that is truthy on success and
        carries the witness slope on failure.
        """
        if self.is_zero:
            raise ZeroPolynomial("scatteredness is undefined for 0")
        tw = self.tower
        for m in range(tw.size):
            if self.shift_slope(m).kernel_dim() > 1:
                return ScatterednessResult(False, FqnElem(tw, m))
        return ScatterednessResult(True, None)

    def ratio_image_size(self):
        """Number of distinct values f(x)/x over x != 0."""
        if self.is_zero:
            raise ZeroPolynomial("ratio image of the zero polynomial")
        tw = self.tower
        seen = set()
        for x in range(1, tw.size):
            seen.add(tw.div(self.eval_code(x), x))
        return len(seen)

    def restrict_scattered(self, t):
        """Scatteredness of f as a map on the subfield F_{q^t}.

        f must stabilize F_{q^t} (e.g. subfield coefficients with support
        below t).  Checks dim_{F_q} ker(f - beta x) <= 1 on F_{q^t} for
        every beta in F_{q^t} by counting ratio fibers.
        """
        tw = self.tower
        counts = {}
        for u in tw.subfield_codes(t):
            if u == 0:
                continue
            r = tw.div(self.eval_code(u), u)
            counts[r] = counts.get(r, 0) + 1
        for r, c in counts.items():
            if c > tw.q - 1:
                return ScatterednessResult(False, FqnElem(tw, r))
        return ScatterednessResult(True, None)

    # -- plumbing -------------------------------------------------------------------

    def coeff_elems(self):
        return [FqnElem(self.tower, c) for c in self.coeffs]

    def __eq__(self, other):
        return (isinstance(other, LinPoly) and other.tower == self.tower
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.tower.params))

    def __repr__(self):
        return "LinPoly(%s)" % self.render()

    def render(self, mode="coeffs"):
        tw = self.tower
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "x" if i == 0 else ("x^q" if i == 1 else "x^q%d" % i)
            terms.append("%s*%s" % (tw.render_code(c, mode), mono))
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return [FqnElem(self.tower, c).to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, tower, data):
        return cls(tower, [tower.elem(c) for c in data])


class ScatterednessResult:
    """Truthy verdict with the offending slope on failure."""

    __slots__ = ("ok", "witness")

    def __init__(self, ok, witness):
        self.ok = ok
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "scattered"
        return "not scattered (witness m=%r)" % (self.witness,)


def gow_check(f: LinPoly):
    """Root-bound data for a reduced q-polynomial of sigma-degree k:
    returns (kernel_dim, k, norm_identity_ok) where the identity
    N(a_0) = (-1)^(n k) N(a_k) is only required when kernel_dim = k.
    """
    tw = f.tower
    k = f.sigma_degree
    if k < 0:
        raise ZeroPolynomial("Gow bound needs a nonzero polynomial")
    dim = f.kernel_dim()
    sign = tw.neg(1) if (tw.n * k) % 2 else 1
    lhs = tw.norm_code(f.coeffs[0], 1)
    rhs = tw.mul(sign, tw.norm_code(f.coeffs[k], 1))
    return dim, k, lhs == rhs
