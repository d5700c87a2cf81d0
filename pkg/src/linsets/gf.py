"""Exact arithmetic in the tower F_p < F_q = F_{p^h} < F_{q^n}.

Elements are integer codes: an element of F_q is the little-endian base-p
packing of its coefficient vector over Z_p, an element of F_{q^n} is the
little-endian base-q packing of its coefficient vector over F_q in the
power basis of the extension generator.  Codes below q therefore denote
the same element in F_q and in F_{q^n}; the subfield embedding is the
identity on codes.

Multiplication, inversion and powering go through discrete-log tables for
a fixed multiplicative generator; addition goes through Zech logarithms;
each q-power Frobenius is a precomputed permutation table.  All tables
are built once at construction and never mutated afterwards, so towers
and elements can be shared freely between concurrent tasks.
"""

from __future__ import annotations

from .errors import (
    DeskScaleExceeded,
    DivisionByZero,
    NonPrime,
    NotADivisor,
    ReducibleModulus,
    TowerMismatch,
)

DESK_SCALE_LIMIT = 1 << 24


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# generic dense polynomial helpers over a small coefficient field
#
# A coefficient field is any object with integer-coded elements exposing
# .size, .add, .sub, .mul, .neg, .inv.  Polynomials are little-endian lists
# of codes with no trailing zeros (except [0] for the zero polynomial).


def poly_trim(a):
    i = len(a)
    while i > 1 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def poly_mul(fld, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = fld.add(out[i + j], fld.mul(ai, bj))
    return poly_trim(out)


def poly_divmod(fld, a, b):
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [0], poly_trim(a)
    lead_inv = fld.inv(b[db])
    quot = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c = fld.mul(a[k + db], lead_inv)
        if c == 0:
            continue
        quot[k] = c
        for j in range(db + 1):
            a[k + j] = fld.sub(a[k + j], fld.mul(c, b[j]))
    return poly_trim(quot), poly_trim(a)


def _monic_polys(fld, degree):
    """All monic polynomials of the given degree, in packed-code order."""
    for code in range(fld.size ** degree):
        coeffs, c = [], code
        for _ in range(degree):
            coeffs.append(c % fld.size)
            c //= fld.size
        yield coeffs + [1]


def poly_irreducible_factor(fld, f):
    """A monic factor of degree in [1, deg/2], or None when f is irreducible.

    Exhaustive trial division; intended for desk-scale degrees only.
    """
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(fld, d):
            _, rem = poly_divmod(fld, f, g)
            if rem == [0]:
                return g
    return None


def find_irreducible(fld, degree):
    """Packed-code-smallest monic irreducible of the given degree."""
    if degree == 1:
        return [0, 1]
    for f in _monic_polys(fld, degree):
        if f[0] != 0 and poly_irreducible_factor(fld, f) is None:
            return f
    raise AssertionError("no irreducible polynomial found")  # cannot happen


def poly_eval(fld, f, x):
    acc = 0
    for c in reversed(f):
        acc = fld.add(fld.mul(acc, x), c)
    return acc


# ---------------------------------------------------------------------------


class IntMod:
    """Z_p with the coefficient-field protocol used by the poly helpers."""

    def __init__(self, p):
        self.size = p

    def add(self, a, b):
        return (a + b) % self.size

    def sub(self, a, b):
        return (a - b) % self.size

    def mul(self, a, b):
        return (a * b) % self.size

    def neg(self, a):
        return (-a) % self.size

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Z_%d" % self.size)
        return pow(a, self.size - 2, self.size)


class PrimePowerField:
    """F_q = F_p[y]/(modulus), elements coded as ints in [0, q).

    The code of an element is the little-endian base-p packing of its
    coefficient vector.  Addition and multiplication are full q x q
    tables, so q itself must stay desk-scale.
    """

    def __init__(self, p, h, modulus=None):
        if not is_prime(p):
            raise NonPrime("p = %d is not prime" % p, p=p)
        if h < 1:
            raise ValueError("h must be >= 1")
        self.p = p
        self.h = h
        self.size = p**h
        zp = IntMod(p)
        if modulus is None:
            modulus = find_irreducible(zp, h)
        else:
            modulus = [c % p for c in modulus]
            if len(modulus) != h + 1 or modulus[h] != 1:
                raise ReducibleModulus(
                    "base modulus must be monic of degree h", modulus=modulus)
            if h > 1:
                factor = poly_irreducible_factor(zp, modulus)
                if factor is not None:
                    raise ReducibleModulus(
                        "base modulus is reducible over Z_%d" % p,
                        modulus=modulus, factor=factor)
        self.modulus = tuple(modulus)
        self._build_tables()

    def _build_tables(self):
        p, h, q = self.p, self.h, self.size
        zp = IntMod(p)
        digits = [self.unpack(c) for c in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                s = self.pack([(x + y) % p for x, y in zip(digits[a], digits[b])])
                add[a][b] = add[b][a] = s
                prod = poly_mul(zp, list(digits[a]), list(digits[b]))
                _, rem = poly_divmod(zp, prod, list(self.modulus))
                m = self.pack(rem + [0] * (h - len(rem)))
                mul[a][b] = mul[b][a] = m
        self._add = add
        self._mul = mul
        self._neg = [self.pack([(-x) % p for x in digits[a]]) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    def pack(self, coeffs):
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def unpack(self, code):
        out = []
        for _ in range(self.h):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in F_%d" % self.size)
        return self._inv[a]

    def elements(self):
        return range(self.size)


class FieldTower:
    """The chain F_p < F_q = F_{p^h} < F_{q^n} with explicit moduli.

    Immutable after construction.  Raw-code arithmetic lives on this
    object (`add`, `mul`, `frob`, ...); `FqnElem` is the typed wrapper.
    """

    def __init__(self, p, h, n, base_modulus=None, ext_modulus=None,
                 allow_large=False):
        if n < 2:
            raise ValueError("n must be >= 2")
        self.fq = PrimePowerField(p, h, base_modulus)
        self.p, self.h, self.n = p, h, n
        self.q = self.fq.size
        self.size = self.q**n
        if self.size > DESK_SCALE_LIMIT and not allow_large:
            raise DeskScaleExceeded(
                "q^n = %d exceeds the desk-scale guard %d; pass "
                "allow_large=True to override" % (self.size, DESK_SCALE_LIMIT),
                size=self.size, limit=DESK_SCALE_LIMIT)
        if ext_modulus is None:
            ext_modulus = find_irreducible(self.fq, n)
        else:
            ext_modulus = list(ext_modulus)
            if len(ext_modulus) != n + 1 or ext_modulus[n] != 1 or any(
                    not 0 <= c < self.q for c in ext_modulus):
                raise ReducibleModulus(
                    "extension modulus must be monic of degree n over F_q",
                    modulus=ext_modulus)
            factor = poly_irreducible_factor(self.fq, ext_modulus)
            if factor is not None:
                raise ReducibleModulus(
                    "extension modulus is reducible over F_%d" % self.q,
                    modulus=ext_modulus, factor=factor)
        self.ext_modulus = tuple(ext_modulus)
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _raw_mul(self, a, b):
        prod = poly_mul(self.fq, list(self.unpack(a)), list(self.unpack(b)))
        _, rem = poly_divmod(self.fq, prod, list(self.ext_modulus))
        return self.pack(rem + [0] * (self.n - len(rem)))

    def _build_tables(self):
        order = self.size - 1
        # Multiplicative generator: smallest code whose order is q^n - 1.
        # Walking its powers both finds the order and fills the exp table,
        # and proves the tower has exactly q^n elements.
        for cand in range(2, self.size):
            exp = [1]
            x = cand
            while x != 1:
                exp.append(x)
                x = self._raw_mul(x, cand)
                if len(exp) > order:
                    raise AssertionError("generator walk escaped the field")
            if len(exp) == order:
                self.generator = cand
                break
        else:
            raise AssertionError("no multiplicative generator found")
        log = [-1] * self.size
        for k, v in enumerate(exp):
            log[v] = k
        self._exp = exp
        self._log = log
        fq_add, unpack, pack = self.fq.add, self.unpack, self.pack
        neg = [0] * self.size
        for a in range(self.size):
            neg[a] = pack([self.fq.neg(c) for c in unpack(a)])
        self._neg = neg
        # Zech logarithms: zech[k] = log(1 + g^k), -1 when 1 + g^k = 0.
        zech = [0] * order
        for k in range(order):
            digits = list(unpack(exp[k]))
            digits[0] = fq_add(digits[0], 1)
            zech[k] = log[pack(digits)]
        self._zech = zech
        # Frobenius permutation tables x -> x^(q^i) for i = 1..n-1, plus
        # the p-power map used by semilinear actions.
        self._frob = [None] * self.n
        for i in range(1, self.n):
            step = pow(self.q, i, order)
            table = [0] * self.size
            for k in range(order):
                table[exp[k]] = exp[(k * step) % order]
            self._frob[i] = table
        ptable = [0] * self.size
        for k in range(order):
            ptable[exp[k]] = exp[(k * self.p) % order]
        self._frob_p = ptable
        self._subfield_codes = {}

    # -- raw code arithmetic ------------------------------------------------

    def pack(self, coeffs):
        code = 0
        for c in reversed(coeffs):
            code = code * self.q + c
        return code

    def unpack(self, code):
        out = []
        for _ in range(self.n):
            out.append(code % self.q)
            code //= self.q
        return tuple(out)

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        d = self._log[b] - la
        z = self._zech[d if d >= 0 else d + self.size - 1]
        if z < 0:
            return 0
        return self._exp[(la + z) % (self.size - 1)]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self._exp[(self.size - 1 - self._log[a]) % (self.size - 1)]

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by 0")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % (self.size - 1)]

    def pow(self, a, e):
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("0 to a negative power")
        return self._exp[(self._log[a] * e) % (self.size - 1)]

    def frob(self, a, i=1):
        """a^(q^i); i is taken mod n."""
        i %= self.n
        if i == 0:
            return a
        return self._frob[i][a]

    def pow_p(self, a, e):
        """a^(p^e) for semilinear (Aut-indexed) actions; e mod h*n."""
        e %= self.h * self.n
        for _ in range(e):
            a = self._frob_p[a]
        return a

    def scalar_mul(self, c, a):
        """Multiply by an F_q scalar; c is an F_q code (< q)."""
        return self.mul(c, a)

    # -- tower-level operations ---------------------------------------------

    def _check_divisor(self, t):
        if t < 1 or self.n % t != 0:
            raise NotADivisor("t = %d does not divide n = %d" % (t, self.n),
                              t=t, n=self.n)

    def trace_code(self, a, t=1):
        """Tr_{q^n/q^t}(a) as a code (lies in the subfield)."""
        self._check_divisor(t)
        acc = a
        x = a
        for _ in range(self.n // t - 1):
            x = self.frob(x, t)
            acc = self.add(acc, x)
        return acc

    def norm_code(self, a, t=1):
        self._check_divisor(t)
        acc = a
        x = a
        for _ in range(self.n // t - 1):
            x = self.frob(x, t)
            acc = self.mul(acc, x)
        return acc

    def subfield_norm_code(self, a, t):
        """N_{q^t/q}(a) for a in the subfield F_{q^t}."""
        self._check_divisor(t)
        acc = a
        x = a
        for _ in range(t - 1):
            x = self.frob(x, 1)
            acc = self.mul(acc, x)
        return acc

    def in_subfield_code(self, a, t):
        self._check_divisor(t)
        return self.frob(a, t % self.n) == a

    def subfield_codes(self, t):
        """Sorted codes of F_{q^t}, cached per divisor."""
        self._check_divisor(t)
        if t not in self._subfield_codes:
            if t == self.n:
                codes = tuple(range(self.size))
            else:
                codes = tuple(a for a in range(self.size)
                              if self._frob[t][a] == a)
            self._subfield_codes[t] = codes
        return self._subfield_codes[t]

    def subfield_basis_codes(self, t):
        """First t subfield codes that are F_q-independent (greedy, canonical)."""
        basis, rows = [], []
        for a in self.subfield_codes(t):
            if a == 0:
                continue
            cand = rows + [list(self.unpack(a))]
            if _rank_fq(self.fq, cand) == len(cand):
                basis.append(a)
                rows = cand
                if len(basis) == t:
                    return basis
        raise AssertionError("subfield basis not found")

    def min_poly_code(self, a):
        """Monic minimal polynomial of `a` over F_q, as little-endian codes."""
        rows = [[0] * self.n for _ in range(self.n + 1)]
        x = 1
        for d in range(self.n + 1):
            rows[d] = list(self.unpack(x))
            x = self.mul(x, a)
        for d in range(1, self.n + 1):
            sol = _solve_fq(self.fq, [rows[j] for j in range(d)], rows[d])
            if sol is not None:
                return tuple(self.fq.neg(c) for c in sol) + (1,)
        raise AssertionError("minimal polynomial not found")

    def eval_fq_poly(self, coeffs, a):
        """Evaluate a polynomial with F_q coefficients at a tower element."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, a), c)
        return acc

    # -- typed/public surface -----------------------------------------------

    @property
    def params(self):
        return (self.p, self.h, self.n, self.fq.modulus, self.ext_modulus)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    def __repr__(self):
        return "FieldTower(p=%d, h=%d, n=%d)" % (self.p, self.h, self.n)

    def elem(self, value):
        """Coerce a code, coefficient list, 'g^k' string or FqnElem."""
        if isinstance(value, FqnElem):
            if value.tower != self:
                raise TowerMismatch("element from a different tower")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.size:
                raise ValueError("element code out of range")
            return FqnElem(self, value)
        if isinstance(value, str):
            return FqnElem(self, self.parse_code(value))
        # nested little-endian coefficient arrays over Z_p
        codes = [self.fq.pack(list(c)) for c in value]
        return FqnElem(self, self.pack(codes + [0] * (self.n - len(codes))))

    def parse_code(self, text):
        text = text.strip()
        if text == "0":
            return 0
        if text in ("1", "g^0"):
            return 1
        if text == "g":
            return self.generator
        if text.startswith("g^"):
            return self._exp[int(text[2:]) % (self.size - 1)]
        return int(text)

    def render_code(self, code, mode="coeffs"):
        if mode == "power":
            if code == 0:
                return "0"
            k = self._log[code]
            return "1" if k == 0 else ("g" if k == 1 else "g^%d" % k)
        return str(list(self.unpack(code)))

    @property
    def zero(self):
        return FqnElem(self, 0)

    @property
    def one(self):
        return FqnElem(self, 1)

    @property
    def gen(self):
        """The extension generator z (root of ext_modulus); code q."""
        return FqnElem(self, self.q)

    def elements(self):
        return (FqnElem(self, c) for c in range(self.size))

    def random_element(self, rng):
        return FqnElem(self, rng.randrange(self.size))

    def to_json(self):
        return {
            "p": self.p,
            "h": self.h,
            "n": self.n,
            "base_modulus": [int(c) for c in self.fq.modulus],
            "ext_modulus": [list(self.fq.unpack(c)) for c in self.ext_modulus],
        }

    @classmethod
    def from_json(cls, data, allow_large=False):
        p = data["p"]

        def pack(coeffs):
            code = 0
            for c in reversed(list(coeffs)):
                code = code * p + c
            return code

        ext = [pack(c) for c in data["ext_modulus"]]
        return cls(p, data["h"], data["n"],
                   base_modulus=list(data["base_modulus"]),
                   ext_modulus=ext, allow_large=allow_large)


class FqnElem:
    """An element of F_{q^n}: an immutable (tower, code) pair."""

    __slots__ = ("tower", "code")

    def __init__(self, tower, code):
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "code", code)

    def __setattr__(self, *a):
        raise AttributeError("FqnElem is immutable")

    def _coerce(self, other):
        if isinstance(other, FqnElem):
            if other.tower != self.tower:
                raise TowerMismatch("elements from different towers")
            return other.code
        if isinstance(other, int):
            return other % self.tower.p  # prime-subfield literal
        raise TypeError("cannot coerce %r" % (other,))

    def __add__(self, other):
        return FqnElem(self.tower, self.tower.add(self.code, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqnElem(self.tower, self.tower.sub(self.code, self._coerce(other)))

    def __rsub__(self, other):
        return FqnElem(self.tower, self.tower.sub(self._coerce(other), self.code))

    def __mul__(self, other):
        return FqnElem(self.tower, self.tower.mul(self.code, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FqnElem(self.tower, self.tower.div(self.code, self._coerce(other)))

    def __rtruediv__(self, other):
        return FqnElem(self.tower, self.tower.div(self._coerce(other), self.code))

    def __neg__(self):
        return FqnElem(self.tower, self.tower.neg(self.code))

    def __pow__(self, e):
        return FqnElem(self.tower, self.tower.pow(self.code, e))

    def inv(self):
        return FqnElem(self.tower, self.tower.inv(self.code))

    def frob(self, i=1):
        return FqnElem(self.tower, self.tower.frob(self.code, i))

    def trace(self, t=1):
        return FqnElem(self.tower, self.tower.trace_code(self.code, t))

    def norm(self, t=1):
        return FqnElem(self.tower, self.tower.norm_code(self.code, t))

    def in_subfield(self, t):
        return self.tower.in_subfield_code(self.code, t)

    def min_poly(self):
        return self.tower.min_poly_code(self.code)

    def coeffs(self):
        """Coefficient vector over F_q (codes), little-endian."""
        return self.tower.unpack(self.code)

    def to_json(self):
        return [list(self.tower.fq.unpack(c)) for c in self.coeffs()]

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        return (isinstance(other, FqnElem) and other.tower == self.tower
                and other.code == self.code)

    def __hash__(self):
        return hash((self.code, self.tower.params))

    def __repr__(self):
        return "FqnElem(%s)" % self.tower.render_code(self.code)


# ---------------------------------------------------------------------------
# small F_q linear algebra used by tower internals (full RREF machinery
# lives in linsets.subspace; these two are kept here to avoid a cycle)


def _rank_fq(fq, rows):
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
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
        rank += 1
    return rank


def _solve_fq(fq, rows, target):
    """Coefficients c with sum c_j rows[j] = target, or None."""
    k = len(rows)
    if k == 0:
        return [] if all(x == 0 for x in target) else None
    cols = len(target)
    aug = [list(rows[j]) + [1 if i == j else 0 for i in range(k)]
           for j in range(k)]
    # eliminate on the first `cols` columns, carrying the combination record
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, k) if aug[r][c]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = fq.inv(aug[rank][c])
        aug[rank] = [fq.mul(inv, x) for x in aug[rank]]
        for r in range(k):
            if r != rank and aug[r][c]:
                f = aug[r][c]
                aug[r] = [fq.sub(x, fq.mul(f, y))
                          for x, y in zip(aug[r], aug[rank])]
        rank += 1
    t = list(target)
    combo = [0] * k
    for r in range(rank):
        c = next(i for i in range(cols) if aug[r][i])
        f = t[c]
        if f:
            for i in range(cols):
                t[i] = fq.sub(t[i], fq.mul(f, aug[r][i]))
            for j in range(k):
                combo[j] = fq.add(combo[j], fq.mul(f, aug[r][cols + j]))
    if any(x != 0 for x in t):
        return None
    return combo


# ---------------------------------------------------------------------------
# spec-level operation names


def make_field(p, h, n, base_modulus=None, ext_modulus=None, allow_large=False):
    """Construct a validated FieldTower; default moduli are the
    packed-code-smallest monic irreducibles, so serialized elements are
    portable across runs."""
    return FieldTower(p, h, n, base_modulus, ext_modulus, allow_large)


def arith(a: FqnElem, b, kind: str) -> FqnElem:
    """Dispatch form of element arithmetic, mirroring the CLI surface."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind == "pow":
        return a**b
    if kind == "neg":
        return -a
    if kind == "inv":
        return a.inv()
    raise ValueError("unknown arithmetic kind %r" % kind)


def frobenius_q(a: FqnElem, i: int) -> FqnElem:
    return a.frob(i)


def rel_trace(a: FqnElem, t: int) -> FqnElem:
    return a.trace(t)


def rel_norm(a: FqnElem, t: int) -> FqnElem:
    return a.norm(t)


def in_subfield(a: FqnElem, t: int) -> bool:
    return a.in_subfield(t)


def subfield_basis(tower: FieldTower, t: int):
    return [FqnElem(tower, c) for c in tower.subfield_basis_codes(t)]


def min_poly_over_Fq(a: FqnElem):
    return a.min_poly()
