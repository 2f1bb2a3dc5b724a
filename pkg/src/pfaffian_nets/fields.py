"""Exact coefficient fields: the rationals, prime fields and small extensions.

Elements are thin wrappers (FieldElement) around a payload whose shape depends
on the field kind:

  * QQ        -- fractions.Fraction (always in lowest terms, denominator > 0)
  * GF(p)     -- int in [0, p)
  * GF(p^k)   -- tuple of k ints in [0, p), coefficients of the residue
                 polynomial in ascending degree order

Mixing elements of different fields raises FieldMismatchError; there is no
implicit field tower.  Plain Python ints (and Fractions over QQ) are coerced.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class FieldMismatchError(TypeError):
    """Combination of elements that live in different fields."""


def _as_digits(n, p, k):
    digits = []
    for _ in range(k):
        digits.append(n % p)
        n //= p
    return tuple(digits)


# -- dense univariate helpers mod p (ascending coefficient lists), used only
#    for the irreducible-modulus search and extension arithmetic setup.

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_divmod_rem(prod, mod, p)


def _poly_divmod_rem(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            f = c * inv_lead % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - f * mod[j]) % p
    return _poly_trim(a[:dm])


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_divmod_rem(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_divmod(a, b, p):
    """Quotient and remainder of dense coefficient lists mod p."""
    q = [0] * max(0, len(a) - len(b) + 1)
    rem = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    for i in range(len(rem) - 1, len(b) - 2, -1):
        c = rem[i]
        if c:
            f = c * inv_lead % p
            q[i - len(b) + 1] = f
            for j in range(len(b)):
                rem[i - len(b) + 1 + j] = (rem[i - len(b) + 1 + j] - f * b[j]) % p
    return q, _poly_trim(rem[:len(b) - 1])


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_trim(prod)


def _poly_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _poly_trim(out)


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b
        dm = len(b) - 1
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        for i in range(len(r) - 1, dm - 1, -1):
            c = r[i]
            if c:
                f = c * inv_lead % p
                for j in range(dm + 1):
                    r[i - dm + j] = (r[i - dm + j] - f * b[j]) % p
        a, b = b, _poly_trim(r[:dm])
    return a


def _is_irreducible(coeffs, p, k):
    """coeffs: the k low-order coefficients of a monic degree-k candidate."""
    f = list(coeffs) + [1]
    if k == 1:
        return True
    if k <= 3:
        # degree 2 or 3: irreducible over GF(p) iff it has no root
        return all(sum(c * pow(x, i, p) for i, c in enumerate(f)) % p
                   for x in range(p))
    # no factor of degree j < k  <=>  gcd(f, x^(p^j) - x) = 1 for all j < k
    xp = [0, 1]
    for _ in range(k - 1):
        xp = _poly_powmod(xp, p, f, p)
        g = list(xp)
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        g = _poly_trim(g)
        if len(_poly_gcd(f, g, p)) != 1:
            return False
    return True


def _find_modulus(p, k):
    """First monic irreducible of degree k, coefficients scanned in
    lexicographic order starting from the all-zero tuple."""
    for n in range(p ** k):
        coeffs = _as_digits(n, p, k)
        if _is_irreducible(coeffs, p, k):
            return coeffs + (1,)
    raise RuntimeError("no irreducible polynomial found (impossible)")


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldElement:
    """Scalar bound to its field."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _rhs(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    "cannot combine %s and %s elements" % (self.field, other.field))
            return other.value
        if isinstance(other, int) or (self.field.kind == "QQ"
                                      and isinstance(other, Fraction)):
            return self.field.coerce_value(other)
        return None

    def __add__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.div(v, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int) or isinstance(other, Fraction):
            try:
                return self.value == self.field.coerce_value(other)
            except (TypeError, ValueError):
                return NotImplemented
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.value))

    def __bool__(self):
        return not self.field.is_zero_value(self.value)

    def __repr__(self):
        return "%s(%s)" % (self.field, self.field.format_value(self.value))


class Field:
    """Common interface; concrete kinds are QQ, GF(p) and GF(p^k)."""

    kind = None

    def el(self, x):
        """Coerce x (int, Fraction, FieldElement of self) to an element."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatchError(
                    "element of %s given to %s" % (x.field, self))
            return x
        return FieldElement(self, self.coerce_value(x))

    @property
    def zero(self):
        return FieldElement(self, self.zero_value)

    @property
    def one(self):
        return FieldElement(self, self.one_value)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return self.name


class RationalField(Field):
    kind = "QQ"
    name = "QQ"
    key = ("QQ",)
    characteristic = 0
    zero_value = Fraction(0)
    one_value = Fraction(1)

    def coerce_value(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError("cannot coerce %r into QQ" % (x,))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return a / b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / a

    def is_zero_value(self, a):
        return a == 0

    def format_value(self, a):
        return str(a)

    def random(self, rng, bound=10):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        return FieldElement(self, Fraction(num, den))


class PrimeField(Field):
    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("GF(p) needs a prime, got %d" % p)
        self.p = p
        self.kind = "GF(p)"
        self.name = "GF(%d)" % p
        self.key = ("GF", p, 1)
        self.characteristic = p
        self.order = p
        self.zero_value = 0
        self.one_value = 1 % p

    def coerce_value(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    "denominator not invertible mod %d" % self.p)
            return x.numerator * pow(den, self.p - 2, self.p) % self.p
        raise TypeError("cannot coerce %r into %s" % (x, self))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in %s" % self)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero_value(self, a):
        return a == 0

    def format_value(self, a):
        return str(a)

    def random(self, rng, bound=None):
        return FieldElement(self, rng.randrange(self.p))

    def elements(self):
        for v in range(self.p):
            yield FieldElement(self, v)


class ExtensionField(Field):
    """GF(p^k) as residue polynomials modulo a fixed monic irreducible.

    The modulus is found by deterministic lexicographic search, so two
    constructions of GF(p, k) are interchangeable.
    """

    MAX_DEGREE = 8

    def __init__(self, p, k):
        if not _is_prime(p):
            raise ValueError("GF(p^k) needs a prime p, got %d" % p)
        if not 2 <= k <= self.MAX_DEGREE:
            raise ValueError("extension degree must be in [2, %d], got %d"
                             % (self.MAX_DEGREE, k))
        self.p = p
        self.k = k
        self.kind = "GF(p^k)"
        self.name = "GF(%d^%d)" % (p, k)
        self.key = ("GF", p, k)
        self.characteristic = p
        self.order = p ** k
        self.modulus = _find_modulus(p, k)
        self.zero_value = (0,) * k
        self.one_value = (1,) + (0,) * (k - 1)
        # x^(k+i) mod modulus for i in [0, k-1), used to fold products back
        self._fold = []
        xq = [0] * k + [1]
        for _ in range(k - 1):
            red = _poly_divmod_rem(xq, list(self.modulus), p)
            red = tuple(red) + (0,) * (k - len(red))
            self._fold.append(red)
            xq = [0] + list(red)

    def coerce_value(self, x):
        p, k = self.p, self.k
        if isinstance(x, int):
            return (x % p,) + (0,) * (k - 1)
        if isinstance(x, tuple):
            if len(x) != k:
                raise ValueError("payload length %d != %d" % (len(x), k))
            return tuple(c % p for c in x)
        raise TypeError("cannot coerce %r into %s" % (x, self))

    def from_coeffs(self, coeffs):
        """Element with given ascending coefficients (any length <= k)."""
        c = list(coeffs) + [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(v % self.p for v in c[:self.k]))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:k]]
        for i in range(k - 1):
            c = prod[k + i] % p
            if c:
                fold = self._fold[i]
                for j in range(k):
                    out[j] = (out[j] + c * fold[j]) % p
        return tuple(out)

    def inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of zero in %s" % self)
        # extended euclid: track s with  s * a = r  (mod modulus)
        p = self.p
        r0, r1 = list(self.modulus), _poly_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        # r0 is the gcd, a nonzero constant because the modulus is irreducible
        c = pow(r0[0], p - 2, p)
        out = [x * c % p for x in s0]
        out += [0] * (self.k - len(out))
        return tuple(out[:self.k])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero_value(self, a):
        return all(c == 0 for c in a)

    def format_value(self, a):
        if all(c == 0 for c in a[1:]):
            return str(a[0])
        parts = []
        for i in range(self.k - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                g = "g" if i == 1 else "g^%d" % i
                parts.append(g if c == 1 else "%d*%s" % (c, g))
        return "(" + "+".join(parts) + ")"

    def random(self, rng, bound=None):
        return FieldElement(self, tuple(rng.randrange(self.p)
                                        for _ in range(self.k)))

    def elements(self):
        for combo in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, combo)

    def embed(self, x):
        """Embed an element of the prime subfield GF(p)."""
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            if x.field.key == ("GF", self.p, 1):
                return FieldElement(self, self.coerce_value(x.value))
            raise FieldMismatchError("cannot embed %s into %s" % (x.field, self))
        return self.el(x)


QQ = RationalField()

_prime_cache = {}
_ext_cache = {}


def GF(p, k=1):
    """The finite field with p^k elements (p prime, k <= 8)."""
    if k == 1:
        f = _prime_cache.get(p)
        if f is None:
            f = _prime_cache[p] = PrimeField(p)
        return f
    f = _ext_cache.get((p, k))
    if f is None:
        f = _ext_cache[(p, k)] = ExtensionField(p, k)
    return f


def field_from_name(name):
    """Parse "QQ", "GF(p)" or "GF(p,k)" (used by fixture files)."""
    name = name.strip()
    if name == "QQ":
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        inner = name[3:-1]
        if "," in inner:
            ps, ks = inner.split(",")
            return GF(int(ps), int(ks))
        if "^" in inner:
            ps, ks = inner.split("^")
            return GF(int(ps), int(ks))
        return GF(int(inner))
    raise ValueError("unrecognized field name %r" % name)


def reduce_scalar(x, target):
    """Move a scalar into `target`: QQ -> GF(p) by reduction (denominator must
    be invertible), GF(p) -> GF(p^k) by the prime-subfield embedding."""
    if isinstance(x, FieldElement):
        if x.field == target:
            return x
        if x.field.kind == "QQ":
            return target.el(x.value) if target.kind != "GF(p^k)" \
                else FieldElement(target, target.coerce_value(
                    GF(target.p).coerce_value(x.value)))
        if x.field.kind == "GF(p)" and isinstance(target, ExtensionField) \
                and target.p == x.field.p:
            return target.embed(x)
        raise FieldMismatchError("no reduction from %s to %s"
                                 % (x.field, target))
    return target.el(x)
