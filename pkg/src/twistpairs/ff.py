"""Exact arithmetic in finite fields and their extensions.

Fields are represented as explicit polynomial quotients.  An absolute field
GF(p^k) is the quotient of GF(p)[x] by the lexicographically smallest monic
irreducible of degree k (with the convention that k = 1 uses the modulus x,
so prime-field elements are length-1 coefficient vectors).  Relative
extensions of an existing field are supported the same way, which lets the
construction code work inside K[T]/(h) towers without ever enumerating the
big field.

Everything is deterministic: "smallest" always means smallest in the
low-degree-first lexicographic order on coefficient vectors.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

from .config import DEFAULT


class NotPrime(ValueError):
    pass


class DegreeTooLarge(ValueError):
    pass


class NoSubfieldRelation(ValueError):
    pass


class ZeroElement(ZeroDivisionError):
    pass


class ModuliNotCoprime(ValueError):
    pass


class FieldTooLarge(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Factor n by trial division.  Intended for n up to ~10^14."""
    if n <= 0:
        raise ValueError("positive integer required")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def proper_divisors(n: int) -> list[int]:
    """Positive divisors of n strictly less than n (1 included)."""
    return [d for d in divisors(n) if d < n]


def crt(residues: list[int], moduli: list[int]) -> int:
    """Smallest nonnegative solution of simultaneous congruences."""
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli must have equal length")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if math.gcd(moduli[i], moduli[j]) != 1:
                raise ModuliNotCoprime(f"moduli {moduli[i]} and {moduli[j]}")
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        # solve x' = x (mod m), x' = r (mod n)
        g, inv = _egcd_int(m % n, n)
        assert g == 1
        t = ((r - x) * inv) % n
        x, m = x + m * t, m * n
    return x % m


def _egcd_int(a: int, n: int) -> tuple[int, int]:
    """Return (gcd(a, n), inverse of a mod n when the gcd is 1)."""
    old_r, r = a % n, n
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_r, old_s % n


# ---------------------------------------------------------------------------
# field classes


class PrimeField:
    """GF(p) with plain ints in [0, p) as payloads.  Used as a coefficient
    ring by ExtensionField; spec-level fields are always ExtensionField."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.absolute_degree = 1

    def order(self) -> int:
        return self.p

    # payload ops
    def zero_p(self):
        return 0

    def one_p(self):
        return 1

    def add_p(self, a, b):
        return (a + b) % self.p

    def sub_p(self, a, b):
        return (a - b) % self.p

    def neg_p(self, a):
        return (-a) % self.p

    def mul_p(self, a, b):
        return (a * b) % self.p

    def inv_p(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero_p(self, a) -> bool:
        return a == 0

    def from_int_p(self, n: int):
        return n % self.p

    def enumerate_payloads(self):
        return range(self.p)

    def flatten(self, a) -> tuple[int, ...]:
        return (a,)

    def unflatten(self, flat: tuple[int, ...]):
        return flat[0]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtensionField:
    """Quotient base[x]/(modulus).  Payloads are tuples of base payloads of
    length equal to the relative degree; the modulus is monic of degree
    rel_degree, stored low-first with the leading 1 included."""

    def __init__(self, base, modulus, label: str | None = None):
        self.base = base
        self.p = base.p
        self.modulus = tuple(modulus)
        self.rel_degree = len(self.modulus) - 1
        if self.rel_degree < 1:
            raise ValueError("modulus must have degree >= 1")
        if not base_eq_one(base, self.modulus[-1]):
            raise ValueError("modulus must be monic")
        self.absolute_degree = base.absolute_degree * self.rel_degree
        self.label = label
        # reduction rows: x^(k+i) mod modulus for i in 0..k-2
        self._red = self._reduction_rows()

    # -- construction helpers ------------------------------------------------

    def _reduction_rows(self):
        k, b = self.rel_degree, self.base
        top = tuple(b.neg_p(c) for c in self.modulus[:k])  # x^k
        rows = [top]
        for _ in range(k - 2):
            prev = rows[-1]
            shifted = (b.zero_p(),) + prev[:-1]
            lead = prev[-1]
            rows.append(tuple(b.add_p(shifted[i], b.mul_p(lead, top[i])) for i in range(k)))
        return rows

    def order(self) -> int:
        return self.p ** self.absolute_degree

    # -- payload arithmetic ----------------------------------------------------

    def zero_p(self):
        z = self.base.zero_p()
        return (z,) * self.rel_degree

    def one_p(self):
        one = (self.base.one_p(),) + (self.base.zero_p(),) * (self.rel_degree - 1)
        return one

    def gen_p(self):
        """Payload of the residue class of x (for rel_degree 1 this is the
        image of the base generator, i.e. zero shifted -- callers beware)."""
        if self.rel_degree == 1:
            # modulus is x + c; the class of x is the constant -c
            return (self.base.neg_p(self.modulus[0]),)
        z, o = self.base.zero_p(), self.base.one_p()
        return (z, o) + (z,) * (self.rel_degree - 2)

    def add_p(self, a, b):
        ba = self.base
        return tuple(ba.add_p(x, y) for x, y in zip(a, b))

    def sub_p(self, a, b):
        ba = self.base
        return tuple(ba.sub_p(x, y) for x, y in zip(a, b))

    def neg_p(self, a):
        ba = self.base
        return tuple(ba.neg_p(x) for x in a)

    def mul_p(self, a, b):
        k, ba = self.rel_degree, self.base
        if k == 1:
            return (ba.mul_p(a[0], b[0]),)
        conv = [ba.zero_p() for _ in range(2 * k - 1)]
        for i, x in enumerate(a):
            if ba.is_zero_p(x):
                continue
            for j, y in enumerate(b):
                if ba.is_zero_p(y):
                    continue
                conv[i + j] = ba.add_p(conv[i + j], ba.mul_p(x, y))
        out = conv[:k]
        for i in range(k - 1):
            c = conv[k + i]
            if ba.is_zero_p(c):
                continue
            row = self._red[i]
            for j in range(k):
                out[j] = ba.add_p(out[j], ba.mul_p(c, row[j]))
        return tuple(out)

    def scalar_mul_p(self, c, a):
        """Multiply by a base-field payload c."""
        ba = self.base
        return tuple(ba.mul_p(c, x) for x in a)

    def is_zero_p(self, a) -> bool:
        ba = self.base
        return all(ba.is_zero_p(x) for x in a)

    def pow_p(self, a, n: int):
        if n < 0:
            return self.pow_p(self.inv_p(a), -n)
        out = self.one_p()
        acc = a
        while n:
            if n & 1:
                out = self.mul_p(out, acc)
            acc = self.mul_p(acc, acc)
            n >>= 1
        return out

    def inv_p(self, a):
        if self.is_zero_p(a):
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in base[x]
        ba = self.base
        r0, r1 = list(self.modulus), list(a)
        s0, s1 = [], [ba.one_p()]
        while True:
            r1 = _ptrim(ba, r1)
            if len(r1) == 1 and not ba.is_zero_p(r1[0]):
                c = ba.inv_p(r1[0])
                out = [ba.mul_p(c, x) for x in s1]
                out += [ba.zero_p()] * (self.rel_degree - len(out))
                return tuple(out[: self.rel_degree])
            q, rem = _pdivmod(ba, r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(ba, s0, _pmul(ba, q, s1))

    def from_int_p(self, n: int):
        c = self.base.from_int_p(n)
        return (c,) + (self.base.zero_p(),) * (self.rel_degree - 1)

    def enumerate_payloads(self):
        return itertools.product(self.base.enumerate_payloads(), repeat=self.rel_degree)

    def flatten(self, a) -> tuple[int, ...]:
        out: list[int] = []
        for c in a:
            out.extend(self.base.flatten(c))
        return tuple(out)

    def unflatten(self, flat):
        d = self.base.absolute_degree
        return tuple(self.base.unflatten(tuple(flat[i * d:(i + 1) * d])) for i in range(self.rel_degree))

    # -- public element API ----------------------------------------------------

    def zero(self) -> "FieldElem":
        return FieldElem(self, self.zero_p())

    def one(self) -> "FieldElem":
        return FieldElem(self, self.one_p())

    def gen(self) -> "FieldElem":
        return FieldElem(self, self.gen_p())

    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field == self:
                return value
            raise ValueError("element of a different field")
        if isinstance(value, int):
            return FieldElem(self, self.from_int_p(value))
        if isinstance(value, (list, tuple)):
            if len(value) != self.rel_degree:
                raise ValueError("coefficient vector of wrong length")
            payload = tuple(
                c if not isinstance(c, (int, FieldElem)) else _coerce_coeff(self.base, c)
                for c in value
            )
            return FieldElem(self, payload)
        raise TypeError(f"cannot make a field element from {value!r}")

    def elements(self):
        for pl in self.enumerate_payloads():
            yield FieldElem(self, pl)

    def constant(self, base_elem: "FieldElem") -> "FieldElem":
        """Lift an element of the base field into this extension."""
        if base_elem.field != self.base_as_field():
            raise ValueError("not an element of the base field")
        pl = base_elem.pl if isinstance(self.base, ExtensionField) else base_elem.pl
        return FieldElem(self, (pl,) + (self.base.zero_p(),) * (self.rel_degree - 1))

    def base_as_field(self):
        return self.base

    def is_absolute(self) -> bool:
        return isinstance(self.base, PrimeField)

    @property
    def k(self) -> int:
        return self.absolute_degree

    @property
    def spec(self) -> "FieldSpec":
        if not self.is_absolute():
            raise ValueError("spec only defined for absolute fields")
        return FieldSpec(self.p, self.rel_degree, tuple(int(c) for c in self.modulus))

    def tower_json(self):
        if self.is_absolute():
            return self.spec.to_json()
        return {
            "base": self.base.tower_json(),
            "degree": self.rel_degree,
            "modulus": [list(self.base.flatten(c)) for c in self.modulus],
        }

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtensionField", self.base, self.modulus))

    def __repr__(self):
        if self.label:
            return self.label
        if self.is_absolute():
            return f"GF({self.p}^{self.rel_degree})" if self.rel_degree > 1 else f"GF({self.p})"
        return f"{self.base!r}[T]/deg{self.rel_degree}"


def _coerce_coeff(base, c):
    if isinstance(c, FieldElem):
        return c.pl
    return base.from_int_p(c)


def base_eq_one(base, payload) -> bool:
    return payload == base.one_p()


class FieldElem:
    """An element of an ExtensionField (or PrimeField, for internals)."""

    __slots__ = ("field", "pl")

    def __init__(self, field, pl):
        self.field = field
        self.pl = pl

    def _check(self, other) -> "FieldElem":
        if isinstance(other, int):
            return FieldElem(self.field, self.field.from_int_p(other))
        if not isinstance(other, FieldElem) or other.field != self.field:
            raise ValueError("elements of different fields")
        return other

    def __add__(self, other):
        o = self._check(other)
        return FieldElem(self.field, self.field.add_p(self.pl, o.pl))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return FieldElem(self.field, self.field.sub_p(self.pl, o.pl))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        return FieldElem(self.field, self.field.mul_p(self.pl, o.pl))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __neg__(self):
        return FieldElem(self.field, self.field.neg_p(self.pl))

    def __pow__(self, n: int):
        return FieldElem(self.field, self.field.pow_p(self.pl, n))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv_p(self.pl))

    def is_zero(self) -> bool:
        return self.field.is_zero_p(self.pl)

    def lex_key(self) -> tuple[int, ...]:
        return self.field.flatten(self.pl)

    def coeff_vector(self) -> list[int]:
        return list(self.field.flatten(self.pl))

    def __eq__(self, other):
        if isinstance(other, int):
            other = FieldElem(self.field, self.field.from_int_p(other))
        return isinstance(other, FieldElem) and other.field == self.field and other.pl == self.pl

    def __hash__(self):
        return hash((self.field, self.pl))

    def __repr__(self):
        return f"{list(self.field.flatten(self.pl))}@{self.field!r}"

    def to_json(self):
        return {"coeffs": self.coeff_vector()}


# ---------------------------------------------------------------------------
# polynomials over a field (coefficient lists of FieldElem, low degree first)


def _ptrim(base, cs):
    cs = list(cs)
    while len(cs) > 1 and base.is_zero_p(cs[-1]):
        cs.pop()
    if not cs:
        cs = [base.zero_p()]
    return cs


def _pmul(base, a, b):
    if not a or not b:
        return []
    out = [base.zero_p()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if base.is_zero_p(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = base.add_p(out[i + j], base.mul_p(x, y))
    return _ptrim(base, out)


def _psub(base, a, b):
    n = max(len(a), len(b))
    a = list(a) + [base.zero_p()] * (n - len(a))
    b = list(b) + [base.zero_p()] * (n - len(b))
    return _ptrim(base, [base.sub_p(x, y) for x, y in zip(a, b)])


def _pdivmod(base, a, b):
    a = _ptrim(base, a)
    b = _ptrim(base, b)
    if len(b) == 1 and base.is_zero_p(b[0]):
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = base.inv_p(b[-1])
    rem = list(a)
    deg_b = len(b) - 1
    q = [base.zero_p()] * max(1, len(a) - deg_b)
    while len(rem) - 1 >= deg_b and not (len(rem) == 1 and base.is_zero_p(rem[0])):
        shift = len(rem) - 1 - deg_b
        c = base.mul_p(rem[-1], inv_lead)
        q[shift] = base.add_p(q[shift], c)
        for i in range(len(b)):
            rem[shift + i] = base.sub_p(rem[shift + i], base.mul_p(c, b[i]))
        rem = _ptrim(base, rem)
        if len(rem) == 1 and base.is_zero_p(rem[0]):
            break
    return _ptrim(base, q), _ptrim(base, rem)


class Poly:
    """Univariate polynomial over an ExtensionField, low degree first."""

    __slots__ = ("field", "cs")

    def __init__(self, field, coeffs):
        pls = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                pls.append(c.pl)
            elif isinstance(c, int):
                pls.append(field.from_int_p(c))
            else:
                pls.append(c)
        self.field = field
        self.cs = tuple(_ptrim(field, pls)) if pls else (field.zero_p(),)

    @staticmethod
    def from_payloads(field, pls):
        p = Poly.__new__(Poly)
        p.field = field
        p.cs = tuple(_ptrim(field, list(pls))) if pls else (field.zero_p(),)
        return p

    def degree(self) -> int:
        if len(self.cs) == 1 and self.field.is_zero_p(self.cs[0]):
            return -1
        return len(self.cs) - 1

    def is_zero(self) -> bool:
        return self.degree() < 0

    def coeff(self, i: int) -> FieldElem:
        if i < len(self.cs):
            return FieldElem(self.field, self.cs[i])
        return self.field.zero()

    def __add__(self, other):
        f = self.field
        n = max(len(self.cs), len(other.cs))
        a = list(self.cs) + [f.zero_p()] * (n - len(self.cs))
        b = list(other.cs) + [f.zero_p()] * (n - len(other.cs))
        return Poly.from_payloads(f, [f.add_p(x, y) for x, y in zip(a, b)])

    def __sub__(self, other):
        return Poly.from_payloads(self.field, _psub(self.field, self.cs, other.cs))

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return Poly.from_payloads(
                self.field, [self.field.mul_p(other.pl, c) for c in self.cs]
            )
        return Poly.from_payloads(self.field, _pmul(self.field, self.cs, other.cs))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self):
        return Poly.from_payloads(self.field, [self.field.neg_p(c) for c in self.cs])

    def divmod(self, other):
        q, r = _pdivmod(self.field, self.cs, other.cs)
        return Poly.from_payloads(self.field, q), Poly.from_payloads(self.field, r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.field.inv_p(self.cs[-1])
        return Poly.from_payloads(self.field, [self.field.mul_p(inv, c) for c in self.cs])

    def gcd(self, other) -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        f = self.field
        if len(self.cs) == 1:
            return Poly.from_payloads(f, [f.zero_p()])
        out = []
        for i in range(1, len(self.cs)):
            scalar = f.from_int_p(i)
            out.append(f.mul_p(scalar, self.cs[i]))
        return Poly.from_payloads(f, out)

    def eval(self, x: FieldElem) -> FieldElem:
        f = self.field
        acc = f.zero_p()
        for c in reversed(self.cs):
            acc = f.add_p(f.mul_p(acc, x.pl), c)
        return FieldElem(f, acc)

    def pow_mod(self, n: int, modulus: "Poly") -> "Poly":
        out = Poly(self.field, [1])
        acc = self % modulus
        while n:
            if n & 1:
                out = (out * acc) % modulus
            acc = (acc * acc) % modulus
            n >>= 1
        return out

    def shift(self, n: int) -> "Poly":
        """Multiply by x^n."""
        return Poly.from_payloads(self.field, [self.field.zero_p()] * n + list(self.cs))

    def __eq__(self, other):
        return isinstance(other, Poly) and other.field == self.field and other.cs == self.cs

    def __hash__(self):
        return hash((self.field, self.cs))

    def __repr__(self):
        return f"Poly({[list(self.field.flatten(c)) for c in self.cs]})"


def poly_discriminant_nonzero(f: Poly) -> bool:
    """Separability test: gcd(f, f') is constant.

    This is what every squarefree-ness check in this package needs; it is
    valid in all characteristics, including when f' vanishes identically.
    """
    if f.degree() < 1:
        raise ValueError("degree >= 1 required")
    d = f.derivative()
    if d.is_zero():
        return False
    return f.gcd(d).degree() == 0


def is_irreducible(f: Poly) -> bool:
    """Rabin's irreducibility test over the coefficient field."""
    k = f.degree()
    if k < 1:
        return False
    if k == 1:
        return True
    field = f.field
    q = field.order()
    x = Poly(field, [0, 1])
    # x^(q^k) must equal x mod f
    t = x
    for _ in range(k):
        t = t.pow_mod(q, f)
    if t != x % f:
        return False
    for ell in factorize(k):
        t = x
        for _ in range(k // ell):
            t = t.pow_mod(q, f)
        g = (t - x).gcd(f)
        if g.degree() != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# field construction


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of an absolute field GF(p^k)."""

    p: int
    k: int
    modulus: tuple[int, ...]

    def to_json(self):
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(d) -> "FieldSpec":
        return FieldSpec(int(d["p"]), int(d["k"]), tuple(int(c) for c in d["modulus"]))

    def field(self) -> ExtensionField:
        f = build_field(self.p, self.k)
        if f.spec != self:
            raise ValueError("field modulus does not match the canonical one")
        return f


@functools.lru_cache(maxsize=None)
def build_field(p: int, k: int, max_size: int | None = None) -> ExtensionField:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus.

    Coefficient tuples are compared low-degree-first; k = 1 uses the
    modulus x so that prime fields are ordinary length-1 vectors.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("k >= 1 required")
    bound = max_size if max_size is not None else DEFAULT.max_field
    if p**k > bound:
        raise DegreeTooLarge(f"{p}^{k} exceeds the configured bound {bound}")
    base = PrimeField(p)
    if k == 1:
        return ExtensionField(base, (0, 1))
    for tail in itertools.product(range(p), repeat=k):
        coeffs = tail + (1,)
        f = Poly(ExtensionField(base, (0, 1)), [c for c in coeffs])
        # irreducibility over GF(p): test with coefficients in the k=1 field
        if is_irreducible(f):
            return ExtensionField(base, coeffs)
    raise AssertionError("no irreducible polynomial found (impossible)")


def extension_field(base: ExtensionField, degree: int, label: str | None = None) -> ExtensionField:
    """Degree-`degree` extension of `base` with the lexicographically
    smallest irreducible relative modulus.  No size cap: these towers are
    used for symbolic verification, never for enumeration."""
    if degree == 1:
        return base
    for tail in itertools.product(base.enumerate_payloads(), repeat=degree):
        coeffs = list(tail) + [base.one_p()]
        f = Poly.from_payloads(base, coeffs)
        if f.degree() != degree:
            continue
        if is_irreducible(f):
            return ExtensionField(base, tuple(coeffs), label=label)
    raise AssertionError("no irreducible polynomial found (impossible)")


# ---------------------------------------------------------------------------
# embeddings


@dataclass
class SubfieldEmbedding:
    source: ExtensionField
    target: ExtensionField
    generator_image: FieldElem

    def __post_init__(self):
        k = self.source.rel_degree
        img = self.generator_image
        pows = [self.target.one()]
        for _ in range(k - 1):
            pows.append(pows[-1] * img)
        self._pows = pows

    def apply(self, a: FieldElem) -> FieldElem:
        if a.field != self.source:
            raise ValueError("element not in the source field")
        out = self.target.zero()
        for c, pw in zip(a.pl, self._pows):
            out = out + pw * FieldElem(self.target, self.target.from_int_p(0) if False else self.target.from_int_p(c))
        return out


def _embed_const(target: ExtensionField, c: int) -> FieldElem:
    return FieldElem(target, target.from_int_p(c))


def embed(sub: ExtensionField, sup: ExtensionField) -> SubfieldEmbedding:
    """Embedding of one absolute field into another, sending the generator
    to the lexicographically smallest root of sub's modulus in sup."""
    if not (sub.is_absolute() and sup.is_absolute()):
        raise NoSubfieldRelation("embed expects absolute fields")
    if sub.p != sup.p or sup.rel_degree % sub.rel_degree != 0:
        raise NoSubfieldRelation(f"{sub!r} does not embed in {sup!r}")
    mod_poly = Poly(sup, [c for c in sub.modulus])
    root = _smallest_root(mod_poly, sub.order())
    return SubfieldEmbedding(sub, sup, root)


def _smallest_root(f: Poly, subfield_order: int) -> FieldElem:
    """Lex-smallest root of f in its coefficient field.  All roots of an
    irreducible sub-modulus lie in the subfield of that size, so for large
    fields the search runs over the subfield's cyclic group only."""
    field = f.field
    Q = field.order()
    if Q <= 1 << 16:
        for a in field.elements():
            if f.eval(a).is_zero():
                return a
        raise NoSubfieldRelation("modulus has no root (not a subfield?)")
    eta = primitive_element(field)
    step = (Q - 1) // (subfield_order - 1)
    roots = []
    zero = field.zero()
    if f.eval(zero).is_zero():
        roots.append(zero)
    acc = field.one()
    g = eta**step
    for _ in range(subfield_order - 1):
        if f.eval(acc).is_zero():
            roots.append(acc)
        acc = acc * g
    if not roots:
        raise NoSubfieldRelation("modulus has no root (not a subfield?)")
    return min(roots, key=lambda e: e.lex_key())


# ---------------------------------------------------------------------------
# multiplicative structure


def primitive_element(field: ExtensionField) -> FieldElem:
    """Lexicographically smallest generator of the multiplicative group."""
    n = field.order() - 1
    if n == 1:
        return field.one()
    primes = list(factorize(n))
    for a in field.elements():
        if a.is_zero():
            continue
        if all((a ** (n // ell)) != field.one() for ell in primes):
            return a
    raise AssertionError("no generator found (impossible)")


def element_order_mult(a: FieldElem) -> int:
    if a.is_zero():
        raise ZeroElement("order of zero")
    n = a.field.order() - 1
    order = n
    for ell, e in factorize(n).items():
        for _ in range(e):
            if a ** (order // ell) == a.field.one():
                order //= ell
            else:
                break
    return order


def mth_power_class_order(a: FieldElem, m: int) -> int:
    """Order of the image of a in K*/K*^m.

    Computed as the least t | m with a^t an m-th power; the m-th power test
    is a^(t(q-1)/g) == 1 with g = gcd(m, q-1).
    """
    if a.is_zero():
        raise ZeroElement("class of zero")
    if m < 1:
        raise ValueError("m >= 1 required")
    q = a.field.order()
    g = math.gcd(m, q - 1)
    e = (q - 1) // g
    one = a.field.one()
    for t in divisors(m):
        if (a ** (t * e)) == one:
            return t
    raise AssertionError("unreachable: t = m always passes")


def is_mth_power(a: FieldElem, m: int) -> bool:
    if a.is_zero():
        return True
    q = a.field.order()
    g = math.gcd(m, q - 1)
    return (a ** ((q - 1) // g)) == a.field.one()


def is_square(a: FieldElem) -> bool:
    if a.field.p == 2:
        return True
    return a.is_zero() or is_mth_power(a, 2)


def sqrt_or_none(a: FieldElem) -> FieldElem | None:
    """A canonical square root: the lex-smaller of the two roots in odd
    characteristic, the unique root in characteristic 2."""
    f = a.field
    if a.is_zero():
        return f.zero()
    if f.p == 2:
        return a ** (f.order() // 2)
    if not is_square(a):
        return None
    r = nth_root(a, 2)
    assert r is not None
    return min(r, -r, key=lambda e: e.lex_key())


def nth_root(a: FieldElem, m: int) -> FieldElem | None:
    """Some solution of x^m = a, or None.  Deterministic (AMM root
    extraction prime by prime); no factorization of the group order needed."""
    if m < 1:
        raise ValueError("m >= 1 required")
    if a.is_zero():
        return a.field.zero()
    x = a
    for ell, e in sorted(factorize(m).items()):
        for _ in range(e):
            x = _prime_root(x, ell)
            if x is None:
                return None
    return x


def _prime_root(a: FieldElem, ell: int) -> FieldElem | None:
    field = a.field
    n = field.order() - 1
    one = field.one()
    v, u = 0, n
    while u % ell == 0:
        v += 1
        u //= ell
    if v == 0:
        return a ** pow(ell, -1, n)
    if (a ** (n // ell)) != one:
        return None
    rho = None
    for c in field.elements():
        if c.is_zero():
            continue
        if (c ** (n // ell)) != one:
            rho = c
            break
    assert rho is not None
    z = rho**u  # order exactly ell^v
    b = a**u   # in <z>, with ell | dlog
    e = _subgroup_dlog(b, z, ell, v)
    assert e % ell == 0
    t = pow(ell, -1, u) if u > 1 else 0
    c_exp = (t * ell - 1) // u if u > 1 else 0
    x = (a**t if u > 1 else one) * z ** ((-(e // ell) * c_exp) % (ell**v))
    if u == 1:
        # group order is a power of ell; a = z^e directly
        x = z ** (e // ell)
    assert x**ell == a
    return x


def _subgroup_dlog(b: FieldElem, z: FieldElem, ell: int, v: int) -> int:
    """Discrete log of b base z inside the cyclic group <z> of order ell^v,
    by base-ell digits (Pohlig-Hellman); ell^v is always tiny here."""
    field = z.field
    one = field.one()
    zeta = z ** (ell ** (v - 1))  # order ell
    table = {}
    acc = one
    for i in range(ell):
        table[acc.pl] = i
        acc = acc * zeta
    e = 0
    cur = b
    for i in range(v):
        w = cur ** (ell ** (v - 1 - i))
        d = table[w.pl]
        e += d * ell**i
        cur = cur * z ** (-(d * ell**i) % (ell**v))
    assert b == z**e
    return e


# ---------------------------------------------------------------------------
# traces and Artin-Schreier equations


def trace_to(sub: ExtensionField, a: FieldElem) -> FieldElem:
    """Relative trace: sum of the Galois conjugates a^(q0^i) over [F:sub]."""
    F = a.field
    if sub == F:
        return a
    if sub.p != F.p or F.absolute_degree % sub.absolute_degree != 0:
        raise NoSubfieldRelation(f"{sub!r} is not a subfield of {F!r}")
    q0 = sub.order()
    e = F.absolute_degree // sub.absolute_degree
    s = F.zero()
    t = a
    for _ in range(e):
        s = s + t
        t = t**q0
    assert t == a, "Frobenius orbit did not close"
    return _coerce_down(s, sub)


def absolute_trace(a: FieldElem) -> int:
    """Trace down to the prime field, as an integer in [0, p)."""
    F = a.field
    p = F.p
    s = F.zero()
    t = a
    for _ in range(F.absolute_degree):
        s = s + t
        t = t**p
    flat = s.lex_key()
    assert all(c == 0 for c in flat[1:]), "trace not in the prime field"
    return flat[0]


def _coerce_down(s: FieldElem, sub: ExtensionField) -> FieldElem:
    F = s.field
    if sub == F:
        return s
    # tower: sub is the direct base field
    if isinstance(F, ExtensionField) and F.base_as_field() == sub:
        flat = s.pl
        if not all(F.base.is_zero_p(c) for c in flat[1:]):
            raise ValueError("element does not lie in the base field")
        return FieldElem(sub, flat[0])
    # prime subfield of an absolute field: constants
    if sub.rel_degree == 1 and F.is_absolute():
        flat = s.lex_key()
        if any(c != 0 for c in flat[1:]):
            raise ValueError("element does not lie in the prime field")
        return sub.elem(flat[0])
    # general absolute pair: match against the embedded copy (small subfields only)
    if sub.order() > 1 << 16:
        raise FieldTooLarge("coercion to large intermediate fields is not supported")
    emb = embed(sub, F)
    for c in sub.elements():
        if emb.apply(c) == s:
            return c
    raise ValueError("element does not lie in the subfield")


def solve_artin_schreier(c: FieldElem) -> list[FieldElem]:
    """All z in c's field with z^p - z = c; there are p of them or none.

    Solved as an F_p-linear system on flattened coordinates; the kernel of
    z -> z^p - z is exactly the prime field.
    """
    F = c.field
    p = F.p
    D = F.absolute_degree
    cols = []
    for i in range(D):
        flat = [0] * D
        flat[i] = 1
        e = FieldElem(F, F.unflatten(tuple(flat)))
        img = e**p - e
        cols.append(list(img.lex_key()))
    rhs = list(c.lex_key())
    sol = _solve_mod_p([[cols[j][i] for j in range(D)] for i in range(D)], rhs, p)
    if sol is None:
        return []
    z0 = FieldElem(F, F.unflatten(tuple(sol)))
    assert z0**p - z0 == c
    out = [z0 + F.elem(t) for t in range(p)]
    return sorted(out, key=lambda e: e.lex_key())


def _solve_mod_p(mat, rhs, p):
    """One solution of mat*x = rhs over GF(p), or None.  Deterministic
    Gauss-Jordan; free variables are set to zero."""
    m = [row[:] + [r] for row, r in zip(mat, rhs)]
    rows, cols = len(m), len(m[0]) - 1
    piv_col_of_row = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] % p != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        piv_col_of_row.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] % p != 0:
            return None
    x = [0] * cols
    for row, c in enumerate(piv_col_of_row):
        x[c] = m[row][cols] % p
    return x
