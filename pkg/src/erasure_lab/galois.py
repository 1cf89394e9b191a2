"""Arithmetic in GF(p) and GF(p^m), plus dense polynomials over those fields.

Elements are canonical integers.  A prime field GF(p) uses the residues
0..p-1.  An extension field GF(p^m) packs the coefficient vector of
1, alpha, ..., alpha^(m-1) in base p, so for p=2 the packing is the usual
bit representation.  Extension fields are backed by full exp/log tables and
are therefore limited to q = p^m <= 2**16.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = [
    "DEFAULT_MODULI",
    "Field",
    "FieldElement",
    "GF",
    "Poly",
    "cyclotomic_coset",
    "cyclotomic_cosets",
]

# Default modulus per (p, m), coefficients low degree first, leading 1 included.
# Every entry is primitive: x generates the multiplicative group.  Construction
# rebuilds the exp table and refuses any entry for which that fails, so a bad
# row here cannot survive the test suite.
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),                                       # x^2+x+1
    (2, 3): (1, 1, 0, 1),                                    # x^3+x+1
    (2, 4): (1, 1, 0, 0, 1),                                 # x^4+x+1
    (2, 5): (1, 0, 1, 0, 0, 1),                              # x^5+x^2+1
    (2, 6): (1, 1, 0, 0, 0, 0, 1),                           # x^6+x+1
    (2, 7): (1, 0, 0, 1, 0, 0, 0, 1),                        # x^7+x^3+1
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),                     # x^8+x^4+x^3+x^2+1
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),                  # x^9+x^4+1
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),              # x^10+x^3+1
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),           # x^11+x^2+1
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),        # x^12+x^6+x^4+x+1
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),     # x^13+x^4+x^3+x+1
    (2, 14): (1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),  # x^14+x^10+x^6+x+1
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    (3, 2): (2, 1, 1),                                       # x^2+x+2
    (3, 3): (1, 2, 0, 1),                                    # x^3+2x+1
    (3, 4): (2, 1, 0, 0, 1),                                 # x^4+x+2
    (3, 5): (1, 2, 0, 0, 0, 1),                              # x^5+2x+1
}

_MAX_TABLE_Q = 1 << 16


def _prime_factors(x: int) -> list[int]:
    out = []
    d = 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        out.append(x)
    return out


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """A finite field GF(p^m) operating on canonical integer elements.

    The integer-level methods (add, mul, inv, ...) are the hot path used by
    the decoders; ``element`` wraps a canonical integer in a FieldElement for
    operator syntax.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ValueError(f"field characteristic must be prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.q = p**m
        if m == 1:
            if modulus is not None:
                raise ValueError("prime fields take no modulus")
            self.modulus: tuple[int, ...] | None = None
            self.alpha = self._smallest_primitive_root()
            self._exp: list[int] | None = None
            self._log: list[int] | None = None
        else:
            if self.q > _MAX_TABLE_Q:
                raise ValueError(
                    f"GF({p}^{m}) exceeds the table limit q <= 2^16"
                )
            if modulus is None:
                try:
                    modulus = DEFAULT_MODULI[(p, m)]
                except KeyError:
                    raise ValueError(
                        f"no default modulus for GF({p}^{m}); pass one explicitly"
                    ) from None
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            self.modulus = modulus
            self.alpha = p  # the class of x
            self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _smallest_primitive_root(self) -> int:
        if self.p == 2:
            return 1
        phi = self.p - 1
        factors = _prime_factors(phi)
        for g in range(2, self.p):
            if all(pow(g, phi // f, self.p) != 1 for f in factors):
                return g
        raise AssertionError("no primitive root found")  # unreachable for prime p

    def _mul_by_x(self, v: int) -> int:
        # Multiply the packed coefficient vector by x and reduce by the modulus.
        p, m = self.p, self.m
        digits = self.digits(v)
        top = digits[m - 1]
        shifted = [0] + digits[:-1]
        if top:
            for i in range(m):
                shifted[i] = (shifted[i] - top * self.modulus[i]) % p
        return self.pack(shifted)

    def _build_tables(self) -> None:
        q = self.q
        exp = [0] * (q - 1)
        log = [-1] * q
        cur = 1
        for i in range(q - 1):
            if log[cur] != -1:
                raise ValueError(
                    f"modulus {self.modulus} is not primitive over GF({self.p})"
                )
            exp[i] = cur
            log[cur] = i
            cur = self._mul_by_x(cur)
        if cur != 1 or any(log[v] == -1 for v in range(1, q)):
            raise ValueError(
                f"modulus {self.modulus} is not primitive over GF({self.p})"
            )
        self._exp = exp
        self._log = log

    # -- canonical int <-> coefficient vector ---------------------------------

    def digits(self, v: int) -> list[int]:
        """Coefficient vector of v, low degree first, length m."""
        p = self.p
        out = [0] * self.m
        for i in range(self.m):
            v, out[i] = divmod(v, p) if False else (v // p, v % p)
        return out

    def pack(self, digits: Iterable[int]) -> int:
        v = 0
        for d in reversed(list(digits)):
            v = v * self.p + (d % self.p)
        return v

    # -- integer-level arithmetic ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da, db = self.digits(a), self.digits(b)
        return self.pack((x + y) % self.p for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.pack((-x) % self.p for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        if self.m == 1:
            return pow(a, e % (self.p - 1) if e >= 0 else e, self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def exp_alpha(self, e: int) -> int:
        """alpha**e as a canonical integer."""
        return self.pow(self.alpha, e)

    def log_alpha(self, a: int) -> int:
        """Discrete log base alpha; raises on zero."""
        if a == 0:
            raise ValueError("log of zero")
        if self.m == 1:
            # brute force is fine at prime-field sizes used here
            cur = 1
            for i in range(self.p - 1):
                if cur == a:
                    return i
                cur = (cur * self.alpha) % self.p
            raise AssertionError("element not generated by alpha")
        return self._log[a]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        la = self.log_alpha(a)
        from math import gcd

        return n // gcd(la, n)

    def element(self, v: int) -> "FieldElement":
        v = int(v)
        if not 0 <= v < self.q:
            raise ValueError(f"{v} is not a canonical element of GF({self.q})")
        return FieldElement(self, v)

    def elements(self) -> Iterable["FieldElement"]:
        return (FieldElement(self, v) for v in range(self.q))

    def in_prime_subfield(self, v: int) -> bool:
        return v < self.p

    # -- misc ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


_FIELD_CACHE: dict[tuple, Field] = {}


def GF(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """Make (or fetch from cache) the field GF(p^m)."""
    key = (p, m, tuple(modulus) if modulus is not None else None)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = Field(p, m, modulus)
    return _FIELD_CACHE[key]


class FieldElement:
    """A field element with operator syntax around a canonical integer."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements from different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.q if self.field.m == 1 else other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, v))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == (other % self.field.q if self.field.m == 1 else other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


class Poly:
    """Dense polynomial over a Field; coefficients low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def x_pow(cls, field: Field, e: int, c: int = 1) -> "Poly":
        return cls(field, [0] * e + [c])

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable[int]) -> "Poly":
        """Monic product of (x - r) over the given canonical-int roots."""
        out = cls.one(field)
        for r in roots:
            out = out * cls(field, (field.neg(int(r)), 1))
        return out

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "Poly") -> "Poly":
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(f, (f.add(self[i], other[i]) for i in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(f, (f.sub(self[i], other[i]) for i in range(n)))

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, (f.neg(c) for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        f = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Poly(f, out)

    def scale(self, c: int) -> "Poly":
        f = self.field
        return Poly(f, (f.mul(a, c) for a in self.coeffs))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = f.inv(other.coeffs[-1])
        quo = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = f.mul(c, lead_inv)
            quo[i - d] = q
            for j in range(d + 1):
                rem[i - d + j] = f.sub(rem[i - d + j], f.mul(q, other.coeffs[j]))
        return Poly(f, quo), Poly(f, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def eval(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((id(self.field), self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c if c != 1 else ''}x")
            else:
                terms.append(f"{c if c != 1 else ''}x^{i}")
        return "Poly(" + " + ".join(terms) + ")"


def cyclotomic_coset(n: int, q: int, leader: int) -> tuple[int, ...]:
    """The q-ary cyclotomic coset of leader modulo n, sorted ascending."""
    seen = set()
    cur = leader % n
    while cur not in seen:
        seen.add(cur)
        cur = (cur * q) % n
    return tuple(sorted(seen))


def cyclotomic_cosets(n: int, q: int) -> list[tuple[int, ...]]:
    """All q-ary cyclotomic cosets modulo n, ordered by smallest leader."""
    done: set[int] = set()
    out = []
    for leader in range(n):
        if leader in done:
            continue
        coset = cyclotomic_coset(n, q, leader)
        done.update(coset)
        out.append(coset)
    return out
