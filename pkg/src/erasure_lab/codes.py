"""Cyclic code families and their parity check matrices.

A code is described by a splitting field F = GF(q^m), an element omega of
multiplicative order n, and the set of exponents e for which omega^e is a
zero of the generator polynomial.  Binary and ternary families coerce the
generator coefficients back into the symbol field; Reed-Solomon and LRC
codes have F equal to the symbol field itself.

The extended binary Golay code is handled as an extension flag: coordinate
n-1 is the overall parity position and stays fixed under cyclic shifts of
the remaining coordinates.
"""

from __future__ import annotations

import hashlib
import importlib.resources
import random
from typing import Iterable, Iterator, Sequence

from . import _linalg
from .galois import GF, Field, Poly, cyclotomic_coset

__all__ = [
    "CyclicCode",
    "ParityCheckMatrix",
    "build_code",
    "extend_code",
    "systematic_pcm",
    "parse_code_spec",
    "load_fixture_pcm",
    "fixture_path",
    "fixture_sha256",
]


def _splitting_degree(n: int, p: int) -> int:
    """Smallest m with n dividing p^m - 1."""
    m, cur = 1, p % n
    while cur != 1:
        cur = (cur * p) % n
        m += 1
        if m > 32:
            raise ValueError(f"no reasonable splitting field for n={n}, p={p}")
    return m


class CyclicCode:
    """An (n, k) cyclic code over GF(q), optionally parity-extended."""

    def __init__(
        self,
        family: str,
        n: int,
        field: Field,
        splitting_field: Field,
        omega: int,
        zero_exponents: Sequence[int],
        d: int,
        extended: bool = False,
        base: "CyclicCode | None" = None,
        dual_locality: int | None = None,
        g: Poly | None = None,
    ):
        self.family = family
        self.n = n
        self.field = field
        self.splitting_field = splitting_field
        self.omega = omega
        self.d = d
        self.extended = extended
        self.base = base
        self.dual_locality = dual_locality
        if extended:
            if base is None or g is None:
                raise ValueError("extended code needs its base code and generator")
            self.zero_exponents = tuple(zero_exponents)
            self.g = g
            self.h = base.h
            self.k = base.k
            return
        self.zero_exponents = tuple(sorted({e % n for e in zero_exponents}))
        self.g = g if g is not None else self._generator()
        xn1 = Poly(field, [field.neg(1)] + [0] * (n - 1) + [1])
        h, rem = divmod(xn1, self.g)
        if not rem.is_zero():
            raise AssertionError("generator does not divide x^n - 1")
        self.h = h
        self.k = n - self.g.degree

    def _generator(self) -> Poly:
        fs = self.splitting_field
        roots = [fs.pow(self.omega, e) for e in self.zero_exponents]
        g_ext = Poly.from_roots(fs, roots)
        if fs == self.field:
            return g_ext
        # coerce into the symbol field: every coefficient must lie in the
        # prime subfield, or the zero set was not closed under conjugation
        for c in g_ext.coeffs:
            if not fs.in_prime_subfield(c):
                raise ValueError(
                    f"zero set {self.zero_exponents} is not conjugation-closed over GF({self.field.q})"
                )
        return Poly(self.field, g_ext.coeffs)

    # -- coordinates and shifting ---------------------------------------------

    @property
    def rotation_period(self) -> int:
        """Number of coordinates moved by a cyclic shift (n, or n-1 if extended)."""
        return self.n - 1 if self.extended else self.n

    def shift_word(self, word: Sequence, t: int) -> list:
        """Right cyclic shift by t over the rotation span; fixed tail untouched."""
        m = self.rotation_period
        t %= m
        head = list(word[:m])
        shifted = head[-t:] + head[:-t] if t else head
        return shifted + list(word[m:])

    def rotate_mask(self, mask: int, t: int) -> int:
        """Same shift as shift_word, acting on a bit mask of erased positions."""
        m = self.rotation_period
        t %= m
        if t == 0:
            return mask
        low = mask & ((1 << m) - 1)
        rot = ((low << t) | (low >> (m - t))) & ((1 << m) - 1)
        return rot | (mask & ~((1 << m) - 1))

    # -- codewords ---------------------------------------------------------------

    def encode(self, message: Sequence[int]) -> tuple[int, ...]:
        """Non-systematic encoding m(x) g(x), padded to length n."""
        if len(message) != self.k:
            raise ValueError(f"message length must be k={self.k}")
        if self.extended:
            base_word = self.base.encode(message)
            f = self.field
            parity = 0
            for v in base_word:
                parity = f.add(parity, v)
            return base_word + (f.neg(parity),)
        c = Poly(self.field, message) * self.g
        out = list(c.coeffs) + [0] * (self.n - len(c.coeffs))
        return tuple(out)

    def contains(self, word: Sequence[int]) -> bool:
        if self.extended:
            f = self.field
            parity = 0
            for v in word:
                parity = f.add(parity, v)
            return parity == 0 and self.base.contains(word[: self.n - 1])
        rem = Poly(self.field, word) % self.g
        return rem.is_zero()

    def codewords(self, limit: int = 1 << 21) -> Iterator[tuple[int, ...]]:
        """All codewords; guarded against absurd enumeration sizes."""
        total = self.field.q**self.k
        if total > limit:
            raise ValueError(f"{total} codewords exceed the enumeration limit")
        q, k = self.field.q, self.k
        msg = [0] * k
        for idx in range(total):
            v = idx
            for i in range(k):
                msg[i] = v % q
                v //= q
            yield self.encode(msg)

    def random_codeword(self, rng: random.Random) -> tuple[int, ...]:
        msg = [rng.randrange(self.field.q) for _ in range(self.k)]
        return self.encode(msg)

    def __repr__(self) -> str:
        return f"CyclicCode({self.family}, n={self.n}, k={self.k}, q={self.field.q})"


class ParityCheckMatrix:
    """A parity check matrix with canonical-int entries over code.field."""

    def __init__(
        self,
        rows: Iterable[Sequence[int]],
        field: Field,
        code: CyclicCode | None = None,
        label: str = "",
    ):
        self.rows = tuple(tuple(int(v) for v in r) for r in rows)
        if not self.rows:
            raise ValueError("empty matrix")
        n = len(self.rows[0])
        if any(len(r) != n for r in self.rows):
            raise ValueError("ragged rows")
        self.field = field
        self.code = code
        self.label = label
        self._supports: tuple[tuple[int, ...], ...] | None = None
        self._col_masks: list[int] | None = None

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def row_supports(self) -> tuple[tuple[int, ...], ...]:
        if self._supports is None:
            self._supports = tuple(
                tuple(j for j, v in enumerate(r) if v) for r in self.rows
            )
        return self._supports

    def support_masks(self) -> list[int]:
        out = []
        for sup in self.row_supports():
            m = 0
            for j in sup:
                m |= 1 << j
            out.append(m)
        return out

    def binary_column_masks(self) -> list[int]:
        """Column j packed as an integer over rows; GF(2) rank kernel input."""
        if self._col_masks is None:
            cols = []
            for j in range(self.n):
                m = 0
                for i, r in enumerate(self.rows):
                    if r[j]:
                        m |= 1 << i
                cols.append(m)
            self._col_masks = cols
        return self._col_masks

    def syndrome(self, word: Sequence[int]) -> list[int]:
        f = self.field
        out = []
        for sup, row in zip(self.row_supports(), self.rows):
            acc = 0
            for j in sup:
                acc = f.add(acc, f.mul(row[j], word[j]))
            out.append(acc)
        return out

    def annihilates_word(self, word: Sequence[int]) -> bool:
        return not any(self.syndrome(word))

    def annihilates_code(self) -> bool:
        """Exact membership check: annihilating a basis annihilates the code."""
        if self.code is None:
            raise ValueError("no code attached")
        code = self.code
        k = code.k
        for i in range(k):
            msg = [0] * k
            msg[i] = 1
            if not self.annihilates_word(code.encode(msg)):
                return False
        return True

    def rank(self) -> int:
        return _linalg.rank(self.field, self.rows)

    def attach(self, code: CyclicCode) -> "ParityCheckMatrix":
        if code.n != self.n or code.field != self.field:
            raise ValueError("code does not match matrix dimensions or field")
        out = ParityCheckMatrix(self.rows, self.field, code, self.label)
        if not out.annihilates_code():
            raise ValueError("matrix does not annihilate the code")
        return out

    # -- text format: first line "n k q rows", then one row per line -----------

    def to_text(self) -> str:
        k = self.code.k if self.code is not None else self.n - self.rank()
        head = f"{self.n} {k} {self.field.q} {self.num_rows}"
        body = "\n".join(" ".join(str(v) for v in r) for r in self.rows)
        return head + "\n" + body + "\n"

    @classmethod
    def from_text(cls, text: str, label: str = "") -> "ParityCheckMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n, k, q, nrows = (int(t) for t in lines[0].split())
        rows = [[int(t) for t in ln.split()] for ln in lines[1 : 1 + nrows]]
        if len(rows) != nrows or any(len(r) != n for r in rows):
            raise ValueError("matrix body does not match header")
        field = _field_for_q(q)
        return cls(rows, field, None, label)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ParityCheckMatrix)
            and self.rows == other.rows
            and self.field == other.field
        )

    def __hash__(self) -> int:
        return hash((self.rows, id(self.field)))

    def __repr__(self) -> str:
        tag = f" {self.label!r}" if self.label else ""
        return f"ParityCheckMatrix({self.num_rows}x{self.n} over {self.field!r}{tag})"


def _field_for_q(q: int) -> Field:
    """Field with q elements under the default modulus representation."""
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            qq = q
            while qq % p == 0:
                qq //= p
                m += 1
            if qq != 1:
                raise ValueError(f"{q} is not a prime power")
            return GF(p) if m == 1 else GF(p, m)
    raise ValueError(f"bad field size {q}")


# -- family constructors --------------------------------------------------------


def _bch_like(family: str, n: int, q: int, leaders: Iterable[int], d: int) -> CyclicCode:
    field = GF(q)
    m = _splitting_degree(n, q)
    fs = GF(q, m) if m > 1 else field
    omega = fs.exp_alpha((fs.q - 1) // n)
    zeros: set[int] = set()
    for leader in leaders:
        zeros.update(cyclotomic_coset(n, q, leader))
    return CyclicCode(family, n, field, fs, omega, sorted(zeros), d)


def _rs(n: int, k: int, q: int, root: int) -> CyclicCode:
    field = _field_for_q(q)
    if n != field.element_order(root):
        raise ValueError(f"root {root} does not have order {n} in GF({q})")
    # zeros root^0 .. root^(n-k-1); expressed as exponents of omega = root
    return CyclicCode("rs", n, field, field, root, range(n - k), n - k + 1)


def _lrc(n: int, k: int, dual_locality: int) -> CyclicCode:
    dl = dual_locality
    if n % dl != 0 or k % (dl - 1) != 0:
        raise ValueError("need dual_locality | n and (dual_locality - 1) | k")
    field = _field_for_q(n + 1)
    omega = field.exp_alpha((field.q - 1) // n)
    locality = set(range(0, n, dl))
    consecutive = set(range(0, n - k * dl // (dl - 1) + 1))
    zeros = sorted(locality | consecutive)
    if len(zeros) != n - k:
        raise ValueError(f"LRC zero set has size {len(zeros)}, expected {n - k}")
    d = n - k - -(-k // (dl - 1)) + 2  # optimal cyclic LRC design distance
    return CyclicCode("lrc", n, field, field, omega, zeros, d, dual_locality=dl)


# The (23,12) Golay generator is one of the two degree-11 factors of
# (x^23-1)/(x-1); the coset below picks the factor whose shipped modified
# matrix fixture annihilates the code (checked in tests).  Same story for
# the ternary (11,6) factor pair.
_GOLAY23_COSET_LEADER = 5
_TGOLAY11_COSET_LEADER = 1


def build_code(family: str, **params) -> CyclicCode:
    """Build a registered code family.

    Families: hamming(m), golay23, egolay24, tgolay11, bch(n, zeros=...)
    or bch(n, designed_distance=...), rs(n, k, q, root), lrc(n, k, dual_locality).
    """
    family = family.lower()
    if family == "hamming":
        m = int(params["m"])
        n = (1 << m) - 1
        return _bch_like("hamming", n, 2, [1], 3)
    if family == "golay23":
        return _bch_like("golay23", 23, 2, [_GOLAY23_COSET_LEADER], 7)
    if family == "egolay24":
        return extend_code(build_code("golay23"))
    if family == "tgolay11":
        return _bch_like("tgolay11", 11, 3, [_TGOLAY11_COSET_LEADER], 5)
    if family == "bch":
        n = int(params["n"])
        if "zeros" in params:
            leaders = [int(z) for z in params["zeros"]]
            d = int(params.get("d", 0))
            if not d:
                d = _bch_designed_distance(n, 2, leaders)
            return _bch_like("bch", n, 2, leaders, d)
        delta = int(params["designed_distance"])
        leaders = list(range(1, delta))
        return _bch_like("bch", n, 2, leaders, delta)
    if family == "rs":
        return _rs(int(params["n"]), int(params["k"]), int(params["q"]), int(params["root"]))
    if family == "lrc":
        return _lrc(int(params["n"]), int(params["k"]), int(params["dual_locality"]))
    raise ValueError(f"unknown code family {family!r}")


def _bch_designed_distance(n: int, q: int, leaders: Iterable[int]) -> int:
    zeros: set[int] = set()
    for leader in leaders:
        zeros.update(cyclotomic_coset(n, q, leader))
    best = 2
    for start in range(n):
        run = 0
        while (start + run) % n in zeros and run < n:
            run += 1
        best = max(best, run + 1)
    return best


def extend_code(code: CyclicCode) -> CyclicCode:
    """Append an overall parity coordinate that cyclic shifts leave fixed."""
    if code.extended:
        raise ValueError("already extended")
    d = code.d + 1 if (code.field.p == 2 and code.d % 2 == 1) else code.d
    return CyclicCode(
        "e" + code.family,
        code.n + 1,
        code.field,
        code.splitting_field,
        code.omega,
        code.zero_exponents,
        d,
        extended=True,
        base=code,
        g=code.g,
    )


def parse_code_spec(spec: str) -> CyclicCode:
    """Parse the CLI code mini-language.

    Examples: golay23, egolay24, tgolay11, rs8, mds15,
    rs:8,4,17,2, bch:31,zeros=1+3, bch:63,delta=21, lrc:15,8,dl=5, hamming:4.
    """
    spec = spec.strip().lower()
    aliases = {
        "rs8": "rs:8,4,17,2",
        "mds15": "rs:15,8,16,2",
        "golay23": "golay23",
        "egolay24": "egolay24",
        "tgolay11": "tgolay11",
    }
    spec = aliases.get(spec, spec)
    if spec in ("golay23", "egolay24", "tgolay11"):
        return build_code(spec)
    if ":" not in spec:
        raise ValueError(f"unrecognized code spec {spec!r}")
    head, rest = spec.split(":", 1)
    parts = [p for p in rest.split(",") if p]
    kv = {}
    pos = []
    for p in parts:
        if "=" in p:
            key, val = p.split("=", 1)
            kv[key] = val
        else:
            pos.append(p)
    if head == "rs":
        n, k, q, root = (int(x) for x in pos)
        return build_code("rs", n=n, k=k, q=q, root=root)
    if head == "bch":
        n = int(pos[0])
        if "zeros" in kv:
            leaders = [int(z) for z in kv["zeros"].split("+")]
            return build_code("bch", n=n, zeros=leaders)
        if "delta" in kv:
            return build_code("bch", n=n, designed_distance=int(kv["delta"]))
        raise ValueError("bch spec needs zeros= or delta=")
    if head == "lrc":
        n, k = int(pos[0]), int(pos[1])
        return build_code("lrc", n=n, k=k, dual_locality=int(kv["dl"]))
    if head == "hamming":
        return build_code("hamming", m=int(pos[0]))
    raise ValueError(f"unrecognized code spec {spec!r}")


def systematic_pcm(code: CyclicCode) -> ParityCheckMatrix:
    """The systematic parity check matrix [I | P].

    Built from the circulant rows of the check polynomial and reduced so the
    leading (n-k) columns become the identity; for an extended code the
    overall parity row joins the stack before reduction.
    """
    if code.extended:
        base = code.base
        inner = systematic_pcm(base)
        rows = [list(r) + [0] for r in inner.rows]
        rows.append([1] * code.n)
        red = _linalg.rref_at_columns(code.field, rows, range(code.n - code.k))
        return ParityCheckMatrix(red, code.field, code, "sys")
    h = code.h.coeffs
    k, n = code.k, code.n
    rows = []
    for i in range(n - k):
        row = [0] * n
        for j in range(k + 1):
            row[i + j] = h[k - j]
        rows.append(row)
    red = _linalg.rref_at_columns(code.field, rows, range(n - k))
    return ParityCheckMatrix(red, code.field, code, "sys")


# -- shipped fixtures ------------------------------------------------------------


def fixture_path(name: str):
    """Path to a shipped fixture file (matrices, masks, tables)."""
    return importlib.resources.files("erasure_lab").joinpath("fixtures", name)


def fixture_sha256(name: str) -> str:
    data = fixture_path(name).read_bytes()
    return hashlib.sha256(data).hexdigest()


def load_fixture_pcm(name: str, code: CyclicCode | None = None) -> ParityCheckMatrix:
    """Load a fixture matrix; attaching a code verifies annihilation exactly."""
    text = fixture_path(name).read_text()
    pcm = ParityCheckMatrix.from_text(text, label=name.removesuffix(".txt"))
    if code is not None:
        pcm = pcm.attach(code)
    return pcm
