"""Exact arithmetic in F_q, q = p^m.

Elements are plain integers in [0, q): the base-p little-endian digits of an
encoding are the coefficients of a polynomial residue modulo an irreducible
monic modulus of degree m. Two elements are equal iff their encodings are
equal, so sets and dict keys work with no wrapper type.

Prime fields (m = 1) use direct modular arithmetic. Extension fields build
discrete exp/log tables over a multiplicative generator at construction,
which keeps mul/inv/pow at dictionary-lookup cost during the exhaustive
scans this package lives on.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .errors import (
    DegreeMismatchError,
    NotPrimeError,
    ReducibleModulusError,
)

Element = int


def is_prime(n: int) -> bool:
    """Trial division; fields here are desk scale."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _digits(value: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(value % p)
        value //= p
    return out


def _undigits(coeffs, p: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * p + (c % p)
    return value


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    # mod is monic
    a = list(a)
    d = len(mod) - 1
    while len(a) > d:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - d
            for i, c in enumerate(mod):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return _poly_trim(a)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        if b[-1] != 1:  # make monic so _poly_mod applies
            inv = pow(b[-1], p - 2, p)
            b = [(c * inv) % p for c in b]
        a, b = b, _poly_mod(a, b, p)
    return a


def _has_root(coeffs: list[int], p: int) -> bool:
    for t in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * t + c) % p
        if acc == 0:
            return True
    return False


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Monic modulus of degree <= 4: root check, plus a gcd with
    x^(p^2) - x for degree 4 (its irreducible factors have degree <= 2)."""
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    poly = list(coeffs)
    if _has_root(poly, p):
        return False
    if deg <= 3:
        return True
    # degree 4: exclude a split into two irreducible quadratics via
    # gcd(f, x^(p^2) - x), the product of all monic irreducibles of
    # degree dividing 2
    acc = [0, 1]
    for _ in range(2):  # x^(p^2) = (x^p)^p
        result = [1]
        base = list(acc)
        e = p
        while e:
            if e & 1:
                result = _poly_mod(_poly_mul(result, base, p), poly, p)
            base = _poly_mod(_poly_mul(base, base, p), poly, p)
            e >>= 1
        acc = result
    diff = list(acc)
    while len(diff) < 2:
        diff.append(0)
    diff[1] = (diff[1] - 1) % p
    diff = _poly_trim(diff)
    if not diff:
        return False  # f divides x^(p^2) - x, so it splits into quadratics
    g = _poly_gcd(poly, diff, p)
    return len(g) == 1  # nonzero constant


@dataclass(frozen=True)
class FieldSpec:
    """The ambient field F_q with a pinned modulus.

    Immutable and hashable on (p, m, modulus); safe to share across workers.
    All arithmetic methods are pure functions of their integer arguments.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    q: int = field(init=False, compare=False, repr=False)
    _exp: tuple[int, ...] = field(init=False, compare=False, repr=False)
    _log: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.m)
        if self.m > 1:
            exp, log = self._build_tables()
            object.__setattr__(self, "_exp", exp)
            object.__setattr__(self, "_log", log)
        else:
            object.__setattr__(self, "_exp", ())
            object.__setattr__(self, "_log", ())

    # -- construction helpers -------------------------------------------

    def _mul_raw(self, a: Element, b: Element) -> Element:
        p, m = self.p, self.m
        prod = _poly_mul(_digits(a, p, m), _digits(b, p, m), p)
        return _undigits(_poly_mod(prod, list(self.modulus), p), p)

    def _build_tables(self):
        q = self.p ** self.m
        order = q - 1
        for g in range(2, q):
            seen = 1
            acc = g
            while acc != 1:
                acc = self._mul_raw(acc, g)
                seen += 1
                if seen > order:
                    break
            if seen == order:
                exp = [1] * (2 * order)
                log = [0] * q
                acc = 1
                for i in range(order):
                    exp[i] = acc
                    exp[i + order] = acc
                    log[acc] = i
                    acc = self._mul_raw(acc, g)
                return tuple(exp), tuple(log)
        raise RuntimeError("no multiplicative generator found")  # unreachable

    # -- arithmetic ------------------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        out, mult = 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def neg(self, a: Element) -> Element:
        p = self.p
        if self.m == 1:
            return (-a) % p
        out, mult = 0, 1
        while a:
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def mul(self, a: Element, b: Element) -> Element:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: Element) -> Element:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.q)
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        order = self.q - 1
        return self._exp[(order - self._log[a]) % order]

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def pow(self, a: Element, e: int) -> Element:
        """a**e with 0**0 = 1."""
        if e < 0:
            raise ValueError("negative exponent; use inv")
        if e == 0:
            return 1
        if self.m == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0
        order = self.q - 1
        return self._exp[(self._log[a] * e) % order]

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"FieldSpec({field_text(self)!r})"


@functools.lru_cache(maxsize=None)
def _make_field_cached(p: int, m: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if m < 1:
        raise DegreeMismatchError(f"extension degree must be >= 1, got {m}")
    if m > 4:
        raise DegreeMismatchError(f"extension degree {m} unsupported (max 4)")
    if modulus is None:
        modulus = _default_modulus(p, m)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != m + 1:
            raise DegreeMismatchError(
                f"modulus has degree {len(modulus) - 1}, expected {m}")
        if modulus[-1] != 1:
            raise DegreeMismatchError("modulus must be monic")
        if m > 1 and not _is_irreducible(modulus, p):
            raise ReducibleModulusError(
                f"modulus {list(modulus)} is reducible over F_{p}")
    return FieldSpec(p, m, modulus)


def make_field(p: int, m: int = 1, modulus=None) -> FieldSpec:
    """Construct F_{p^m}. With modulus omitted and m > 1, the monic
    irreducible of degree m with the smallest encoding is selected, so the
    same (p, m) names the same field in every run."""
    return _make_field_cached(p, m, None if modulus is None else tuple(modulus))


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    for t in range(p ** m):
        cand = tuple(_digits(t, p, m)) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise RuntimeError("no irreducible modulus found")  # unreachable


def parse_field(text: str) -> FieldSpec:
    """Field text form: "p", "p^m", or "p^m/c0,c1,...,cm"."""
    body, _, mod_part = text.partition("/")
    base, _, exp = body.partition("^")
    try:
        p = int(base)
        m = int(exp) if exp else 1
    except ValueError:
        raise DegreeMismatchError(f"cannot parse field spec {text!r}") from None
    modulus = None
    if mod_part:
        try:
            modulus = tuple(int(c) for c in mod_part.split(","))
        except ValueError:
            raise DegreeMismatchError(f"cannot parse modulus in {text!r}") from None
    return make_field(p, m, modulus)


def field_text(F: FieldSpec) -> str:
    if F.m == 1:
        return str(F.p)
    return f"{F.p}^{F.m}/" + ",".join(str(c) for c in F.modulus)


# -- power-map structure --------------------------------------------------


@functools.lru_cache(maxsize=None)
def kth_power_image(F: FieldSpec, k: int) -> frozenset[Element]:
    """{a^k : a in F_q}. The nonzero part is the subgroup of index
    gcd(k, q-1) in F_q^*, hence has (q-1)/gcd(k, q-1) elements."""
    if k < 1:
        raise ValueError("k must be positive")
    return frozenset(F.pow(a, k) for a in F.elements())


@functools.lru_cache(maxsize=None)
def kth_root_map(F: FieldSpec, k: int) -> dict[Element, tuple[Element, ...]]:
    """value -> sorted tuple of its k-th roots (empty key absent)."""
    if k < 1:
        raise ValueError("k must be positive")
    fibers: dict[Element, list[Element]] = {}
    for a in F.elements():
        fibers.setdefault(F.pow(a, k), []).append(a)
    return {v: tuple(sorted(roots)) for v, roots in fibers.items()}


def kth_roots(F: FieldSpec, lam: Element, k: int) -> tuple[Element, ...]:
    """All a with a^k = lam, sorted by encoding; empty iff lam is not a
    k-th power. The canonical root choice elsewhere is the first entry."""
    return kth_root_map(F, k).get(lam, ())


def minus_one_is_kth_power(F: FieldSpec, k: int) -> bool:
    """Literal reading: does x^k = -1 have a solution? In characteristic 2
    this is trivially true since -1 = 1."""
    return F.neg(1) in kth_power_image(F, k)
