"""Brute-force ground truth at tiny scale.

Everything here is exhaustive and guarded: the k-th power image of a whole
matrix algebra, minimum summand counts by breadth-first sumset growth,
pairwise conjugacy testing over the full invertible-triangular group, and
machine checks of the negative claims (non-squares, non-conjugacy, the
p | k obstruction). Guards are hard errors; an oracle must never truncate
silently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EnumerationTooLargeError
from .fields import FieldSpec, minus_one_is_kth_power
from .power_sums import enum_guard
from .tri_matrix import (
    UTMatrix,
    elementary,
    jordan_block,
    junction_matrix,
    mat_mul,
    mat_pow,
    to_text,
    zero,
)

BN_GUARD = 10 ** 7


def matrix_encoding(A: UTMatrix) -> int:
    """Mixed-radix integer over the packed entries (exact set membership)."""
    code = 0
    for e in reversed(A.entries):
        code = code * A.field.q + e
    return code


def iter_matrices(F: FieldSpec, n: int):
    """All of T_n(F_q) in mixed-radix order."""
    width = n * (n + 1) // 2
    for entries in itertools.product(F.elements(), repeat=width):
        yield UTMatrix(F, n, entries)


def all_kth_powers(F: FieldSpec, n: int, k: int) -> dict[UTMatrix, UTMatrix]:
    """{A^k : A in T_n(F_q)} as a dict power -> first root in enumeration
    order (the keys are the image; roots witness membership)."""
    width = n * (n + 1) // 2
    enum_guard(F.q ** width)
    out: dict[UTMatrix, UTMatrix] = {}
    for A in iter_matrices(F, n):
        P = mat_pow(A, k)
        if P not in out:
            out[P] = A
    return out


def min_waring_number(F: FieldSpec, C: UTMatrix, k: int, cap: int
                      ) -> int | None:
    """Smallest r <= cap with C a sum of r k-th powers, else None (>cap).

    Breadth-first over sumset layers P^1 subset P^2 subset ... (0 = 0^k is
    a power, so the layers nest). Membership in the next layer is tested by
    subtracting single powers, so a layer is only materialized when the cap
    forces a deeper query."""
    powers = set(all_kth_powers(F, C.n, k))
    if C in powers:
        return 1
    prev = powers  # P^(r-1)
    for r in range(2, cap + 1):
        if any((C - P) in prev for P in powers):
            return r
        if r < cap:
            nxt = {S + P for S in prev for P in powers}
            if nxt == prev:
                return None  # closed under further sums; C unreachable
            prev = nxt
    return None


@dataclass(frozen=True)
class WaringReport:
    """Minimum summand counts over all of T_n(F_q), capped."""

    field: FieldSpec
    n: int
    k: int
    cap: int
    per_matrix_min: dict[UTMatrix, int | None]
    witnesses: dict[int, tuple[UTMatrix, tuple[UTMatrix, ...]]]

    @property
    def max_over_field(self) -> int | None:
        """Largest min count, or None if some matrix exceeded the cap."""
        vals = self.per_matrix_min.values()
        if any(v is None for v in vals):
            return None
        return max(vals)

    def histogram(self) -> dict[str, int]:
        hist: dict[str, int] = {}
        for v in self.per_matrix_min.values():
            key = str(v) if v is not None else f">{self.cap}"
            hist[key] = hist.get(key, 0) + 1
        return dict(sorted(hist.items()))

    def to_json(self) -> dict:
        return {
            "q": self.field.q,
            "n": self.n,
            "k": self.k,
            "cap": self.cap,
            "histogram": self.histogram(),
            "max": self.max_over_field,
        }

    def to_csv(self) -> str:
        lines = ["matrix,min_powers"]
        for M in sorted(self.per_matrix_min, key=matrix_encoding):
            v = self.per_matrix_min[M]
            lines.append(f"{to_text(M)},{v if v is not None else f'>{self.cap}'}")
        return "\n".join(lines) + "\n"


def waring_report(F: FieldSpec, n: int, k: int, cap: int = 4) -> WaringReport:
    """Min summand count for every matrix in T_n(F_q) at once (layered
    sumsets, one pass), with a first witness per observed count."""
    roots = all_kth_powers(F, n, k)
    powers = list(roots)
    per: dict[UTMatrix, int | None] = {M: None for M in iter_matrices(F, n)}
    parents: dict[UTMatrix, tuple[UTMatrix, ...]] = {}
    layer = set(powers)
    for P in powers:
        if per[P] is None:
            per[P] = 1
            parents[P] = (roots[P],)
    r = 1
    while r < cap and any(v is None for v in per.values()):
        r += 1
        nxt = set()
        for S in layer:
            for P in powers:
                T = S + P
                nxt.add(T)
                if per[T] is None:
                    per[T] = r
                    parents[T] = parents[S] + (roots[P],)
        if nxt == layer:
            break
        layer = nxt
    witnesses: dict[int, tuple[UTMatrix, tuple[UTMatrix, ...]]] = {}
    for M in sorted(per, key=matrix_encoding):
        v = per[M]
        if v is not None and v not in witnesses:
            witnesses[v] = (M, parents[M])
    return WaringReport(F, n, k, cap, per, witnesses)


def bn_size(F: FieldSpec, n: int) -> int:
    return (F.q - 1) ** n * F.q ** (n * (n - 1) // 2)


def iter_bn(F: FieldSpec, n: int):
    """All invertible upper-triangular matrices, deterministic order."""
    nonzero = range(1, F.q)
    strict = n * (n - 1) // 2
    for diag_vals in itertools.product(nonzero, repeat=n):
        for uppers in itertools.product(F.elements(), repeat=strict):
            entries = []
            it = iter(uppers)
            for i in range(1, n + 1):
                entries.append(diag_vals[i - 1])
                for _ in range(i + 1, n + 1):
                    entries.append(next(it))
            yield UTMatrix(F, n, tuple(entries))


def bn_conjugate(F: FieldSpec, A: UTMatrix, B: UTMatrix) -> UTMatrix | None:
    """First P (in enumeration order) with P^-1 A P = B, or None. The scan
    checks A P = P B, so no inversions are needed."""
    enum_guard(bn_size(F, A.n), BN_GUARD)
    for P in iter_bn(F, A.n):
        if mat_mul(A, P) == mat_mul(P, B):
            return P
    return None


@dataclass(frozen=True)
class CheckResult:
    name: str
    applicable: bool
    ok: bool | None
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "applicable": self.applicable,
                "ok": self.ok, "detail": self.detail}


def negative_checks(F: FieldSpec, k: int) -> tuple[CheckResult, ...]:
    """Machine checks of the negative claims, where hypotheses apply:

    (a) the (2,2) junction matrix (and E_12 + E_34) is not a k-th power in
        T_4 for k = 2;
    (b) nilpotent Jordan blocks are not sums of two k-th powers when -1 is
        not a k-th power (n = 2, 3);
    (c) when p | k, beta^k(I + E_12 scaled) has no k-th root in T_2.
    """
    results = []

    if k == 2:
        try:
            powers = set(all_kth_powers(F, 4, k))
        except EnumerationTooLargeError:
            results.append(CheckResult(
                "junction_(2,2)_not_square", False, None,
                f"T_4(F_{F.q}) too large to enumerate"))
        else:
            j22 = junction_matrix(F, (2, 2))
            split = elementary(F, 4, 1, 2) + elementary(F, 4, 3, 4)
            ok = j22 not in powers and split not in powers
            results.append(CheckResult(
                "junction_(2,2)_not_square", True, ok,
                f"E_23 and E_12+E_34 outside the square image of T_4(F_{F.q})"))
    else:
        results.append(CheckResult(
            "junction_(2,2)_not_square", False, None, "stated for k = 2"))

    if not minus_one_is_kth_power(F, k):
        details = []
        ok = True
        for n in (2, 3):
            J = jordan_block(F, 0, n)
            m = min_waring_number(F, J, k, cap=2)
            ok = ok and m is None
            details.append(f"n={n}: min > 2")
        results.append(CheckResult(
            "jordan_not_two_powers", True, ok, "; ".join(details)))
    else:
        results.append(CheckResult(
            "jordan_not_two_powers", False, None,
            f"-1 is a {k}-th power in F_{F.q}"))

    if k % F.p == 0 and k >= 2:
        powers2 = set(all_kth_powers(F, 2, k))
        ok = True
        for beta in range(1, F.q):
            for alpha in range(1, F.q):
                C = zero(F, 2)
                bk = F.pow(beta, k)
                C = C.with_entry(1, 1, bk).with_entry(2, 2, bk)
                C = C.with_entry(1, 2, alpha)
                if C in powers2:
                    ok = False
        results.append(CheckResult(
            "scalar_plus_nilpotent_not_power", True, ok,
            f"[[b^k, a],[0, b^k]] with a, b nonzero never a {k}-th power"))
    else:
        results.append(CheckResult(
            "scalar_plus_nilpotent_not_power", False, None,
            f"needs p | k; p = {F.p}, k = {k}"))

    return tuple(results)
