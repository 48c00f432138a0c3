"""Writing C in T_n(F_q) as a sum of two or three k-th powers.

Two powers (odd characteristic, -1 a k-th power in the sufficiency regime):
group the diagonal by eigenvalue, pick per-position solutions of
x^k + y^k = c_ii with all x-powers and all y-powers pairwise distinct, put
the strict upper part of C on the x-side and extract its root through the
distinct-diagonal back-substitution; the y-side is diagonal.

Three powers: shift each eigenvalue by a k-th power z^k so the two-power
machinery runs on nonzero, pairwise distinct targets. Small fields can run
out of solution classes (the theorem only promises q > 4 n^2 k^16); the
shift is then retried around the shortage, and as a last resort a direct
per-position search picks root elements a_i with c_ii - a_i^k a sum of two
k-th powers, which covers every reachable case at desk scale.

Failure is typed, never silent, and never a proof that no decomposition
exists.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from .errors import (
    EvenCharacteristicError,
    InsufficientClassesError,
    NoAdmissibleShiftError,
    PreconditionViolatedError,
)
from .fields import Element, FieldSpec, kth_roots
from .power_sums import (
    AssignmentEntry,
    PairAssignment,
    classified,
    power_diff_quotient,
    select_system_pairs,
    shift_to_two_variable,
)
from .tri_matrix import (
    UTMatrix,
    backsub_root,
    diag,
    kth_root_distinct_diag,
    kth_root_sparse,
    mat_pow,
    to_text,
    zero,
)

STRUCTURED_MAX_N = 8
STRUCTURED_MAX_ENTRIES = 24
FALLBACK_MAX_SPACE = 10 ** 6


@dataclass(frozen=True)
class StructuredPlan:
    """A two-coloring of the diagonal plus an ownership split of the
    off-diagonal entries between the two summands."""

    coloring: tuple[int, ...]
    owned_a: tuple[tuple[int, int], ...]
    owned_b: tuple[tuple[int, int], ...]
    pairs: tuple[tuple[Element, Element], ...]


@dataclass(frozen=True)
class DecompositionResult:
    parts: tuple[UTMatrix, ...]
    k: int
    target: UTMatrix
    assignment: PairAssignment | None
    verified: bool
    plan: StructuredPlan | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "target": to_text(self.target),
            "k": self.k,
            "parts": [to_text(p) for p in self.parts],
            "assignment": [e.as_row() for e in self.assignment.entries]
            if self.assignment else [],
            "verified": self.verified,
        }


@dataclass(frozen=True)
class Obstruction:
    """Exhaustion certificate: no structured plan works for this target.

    refuted_colorings lists every diagonal pattern ruled out (improper
    colorings and proper ones with no legal entry split)."""

    target: UTMatrix
    k: int
    explored: int
    refuted_colorings: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "target": to_text(self.target),
            "k": self.k,
            "obstruction": True,
            "explored": self.explored,
            "refuted_colorings": [list(c) for c in self.refuted_colorings],
        }


def verify_decomposition(C: UTMatrix, parts, k: int) -> bool:
    """Does the sum of the k-th powers of the parts equal C exactly?"""
    total = zero(C.field, C.n)
    for part in parts:
        total = total + mat_pow(part, k)
    return total == C


def _require_odd(F: FieldSpec) -> None:
    if F.p == 2:
        raise EvenCharacteristicError(
            "decompositions require odd characteristic")


def _eigen_demands(C: UTMatrix) -> list[tuple[Element, int]]:
    counts: dict[Element, int] = {}
    for c in C.diagonal():
        counts[c] = counts.get(c, 0) + 1
    return sorted(counts.items())


def _positional_entries(C: UTMatrix, by_lam: dict[Element, list[AssignmentEntry]]
                        ) -> list[AssignmentEntry]:
    queues = {lam: list(entries) for lam, entries in by_lam.items()}
    return [queues[c].pop(0) for c in C.diagonal()]


def _min_root(F: FieldSpec, value: Element, k: int) -> Element:
    return kth_roots(F, value, k)[0]


def _strict_upper_on(C: UTMatrix, base: UTMatrix) -> UTMatrix:
    for i, j in C.nonzero_strict_positions():
        base = base.with_entry(i, j, C.get(i, j))
    return base


def decompose_two(C: UTMatrix, k: int) -> DecompositionResult:
    """C = A^k + B^k with A's diagonal k-th powers pairwise distinct and B
    diagonal. One code path covers the single-eigenvalue, all-distinct and
    mixed cases (they are specializations of the same demand system)."""
    F = C.field
    _require_odd(F)
    demands = _eigen_demands(C)
    assignment = select_system_pairs(F, demands, k)
    by_lam: dict[Element, list[AssignmentEntry]] = {}
    for e in assignment.entries:
        by_lam.setdefault(e.lam, []).append(e)
    entries = _positional_entries(C, by_lam)

    A0 = _strict_upper_on(C, diag(F, [F.pow(e.x, k) for e in entries]))
    A = kth_root_distinct_diag(A0, k)
    B = diag(F, [_min_root(F, F.pow(e.y, k), k) for e in entries])
    verified = verify_decomposition(C, (A, B), k)
    assert verified, "two-power construction failed verification"
    return DecompositionResult((A, B), k, C,
                               PairAssignment(tuple(entries)), verified)


def _two_witness_map(F: FieldSpec, k: int) -> dict[Element, tuple[Element, Element]]:
    return _two_witness_map_cached(F, k)


@functools.lru_cache(maxsize=None)
def _two_witness_map_cached(F: FieldSpec, k: int):
    """value -> lex-min (y, z) with y^k + z^k = value."""
    out: dict[Element, tuple[Element, Element]] = {}
    for y in F.elements():
        yk = F.pow(y, k)
        for z in F.elements():
            v = F.add(yk, F.pow(z, k))
            if v not in out:
                out[v] = (y, z)
    return out


def _three_by_shifts(C: UTMatrix, k: int) -> DecompositionResult:
    """The shift route: per eigenvalue pick z with lam' = lam - z^k nonzero,
    all lam' pairwise distinct, then solve the two-power demand system on
    the shifted targets. Shifts are retried with failing targets forbidden
    until the system assigns or the shift space is exhausted."""
    F = C.field
    demands = _eigen_demands(C)
    # nonzero eigenvalues first so their preferred z = 0 shift is never
    # stolen by the zero eigenvalue's forced nonzero shift
    eig_order = sorted((lam for lam, _ in demands if lam != 0))
    if any(lam == 0 for lam, _ in demands):
        eig_order.append(0)
    mult = dict(demands)
    banned: dict[Element, set[Element]] = {lam: set() for lam in eig_order}

    max_rounds = F.q * len(eig_order) + 1
    for _ in range(max_rounds):
        shifts: dict[Element, tuple[Element, Element]] = {}
        taken: set[Element] = set()
        for lam in eig_order:
            z, shifted = shift_to_two_variable(F, lam, k, taken | banned[lam])
            shifts[lam] = (z, shifted)
            taken.add(shifted)
        shifted_demands = [(shifts[lam][1], mult[lam]) for lam in eig_order]
        source = {shifts[lam][1]: lam for lam in eig_order}
        try:
            assignment = select_system_pairs(F, shifted_demands, k)
        except InsufficientClassesError as err:
            if err.lam is None or err.lam not in source:
                raise
            banned[source[err.lam]].add(err.lam)
            continue
        by_shifted: dict[Element, list[AssignmentEntry]] = {}
        for e in assignment.entries:
            by_shifted.setdefault(e.lam, []).append(e)
        by_lam = {lam: by_shifted[shifts[lam][1]] for lam in eig_order}
        raw = _positional_entries(C, by_lam)
        entries = [AssignmentEntry(C.get(i + 1, i + 1), e.x, e.y,
                                   shifts[C.get(i + 1, i + 1)][0])
                   for i, e in enumerate(raw)]
        A0 = _strict_upper_on(C, diag(F, [F.pow(e.x, k) for e in entries]))
        A = kth_root_distinct_diag(A0, k)
        B = diag(F, [_min_root(F, F.pow(e.y, k), k) for e in entries])
        D = diag(F, [e.z for e in entries])
        verified = verify_decomposition(C, (A, B, D), k)
        assert verified, "three-power construction failed verification"
        return DecompositionResult((A, B, D), k, C,
                                   PairAssignment(tuple(entries)), verified)
    raise NoAdmissibleShiftError("shift retries exhausted")  # unreachable


def _three_by_position_search(C: UTMatrix, k: int) -> DecompositionResult:
    """Desk-scale fallback: choose per-position root elements a_i with
    c_ii - a_i^k a sum of two k-th powers and pdq(a_i, a_j) nonzero for all
    pairs, so the back-substitution root always exists; remaining budget
    per position goes to diagonal parts from lex-min witnesses."""
    F, n = C.field, C.n
    if F.q ** n > FALLBACK_MAX_SPACE:
        raise InsufficientClassesError(
            f"shift route failed and fallback space q^n = {F.q ** n} "
            f"exceeds {FALLBACK_MAX_SPACE}")
    witness = _two_witness_map(F, k)
    d = C.diagonal()

    chosen: list[Element] = []

    def feasible(a: Element, i: int) -> bool:
        if F.sub(d[i], F.pow(a, k)) not in witness:
            return False
        return all(power_diff_quotient(F, b, a, k) != 0 for b in chosen)

    def dfs(i: int) -> bool:
        if i == n:
            return True
        for a in F.elements():
            if feasible(a, i):
                chosen.append(a)
                if dfs(i + 1):
                    return True
                chosen.pop()
        return False

    if not dfs(0):
        raise InsufficientClassesError(
            f"no three-power assignment found over F_{F.q} (k={k}); "
            f"sufficient only for q > 4 n^2 k^16")
    A0 = _strict_upper_on(C, diag(F, [F.pow(a, k) for a in chosen]))
    A = backsub_root(A0, k, chosen)
    pairs = [witness[F.sub(d[i], F.pow(chosen[i], k))] for i in range(n)]
    B = diag(F, [y for y, _ in pairs])
    D = diag(F, [z for _, z in pairs])
    entries = tuple(AssignmentEntry(d[i], chosen[i], pairs[i][0], pairs[i][1])
                    for i in range(n))
    verified = verify_decomposition(C, (A, B, D), k)
    assert verified, "fallback construction failed verification"
    return DecompositionResult((A, B, D), k, C, PairAssignment(entries),
                               verified)


def decompose_three(C: UTMatrix, k: int) -> DecompositionResult:
    """C = A^k + B^k + D^k with B, D diagonal."""
    _require_odd(C.field)
    try:
        return _three_by_shifts(C, k)
    except (InsufficientClassesError, NoAdmissibleShiftError):
        return _three_by_position_search(C, k)


def decompose_structured(C: UTMatrix, k: int) -> DecompositionResult | Obstruction:
    """Two-power decomposition of a constant-diagonal matrix by exhaustive
    search over diagonal two-colorings and entry ownership splits, both
    sides rooted through the sparse (no-chain) route.

    A successful plan needs the entry graph properly 2-colored (every
    nonzero entry joins the two color classes, on both sides) and each
    side's owned entries chain-free. On exhaustion an Obstruction is
    returned carrying every refuted diagonal pattern.
    """
    F, n = C.field, C.n
    _require_odd(F)
    d = C.diagonal()
    if len(set(d)) != 1:
        raise PreconditionViolatedError(
            f"structured search needs a constant diagonal, got {d}")
    entries = C.nonzero_strict_positions()
    if n > STRUCTURED_MAX_N or len(entries) > STRUCTURED_MAX_ENTRIES:
        raise PreconditionViolatedError(
            f"structured search capped at n <= {STRUCTURED_MAX_N} and "
            f"{STRUCTURED_MAX_ENTRIES} entries")
    lam = d[0]
    cl = classified(F, lam, k)

    if not entries:
        # no constraints: one solution covers every position
        pool = sorted(cl.U + tuple(c[0] for c in cl.classes),
                      key=lambda s: (s.x, s.y))
        if not pool:
            raise InsufficientClassesError(
                f"x^{k} + y^{k} = {lam} has no solutions over F_{F.q}",
                lam=lam, found=0, needed=1)
        s = pool[0]
        A = diag(F, [s.x] * n)
        B = diag(F, [s.y] * n)
        plan = StructuredPlan((1,) * n, (), (), ((s.x, s.y),))
        entries_pa = tuple(AssignmentEntry(lam, s.x, s.y) for _ in range(n))
        verified = verify_decomposition(C, (A, B), k)
        assert verified
        return DecompositionResult((A, B), k, C, PairAssignment(entries_pa),
                                   verified, plan=plan)

    if cl.r < 2:
        raise InsufficientClassesError(
            f"x^{k} + y^{k} = {lam} has {cl.r} classes over F_{F.q}, "
            f"need 2 for the structured split", lam=lam, found=cl.r, needed=2)
    s1, s2 = cl.representatives()[:2]
    xpow = {1: F.pow(s1.x, k), 2: F.pow(s2.x, k)}
    ypow = {1: F.pow(s1.y, k), 2: F.pow(s2.y, k)}
    sols = {1: s1, 2: s2}

    explored = 0
    refuted: list[tuple[int, ...]] = []
    for coloring in itertools.product((1, 2), repeat=n):
        explored += 1
        if any(coloring[i - 1] == coloring[j - 1] for i, j in entries):
            refuted.append(coloring)
            continue
        split = _split_entries(entries)
        if split is None:
            refuted.append(coloring)
            continue
        owned_a, owned_b = split
        A0 = diag(F, [xpow[c] for c in coloring])
        for i, j in owned_a:
            A0 = A0.with_entry(i, j, C.get(i, j))
        B0 = diag(F, [ypow[c] for c in coloring])
        for i, j in owned_b:
            B0 = B0.with_entry(i, j, C.get(i, j))
        A = kth_root_sparse(A0, k)
        B = kth_root_sparse(B0, k)
        verified = verify_decomposition(C, (A, B), k)
        assert verified, "structured construction failed verification"
        plan = StructuredPlan(coloring, owned_a, owned_b,
                              ((s1.x, s1.y), (s2.x, s2.y)))
        pa = PairAssignment(tuple(
            AssignmentEntry(lam, sols[c].x, sols[c].y) for c in coloring))
        return DecompositionResult((A, B), k, C, pa, verified, plan=plan)
    return Obstruction(C, k, explored, tuple(refuted))


def _split_entries(entries):
    """First (in per-entry A-then-B order) split of the entries into two
    chain-free sides, or None. An entry (i, j) chains with (r, i) or
    (j, t) on the same side."""
    owned_a: list[tuple[int, int]] = []
    owned_b: list[tuple[int, int]] = []

    def fits(side, i, j):
        for r, s in side:
            if s == i or r == j:
                return False
        return True

    def dfs(idx: int) -> bool:
        if idx == len(entries):
            return True
        i, j = entries[idx]
        for side in (owned_a, owned_b):
            if fits(side, i, j):
                side.append((i, j))
                if dfs(idx + 1):
                    return True
                side.pop()
        return False

    if dfs(0):
        return tuple(owned_a), tuple(owned_b)
    return None
