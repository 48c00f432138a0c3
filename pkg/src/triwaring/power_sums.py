"""Solving and classifying X^k + Y^k = lambda (and the three-variable
version) over F_q.

The load-bearing structure is the partition of the solution set S into

    U   = solutions with x^k = y^k (the symmetric part), and
    V_i = maximal classes of solutions sharing the signature (x^k, y^k)
          with x^k != y^k.

Since x^k determines y^k = lambda - x^k, distinct classes have pairwise
distinct x-power components and pairwise distinct y-power components, which
is exactly what the matrix decomposition needs: one representative per class
yields diagonal assignments whose k-th powers never collide.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass

from .errors import (
    EnumerationTooLargeError,
    HypothesisViolatedError,
    InsufficientClassesError,
    NoAdmissibleShiftError,
)
from .fields import Element, FieldSpec, kth_root_map, minus_one_is_kth_power

DEFAULT_ENUM_GUARD = 10 ** 8
RAW_SCAN_LIMIT = 2000  # above this, enumerate by power-image fibers


def enum_guard(size: int, cap: int = DEFAULT_ENUM_GUARD) -> None:
    """Hard error when an exhaustive enumeration would exceed the guard.
    WARING_MAX_ENUM overrides the cap (documented as at-your-own-risk)."""
    limit = int(os.environ.get("WARING_MAX_ENUM", cap))
    if size > limit:
        raise EnumerationTooLargeError(
            f"enumeration of size {size} exceeds guard {limit}")


@dataclass(frozen=True, slots=True)
class PairSolution:
    """A solution (x, y) of x^k + y^k = lam."""

    x: Element
    y: Element
    lam: Element
    k: int


@dataclass(frozen=True, slots=True)
class TripleSolution:
    """A solution (x, y, z) of x^k + y^k + z^k = lam."""

    x: Element
    y: Element
    z: Element
    lam: Element
    k: int


@dataclass(frozen=True)
class SolutionClassification:
    """Partition S = U u V_1 u ... u V_r.

    Classes are ordered lexicographically by signature (x^k, y^k); members
    and U are sorted by (x, y). r = len(classes).
    """

    U: tuple[PairSolution, ...]
    classes: tuple[tuple[PairSolution, ...], ...]
    signatures: tuple[tuple[Element, Element], ...]

    @property
    def r(self) -> int:
        return len(self.classes)

    def representatives(self) -> tuple[PairSolution, ...]:
        """Lex-smallest (x, y) member of each class, in class order."""
        return tuple(cls[0] for cls in self.classes)


def power_diff_quotient(F: FieldSpec, x: Element, y: Element, k: int) -> Element:
    """x^(k-1) + x^(k-2) y + ... + y^(k-1).

    Satisfies x^k - y^k = (x - y) * power_diff_quotient(x, y); its
    nonvanishing is what lets triangular root-building divide by it.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    acc = 0
    for i in range(k):
        acc = F.add(acc, F.mul(F.pow(x, k - 1 - i), F.pow(y, i)))
    return acc


@dataclass(frozen=True)
class QuotientZeroReport:
    """Exhaustive check of when power_diff_quotient vanishes off (0,0):
    exactly at pairs with (a = b and p | k) or (a != b and a^k = b^k)."""

    q: int
    k: int
    zero_pairs: tuple[tuple[Element, Element], ...]
    violations: tuple[tuple[Element, Element], ...]
    checked: int

    @property
    def ok(self) -> bool:
        return not self.violations


def quotient_zero_report(F: FieldSpec, k: int) -> QuotientZeroReport:
    """Scan F_q x F_q minus (0,0) and compare the observed zero set of the
    quotient against the predicted characterization."""
    p = F.p
    zeros = []
    violations = []
    checked = 0
    pow_map = {a: F.pow(a, k) for a in F.elements()}
    for a in F.elements():
        for b in F.elements():
            if a == 0 and b == 0:
                continue
            checked += 1
            is_zero = power_diff_quotient(F, a, b, k) == 0
            predicted = (a == b and k % p == 0) or (a != b and pow_map[a] == pow_map[b])
            if is_zero:
                zeros.append((a, b))
            if is_zero != predicted:
                violations.append((a, b))
    return QuotientZeroReport(F.q, k, tuple(zeros), tuple(violations), checked)


def enumerate_pair_solutions(F: FieldSpec, lam: Element, k: int
                             ) -> tuple[PairSolution, ...]:
    """Exact solution set of x^k + y^k = lam, sorted by (x, y).

    Raw q^2 scan at small q; identical results via k-th-power fiber
    expansion above RAW_SCAN_LIMIT.
    """
    if F.q <= RAW_SCAN_LIMIT:
        sols = [PairSolution(x, y, lam, k)
                for x in F.elements() for y in F.elements()
                if F.add(F.pow(x, k), F.pow(y, k)) == lam]
        return tuple(sols)
    roots = kth_root_map(F, k)
    sols = []
    for x in F.elements():
        rest = F.sub(lam, F.pow(x, k))
        for y in roots.get(rest, ()):
            sols.append(PairSolution(x, y, lam, k))
    sols.sort(key=lambda s: (s.x, s.y))
    return tuple(sols)


def classify_solutions(F: FieldSpec, sols) -> SolutionClassification:
    """Partition solutions (sharing lam and k) into U and the V_i."""
    sols = sorted(sols, key=lambda s: (s.x, s.y))
    U = []
    by_sig: dict[tuple[Element, Element], list[PairSolution]] = {}
    for s in sols:
        sx, sy = F.pow(s.x, s.k), F.pow(s.y, s.k)
        if sx == sy:
            U.append(s)
        else:
            by_sig.setdefault((sx, sy), []).append(s)
    signatures = tuple(sorted(by_sig))
    classes = tuple(tuple(by_sig[sig]) for sig in signatures)
    return SolutionClassification(tuple(U), classes, signatures)


@functools.lru_cache(maxsize=None)
def classified(F: FieldSpec, lam: Element, k: int) -> SolutionClassification:
    """Enumerate + classify, cached; the decomposer hammers this."""
    return classify_solutions(F, enumerate_pair_solutions(F, lam, k))


def classification_report(F: FieldSpec, lam: Element, k: int) -> dict:
    """Stable JSON shape for a classification."""
    cl = classified(F, lam, k)
    return {
        "q": F.q,
        "k": k,
        "lambda": lam,
        "classes": [
            {"sig": [sig[0], sig[1]], "size": len(cls), "rep": [cls[0].x, cls[0].y]}
            for sig, cls in zip(cl.signatures, cl.classes)
        ],
        "U_size": len(cl.U),
    }


def select_pairs(F: FieldSpec, lam: Element, k: int, n: int
                 ) -> tuple[PairSolution, ...]:
    """n solutions with pairwise distinct x-powers and y-powers: one
    representative per class (U excluded for n >= 2; for n = 1 the
    lex-smallest solution overall, U included, is fine)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cl = classified(F, lam, k)
    if n == 1:
        pool = sorted(cl.U + tuple(c[0] for c in cl.classes),
                      key=lambda s: (s.x, s.y))
        if not pool:
            raise InsufficientClassesError(
                f"x^{k} + y^{k} = {lam} has no solutions over F_{F.q}",
                lam=lam, found=0, needed=1)
        return (pool[0],)
    if cl.r < n:
        raise InsufficientClassesError(
            f"x^{k} + y^{k} = {lam} has {cl.r} classes over F_{F.q}, "
            f"need {n} (sufficient only for q > n^2 k^16)",
            lam=lam, found=cl.r, needed=n)
    return cl.representatives()[:n]


@dataclass(frozen=True, slots=True)
class AssignmentEntry:
    """One diagonal position's solution: x^k + y^k (+ z^k) = lam."""

    lam: Element
    x: Element
    y: Element
    z: Element | None = None

    def as_row(self) -> list[Element]:
        if self.z is None:
            return [self.x, self.y]
        return [self.x, self.y, self.z]


@dataclass(frozen=True)
class PairAssignment:
    """Per-position solution choices. The class-machinery selection keeps
    all x-powers and all y-powers pairwise distinct across positions; the
    desk-scale three-power fallback only guarantees the x side, which is
    the one root extraction needs. validate() asserts the full form."""

    entries: tuple[AssignmentEntry, ...]

    def validate(self, F: FieldSpec, k: int) -> None:
        xps = [F.pow(e.x, k) for e in self.entries]
        yps = [F.pow(e.y, k) for e in self.entries]
        if len(set(xps)) != len(xps) or len(set(yps)) != len(yps):
            raise AssertionError("assignment power collision")
        for e in self.entries:
            total = F.add(F.pow(e.x, k), F.pow(e.y, k))
            if e.z is not None:
                total = F.add(total, F.pow(e.z, k))
            if total != e.lam:
                raise AssertionError("assignment sum mismatch")


def _candidates_for(F: FieldSpec, lam: Element, k: int) -> tuple[PairSolution, ...]:
    """Class representatives in class order; the U representative (when U is
    nonempty) is appended as a last resort for sub-threshold fields. In the
    theorem regime the V representatives alone always suffice, so the U
    candidate never changes theorem-regime outputs."""
    cl = classified(F, lam, k)
    cands = list(cl.representatives())
    if cl.U:
        cands.append(cl.U[0])
    return tuple(cands)


def select_system_pairs(F: FieldSpec, demands, k: int) -> PairAssignment:
    """Assign l_i solutions of x^k + y^k = lam_i to each demand
    (lam_i, l_i), with all x-powers pairwise distinct and all y-powers
    pairwise distinct across the whole assignment.

    Demands are processed in decreasing multiplicity then increasing lam
    (hardest first); per position the lam's class representatives are
    scanned in class order and the first with both powers unused is taken.
    Chronological backtracking over representatives handles sub-threshold
    fields where pure greedy dead-ends.
    """
    demands = list(demands)
    lams = [lam for lam, _ in demands]
    if len(set(lams)) != len(lams):
        raise ValueError("demand targets must be pairwise distinct")
    if any(l < 1 for _, l in demands):
        raise ValueError("multiplicities must be >= 1")
    order = sorted(demands, key=lambda d: (-d[1], d[0]))
    positions: list[Element] = []
    for lam, mult in order:
        positions.extend([lam] * mult)
    n = len(positions)

    cand_lists = {lam: _candidates_for(F, lam, k) for lam, _ in order}
    for lam, mult in order:
        found = len(cand_lists[lam])
        if found < mult:
            raise InsufficientClassesError(
                f"x^{k} + y^{k} = {lam} has {found} usable classes over "
                f"F_{F.q}, need {mult} (sufficient only for q > 4 n^2 k^16)",
                lam=lam, found=found, needed=mult)

    chosen: list[PairSolution] = []
    used_x: list[Element] = []
    used_y: list[Element] = []
    idx = [0] * n
    pos = 0
    while pos < n:
        lam = positions[pos]
        cands = cand_lists[lam]
        placed = False
        i = idx[pos]
        while i < len(cands):
            s = cands[i]
            sx, sy = F.pow(s.x, k), F.pow(s.y, k)
            if sx not in used_x and sy not in used_y:
                chosen.append(s)
                used_x.append(sx)
                used_y.append(sy)
                idx[pos] = i + 1
                placed = True
                break
            i += 1
        if placed:
            pos += 1
        else:
            idx[pos] = 0
            if pos == 0:
                raise InsufficientClassesError(
                    f"no compatible class assignment for targets "
                    f"{sorted(set(positions))} over F_{F.q} (k={k}); "
                    f"sufficient only for q > 4 n^2 k^16",
                    lam=lam, found=len(cands), needed=n)
            pos -= 1
            chosen.pop()
            used_x.pop()
            used_y.pop()

    entries = tuple(AssignmentEntry(s.lam, s.x, s.y) for s in chosen)
    return PairAssignment(entries)


def shift_to_two_variable(F: FieldSpec, lam: Element, k: int,
                          forbidden=frozenset()) -> tuple[Element, Element]:
    """Pick z so that lam' = lam - z^k is nonzero and outside `forbidden`,
    reducing a three-power target to a two-power one. z scans encodings
    upward, so z = 0 wins whenever lam itself is admissible."""
    forbidden = frozenset(forbidden)
    for z in F.elements():
        shifted = F.sub(lam, F.pow(z, k))
        if shifted != 0 and shifted not in forbidden:
            return z, shifted
    raise NoAdmissibleShiftError(
        f"no shift keeps {lam} - z^{k} nonzero and outside "
        f"{sorted(forbidden)} over F_{F.q}")


@dataclass(frozen=True)
class LangWeilReport:
    q: int
    k: int
    m: int
    N: int
    expected: int
    bound: float

    @property
    def ok(self) -> bool:
        return abs(self.N - self.expected) <= self.bound


def lang_weil_check(F: FieldSpec, k: int, m: int, alphas) -> LangWeilReport:
    """Exact zero count N of alpha_1 X_1^k + ... + alpha_m X_m^k - 1 over
    F_q^m, compared against |N - q^(m-1)| <= k^(2m) sqrt(q^(m-1)).

    The count folds the per-variable value histograms together, which is
    the exhaustive scan reorganized (identical N, m*q^2 work).
    """
    alphas = list(alphas)
    if len(alphas) != m:
        raise ValueError(f"need {m} coefficients, got {len(alphas)}")
    if any(a == 0 for a in alphas):
        raise ValueError("coefficients must be nonzero")
    enum_guard(F.q ** m)
    hist = [0] * F.q
    for x in F.elements():
        hist[F.mul(alphas[0], F.pow(x, k))] += 1
    for a in alphas[1:]:
        nxt = [0] * F.q
        values = [F.mul(a, F.pow(x, k)) for x in F.elements()]
        counts: dict[Element, int] = {}
        for v in values:
            counts[v] = counts.get(v, 0) + 1
        for acc_v, acc_c in enumerate(hist):
            if acc_c:
                for v, c in counts.items():
                    nxt[F.add(acc_v, v)] += acc_c * c
        hist = nxt
    N = hist[1]
    expected = F.q ** (m - 1)
    bound = (k ** (2 * m)) * math.sqrt(expected)
    return LangWeilReport(F.q, k, m, N, expected, bound)


def count_zero_sum_classes(F: FieldSpec, k: int) -> int:
    """(q-1)/gcd(k, q-1) + 1 distinct-power solution classes of
    X^k + Y^k = 0, valid for odd p with -1 a k-th power; cross-checked
    against the observed classification ((0,0) counts as one class)."""
    if F.p == 2:
        raise HypothesisViolatedError("characteristic must be odd")
    if not minus_one_is_kth_power(F, k):
        raise HypothesisViolatedError(
            f"-1 is not a {k}-th power in F_{F.q}")
    formula = (F.q - 1) // math.gcd(k, F.q - 1) + 1
    cl = classified(F, 0, k)
    observed = cl.r + (1 if cl.U else 0)
    if observed != formula:
        raise RuntimeError(
            f"class-count self-check failed over F_{F.q}, k={k}: "
            f"formula {formula}, observed {observed}")
    return formula
