"""Order-driven model over a totally ordered atom set.

Atoms a0 <= a1 <= ... <= a{n-1} induce the discarding constraints
``ai & aj & ak = ai & ak`` for every i <= j <= k.  The resulting quotient
(minus BOTTOM and TOP) is concretely realized by the non-empty increasing
subsets of the triangle {(i, j): i <= j}: each such subset is a staircase,
stored here as a per-column threshold array.  A separate pair-set
representation is kept as an independent oracle for testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from . import prebool
from .prebool import ConstraintSet, Proposition, Quotient, varphi


@dataclass(frozen=True)
class Staircase:
    """Non-empty increasing subset of {(i, j): i <= j} over n atoms.

    ``thresholds[j]`` is the largest first coordinate present in column j,
    or None when the column is empty.  Membership: (i, j) in the set iff
    thresholds[j] is defined and i <= thresholds[j].
    """

    n: int
    thresholds: tuple[int | None, ...]

    def __post_init__(self) -> None:
        t = self.thresholds
        if len(t) != self.n:
            raise ValueError("threshold array length must equal n")
        if all(v is None for v in t):
            raise ValueError("staircase must be non-empty")
        prev = None
        for j, v in enumerate(t):
            if v is None:
                if prev is not None:
                    raise ValueError("columns must stay defined once defined")
                continue
            if not 0 <= v <= j:
                raise ValueError(f"threshold {v} out of range for column {j}")
            if prev is not None and v < prev:
                raise ValueError("thresholds must be non-decreasing")
            prev = v

    def pairs(self) -> frozenset[tuple[int, int]]:
        """Explicit pair-set view {(i, j): i <= thresholds[j]}."""
        return frozenset(
            (i, j)
            for j, t in enumerate(self.thresholds)
            if t is not None
            for i in range(t + 1)
        )


def point(x: int, n: int) -> Staircase:
    """The staircase modelling the single atom a{x}: pairs (i, j), i <= x <= j."""
    if not 0 <= x < n:
        raise ValueError(f"atom index {x} out of range [0, {n})")
    return Staircase(n, tuple(None if j < x else x for j in range(n)))


def stair_meet(s1: Staircase, s2: Staircase) -> Staircase | None:
    """Intersection: pointwise minimum of thresholds; None when empty."""
    if s1.n != s2.n:
        raise ValueError("mixed staircase sizes")
    t = tuple(
        None if a is None or b is None else min(a, b)
        for a, b in zip(s1.thresholds, s2.thresholds)
    )
    if all(v is None for v in t):
        return None
    return Staircase(s1.n, t)


def stair_join(s1: Staircase, s2: Staircase) -> Staircase:
    """Union: pointwise maximum of thresholds."""
    if s1.n != s2.n:
        raise ValueError("mixed staircase sizes")
    t = tuple(
        b if a is None else a if b is None else max(a, b)
        for a, b in zip(s1.thresholds, s2.thresholds)
    )
    return Staircase(s1.n, t)


def staircase_from_pairs(n: int, pairs) -> Staircase | None:
    """Rebuild the threshold form from an explicit increasing pair set."""
    cols: dict[int, int] = {}
    for i, j in pairs:
        cols[j] = max(i, cols.get(j, -1))
    if not cols:
        return None
    return Staircase(n, tuple(cols.get(j) for j in range(n)))


def order_constraints(n: int) -> ConstraintSet:
    """Discarding constraints ai & aj & ak = ai & ak for all i <= j <= k."""
    if n < 1:
        raise ValueError("need at least one atom")
    pairs = []
    for i, j, k in combinations_with_replacement(range(n), 3):
        pairs.append((varphi(n, [{i, j, k}]), varphi(n, [{i, k}])))
    return ConstraintSet(tuple(pairs))


def smile(p: Proposition, n: int | None = None) -> Staircase:
    """Map a proposition to its staircase model.

    Each clause contributes the rectangle of pairs dominated by its extreme
    atoms (the meet of the min and max atom staircases); clauses are then
    unioned.  Undefined on BOTTOM and TOP.
    """
    if p.is_bottom or p.is_top:
        raise ValueError("smile is undefined on BOTTOM and TOP")
    n = p.n if n is None else n
    result: Staircase | None = None
    for clause in p.clauses:
        idx = [i for i in range(n) if clause >> i & 1]
        s = stair_meet(point(min(idx), n), point(max(idx), n))
        assert s is not None
        result = s if result is None else stair_join(result, s)
    assert result is not None
    return result


def enumerate_staircases(n: int) -> list[Staircase]:
    """All non-empty increasing subsets of the triangle, by brute force.

    Independent of :func:`smile`: iterates subsets of the triangle's pairs
    and keeps those closed under decreasing i / increasing j.
    """
    triangle = [(i, j) for j in range(n) for i in range(j + 1)]
    out = []
    for bits in range(1, 1 << len(triangle)):
        subset = {triangle[k] for k in range(len(triangle)) if bits >> k & 1}
        if all(
            (a, b) in subset
            for (i, j) in subset
            for a in range(i + 1)
            for b in range(j, n)
        ):
            s = staircase_from_pairs(n, subset)
            assert s is not None
            out.append(s)
    return out


@dataclass
class IsomorphismReport:
    n: int
    class_count: int
    staircase_count: int
    bijection_ok: bool
    morphism_ok: bool
    counterexamples: list[str]

    @property
    def ok(self) -> bool:
        return (
            self.bijection_ok
            and self.morphism_ok
            and self.class_count == self.staircase_count
        )


def verify_isomorphism(n: int, max_atoms: int = 4) -> IsomorphismReport:
    """Brute-force check that classes and staircases are the same structure.

    Builds the quotient of the hyperpower set by the order constraints,
    maps every non-trivial element through :func:`smile`, and checks that
    equality of classes coincides with equality of staircases, that the
    meet/join tables transport, and that the class count matches an
    independent staircase enumeration.
    """
    if n > max_atoms:
        raise ValueError(f"n={n} exceeds the verification guard ({max_atoms})")
    universe = prebool.enumerate_hyperpower(n, max_atoms)
    q = Quotient(universe, order_constraints(n))
    problems: list[str] = []

    class_to_stair: dict[Proposition, Staircase] = {}
    stair_to_class: dict[Staircase, Proposition] = {}
    bijection_ok = True
    for p in universe:
        if p.is_bottom or p.is_top:
            continue
        rep = q.class_of(p)
        s = smile(p)
        if class_to_stair.setdefault(rep, s) != s:
            bijection_ok = False
            problems.append(
                f"class of {prebool.format_proposition(p)} maps to two staircases"
            )
        prev = stair_to_class.setdefault(s, rep)
        if prev != rep:
            bijection_ok = False
            problems.append(
                f"staircase of {prebool.format_proposition(p)} hits two classes"
            )

    morphism_ok = True
    reps = [r for r in q.representatives if r != q.bottom and r != q.top]
    for p1 in reps:
        for p2 in reps:
            sm = stair_meet(class_to_stair[p1], class_to_stair[p2])
            if sm != class_to_stair.get(q.meet(p1, p2)):
                morphism_ok = False
                problems.append(
                    f"meet mismatch at {prebool.format_proposition(p1)}, "
                    f"{prebool.format_proposition(p2)}"
                )
            sj = stair_join(class_to_stair[p1], class_to_stair[p2])
            if sj != class_to_stair.get(q.join(p1, p2)):
                morphism_ok = False
                problems.append(
                    f"join mismatch at {prebool.format_proposition(p1)}, "
                    f"{prebool.format_proposition(p2)}"
                )

    return IsomorphismReport(
        n=n,
        class_count=len(reps),
        staircase_count=len(enumerate_staircases(n)),
        bijection_ok=bijection_ok,
        morphism_ok=morphism_ok,
        counterexamples=problems[:20],
    )


def format_staircase(s: Staircase) -> str:
    """Dump format: ``j:t(j)`` per defined column, space separated."""
    return " ".join(
        f"{j}:{t}" for j, t in enumerate(s.thresholds) if t is not None
    )


def render_staircase(s: Staircase) -> str:
    """ASCII grid; row j (second coordinate) from top, '#' marks membership."""
    rows = []
    pairs = s.pairs()
    for j in reversed(range(s.n)):
        rows.append(
            "".join("#" if (i, j) in pairs else "." for i in range(s.n))
        )
    return "\n".join(rows)
