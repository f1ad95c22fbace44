"""Valuations, degrees-of-truth entailment, and matrix consequences.

The decision procedures enumerate valuations exhaustively; carriers have at
most six elements, so a query over k variables scans |carrier|**k
assignments.  Queries above a configurable variable budget are rejected so
the CLI cannot be driven into 6**20-sized scans by accident.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Filter,
    TruthValue,
    all_lattice_filters,
    builtin_algebra,
    generated_filter,
)
from .syntax import And, Bottom, Formula, Nabla, Neg, Or, Top, Var, variables

__all__ = [
    "Valuation",
    "Matrix",
    "EntailmentResult",
    "BudgetError",
    "DEFAULT_MAX_VARS",
    "eval_formula",
    "entails_degree",
    "entails_six",
    "matrix_entails",
    "four_matrix_entails",
    "six_matrix_entails",
    "gmatrix_entails",
    "equivalent",
    "truth_table",
    "s6",
]

DEFAULT_MAX_VARS = 8


class BudgetError(ValueError):
    """Raised when a query would enumerate too many valuations."""


def s6() -> FiniteAlgebra:
    return builtin_algebra("S6")


@dataclass(frozen=True)
class Valuation:
    """A total map from finitely many variables into one algebra."""

    algebra: FiniteAlgebra
    assignment: tuple[tuple[str, TruthValue], ...]

    @classmethod
    def of(
        cls, algebra: FiniteAlgebra, mapping: dict[str, TruthValue]
    ) -> "Valuation":
        for v in mapping.values():
            algebra._check(v)
        return cls(algebra, tuple(sorted(mapping.items())))

    def value(self, name: str) -> TruthValue:
        for key, val in self.assignment:
            if key == name:
                return val
        raise AlgebraError(f"variable {name!r} is not mapped")

    def mapping(self) -> dict[str, TruthValue]:
        return dict(self.assignment)

    def __str__(self) -> str:
        return ", ".join(f"{k}={v.name}" for k, v in self.assignment)


class Matrix:
    """An algebra together with a designated lattice filter."""

    def __init__(self, algebra: FiniteAlgebra, designated: Filter):
        if designated.algebra is not algebra:
            raise AlgebraError("designated filter belongs to another algebra")
        self.algebra = algebra
        self.designated = designated

    @classmethod
    def principal(cls, algebra: FiniteAlgebra, generator: TruthValue) -> "Matrix":
        return cls(algebra, generated_filter(algebra, [generator]))

    def __repr__(self) -> str:
        return f"Matrix({self.algebra.name}, {self.designated!r})"


@dataclass(frozen=True)
class EntailmentResult:
    """Outcome of an entailment query with an optional countermodel.

    When the entailment fails, ``countermodel`` is the lexicographically
    first (valuation, bound) pair in carrier order such that every premise
    evaluates >= bound while the goal does not.
    """

    holds: bool
    countermodel: Optional[tuple[Valuation, TruthValue]] = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "VALID"
        v, bound = self.countermodel
        if v.assignment:
            return f"INVALID  {v} @ bound={bound.name}"
        return f"INVALID  @ bound={bound.name}"


def eval_formula(f: Formula, valuation: Valuation) -> TruthValue:
    """Homomorphic extension of the valuation to a formula."""
    a = valuation.algebra
    if isinstance(f, Var):
        return valuation.value(f.name)
    if isinstance(f, Bottom):
        return a.bottom
    if isinstance(f, Top):
        return a.top
    if isinstance(f, Neg):
        return a.neg(eval_formula(f.arg, valuation))
    if isinstance(f, Nabla):
        return a.nabla(eval_formula(f.arg, valuation))
    if isinstance(f, And):
        return a.meet(eval_formula(f.left, valuation), eval_formula(f.right, valuation))
    if isinstance(f, Or):
        return a.join(eval_formula(f.left, valuation), eval_formula(f.right, valuation))
    raise TypeError(f"not a formula: {f!r}")


def _collect_vars(formulas: Iterable[Formula]) -> tuple[str, ...]:
    names: set[str] = set()
    for f in formulas:
        names.update(variables(f))
    return tuple(sorted(names))


def _check_budget(names: Sequence[str], max_vars: Optional[int]) -> None:
    if max_vars is not None and len(names) > max_vars:
        raise BudgetError(
            f"query has {len(names)} variables, budget is {max_vars}"
        )


def iter_valuations(
    algebra: FiniteAlgebra, names: Sequence[str]
) -> Iterator[Valuation]:
    """All valuations of ``names``, lexicographic in carrier order."""
    for combo in itertools.product(algebra.carrier, repeat=len(names)):
        yield Valuation(algebra, tuple(zip(names, combo)))


def _dedupe(premises: Iterable[Formula]) -> list[Formula]:
    seen: list[Formula] = []
    for f in premises:
        if f not in seen:
            seen.append(f)
    return seen


def entails_degree(
    premises: Sequence[Formula],
    goal: Formula,
    algebra: FiniteAlgebra,
    max_vars: Optional[int] = DEFAULT_MAX_VARS,
) -> EntailmentResult:
    """Degrees-of-truth entailment over one finite algebra.

    With premises, holds iff the meet of the premise values is below the
    goal value under every valuation; with no premises, holds iff the goal
    evaluates to top under every valuation.  The countermodel, when the
    entailment fails, is the lexicographically first failing
    (valuation, bound) pair in carrier order.
    """
    premises = _dedupe(premises)
    names = _collect_vars([*premises, goal])
    _check_budget(names, max_vars)
    for v in iter_valuations(algebra, names):
        vals = [eval_formula(p, v) for p in premises]
        goal_val = eval_formula(goal, v)
        if not premises:
            if goal_val != algebra.top:
                return EntailmentResult(False, (v, algebra.top))
            continue
        for bound in algebra.carrier:
            if all(algebra.leq(bound, pv) for pv in vals) and not algebra.leq(
                bound, goal_val
            ):
                return EntailmentResult(False, (v, bound))
    return EntailmentResult(True)


def entails_six(
    premises: Sequence[Formula],
    goal: Formula,
    max_vars: Optional[int] = DEFAULT_MAX_VARS,
) -> EntailmentResult:
    """The reference decision procedure: entailment over S6."""
    return entails_degree(premises, goal, s6(), max_vars=max_vars)


def matrix_entails(
    matrix: Matrix,
    premises: Sequence[Formula],
    goal: Formula,
    max_vars: Optional[int] = DEFAULT_MAX_VARS,
) -> bool:
    """Truth preservation over the designated filter of one matrix."""
    premises = _dedupe(premises)
    names = _collect_vars([*premises, goal])
    _check_budget(names, max_vars)
    designated = matrix.designated
    for v in iter_valuations(matrix.algebra, names):
        if all(designated.contains(eval_formula(p, v)) for p in premises):
            if not designated.contains(eval_formula(goal, v)):
                return False
    return True


def _principal_matrices(names: Sequence[str]) -> list[Matrix]:
    a = s6()
    return [Matrix.principal(a, a.value(n)) for n in names]


def four_matrix_entails(
    premises: Sequence[Formula],
    goal: Formula,
    max_vars: Optional[int] = DEFAULT_MAX_VARS,
) -> bool:
    """Conjunction of the four S6 matrices [1/3), [N), [2/3), [1)."""
    return all(
        matrix_entails(m, premises, goal, max_vars=max_vars)
        for m in _principal_matrices(["1/3", "N", "2/3", "1"])
    )


def six_matrix_entails(
    premises: Sequence[Formula],
    goal: Formula,
    max_vars: Optional[int] = DEFAULT_MAX_VARS,
) -> bool:
    """All six principal S6 matrices; [0) and [B) are redundant."""
    return all(
        matrix_entails(m, premises, goal, max_vars=max_vars)
        for m in _principal_matrices(["0", "1/3", "N", "B", "2/3", "1"])
    )


def gmatrix_entails(
    algebra: FiniteAlgebra,
    premises: Sequence[Formula],
    goal: Formula,
    max_vars: Optional[int] = DEFAULT_MAX_VARS,
) -> bool:
    """Truth preservation over every lattice filter of the algebra."""
    return all(
        matrix_entails(Matrix(algebra, flt), premises, goal, max_vars=max_vars)
        for flt in all_lattice_filters(algebra)
    )


def equivalent(
    a: Formula,
    b: Formula,
    max_vars: Optional[int] = DEFAULT_MAX_VARS,
) -> bool:
    """Semantic equivalence over S6: equal value under every valuation."""
    algebra = s6()
    names = _collect_vars([a, b])
    _check_budget(names, max_vars)
    return all(
        eval_formula(a, v) == eval_formula(b, v)
        for v in iter_valuations(algebra, names)
    )


def truth_table(
    f: Formula, max_vars: Optional[int] = DEFAULT_MAX_VARS
) -> list[tuple[Valuation, TruthValue]]:
    """Full S6 truth table of a formula, rows in carrier order."""
    algebra = s6()
    names = _collect_vars([f])
    _check_budget(names, max_vars)
    return [(v, eval_formula(f, v)) for v in iter_valuations(algebra, names)]
