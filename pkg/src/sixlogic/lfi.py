"""Consistency and inconsistency operators, paraconsistency diagnostics,
and the classical-logic adjustment check.

The consistency operator is ``o a = Da | D~a`` and its dual ``* a = ~o a``;
both are definable from the primitive connectives, which is what makes the
logic a genuine logic of formal inconsistency.  The classical oracle used
by the adjustment check is an independent two-valued evaluator, not a
wrapper around the six-valued semantics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .algebra import TruthValue
from .semantics import (
    DEFAULT_MAX_VARS,
    BudgetError,
    EntailmentResult,
    Valuation,
    entails_six,
    equivalent,
    eval_formula,
    s6,
)
from .syntax import (
    And,
    BOT,
    Bottom,
    Formula,
    Nabla,
    Neg,
    Or,
    TOP,
    Top,
    Var,
    bullet_of,
    circ_of,
    variables,
)

__all__ = [
    "ReportItem",
    "LfiReport",
    "consistency_truth_table",
    "check_propagation",
    "check_bullet_laws",
    "lfi_audit",
    "cpl_entails",
    "DatResult",
    "dat_check",
]


@dataclass(frozen=True)
class ReportItem:
    """One named outcome; ``witness`` is the relevant (valuation, bound).

    For non-entailment facts the witness is the countermodel establishing
    the failure of entailment; for laws that unexpectedly fail it is the
    refuting valuation.
    """

    name: str
    holds: bool
    witness: Optional[tuple[Valuation, TruthValue]] = None

    def __str__(self) -> str:
        mark = "ok " if self.holds else "FAIL"
        extra = ""
        if self.witness is not None:
            v, bound = self.witness
            shown = str(v) if v.assignment else "(no variables)"
            extra = f"  [witness: {shown} @ bound={bound.name}]"
        return f"{mark} {self.name}{extra}"


@dataclass
class LfiReport:
    items: list[ReportItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(item.holds for item in self.items)

    def add_entailment(
        self, name: str, result: EntailmentResult, expect_holds: bool
    ) -> None:
        if expect_holds:
            self.items.append(
                ReportItem(name, result.holds, result.countermodel)
            )
        else:
            # the law is a non-entailment: finding a countermodel is success
            self.items.append(
                ReportItem(name, not result.holds, result.countermodel)
            )

    def add_fact(self, name: str, holds: bool) -> None:
        self.items.append(ReportItem(name, holds))

    def __str__(self) -> str:
        return "\n".join(str(item) for item in self.items)


_P = Var("p")
_Q = Var("q")


def consistency_truth_table() -> list[tuple[TruthValue, TruthValue, TruthValue]]:
    """Rows (value, o value, * value) over the S6 carrier, in carrier order."""
    algebra = s6()
    rows = []
    for v in algebra.carrier:
        val = Valuation.of(algebra, {"p": v})
        rows.append(
            (v, eval_formula(circ_of(_P), val), eval_formula(bullet_of(_P), val))
        )
    return rows


def check_propagation(neg_iterations: int = 3) -> LfiReport:
    """Propagation of consistency through the connectives.

    Verifies that consistency of the parts yields consistency of ``#``,
    ``~``, ``&`` and ``|`` compounds, and that ``o ~^n o p`` is valid for
    n up to ``neg_iterations``.  All checks are exhaustive over schematic
    variables.
    """
    report = LfiReport()
    report.add_entailment(
        "consistency of bot", entails_six([], circ_of(BOT)), True
    )
    report.add_entailment(
        "consistency propagates to #",
        entails_six([circ_of(_P)], circ_of(Nabla(_P))),
        True,
    )
    report.add_entailment(
        "consistency propagates to ~",
        entails_six([circ_of(_P)], circ_of(Neg(_P))),
        True,
    )
    report.add_entailment(
        "consistency propagates to &",
        entails_six([circ_of(_P), circ_of(_Q)], circ_of(And(_P, _Q))),
        True,
    )
    report.add_entailment(
        "consistency propagates to |",
        entails_six([circ_of(_P), circ_of(_Q)], circ_of(Or(_P, _Q))),
        True,
    )
    for n in range(neg_iterations + 1):
        f: Formula = circ_of(_P)
        for _ in range(n):
            f = Neg(f)
        report.add_entailment(
            f"consistency of ~^{n} o p", entails_six([], circ_of(f)), True
        )
    return report


def check_bullet_laws() -> LfiReport:
    """Laws separating contradiction from inconsistency."""
    report = LfiReport()
    contradiction = And(_P, Neg(_P))
    report.add_entailment(
        "contradiction entails inconsistency",
        entails_six([contradiction], bullet_of(_P)),
        True,
    )
    report.add_entailment(
        "inconsistency does not entail contradiction",
        entails_six([bullet_of(_P)], contradiction),
        False,
    )
    report.add_entailment(
        "inconsistency of ~ forward",
        entails_six([bullet_of(_P)], bullet_of(Neg(_P))),
        True,
    )
    report.add_entailment(
        "inconsistency of ~ backward",
        entails_six([bullet_of(Neg(_P))], bullet_of(_P)),
        True,
    )
    for label, compound in (("&", And(_P, _Q)), ("|", Or(_P, _Q))):
        split = Or(bullet_of(_P), bullet_of(_Q))
        report.add_entailment(
            f"inconsistency of {label} splits",
            entails_six([bullet_of(compound)], split),
            True,
        )
        report.add_entailment(
            f"inconsistency split over {label} has no converse",
            entails_six([split], bullet_of(compound)),
            False,
        )
    return report


def lfi_audit(neg_iterations: int = 3) -> LfiReport:
    """Full paraconsistency report for the six-valued logic."""
    report = LfiReport()
    report.add_entailment(
        "non-explosive: p, ~p does not entail q",
        entails_six([_P, Neg(_P)], _Q),
        False,
    )
    report.add_entailment(
        "paracomplete: q | ~q is not valid",
        entails_six([], Or(_Q, Neg(_Q))),
        False,
    )
    report.add_entailment(
        "gentle explosion: o p, p does not entail q",
        entails_six([circ_of(_P), _P], _Q),
        False,
    )
    report.add_entailment(
        "gentle explosion: o p, ~p does not entail q",
        entails_six([circ_of(_P), Neg(_P)], _Q),
        False,
    )
    report.add_entailment(
        "gentle explosion: o p, p, ~p entails bot",
        entails_six([circ_of(_P), _P, Neg(_P)], BOT),
        True,
    )
    algebra = s6()
    table_ok = True
    for v, circ, bullet in consistency_truth_table():
        classical = v in (algebra.bottom, algebra.top)
        if (circ == algebra.top) != classical:
            table_ok = False
        if bullet != algebra.neg(circ):
            table_ok = False
    report.add_fact("o flags exactly the classical values 0 and 1", table_ok)
    report.add_entailment(
        "o p | * p is valid",
        entails_six([], Or(circ_of(_P), bullet_of(_P))),
        True,
    )
    report.add_fact(
        "o p & * p is equivalent to bot",
        equivalent(And(circ_of(_P), bullet_of(_P)), BOT),
    )
    report.add_fact(
        "o p is equivalent to D(p | ~p)",
        equivalent(circ_of(_P), Neg(Nabla(Neg(Or(_P, Neg(_P)))))),
    )
    report.add_fact(
        "* p is equivalent to #(p & ~p)",
        equivalent(bullet_of(_P), Nabla(And(_P, Neg(_P)))),
    )
    report.items.extend(check_propagation(neg_iterations).items)
    report.items.extend(check_bullet_laws().items)
    return report


# --------------------------------------------------------------------------
# classical oracle and the adjustment check
# --------------------------------------------------------------------------

def _cpl_eval(f: Formula, env: dict[str, bool], strict: bool) -> bool:
    if isinstance(f, Var):
        return env[f.name]
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Top):
        return True
    if isinstance(f, Neg):
        return not _cpl_eval(f.arg, env, strict)
    if isinstance(f, Nabla):
        if strict:
            raise ValueError("nabla is not part of the classical language")
        # two-element algebra reading: nabla is the identity
        return _cpl_eval(f.arg, env, strict)
    if isinstance(f, And):
        return _cpl_eval(f.left, env, strict) and _cpl_eval(f.right, env, strict)
    if isinstance(f, Or):
        return _cpl_eval(f.left, env, strict) or _cpl_eval(f.right, env, strict)
    raise TypeError(f"not a formula: {f!r}")


def cpl_entails(
    premises: Sequence[Formula],
    goal: Formula,
    strict: bool = False,
    max_vars: Optional[int] = DEFAULT_MAX_VARS,
) -> bool:
    """Classical propositional entailment by exhaustive {0,1} valuations.

    This is an independent code path from the six-valued evaluator, so the
    adjustment check below is a genuine cross-check.  With ``strict`` the
    modal operator is rejected; by default it is read as the identity, as
    on the two-element chain.
    """
    names: set[str] = set()
    for f in (*premises, goal):
        names.update(variables(f))
    ordered = sorted(names)
    if max_vars is not None and len(ordered) > max_vars:
        raise BudgetError(
            f"query has {len(ordered)} variables, budget is {max_vars}"
        )
    for combo in itertools.product((False, True), repeat=len(ordered)):
        env = dict(zip(ordered, combo))
        if all(_cpl_eval(p, env, strict) for p in premises):
            if not _cpl_eval(goal, env, strict):
                return False
    return True


class DatResult(NamedTuple):
    cpl: bool
    six_with_circ: bool
    agree: bool


def dat_check(
    premises: Sequence[Formula],
    goal: Formula,
    max_vars: Optional[int] = DEFAULT_MAX_VARS,
) -> DatResult:
    """Classical entailment versus six-valued entailment with consistency
    assumptions ``o p`` added for every variable of the query."""
    names: set[str] = set()
    for f in (*premises, goal):
        names.update(variables(f))
    circs = [circ_of(Var(n)) for n in sorted(names)]
    cpl = cpl_entails(premises, goal, max_vars=max_vars)
    six = entails_six([*premises, *circs], goal, max_vars=max_vars).holds
    return DatResult(cpl, six, cpl == six)
