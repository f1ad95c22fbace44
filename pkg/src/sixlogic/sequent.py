"""The Gentzen calculus: sequents, rule instances, proof trees, checking.

Sequent sides are finite *sets* of formulas, so exchange and contraction
are absorbed by the representation.  Every rule is implemented as a single
function computing, from a conclusion and its rule application, the exact
list of premises the rule demands; the proof checker, the inversion
checker and the prover all share it.

The contraposition rule is stated for singleton sequents; following the
derivation of ``=> ~#bot`` it also accepts an empty side, which maps to an
empty side of the premise (from ``a =>`` infer ``=> ~a`` and from ``=> b``
infer ``~b =>``).  Both variants preserve validity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .algebra import TruthValue
from .semantics import (
    DEFAULT_MAX_VARS,
    EntailmentResult,
    Valuation,
    eval_formula,
    iter_valuations,
    s6,
)
from .syntax import (
    And,
    Bottom,
    Formula,
    Nabla,
    Neg,
    Or,
    Top,
    parse_sequent_text,
    render,
    sort_key,
    variables,
)

__all__ = [
    "Rule",
    "RuleApplication",
    "Sequent",
    "ProofTree",
    "ProofCheckError",
    "premises_of",
    "check_proof",
    "valid",
    "check_inversion",
    "proof_to_dict",
    "proof_from_dict",
    "proof_to_json",
    "proof_from_json",
    "render_proof",
]


class Rule(Enum):
    STRUCTURAL_AXIOM = "StructuralAxiom"
    BOTTOM_AXIOM = "BottomAxiom"
    TOP_AXIOM = "TopAxiom"
    FIRST_MODAL_AXIOM = "FirstModalAxiom"
    SECOND_MODAL_AXIOM = "SecondModalAxiom"
    LEFT_WEAKENING = "LeftWeakening"
    RIGHT_WEAKENING = "RightWeakening"
    CUT = "Cut"
    AND_LEFT = "AndLeft"
    AND_RIGHT = "AndRight"
    OR_LEFT = "OrLeft"
    OR_RIGHT = "OrRight"
    NEG_CONTRAPOSITION = "NegContraposition"
    NEG_NEG_LEFT = "NegNegLeft"
    NEG_NEG_RIGHT = "NegNegRight"
    NABLA_LEFT = "NablaLeft"
    NEG_NABLA_LEFT = "NegNablaLeft"
    MACRO = "Macro"


AXIOMS = frozenset(
    {
        Rule.STRUCTURAL_AXIOM,
        Rule.BOTTOM_AXIOM,
        Rule.TOP_AXIOM,
        Rule.FIRST_MODAL_AXIOM,
        Rule.SECOND_MODAL_AXIOM,
    }
)

WEAKENINGS = frozenset({Rule.LEFT_WEAKENING, Rule.RIGHT_WEAKENING})


@dataclass(frozen=True)
class Sequent:
    antecedent: frozenset
    succedent: frozenset

    @classmethod
    def of(
        cls,
        antecedent: Iterable[Formula] = (),
        succedent: Iterable[Formula] = (),
    ) -> "Sequent":
        return cls(frozenset(antecedent), frozenset(succedent))

    @classmethod
    def parse(cls, text: str) -> "Sequent":
        ante, succ = parse_sequent_text(text)
        return cls.of(ante, succ)

    def sorted_antecedent(self) -> tuple[Formula, ...]:
        return tuple(sorted(self.antecedent, key=sort_key))

    def sorted_succedent(self) -> tuple[Formula, ...]:
        return tuple(sorted(self.succedent, key=sort_key))

    def variables(self) -> tuple[str, ...]:
        names: set[str] = set()
        for f in self.antecedent | self.succedent:
            names.update(variables(f))
        return tuple(sorted(names))

    def __str__(self) -> str:
        left = ", ".join(render(f) for f in self.sorted_antecedent())
        right = ", ".join(render(f) for f in self.sorted_succedent())
        return f"{left} => {right}".strip()


@dataclass(frozen=True)
class RuleApplication:
    rule: Rule
    principal: tuple[Formula, ...] = ()
    macro: Optional[str] = None

    def __str__(self) -> str:
        if self.rule is Rule.MACRO:
            return f"Macro[{self.macro}]"
        return self.rule.value


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: RuleApplication
    premises: tuple["ProofTree", ...] = ()

    def nodes(self) -> int:
        return 1 + sum(p.nodes() for p in self.premises)

    def has_macros(self) -> bool:
        return self.rule.rule is Rule.MACRO or any(
            p.has_macros() for p in self.premises
        )


class ProofCheckError(ValueError):
    """A rule-instance violation at a node, addressed by its path."""

    def __init__(self, path: tuple[int, ...], reason: str):
        self.path = path
        self.reason = reason
        where = "root" if not path else "node " + ".".join(map(str, path))
        super().__init__(f"{where}: {reason}")


def _the(side: frozenset, what: str) -> Formula:
    if len(side) != 1:
        raise ValueError(f"{what} must be a single formula")
    return next(iter(side))


def _require(cond: bool, reason: str) -> None:
    if not cond:
        raise ValueError(reason)


def premises_of(app: RuleApplication, conclusion: Sequent) -> list[Sequent]:
    """The exact premises a rule instance demands, or ValueError.

    Principal formulas disambiguate which formula the rule acts on; sides
    are sets, so the principal is removed from the conclusion side and the
    subformulas are joined in.
    """
    A, S = conclusion.antecedent, conclusion.succedent
    rule = app.rule
    pr = app.principal

    if rule is Rule.STRUCTURAL_AXIOM:
        f = _the(A, "antecedent of the structural axiom")
        _require(S == frozenset({f}), "structural axiom must be a => a")
        return []
    if rule is Rule.BOTTOM_AXIOM:
        _require(
            A == frozenset({Bottom()}) and not S,
            "bottom axiom must be bot => (empty succedent)",
        )
        return []
    if rule is Rule.TOP_AXIOM:
        _require(
            not A and S == frozenset({Top()}),
            "top axiom must be => top (empty antecedent)",
        )
        return []
    if rule is Rule.FIRST_MODAL_AXIOM:
        f = _the(A, "antecedent of the first modal axiom")
        _require(
            S == frozenset({Nabla(f)}),
            "first modal axiom must be a => #a",
        )
        return []
    if rule is Rule.SECOND_MODAL_AXIOM:
        _require(not A, "second modal axiom has an empty antecedent")
        f = _the(S, "succedent of the second modal axiom")
        ok = (
            isinstance(f, Or)
            and isinstance(f.left, Nabla)
            and f.right == Neg(f.left)
        )
        _require(ok, "second modal axiom must be => #a | ~#a")
        return []

    if rule is Rule.LEFT_WEAKENING:
        _require(len(pr) == 1, "left weakening needs its weakened formula")
        _require(pr[0] in A, "weakened formula is not in the antecedent")
        return [Sequent(A - {pr[0]}, S)]
    if rule is Rule.RIGHT_WEAKENING:
        _require(len(pr) == 1, "right weakening needs its weakened formula")
        _require(pr[0] in S, "weakened formula is not in the succedent")
        return [Sequent(A, S - {pr[0]})]
    if rule is Rule.CUT:
        _require(len(pr) == 1, "cut needs its cut formula")
        cutf = pr[0]
        return [Sequent(A, S | {cutf}), Sequent(A | {cutf}, S)]

    if rule is Rule.AND_LEFT:
        _require(len(pr) == 2, "the left meet rule needs two principal parts")
        a, b = pr
        _require(And(a, b) in A, "principal conjunction is not on the left")
        return [Sequent((A - {And(a, b)}) | {a, b}, S)]
    if rule is Rule.AND_RIGHT:
        _require(len(pr) == 2, "the right meet rule needs two principal parts")
        a, b = pr
        _require(And(a, b) in S, "principal conjunction is not on the right")
        rest = S - {And(a, b)}
        return [Sequent(A, rest | {a}), Sequent(A, rest | {b})]
    if rule is Rule.OR_LEFT:
        _require(len(pr) == 2, "the left join rule needs two principal parts")
        a, b = pr
        _require(Or(a, b) in A, "principal disjunction is not on the left")
        rest = A - {Or(a, b)}
        return [Sequent(rest | {a}, S), Sequent(rest | {b}, S)]
    if rule is Rule.OR_RIGHT:
        _require(len(pr) == 2, "the right join rule needs two principal parts")
        a, b = pr
        _require(Or(a, b) in S, "principal disjunction is not on the right")
        return [Sequent(A, (S - {Or(a, b)}) | {a, b})]

    if rule is Rule.NEG_CONTRAPOSITION:
        _require(
            len(A) <= 1 and len(S) <= 1,
            "contraposition requires singleton (or empty) sides",
        )
        _require(A or S, "contraposition conclusion cannot be empty")
        prem_succ: frozenset = frozenset()
        prem_ante: frozenset = frozenset()
        if A:
            f = next(iter(A))
            _require(
                isinstance(f, Neg),
                "contraposition antecedent must be a negation",
            )
            prem_succ = frozenset({f.arg})
        if S:
            g = next(iter(S))
            _require(
                isinstance(g, Neg),
                "contraposition succedent must be a negation",
            )
            prem_ante = frozenset({g.arg})
        return [Sequent(prem_ante, prem_succ)]

    if rule is Rule.NEG_NEG_LEFT:
        _require(len(pr) == 1, "the left double-negation rule needs its formula")
        a = pr[0]
        _require(Neg(Neg(a)) in A, "principal ~~a is not on the left")
        return [Sequent((A - {Neg(Neg(a))}) | {a}, S)]
    if rule is Rule.NEG_NEG_RIGHT:
        _require(len(pr) == 1, "the right double-negation rule needs its formula")
        a = pr[0]
        _require(Neg(Neg(a)) in S, "principal ~~a is not on the right")
        return [Sequent(A, (S - {Neg(Neg(a))}) | {a})]

    if rule is Rule.NABLA_LEFT:
        _require(len(pr) == 1, "the nabla rule needs its principal formula")
        a = pr[0]
        _require(Nabla(a) in A, "principal #a is not on the left")
        _require(
            all(isinstance(f, Nabla) for f in S),
            "the nabla rule requires every succedent formula to be #-prefixed",
        )
        return [Sequent((A - {Nabla(a)}) | {a}, S)]
    if rule is Rule.NEG_NABLA_LEFT:
        _require(len(pr) == 1, "the left neg-nabla rule needs its formula")
        a = pr[0]
        big = Nabla(Neg(Nabla(a)))
        _require(big in A, "principal #~#a is not on the left")
        return [Sequent((A - {big}) | {Neg(Nabla(a))}, S)]

    if rule is Rule.MACRO:
        raise ValueError(
            f"macro node {app.macro!r}: expand macros before checking"
        )
    raise ValueError(f"unknown rule {rule!r}")


def check_proof(t: ProofTree, _path: tuple[int, ...] = ()) -> None:
    """Verify every node is a legal rule instance; raise ProofCheckError."""
    try:
        expected = premises_of(t.rule, t.conclusion)
    except ValueError as e:
        raise ProofCheckError(_path, str(e)) from None
    if len(expected) != len(t.premises):
        raise ProofCheckError(
            _path,
            f"{t.rule} expects {len(expected)} premises, found {len(t.premises)}",
        )
    for i, (want, sub) in enumerate(zip(expected, t.premises)):
        if sub.conclusion != want:
            raise ProofCheckError(
                _path + (i,),
                f"premise mismatch: expected {want}, found {sub.conclusion}",
            )
        check_proof(sub, _path + (i,))


def valid(
    s: Sequent, max_vars: Optional[int] = DEFAULT_MAX_VARS
) -> EntailmentResult:
    """Semantic validity over S6: meet of the antecedent below join of the
    succedent under every valuation, with empty-side conventions top/bot.

    The countermodel is the lexicographically first failing
    (valuation, bound) pair in carrier order.
    """
    algebra = s6()
    names = s.variables()
    if max_vars is not None and len(names) > max_vars:
        from .semantics import BudgetError

        raise BudgetError(
            f"sequent has {len(names)} variables, budget is {max_vars}"
        )
    ante = s.sorted_antecedent()
    succ = s.sorted_succedent()
    for v in iter_valuations(algebra, names):
        m = algebra.meet_all(eval_formula(f, v) for f in ante)
        j = algebra.join_all(eval_formula(f, v) for f in succ)
        if not algebra.leq(m, j):
            bound = next(
                b
                for b in algebra.carrier
                if algebra.leq(b, m) and not algebra.leq(b, j)
            )
            return EntailmentResult(False, (v, bound))
    return EntailmentResult(True)


def check_inversion(app: RuleApplication, conclusion: Sequent) -> bool:
    """Semantic inversion: a valid conclusion forces valid premises.

    Holds for every rule except the weakenings, which are rejected.
    """
    if app.rule in WEAKENINGS:
        raise ValueError("the inversion principle excludes the weakenings")
    premises = premises_of(app, conclusion)
    if not valid(conclusion).holds:
        return True
    return all(valid(p).holds for p in premises)


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def proof_to_dict(t: ProofTree) -> dict:
    out = {
        "rule": t.rule.rule.value,
        "sequent": str(t.conclusion),
        "principal": [render(f) for f in t.rule.principal],
        "premises": [proof_to_dict(p) for p in t.premises],
    }
    if t.rule.macro is not None:
        out["macro"] = t.rule.macro
    return out


def proof_from_dict(data: dict) -> ProofTree:
    from .syntax import parse

    rule = Rule(data["rule"])
    principal = tuple(parse(text) for text in data.get("principal", []))
    app = RuleApplication(rule, principal, data.get("macro"))
    premises = tuple(proof_from_dict(p) for p in data.get("premises", []))
    return ProofTree(Sequent.parse(data["sequent"]), app, premises)


def proof_to_json(t: ProofTree, indent: Optional[int] = 2) -> str:
    return json.dumps(proof_to_dict(t), indent=indent)


def proof_from_json(text: str) -> ProofTree:
    return proof_from_dict(json.loads(text))


def render_proof(t: ProofTree, indent: int = 0) -> str:
    """Human-readable indented rendering of a proof tree."""
    pad = "  " * indent
    label = str(t.rule)
    lines = [f"{pad}[{label}] {t.conclusion}"]
    for p in t.premises:
        lines.append(render_proof(p, indent + 1))
    return "\n".join(lines)
