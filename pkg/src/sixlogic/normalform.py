"""Conjunctive-form normalization.

Every formula is equivalent over S6 to top, to bot, or to a conjunction of
disjunctions of *blocks*, where a block is one of the six shapes

    p,  ~p,  #p,  #~p,  ~#p,  ~#~p

for a variable p.  Normalization proceeds by a terminating rewrite system:
constants are eliminated by lattice-unit laws, negation is pushed inward by
De Morgan and involution, the modal operator is pushed inward by its
homomorphism and fixpoint laws, and disjunction is distributed over
conjunction.  Each rewrite is recorded as a named, position-tagged step, so
the whole run doubles as a derivation sketch that the sequent machinery can
expand into a primitive proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

from .semantics import BudgetError
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
    conj,
    disj,
    render,
)

__all__ = [
    "BlockShape",
    "Block",
    "FormTag",
    "ConjunctiveForm",
    "RewriteStep",
    "DerivedEquivalence",
    "BlockCapError",
    "DEFAULT_MAX_BLOCKS",
    "to_conjunctive_form",
    "block_count",
    "nf_derivation",
    "classify_block",
]

DEFAULT_MAX_BLOCKS = 10_000


class BlockCapError(ValueError):
    """Raised when distribution would exceed the block budget."""


class BlockShape(Enum):
    # enum order is the canonical block order within a clause
    P = 0
    NEG_P = 1
    NABLA_P = 2
    NABLA_NEG_P = 3
    NEG_NABLA_P = 4
    NEG_NABLA_NEG_P = 5


_SHAPE_BUILDERS: dict[BlockShape, Callable[[Formula], Formula]] = {
    BlockShape.P: lambda p: p,
    BlockShape.NEG_P: lambda p: Neg(p),
    BlockShape.NABLA_P: lambda p: Nabla(p),
    BlockShape.NABLA_NEG_P: lambda p: Nabla(Neg(p)),
    BlockShape.NEG_NABLA_P: lambda p: Neg(Nabla(p)),
    BlockShape.NEG_NABLA_NEG_P: lambda p: Neg(Nabla(Neg(p))),
}


@dataclass(frozen=True)
class Block:
    var: str
    shape: BlockShape

    def __post_init__(self):
        if not isinstance(self.shape, BlockShape):
            raise TypeError("shape must be a BlockShape")

    def __lt__(self, other: "Block") -> bool:
        # canonical order: variable name first, then shape enum order
        return (self.var, self.shape.value) < (other.var, other.shape.value)

    def to_formula(self) -> Formula:
        return _SHAPE_BUILDERS[self.shape](Var(self.var))

    def __str__(self) -> str:
        return render(self.to_formula())


def classify_block(f: Formula) -> Optional[Block]:
    """Return the Block for a formula of one of the six shapes, else None."""
    if isinstance(f, Var):
        return Block(f.name, BlockShape.P)
    if isinstance(f, Neg):
        g = f.arg
        if isinstance(g, Var):
            return Block(g.name, BlockShape.NEG_P)
        if isinstance(g, Nabla):
            h = g.arg
            if isinstance(h, Var):
                return Block(h.name, BlockShape.NEG_NABLA_P)
            if isinstance(h, Neg) and isinstance(h.arg, Var):
                return Block(h.arg.name, BlockShape.NEG_NABLA_NEG_P)
    if isinstance(f, Nabla):
        g = f.arg
        if isinstance(g, Var):
            return Block(g.name, BlockShape.NABLA_P)
        if isinstance(g, Neg) and isinstance(g.arg, Var):
            return Block(g.arg.name, BlockShape.NABLA_NEG_P)
    return None


# value of each block shape over the three-way class of its variable,
# recording only whether the block evaluates to 0; exact because zero-ness
# of every block depends only on whether the variable is 0, 1 or in between
_ZERO_AT = {
    BlockShape.P: ("zero",),
    BlockShape.NEG_P: ("one",),
    BlockShape.NABLA_P: ("zero",),
    BlockShape.NABLA_NEG_P: ("one",),
    BlockShape.NEG_NABLA_P: ("mid", "one"),
    BlockShape.NEG_NABLA_NEG_P: ("zero", "mid"),
}

# whether the block evaluates to 1, per three-way class; used for the
# clause-tautology test (a join is 1 iff some disjunct is 1, since every
# non-top element of S6 lies below 2/3)
_ONE_AT = {
    BlockShape.P: ("one",),
    BlockShape.NEG_P: ("zero",),
    BlockShape.NABLA_P: ("mid", "one"),
    BlockShape.NABLA_NEG_P: ("zero", "mid"),
    BlockShape.NEG_NABLA_P: ("zero",),
    BlockShape.NEG_NABLA_NEG_P: ("one",),
}

_CLASSES = ("zero", "mid", "one")


class FormTag(Enum):
    TOP = "top"
    BOTTOM = "bottom"
    CNF = "cnf"


Clause = tuple[Block, ...]


@dataclass(frozen=True)
class ConjunctiveForm:
    """Top, Bottom, or a canonical conjunction of disjunctions of blocks.

    Clauses and blocks are sorted and de-duplicated, so structural equality
    is semantic identity of the normal form.
    """

    tag: FormTag
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        if self.tag is FormTag.CNF:
            if not self.clauses or any(not c for c in self.clauses):
                raise ValueError("CNF requires nonempty clauses")
        elif self.clauses:
            raise ValueError("constant forms carry no clauses")

    def as_formula(self) -> Formula:
        if self.tag is FormTag.TOP:
            return TOP
        if self.tag is FormTag.BOTTOM:
            return BOT
        return conj([disj([b.to_formula() for b in c]) for c in self.clauses])

    def __str__(self) -> str:
        if self.tag is not FormTag.CNF:
            return render(self.as_formula())
        parts = []
        for c in self.clauses:
            inner = " | ".join(str(b) for b in c)
            if len(self.clauses) > 1 and len(c) > 1:
                inner = f"({inner})"
            parts.append(inner)
        return " & ".join(parts)


def block_count(cf: ConjunctiveForm) -> int:
    """Number of blocks: 0 for the constants, else the sum of clause sizes."""
    return sum(len(c) for c in cf.clauses)


# --------------------------------------------------------------------------
# rewrite engine
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RewriteStep:
    """One rewrite: ``law`` applied at ``path`` turning source into target.

    ``path`` is a tuple of child indices from the root (0 = unary argument
    or left child, 1 = right child); ``before``/``after`` are the rewritten
    subformulas, ``source``/``target`` the whole formulas.
    """

    law: str
    path: tuple[int, ...]
    before: Formula
    after: Formula
    source: Formula
    target: Formula


def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Neg, Nabla)):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return (f.left, f.right)
    return ()


def _replace(f: Formula, path: tuple[int, ...], sub: Formula) -> Formula:
    if not path:
        return sub
    head, rest = path[0], path[1:]
    if isinstance(f, Neg):
        return Neg(_replace(f.arg, rest, sub))
    if isinstance(f, Nabla):
        return Nabla(_replace(f.arg, rest, sub))
    if isinstance(f, And):
        if head == 0:
            return And(_replace(f.left, rest, sub), f.right)
        return And(f.left, _replace(f.right, rest, sub))
    if isinstance(f, Or):
        if head == 0:
            return Or(_replace(f.left, rest, sub), f.right)
        return Or(f.left, _replace(f.right, rest, sub))
    raise ValueError("path runs past a leaf")


# each law: name -> matcher returning the rewritten subformula or None
def _law_neg_top(f):
    return BOT if isinstance(f, Neg) and isinstance(f.arg, Top) else None


def _law_neg_bottom(f):
    return TOP if isinstance(f, Neg) and isinstance(f.arg, Bottom) else None


def _law_nabla_top(f):
    return TOP if isinstance(f, Nabla) and isinstance(f.arg, Top) else None


def _law_nabla_bottom(f):
    return BOT if isinstance(f, Nabla) and isinstance(f.arg, Bottom) else None


def _law_meet_top(f):
    return f.left if isinstance(f, And) and isinstance(f.right, Top) else None


def _law_meet_top_left(f):
    return f.right if isinstance(f, And) and isinstance(f.left, Top) else None


def _law_meet_bottom(f):
    return BOT if isinstance(f, And) and isinstance(f.right, Bottom) else None


def _law_meet_bottom_left(f):
    return BOT if isinstance(f, And) and isinstance(f.left, Bottom) else None


def _law_join_bottom(f):
    return f.left if isinstance(f, Or) and isinstance(f.right, Bottom) else None


def _law_join_bottom_left(f):
    return f.right if isinstance(f, Or) and isinstance(f.left, Bottom) else None


def _law_join_top(f):
    return TOP if isinstance(f, Or) and isinstance(f.right, Top) else None


def _law_join_top_left(f):
    return TOP if isinstance(f, Or) and isinstance(f.left, Top) else None


def _law_double_neg(f):
    return f.arg.arg if isinstance(f, Neg) and isinstance(f.arg, Neg) else None


def _law_dm_neg_meet(f):
    if isinstance(f, Neg) and isinstance(f.arg, And):
        return Or(Neg(f.arg.left), Neg(f.arg.right))
    return None


def _law_dm_neg_join(f):
    if isinstance(f, Neg) and isinstance(f.arg, Or):
        return And(Neg(f.arg.left), Neg(f.arg.right))
    return None


def _law_nabla_meet(f):
    if isinstance(f, Nabla) and isinstance(f.arg, And):
        return And(Nabla(f.arg.left), Nabla(f.arg.right))
    return None


def _law_nabla_join(f):
    if isinstance(f, Nabla) and isinstance(f.arg, Or):
        return Or(Nabla(f.arg.left), Nabla(f.arg.right))
    return None


def _law_nabla_idem(f):
    if isinstance(f, Nabla) and isinstance(f.arg, Nabla):
        return f.arg
    return None


def _law_nabla_neg_nabla(f):
    if (
        isinstance(f, Nabla)
        and isinstance(f.arg, Neg)
        and isinstance(f.arg.arg, Nabla)
    ):
        return f.arg
    return None


def _law_or_over_and_left(f):
    if isinstance(f, Or) and isinstance(f.left, And):
        a, b, c = f.left.left, f.left.right, f.right
        return And(Or(a, c), Or(b, c))
    return None


def _law_or_over_and(f):
    if isinstance(f, Or) and isinstance(f.right, And):
        a, b, c = f.left, f.right.left, f.right.right
        return And(Or(a, b), Or(a, c))
    return None


_CONSTANT_LAWS = [
    ("neg-top", _law_neg_top),
    ("neg-bottom", _law_neg_bottom),
    ("nabla-top", _law_nabla_top),
    ("nabla-bottom", _law_nabla_bottom),
    ("meet-top", _law_meet_top),
    ("meet-top-left", _law_meet_top_left),
    ("meet-bottom", _law_meet_bottom),
    ("meet-bottom-left", _law_meet_bottom_left),
    ("join-bottom", _law_join_bottom),
    ("join-bottom-left", _law_join_bottom_left),
    ("join-top", _law_join_top),
    ("join-top-left", _law_join_top_left),
]

_PUSH_LAWS = [
    ("double-neg", _law_double_neg),
    ("dm-neg-meet", _law_dm_neg_meet),
    ("dm-neg-join", _law_dm_neg_join),
    ("nabla-idem", _law_nabla_idem),
    ("nabla-neg-nabla", _law_nabla_neg_nabla),
    ("nabla-meet", _law_nabla_meet),
    ("nabla-join", _law_nabla_join),
]

_DIST_LAWS = [
    ("or-over-and-left", _law_or_over_and_left),
    ("or-over-and", _law_or_over_and),
]

REWRITE_LAWS = dict(_CONSTANT_LAWS + _PUSH_LAWS + _DIST_LAWS)


def _find_step(f: Formula, laws, path=()) -> Optional[tuple[tuple[int, ...], str, Formula, Formula]]:
    for name, law in laws:
        out = law(f)
        if out is not None:
            return path, name, f, out
    for i, child in enumerate(_children(f)):
        found = _find_step(child, laws, path + (i,))
        if found is not None:
            return found
    return None


def _count_atoms(f: Formula) -> int:
    if isinstance(f, (Var, Bottom, Top)):
        return 1
    if isinstance(f, (Neg, Nabla)):
        return _count_atoms(f.arg)
    return _count_atoms(f.left) + _count_atoms(f.right)


def _run_phase(
    f: Formula,
    laws,
    steps: list[RewriteStep],
    max_blocks: Optional[int],
) -> Formula:
    while True:
        found = _find_step(f, laws)
        if found is None:
            return f
        path, name, before, after = found
        target = _replace(f, path, after)
        if max_blocks is not None and _count_atoms(target) > max_blocks:
            raise BlockCapError(
                f"normalization exceeds the block budget of {max_blocks}"
            )
        steps.append(RewriteStep(name, path, before, after, f, target))
        f = target


@dataclass(frozen=True)
class DerivedEquivalence:
    """A rewrite chain witnessing that ``source`` and ``target`` are
    inter-derivable; each step names the lattice/negation/modal law used.

    ``forward_proof()`` and ``backward_proof()`` produce the two sequent
    derivations (source => target and target => source) at the macro level;
    expanding their macros yields primitive derivations.
    """

    source: Formula
    target: Formula
    steps: tuple[RewriteStep, ...]

    def forward_proof(self):
        from .macros import equivalence_proof

        return equivalence_proof(self, forward=True)

    def backward_proof(self):
        from .macros import equivalence_proof

        return equivalence_proof(self, forward=False)


def nf_derivation(
    f: Formula, max_blocks: Optional[int] = DEFAULT_MAX_BLOCKS
) -> DerivedEquivalence:
    """Rewrite ``f`` to a conjunctive form, recording every step.

    The target is top, bot, or a raw (uncanonicalized) conjunction of
    disjunctions of blocks; a formula already in block shape yields an
    empty step list.
    """
    steps: list[RewriteStep] = []
    g = _run_phase(f, _CONSTANT_LAWS, steps, max_blocks)
    if not isinstance(g, (Bottom, Top)):
        g = _run_phase(g, _PUSH_LAWS, steps, max_blocks)
        g = _run_phase(g, _DIST_LAWS, steps, max_blocks)
    return DerivedEquivalence(f, g, tuple(steps))


# --------------------------------------------------------------------------
# canonical forms
# --------------------------------------------------------------------------

def _clauses_of(f: Formula) -> list[list[Block]]:
    """Split a distributed block formula into clauses of blocks."""
    clauses = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.append(g.right)
            stack.append(g.left)
        else:
            blocks = []
            inner = [g]
            while inner:
                h = inner.pop()
                if isinstance(h, Or):
                    inner.append(h.right)
                    inner.append(h.left)
                else:
                    b = classify_block(h)
                    if b is None:
                        raise ValueError(
                            f"normalization left a non-block atom: {render(h)}"
                        )
                    blocks.append(b)
            clauses.append(blocks)
    return clauses


def _clause_tautological(clause: Clause) -> bool:
    # a clause is identically top iff for some variable the join of its
    # blocks on that variable is 1 at all six values
    by_var: dict[str, list[BlockShape]] = {}
    for b in clause:
        by_var.setdefault(b.var, []).append(b.shape)
    for shapes in by_var.values():
        if all(
            any(cls in _ONE_AT[s] for s in shapes) for cls in _CLASSES
        ):
            return True
    return False


def _cnf_is_bottom(clauses: Sequence[Clause], class_budget: int = 14) -> bool:
    """Exact test for equivalence to bot via the three-way abstraction.

    A conjunction of clauses is identically 0 iff under every valuation
    some clause has all blocks 0, and zero-ness of a block depends only on
    whether its variable is 0, 1 or strictly between.
    """
    feasible = []
    for clause in clauses:
        need: dict[str, set[str]] = {}
        ok = True
        for b in clause:
            allowed = set(_ZERO_AT[b.shape])
            need[b.var] = need.get(b.var, set(_CLASSES)) & allowed
            if not need[b.var]:
                ok = False
                break
        if ok:
            feasible.append(need)
    if not feasible:
        return False
    names = sorted({v for need in feasible for v in need})
    if len(names) > class_budget:
        raise BudgetError(
            f"bottom detection over {len(names)} variables exceeds the budget"
        )
    for combo in itertools.product(_CLASSES, repeat=len(names)):
        env = dict(zip(names, combo))
        if not any(
            all(env[v] in allowed for v, allowed in need.items())
            for need in feasible
        ):
            return False
    return True


def to_conjunctive_form(
    f: Formula,
    max_blocks: Optional[int] = DEFAULT_MAX_BLOCKS,
    simplify: bool = False,
) -> ConjunctiveForm:
    """Normalize ``f`` to a canonical ConjunctiveForm.

    The result is Top exactly when ``f`` is valid, Bottom exactly when
    ``f`` is equivalent to bot, and otherwise a canonically ordered CNF
    over the six block shapes.  With ``simplify``, clauses that are
    identically top are dropped and subsumed clauses removed; the default
    keeps the raw clause structure produced by distribution.
    """
    derivation = nf_derivation(f, max_blocks=max_blocks)
    g = derivation.target
    if isinstance(g, Top):
        return ConjunctiveForm(FormTag.TOP)
    if isinstance(g, Bottom):
        return ConjunctiveForm(FormTag.BOTTOM)
    raw = _clauses_of(g)
    clauses = sorted(
        {tuple(sorted(set(c))) for c in raw}
    )
    if all(_clause_tautological(c) for c in clauses):
        return ConjunctiveForm(FormTag.TOP)
    if _cnf_is_bottom(clauses):
        return ConjunctiveForm(FormTag.BOTTOM)
    if simplify:
        clauses = [c for c in clauses if not _clause_tautological(c)]
        kept = []
        for c in clauses:
            if not any(
                set(other) < set(c) for other in clauses
            ):
                kept.append(c)
        clauses = kept
    if max_blocks is not None and sum(len(c) for c in clauses) > max_blocks:
        raise BlockCapError(
            f"conjunctive form exceeds the block budget of {max_blocks}"
        )
    return ConjunctiveForm(FormTag.CNF, tuple(clauses))
