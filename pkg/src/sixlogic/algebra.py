"""Finite involutive Stone algebras: carriers, operation tables, filters, audits.

Algebras are stored as dense operation tables over a small ordered carrier
(at most six elements for the builtins), validated eagerly, and immutable
after construction.  The six-element algebra S6 with carrier
{0, 1/3, N, B, 2/3, 1} is the generating algebra all semantic decision
procedures reduce to.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Optional, Sequence

__all__ = [
    "TruthValue",
    "FiniteAlgebra",
    "Filter",
    "AlgebraError",
    "builtin_algebra",
    "audit_identities",
    "IDENTITY_NAMES",
    "delta",
    "generated_filter",
    "all_lattice_filters",
    "k_elements",
    "swap_NB",
    "load_algebra_table",
    "dump_algebra_table",
]


class AlgebraError(ValueError):
    """Raised for ill-formed tables or cross-algebra value mixing."""


class TruthValue:
    """One element of a finite algebra's carrier.

    Identity is (algebra, index); values from different algebras never
    compare equal and are rejected by all operations.
    """

    __slots__ = ("algebra", "index", "name")

    def __init__(self, algebra: "FiniteAlgebra", index: int, name: str):
        self.algebra = algebra
        self.index = index
        self.name = name

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TruthValue)
            and other.algebra is self.algebra
            and other.index == self.index
        )

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.index))

    def __repr__(self) -> str:
        return f"TruthValue({self.name!r})"

    def __str__(self) -> str:
        return self.name


class FiniteAlgebra:
    """A bounded distributive lattice with De Morgan negation and a nabla table.

    The constructor checks, exhaustively over the carrier: that ``leq`` is a
    partial order with ``meet``/``join`` its glb/lub, distributivity, the two
    De Morgan laws, and (when ``s_algebra`` is claimed) the four equations
    characterising involutive Stone algebras.  Pass ``unchecked=True`` to
    skip validation, e.g. for deliberately broken negative-test algebras.
    """

    def __init__(
        self,
        name: str,
        element_names: Sequence[str],
        leq: Sequence[Sequence[bool]],
        meet: Sequence[Sequence[int]],
        join: Sequence[Sequence[int]],
        neg: Sequence[int],
        nabla: Sequence[int],
        bottom: int,
        top: int,
        s_algebra: bool = True,
        unchecked: bool = False,
    ):
        n = len(element_names)
        if n == 0:
            raise AlgebraError("empty carrier")
        if len(set(element_names)) != n:
            raise AlgebraError("duplicate element names")
        self.name = name
        self._leq = tuple(tuple(bool(x) for x in row) for row in leq)
        self._meet = tuple(tuple(int(x) for x in row) for row in meet)
        self._join = tuple(tuple(int(x) for x in row) for row in join)
        self._neg = tuple(int(x) for x in neg)
        self._nabla = tuple(int(x) for x in nabla)
        self._bottom = int(bottom)
        self._top = int(top)
        self.s_algebra = bool(s_algebra)
        self.carrier = tuple(
            TruthValue(self, i, element_names[i]) for i in range(n)
        )
        self._by_name = {v.name: v for v in self.carrier}
        for table, arity, label in (
            (self._leq, 2, "leq"),
            (self._meet, 2, "meet"),
            (self._join, 2, "join"),
            (self._neg, 1, "neg"),
            (self._nabla, 1, "nabla"),
        ):
            rows = table if arity == 2 else (table,)
            if len(rows) != (n if arity == 2 else 1) or any(
                len(r) != n for r in rows
            ):
                raise AlgebraError(f"{label} table has wrong shape")
        for row in itertools.chain(self._meet, self._join):
            for x in row:
                if not 0 <= x < n:
                    raise AlgebraError("table entry outside carrier")
        for x in itertools.chain(self._neg, self._nabla, (bottom, top)):
            if not 0 <= x < n:
                raise AlgebraError("table entry outside carrier")
        if not unchecked:
            self._validate()

    # -- raw index operations ------------------------------------------------

    def _check(self, *values: TruthValue) -> tuple[int, ...]:
        for v in values:
            if not isinstance(v, TruthValue) or v.algebra is not self:
                raise AlgebraError(
                    f"value {v!r} does not belong to algebra {self.name!r}"
                )
        return tuple(v.index for v in values)

    def value(self, name: str) -> TruthValue:
        try:
            return self._by_name[name]
        except KeyError:
            raise AlgebraError(f"no element named {name!r} in {self.name}") from None

    @property
    def bottom(self) -> TruthValue:
        return self.carrier[self._bottom]

    @property
    def top(self) -> TruthValue:
        return self.carrier[self._top]

    def leq(self, a: TruthValue, b: TruthValue) -> bool:
        i, j = self._check(a, b)
        return self._leq[i][j]

    def meet(self, a: TruthValue, b: TruthValue) -> TruthValue:
        i, j = self._check(a, b)
        return self.carrier[self._meet[i][j]]

    def join(self, a: TruthValue, b: TruthValue) -> TruthValue:
        i, j = self._check(a, b)
        return self.carrier[self._join[i][j]]

    def neg(self, a: TruthValue) -> TruthValue:
        (i,) = self._check(a)
        return self.carrier[self._neg[i]]

    def nabla(self, a: TruthValue) -> TruthValue:
        (i,) = self._check(a)
        return self.carrier[self._nabla[i]]

    def meet_all(self, values: Iterable[TruthValue]) -> TruthValue:
        out = self.top
        for v in values:
            out = self.meet(out, v)
        return out

    def join_all(self, values: Iterable[TruthValue]) -> TruthValue:
        out = self.bottom
        for v in values:
            out = self.join(out, v)
        return out

    def __len__(self) -> int:
        return len(self.carrier)

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name!r}, {len(self.carrier)} elements)"

    # -- validation ----------------------------------------------------------

    def _validate(self) -> None:
        n = len(self.carrier)
        rng = range(n)
        L, M, J = self._leq, self._meet, self._join
        for a in rng:
            if not L[a][a]:
                raise AlgebraError("leq is not reflexive")
            for b in rng:
                if L[a][b] and L[b][a] and a != b:
                    raise AlgebraError("leq is not antisymmetric")
                for c in rng:
                    if L[a][b] and L[b][c] and not L[a][c]:
                        raise AlgebraError("leq is not transitive")
        for a, b in itertools.product(rng, repeat=2):
            m, j = M[a][b], J[a][b]
            if not (L[m][a] and L[m][b]):
                raise AlgebraError("meet is not a lower bound")
            if not (L[a][j] and L[b][j]):
                raise AlgebraError("join is not an upper bound")
            for c in rng:
                if L[c][a] and L[c][b] and not L[c][m]:
                    raise AlgebraError("meet is not the greatest lower bound")
                if L[a][c] and L[b][c] and not L[j][c]:
                    raise AlgebraError("join is not the least upper bound")
            if not L[self._bottom][a] or not L[a][self._top]:
                raise AlgebraError("bottom/top are not lattice bounds")
        for a, b, c in itertools.product(rng, repeat=3):
            if M[a][J[b][c]] != J[M[a][b]][M[a][c]]:
                raise AlgebraError("lattice is not distributive")
        for a in rng:
            if self._neg[self._neg[a]] != a:
                raise AlgebraError("negation is not involutive")
        for a, b in itertools.product(rng, repeat=2):
            if self._neg[M[a][b]] != J[self._neg[a]][self._neg[b]]:
                raise AlgebraError("negation does not satisfy De Morgan")
        if self.s_algebra:
            for ident, holds, witness in audit_identities(self):
                if ident in ("IS1", "IS2", "IS3", "IS4") and not holds:
                    raise AlgebraError(
                        f"claimed S-algebra violates {ident} at "
                        f"{tuple(str(w) for w in witness)}"
                    )


def delta(algebra: FiniteAlgebra, x: TruthValue) -> TruthValue:
    """The derived operator neg(nabla(neg(x))); never a stored table."""
    return algebra.neg(algebra.nabla(algebra.neg(x)))


# --------------------------------------------------------------------------
# identity auditor
# --------------------------------------------------------------------------

def _d(a: FiniteAlgebra, x: TruthValue) -> TruthValue:
    return delta(a, x)


# name -> (arity, lhs, rhs) with lhs/rhs taking (algebra, *values)
_IDENTITIES = {
    "DM1": (1, lambda a, x: a.neg(a.neg(x)), lambda a, x: x),
    "DM2": (
        2,
        lambda a, x, y: a.neg(a.meet(x, y)),
        lambda a, x, y: a.join(a.neg(x), a.neg(y)),
    ),
    "IS1": (0, lambda a: a.nabla(a.bottom), lambda a: a.bottom),
    "IS2": (1, lambda a, x: a.meet(x, a.nabla(x)), lambda a, x: x),
    "IS3": (
        2,
        lambda a, x, y: a.nabla(a.meet(x, y)),
        lambda a, x, y: a.meet(a.nabla(x), a.nabla(y)),
    ),
    "IS4": (
        1,
        lambda a, x: a.meet(a.neg(a.nabla(x)), a.nabla(x)),
        lambda a, x: a.bottom,
    ),
    "IS5": (0, lambda a: a.nabla(a.top), lambda a: a.top),
    "IS6": (
        1,
        lambda a, x: a.join(a.neg(x), a.nabla(x)),
        lambda a, x: a.top,
    ),
    "IS7": (1, lambda a, x: a.nabla(a.nabla(x)), lambda a, x: a.nabla(x)),
    "IS8": (
        1,
        lambda a, x: a.nabla(a.neg(a.nabla(x))),
        lambda a, x: a.neg(a.nabla(x)),
    ),
    "IS9": (
        1,
        lambda a, x: a.nabla(a.join(x, a.neg(x))),
        lambda a, x: a.top,
    ),
    "IS10": (
        1,
        lambda a, x: a.meet(x, a.neg(a.nabla(x))),
        lambda a, x: a.bottom,
    ),
    "IS11": (
        2,
        lambda a, x, y: a.nabla(a.join(x, a.nabla(y))),
        lambda a, x, y: a.join(a.nabla(x), a.nabla(y)),
    ),
    "IS12": (1, lambda a, x: a.meet(_d(a, x), x), lambda a, x: _d(a, x)),
    "IS13": (1, lambda a, x: _d(a, a.nabla(x)), lambda a, x: a.nabla(x)),
    "IS14": (1, lambda a, x: a.nabla(_d(a, x)), lambda a, x: _d(a, x)),
    "IS15": (
        1,
        lambda a, x: _d(a, a.meet(x, a.neg(x))),
        lambda a, x: a.bottom,
    ),
    "IS16": (
        2,
        lambda a, x, y: _d(a, a.join(x, y)),
        lambda a, x, y: a.join(_d(a, x), _d(a, y)),
    ),
    "IS17": (
        2,
        lambda a, x, y: _d(a, a.meet(x, y)),
        lambda a, x, y: a.meet(_d(a, x), _d(a, y)),
    ),
}

IDENTITY_NAMES = tuple(_IDENTITIES)

AuditEntry = tuple[str, bool, Optional[tuple[TruthValue, ...]]]


def audit_identities(a: FiniteAlgebra) -> list[AuditEntry]:
    """Check DM1, DM2 and IS1-IS17 over every tuple of carrier elements.

    Returns one ``(identity, holds, witness)`` entry per law; ``witness``
    is a failing assignment when ``holds`` is false.
    """
    report: list[AuditEntry] = []
    for ident, (arity, lhs, rhs) in _IDENTITIES.items():
        witness = None
        holds = True
        for args in itertools.product(a.carrier, repeat=arity):
            if lhs(a, *args) != rhs(a, *args):
                holds = False
                witness = args
                break
        report.append((ident, holds, witness))
    return report


# --------------------------------------------------------------------------
# filters
# --------------------------------------------------------------------------

class Filter:
    """A lattice filter, stored as a bit mask over the carrier."""

    __slots__ = ("algebra", "mask")

    def __init__(self, algebra: FiniteAlgebra, members: Iterable[TruthValue]):
        mask = 0
        for v in members:
            algebra._check(v)
            mask |= 1 << v.index
        self.algebra = algebra
        self.mask = mask
        self._validate()

    def _validate(self) -> None:
        a = self.algebra
        if not self.contains(a.top):
            raise AlgebraError("filter must contain top")
        for v in self.members():
            for w in a.carrier:
                if a.leq(v, w) and not self.contains(w):
                    raise AlgebraError("filter is not upward closed")
            for w in self.members():
                if not self.contains(a.meet(v, w)):
                    raise AlgebraError("filter is not closed under meet")

    def contains(self, v: TruthValue) -> bool:
        self.algebra._check(v)
        return bool(self.mask >> v.index & 1)

    def members(self) -> tuple[TruthValue, ...]:
        return tuple(
            v for v in self.algebra.carrier if self.mask >> v.index & 1
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Filter)
            and other.algebra is self.algebra
            and other.mask == self.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.mask))

    def __repr__(self) -> str:
        inner = ", ".join(v.name for v in self.members())
        return f"Filter({{{inner}}})"


def generated_filter(
    algebra: FiniteAlgebra, gens: Iterable[TruthValue]
) -> Filter:
    """Smallest filter containing ``gens``: upward closure of their meet.

    An empty generator set yields the least filter {top}.
    """
    base = algebra.meet_all(gens)
    return Filter(
        algebra, (v for v in algebra.carrier if algebra.leq(base, v))
    )


def all_lattice_filters(algebra: FiniteAlgebra) -> list[Filter]:
    """Every lattice filter of the algebra, by exhaustive subset check."""
    n = len(algebra.carrier)
    out = []
    for mask in range(1, 1 << n):
        members = [v for v in algebra.carrier if mask >> v.index & 1]
        if algebra.top not in members:
            continue
        ok = all(
            algebra.meet(v, w) in members
            for v in members
            for w in members
        ) and all(
            w in members
            for v in members
            for w in algebra.carrier
            if algebra.leq(v, w)
        )
        if ok:
            out.append(Filter(algebra, members))
    return out


def k_elements(algebra: FiniteAlgebra) -> set[TruthValue]:
    """Complemented elements whose lattice complement equals their negation."""
    out = set()
    for a in algebra.carrier:
        for b in algebra.carrier:
            if (
                algebra.join(a, b) == algebra.top
                and algebra.meet(a, b) == algebra.bottom
                and algebra.neg(a) == b
            ):
                out.add(a)
                break
    return out


# --------------------------------------------------------------------------
# builtin algebras
# --------------------------------------------------------------------------

def _chain_algebra(name: str, element_names: Sequence[str]) -> FiniteAlgebra:
    n = len(element_names)
    leq = [[i <= j for j in range(n)] for i in range(n)]
    meet = [[min(i, j) for j in range(n)] for i in range(n)]
    join = [[max(i, j) for j in range(n)] for i in range(n)]
    neg = [n - 1 - i for i in range(n)]
    nabla = [0] + [n - 1] * (n - 1)
    return FiniteAlgebra(
        name, element_names, leq, meet, join, neg, nabla, 0, n - 1
    )


def _s6() -> FiniteAlgebra:
    names = ["0", "1/3", "N", "B", "2/3", "1"]
    # Hasse diagram: 0 < 1/3 < {N, B} < 2/3 < 1 with N, B incomparable
    edges = [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)]
    rel = {(i, i) for i in range(6)} | set(edges)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    leq = [[(i, j) in rel for j in range(6)] for i in range(6)]

    def glb(i, j):
        lbs = [c for c in range(6) if leq[c][i] and leq[c][j]]
        return next(c for c in lbs if all(leq[d][c] for d in lbs))

    def lub(i, j):
        ubs = [c for c in range(6) if leq[i][c] and leq[j][c]]
        return next(c for c in ubs if all(leq[c][d] for d in ubs))

    meet = [[glb(i, j) for j in range(6)] for i in range(6)]
    join = [[lub(i, j) for j in range(6)] for i in range(6)]
    neg = [5, 4, 2, 3, 1, 0]  # fixes N and B, swaps 1/3 with 2/3
    nabla = [0, 5, 5, 5, 5, 5]
    return FiniteAlgebra("S6", names, leq, meet, join, neg, nabla, 0, 5)


def _b4_demorgan() -> FiniteAlgebra:
    names = ["0", "N", "B", "1"]
    # diamond: 0 < N, B < 1
    rel = {(i, i) for i in range(4)} | {(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)}
    leq = [[(i, j) in rel for j in range(4)] for i in range(4)]
    meet = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
    join = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]]
    neg = [3, 1, 2, 0]
    nabla = [0, 1, 2, 3]  # identity: not a valid nabla, kept for negative tests
    return FiniteAlgebra(
        "B4_demorgan", names, leq, meet, join, neg, nabla, 0, 3,
        s_algebra=False,
    )


_BUILTINS = {
    "S6": _s6,
    "L2": lambda: _chain_algebra("L2", ["0", "1"]),
    "L3": lambda: _chain_algebra("L3", ["0", "1/2", "1"]),
    "L4": lambda: _chain_algebra("L4", ["0", "1/3", "2/3", "1"]),
    "L5": lambda: _chain_algebra("L5", ["0", "1/4", "1/2", "3/4", "1"]),
    "B4_demorgan": _b4_demorgan,
}

BUILTIN_NAMES = tuple(_BUILTINS)


@lru_cache(maxsize=None)
def builtin_algebra(name: str) -> FiniteAlgebra:
    """Return a shared instance of a builtin algebra by name.

    Supported names: S6, L2, L3, L4, L5, B4_demorgan.  Instances are
    cached so values from repeated calls interoperate.
    """
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise AlgebraError(
            f"unknown algebra {name!r}; supported: {', '.join(_BUILTINS)}"
        ) from None
    return factory()


def swap_NB(x: TruthValue) -> TruthValue:
    """The S6 automorphism exchanging N and B and fixing the chain part."""
    s6 = builtin_algebra("S6")
    if x.algebra is not s6:
        raise AlgebraError("swap_NB is defined on the S6 carrier only")
    table = {"N": "B", "B": "N"}
    return s6.value(table.get(x.name, x.name))


# --------------------------------------------------------------------------
# plain-text table format
# --------------------------------------------------------------------------

def dump_algebra_table(a: FiniteAlgebra) -> str:
    """Render an algebra in the plain-text grid format (see README)."""
    lines = ["carrier " + " ".join(v.name for v in a.carrier)]
    lines.append("leq")
    for row in a._leq:
        lines.append("  " + " ".join("1" if x else "0" for x in row))
    for label, table in (("meet", a._meet), ("join", a._join)):
        lines.append(label)
        for row in table:
            lines.append("  " + " ".join(a.carrier[i].name for i in row))
    lines.append("neg " + " ".join(a.carrier[i].name for i in a._neg))
    lines.append("nabla " + " ".join(a.carrier[i].name for i in a._nabla))
    lines.append(f"bottom {a.bottom.name}")
    lines.append(f"top {a.top.name}")
    lines.append(f"s_algebra {'true' if a.s_algebra else 'false'}")
    return "\n".join(lines) + "\n"


def load_algebra_table(text: str, name: str = "custom") -> FiniteAlgebra:
    """Parse the plain-text grid format produced by ``dump_algebra_table``.

    Sections: ``carrier`` (one line of element names), ``leq`` (n rows of
    0/1), ``meet``/``join`` (n rows of element names), ``neg``/``nabla``
    (one row each), ``bottom``/``top`` (one element), optional
    ``s_algebra true|false``.  Whitespace separated; ``#`` starts a comment.
    """
    tokens_by_line = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            tokens_by_line.append(line.split())
    it = iter(tokens_by_line)

    def take() -> list[str]:
        try:
            return next(it)
        except StopIteration:
            raise AlgebraError("unexpected end of algebra file") from None

    header = take()
    if header[0] != "carrier" or len(header) < 2:
        raise AlgebraError("algebra file must start with a carrier line")
    names = header[1:]
    n = len(names)
    index = {nm: i for i, nm in enumerate(names)}
    if len(index) != n:
        raise AlgebraError("duplicate carrier element names")

    def element(tok: str) -> int:
        if tok not in index:
            raise AlgebraError(f"unknown element {tok!r}")
        return index[tok]

    sections: dict[str, object] = {}
    line = take()
    while True:
        key = line[0]
        if key == "leq":
            rows = []
            for _ in range(n):
                row = take()
                if len(row) != n or any(t not in ("0", "1") for t in row):
                    raise AlgebraError("leq rows must be n entries of 0/1")
                rows.append([t == "1" for t in row])
            sections[key] = rows
        elif key in ("meet", "join"):
            rows = []
            for _ in range(n):
                row = take()
                if len(row) != n:
                    raise AlgebraError(f"{key} rows must have n entries")
                rows.append([element(t) for t in row])
            sections[key] = rows
        elif key in ("neg", "nabla"):
            if len(line) != n + 1:
                raise AlgebraError(f"{key} line must list n elements")
            sections[key] = [element(t) for t in line[1:]]
        elif key in ("bottom", "top"):
            if len(line) != 2:
                raise AlgebraError(f"{key} line must name one element")
            sections[key] = element(line[1])
        elif key == "s_algebra":
            if len(line) != 2 or line[1] not in ("true", "false"):
                raise AlgebraError("s_algebra must be true or false")
            sections[key] = line[1] == "true"
        else:
            raise AlgebraError(f"unknown section {key!r}")
        try:
            line = next(it)
        except StopIteration:
            break

    missing = {"leq", "meet", "join", "neg", "nabla", "bottom", "top"} - set(
        sections
    )
    if missing:
        raise AlgebraError(f"missing sections: {', '.join(sorted(missing))}")
    return FiniteAlgebra(
        name,
        names,
        sections["leq"],
        sections["meet"],
        sections["join"],
        sections["neg"],
        sections["nabla"],
        sections["bottom"],
        sections["top"],
        s_algebra=sections.get("s_algebra", True),
    )
