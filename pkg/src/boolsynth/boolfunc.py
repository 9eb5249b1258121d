"""Boolean functions over named variables, stored as explicit truth tables.

A function's scope is an ordered set of variable names; the truth table is a
boolean numpy array of shape ``(2,) * len(scope)`` whose axis ``i`` carries
variable ``scope[i]`` (index 0 = False, index 1 = True).  Valuations enumerate
lexicographically with False before True, which equals C-order iteration of
the table.

Binary operations align scopes by cylindrical extension to the ordered union
of both scopes, so functions over different variable sets combine freely.
Equality is semantic over identical scopes; use :meth:`BoolFunc.equivalent`
to compare functions whose scopes differ.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np

__all__ = [
    "VariableSet",
    "Valuation",
    "BoolFunc",
    "check_name",
    "all_valuations",
    "conjoin",
]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def check_name(name: str) -> str:
    """Validate a variable name (identifier syntax), returning it unchanged."""
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise ValueError(f"invalid variable name: {name!r}")
    return name


class VariableSet(Sequence[str]):
    """Ordered collection of distinct variable names.

    The order is canonical: it fixes the axis order of truth tables and the
    enumeration order of valuations.
    """

    __slots__ = ("_names", "_pos")

    def __init__(self, names: Iterable[str] = ()):
        names = tuple(names)
        for n in names:
            check_name(n)
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate variable names: {', '.join(dupes)}")
        self._names = names
        self._pos = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self) -> Iterator[str]:
        return iter(self._names)

    def __contains__(self, name: object) -> bool:
        return name in self._pos

    def __getitem__(self, i):
        return self._names[i]

    def index(self, name: str) -> int:  # type: ignore[override]
        try:
            return self._pos[name]
        except KeyError:
            raise ValueError(f"{name!r} is not in scope {self._names}") from None

    def union(self, other: Iterable[str]) -> "VariableSet":
        """Self's variables followed by the new ones of `other`, in order."""
        extra = [n for n in other if n not in self._pos]
        return VariableSet(self._names + tuple(extra))

    def without(self, names: Iterable[str]) -> "VariableSet":
        drop = set(names)
        return VariableSet(n for n in self._names if n not in drop)

    def restricted_to(self, names: Iterable[str]) -> "VariableSet":
        """Subset of self (preserving self's order) that also occurs in `names`."""
        keep = set(names)
        return VariableSet(n for n in self._names if n in keep)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VariableSet):
            return self._names == other._names
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._names)

    def __repr__(self) -> str:
        return f"VariableSet({list(self._names)!r})"


@dataclass(frozen=True)
class Valuation:
    """One boolean value per variable of a scope, in scope order."""

    scope: VariableSet
    bits: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.bits) != len(self.scope):
            raise ValueError(
                f"valuation has {len(self.bits)} bits for {len(self.scope)} variables"
            )
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))

    @classmethod
    def from_index(cls, scope: VariableSet, index: int) -> "Valuation":
        n = len(scope)
        bits = tuple(bool((index >> (n - 1 - i)) & 1) for i in range(n))
        return cls(scope, bits)

    def index(self) -> int:
        """Lexicographic rank of this valuation (False < True)."""
        n = len(self.scope)
        return sum(int(b) << (n - 1 - i) for i, b in enumerate(self.bits))

    def __getitem__(self, name: str) -> bool:
        return self.bits[self.scope.index(name)]

    def as_dict(self) -> dict[str, bool]:
        return dict(zip(self.scope, self.bits))

    def __str__(self) -> str:
        if not self.bits:
            return "()"
        return ", ".join(f"{n}={'T' if b else 'F'}" for n, b in zip(self.scope, self.bits))


def all_valuations(scope: VariableSet) -> Iterator[Valuation]:
    """All valuations of `scope` in canonical (lexicographic) order."""
    for index in range(1 << len(scope)):
        yield Valuation.from_index(scope, index)


def _as_scope(scope: Iterable[str] | VariableSet) -> VariableSet:
    return scope if isinstance(scope, VariableSet) else VariableSet(scope)


def _extended_table(f: "BoolFunc", scope: VariableSet) -> np.ndarray:
    """View of f's table broadcast over `scope` (a superset of f.scope)."""
    if f.scope == scope:
        return f.table
    pos = [scope.index(v) for v in f.scope]
    order = np.argsort(pos)
    t = f.table.transpose(tuple(order))
    shape = [1] * len(scope)
    for p in pos:
        shape[p] = 2
    return np.broadcast_to(t.reshape(shape), (2,) * len(scope))


class BoolFunc:
    """Immutable boolean function: an ordered scope plus a full truth table."""

    __slots__ = ("scope", "table")

    scope: VariableSet
    table: np.ndarray

    def __init__(self, scope: Iterable[str] | VariableSet, table) -> None:
        scope = _as_scope(scope)
        arr = np.asarray(table, dtype=bool)
        want = (2,) * len(scope)
        if arr.shape != want:
            if arr.size == 1 << len(scope):
                arr = arr.reshape(want)
            else:
                raise ValueError(
                    f"table of size {arr.size} does not fit scope of {len(scope)} variables"
                )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "scope", scope)
        object.__setattr__(self, "table", arr)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("BoolFunc is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, scope: Iterable[str] | VariableSet, value: bool) -> "BoolFunc":
        scope = _as_scope(scope)
        fill = np.ones if value else np.zeros
        return cls(scope, fill((2,) * len(scope), dtype=bool))

    @classmethod
    def var(cls, name: str) -> "BoolFunc":
        """The positive literal `name` over the single-variable scope {name}."""
        return cls(VariableSet([name]), np.array([False, True]))

    @classmethod
    def exactly(cls, valuation: Valuation) -> "BoolFunc":
        """The minterm satisfied only by `valuation`."""
        table = np.zeros(1 << len(valuation.scope), dtype=bool)
        table[valuation.index()] = True
        return cls(valuation.scope, table)

    # -- basic queries -----------------------------------------------------

    @property
    def is_true(self) -> bool:
        return bool(self.table.all())

    @property
    def is_false(self) -> bool:
        return not bool(self.table.any())

    def count_satisfying(self) -> int:
        return int(self.table.sum())

    def evaluate(self, assignment: Mapping[str, bool]) -> bool:
        """Evaluate at an assignment covering (at least) the scope."""
        idx = tuple(int(bool(assignment[v])) for v in self.scope)
        return bool(self.table[idx])

    def evaluate_many(self, assignments: Mapping[str, np.ndarray]) -> np.ndarray:
        """Vectorized evaluation; each scope variable maps to a 0/1 array."""
        n = len(self.scope)
        if n == 0:
            probe = next(iter(assignments.values()), None)
            shape = () if probe is None else np.shape(probe)
            return np.broadcast_to(self.table, shape).copy()
        flat = np.zeros_like(np.asarray(assignments[self.scope[0]], dtype=np.int64))
        for i, v in enumerate(self.scope):
            flat = flat + (np.asarray(assignments[v], dtype=np.int64) << (n - 1 - i))
        return self.table.reshape(-1)[flat]

    def satisfying_valuations(self) -> list[Valuation]:
        """The satisfying set, in canonical (lexicographic) order."""
        hits = np.argwhere(self.table)
        return [Valuation(self.scope, tuple(bool(b) for b in row)) for row in hits]

    # -- operations --------------------------------------------------------

    def _binary(self, other: "BoolFunc", op) -> "BoolFunc":
        if not isinstance(other, BoolFunc):
            return NotImplemented
        scope = self.scope.union(other.scope)
        return BoolFunc(scope, op(_extended_table(self, scope), _extended_table(other, scope)))

    def __invert__(self) -> "BoolFunc":
        return BoolFunc(self.scope, np.logical_not(self.table))

    def __and__(self, other: "BoolFunc") -> "BoolFunc":
        return self._binary(other, np.logical_and)

    def __or__(self, other: "BoolFunc") -> "BoolFunc":
        return self._binary(other, np.logical_or)

    def __xor__(self, other: "BoolFunc") -> "BoolFunc":
        return self._binary(other, np.logical_xor)

    def implies(self, other: "BoolFunc") -> "BoolFunc":
        return ~self | other

    def iff(self, other: "BoolFunc") -> "BoolFunc":
        return ~(self ^ other)

    def extend(self, scope: Iterable[str] | VariableSet) -> "BoolFunc":
        """Cylindrical extension to a superset scope."""
        scope = _as_scope(scope)
        missing = [v for v in self.scope if v not in scope]
        if missing:
            raise ValueError(f"extension scope is missing {missing}")
        return BoolFunc(scope, _extended_table(self, scope))

    def project(self, keep: Iterable[str] | VariableSet) -> "BoolFunc":
        """Existential projection onto `keep` (a subset of the scope)."""
        keep = _as_scope(keep)
        stray = [v for v in keep if v not in self.scope]
        if stray:
            raise ValueError(f"cannot project onto variables outside scope: {stray}")
        drop_axes = tuple(i for i, v in enumerate(self.scope) if v not in keep)
        t = self.table.any(axis=drop_axes) if drop_axes else self.table
        kept_order = [v for v in self.scope if v in keep]
        perm = tuple(kept_order.index(v) for v in keep)
        return BoolFunc(keep, t.transpose(perm))

    def rename(self, mapping: Mapping[str, str]) -> "BoolFunc":
        """Relabel scope variables; the truth table is unchanged.

        The mapping must be injective on the scope and its targets must not
        collide with variables that keep their names.
        """
        relevant = {k: v for k, v in mapping.items() if k in self.scope}
        targets = list(relevant.values())
        if len(set(targets)) != len(targets):
            raise ValueError("rename mapping is not injective on the scope")
        remainder = {v for v in self.scope if v not in relevant}
        clash = sorted(set(targets) & remainder)
        if clash:
            raise ValueError(f"rename targets collide with existing variables: {clash}")
        new_scope = VariableSet(relevant.get(v, v) for v in self.scope)
        return BoolFunc(new_scope, self.table)

    def substitute(self, mapping: Mapping[str, "BoolFunc"]) -> "BoolFunc":
        """Replace scope variables by boolean functions of other variables.

        Computed as ``exists vs: self /\\ AND_v (v <-> mapping[v])``; no
        replacement function may itself mention a replaced variable.
        """
        keys = [v for v in self.scope if v in mapping]
        if not keys:
            return self
        for v in keys:
            inner = [k for k in keys if k in mapping[v].scope]
            if inner:
                raise ValueError(f"replacement for {v!r} mentions replaced variables {inner}")
        acc = self
        for v in keys:
            acc = acc & BoolFunc.var(v).iff(mapping[v])
        return acc.project(acc.scope.without(keys))

    def support(self) -> VariableSet:
        """The variables the function actually depends on, in scope order."""
        keep = []
        for i, v in enumerate(self.scope):
            if not np.array_equal(
                np.take(self.table, 0, axis=i), np.take(self.table, 1, axis=i)
            ):
                keep.append(v)
        return VariableSet(keep)

    # -- comparisons -------------------------------------------------------

    def equivalent(self, other: "BoolFunc") -> bool:
        """Semantic equality after aligning both functions on a common scope."""
        scope = self.scope.union(other.scope)
        return bool(
            np.array_equal(_extended_table(self, scope), _extended_table(other, scope))
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BoolFunc):
            return self.scope == other.scope and np.array_equal(self.table, other.table)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.scope, self.table.tobytes()))

    # -- formatting --------------------------------------------------------

    def to_expr(self) -> str:
        """Canonical expression that parses back to the same function.

        Minterm disjunction over the support variables only, so functions
        that ignore parts of their scope print compactly.
        """
        if self.is_true:
            return "true"
        if self.is_false:
            return "false"
        core = self.project(self.support())
        terms = []
        for val in core.satisfying_valuations():
            lits = [n if b else f"!{n}" for n, b in zip(core.scope, val.bits)]
            terms.append(" & ".join(lits))
        return " | ".join(terms)

    def __repr__(self) -> str:
        if len(self.scope) <= 4:
            return f"BoolFunc({self.to_expr()!r} over {list(self.scope)})"
        return (
            f"BoolFunc(<{self.count_satisfying()}/{self.table.size} satisfying>"
            f" over {list(self.scope)})"
        )


def conjoin(funcs: Iterable[BoolFunc], empty: BoolFunc | None = None) -> BoolFunc:
    """AND a sequence of functions; `empty` (default: empty-scope True) if none."""
    funcs = list(funcs)
    if not funcs:
        return empty if empty is not None else BoolFunc.const(VariableSet(), True)
    return reduce(lambda a, b: a & b, funcs)
