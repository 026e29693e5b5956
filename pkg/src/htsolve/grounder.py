"""Naive grounding: cross-product substitution over the term universe.

Safety requires every rule variable to occur in a positive body atom;
constraint atoms never bind variables.  An optional simplification pass
drops rules whose positive body atoms can never be derived, iterated to a
fixpoint so that slot-style encodings stay small.  Simplification never
changes the equilibrium models of the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    AspVar,
    AssignmentAtom,
    Atom,
    Diagnostic,
    DiffConstraintAtom,
    Falsity,
    FuncTerm,
    IntConst,
    LinearConstraintAtom,
    Literal,
    Rule,
    is_ground,
    rule_variables,
    walk_terms,
)


@dataclass(frozen=True)
class GroundingOptions:
    """Knobs for universe construction; int_range adds lo..hi as constants."""

    int_range: tuple | None = None

    def __post_init__(self) -> None:
        if self.int_range is not None:
            lo, hi = self.int_range
            if lo > hi:
                raise ValueError(f"empty int_range {lo}..{hi}")


@dataclass(frozen=True)
class GroundProgram:
    """Variable-free program with its term universe; rules sorted and deduplicated."""

    rules: tuple = ()
    universe: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "universe", tuple(self.universe))

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.rules)


def herbrand_universe(p, opts: GroundingOptions = GroundingOptions()) -> tuple:
    """All ground terms occurring in p, plus the optional integer range."""
    terms = set()
    for r in p.rules:
        for t in walk_terms(r):
            if is_ground(t):
                terms.add(t)
    if opts.int_range is not None:
        lo, hi = opts.int_range
        terms.update(IntConst(v) for v in range(lo, hi + 1))
    return tuple(sorted(terms, key=str))


def check_safety(p) -> list:
    """One diagnostic per rule whose variables are not bound by a positive body atom."""
    out = []
    for i, r in enumerate(p.rules):
        bound = set()
        for lit in r.body:
            if lit.positive and isinstance(lit.atom, Atom):
                bound.update(t for t in walk_terms(lit.atom) if isinstance(t, AspVar))
        loose = rule_variables(r) - bound
        if loose:
            names = ", ".join(sorted(v.name for v in loose))
            out.append(Diagnostic(i, f"unsafe variables: {names}"))
    return out


def _subst_term(t, env: dict):
    if isinstance(t, AspVar):
        return env[t]
    if isinstance(t, FuncTerm):
        return FuncTerm(t.name, tuple(_subst_term(a, env) for a in t.args))
    return t


def _subst_elem(e, env: dict):
    if isinstance(e, Atom):
        return Atom(e.predicate, tuple(_subst_term(a, env) for a in e.args))
    if isinstance(e, LinearConstraintAtom):
        return LinearConstraintAtom(
            tuple((k, _subst_term(t, env)) for k, t in e.terms), e.cmp, e.rhs
        )
    if isinstance(e, DiffConstraintAtom):
        return DiffConstraintAtom(
            _subst_term(e.lhs_var, env), _subst_term(e.rhs_var, env), e.bound
        )
    if isinstance(e, AssignmentAtom):
        return AssignmentAtom(
            _subst_term(e.lo, env), _subst_term(e.hi, env), _subst_term(e.target, env)
        )
    return e


def _subst_rule(r: Rule, env: dict) -> Rule:
    head = r.head if isinstance(r.head, Falsity) else _subst_elem(r.head, env)
    body = tuple(Literal(lit.positive, _subst_elem(lit.atom, env)) for lit in r.body)
    return Rule(head, body)


def instances(r: Rule, universe) -> list:
    """All cross-product instantiations of r; len == len(universe) ** #variables."""
    variables = sorted(rule_variables(r), key=lambda v: v.name)
    if not variables:
        return [r]
    out = []
    for values in product(universe, repeat=len(variables)):
        env = dict(zip(variables, values))
        out.append(_subst_rule(r, env))
    return out


def _simplify(rules: list) -> list:
    """Drop rules with an underivable positive body atom, to fixpoint."""
    kept = list(rules)
    while True:
        heads = {r.head for r in kept if isinstance(r.head, Atom)}
        surviving = [
            r
            for r in kept
            if all(
                lit.atom in heads
                for lit in r.body
                if lit.positive and isinstance(lit.atom, Atom)
            )
        ]
        if len(surviving) == len(kept):
            return surviving
        kept = surviving


def ground(p, opts: GroundingOptions = GroundingOptions(), simplify: bool = True) -> GroundProgram:
    """Instantiate every rule over the universe; rejects unsafe programs."""
    diags = check_safety(p)
    if diags:
        raise ValueError("unsafe program: " + "; ".join(str(d) for d in diags))
    universe = herbrand_universe(p, opts)
    ground_rules: list = []
    for r in p.rules:
        ground_rules.extend(instances(r, universe))
    if simplify:
        ground_rules = _simplify(ground_rules)
    unique = sorted(set(ground_rules), key=str)
    return GroundProgram(tuple(unique), universe)
