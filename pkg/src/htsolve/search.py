"""Generate-and-certify solving for casp mode.

The ground program is abstracted by replacing every distinct constraint
atom with a fresh proposition (__t1, __t2, ... in first-occurrence order).
Because constraint-atom truth is a function of the shared valuation rather
than something rules derive, solve() pairs the abstraction with an even
loop per proposition (__tK / __fK) so Boolean stable models range over all
sign assignments.  A difference-logic graph plus bounded backtracking then
certifies each sign assignment, and consistent valuations are enumerated
exhaustively so the result set matches the exhaustive oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    AssignmentAtom,
    Atom,
    DiffConstraintAtom,
    Falsity,
    Literal,
    Rule,
    atoms_of,
    variable_names,
)
from .dl import Conflict, DiffGraph, negate_diff
from .grounder import GroundProgram
from .semantics import (
    AnswerSet,
    Valuation,
    _answer_sort_key,
    _elem_true,
    enumerate_equilibrium,
)


@dataclass(frozen=True)
class Abstraction:
    """Boolean rules plus the proposition-to-constraint-atom bijection."""

    rules: tuple
    mapping: tuple  # of (proposition Atom, constraint atom) in introduction order

    def proposition_for(self) -> dict:
        return {theory: prop for prop, theory in self.mapping}

    def theory_for(self) -> dict:
        return dict(self.mapping)


def abstract(g: GroundProgram) -> Abstraction:
    """Replace constraint atoms by fresh propositions; rejects assignments."""
    prop_of: dict = {}
    order: list = []

    def lift(e):
        if isinstance(e, Atom):
            return e
        if isinstance(e, AssignmentAtom):
            raise ValueError("assignment atoms have no Boolean abstraction")
        if e not in prop_of:
            prop = Atom(f"__t{len(prop_of) + 1}")
            prop_of[e] = prop
            order.append((prop, e))
        return prop_of[e]

    rules = []
    for r in g.rules:
        head = r.head if isinstance(r.head, Falsity) else lift(r.head)
        body = tuple(Literal(lit.positive, lift(lit.atom)) for lit in r.body)
        rules.append(Rule(head, body))
    return Abstraction(tuple(rules), tuple(order))


def choice_rules(ab: Abstraction) -> tuple:
    """One even loop per proposition so its sign is freely choosable."""
    rules = []
    for n, (prop, _) in enumerate(ab.mapping, start=1):
        counter = Atom(f"__f{n}")
        rules.append(Rule(prop, (Literal(False, counter),)))
        rules.append(Rule(counter, (Literal(False, prop),)))
    return tuple(rules)


def stable_models_bool(b: GroundProgram) -> list:
    """All reduct-stable atom sets of a Boolean program, sorted."""
    atoms = sorted(atoms_of(b)[0], key=str)
    index = {a: n for n, a in enumerate(atoms)}
    compiled = []
    for r in b.rules:
        head = None if isinstance(r.head, Falsity) else index[r.head]
        pos = frozenset(index[lit.atom] for lit in r.body if lit.positive)
        neg = frozenset(index[lit.atom] for lit in r.body if not lit.positive)
        compiled.append((head, pos, neg))
    touching: list = [[] for _ in atoms]
    for ci, (head, pos, neg) in enumerate(compiled):
        involved = set(pos) | set(neg) | ({head} if head is not None else set())
        for a in involved:
            touching[a].append(ci)

    if any(head is None and not pos and not neg for head, pos, neg in compiled):
        return []  # an empty-bodied constraint admits nothing

    n = len(atoms)
    assign: list = [None] * n
    models: list = []

    def violated_now(changed: int) -> bool:
        # A rule is hopeless once its body is fully true yet its head is
        # already false (or it has no head).  Undecided atoms block nothing.
        for ci in touching[changed]:
            head, pos, neg = compiled[ci]
            if head is not None and assign[head] is not False:
                continue
            if all(assign[a] is True for a in pos) and all(
                assign[a] is False for a in neg
            ):
                return True
        return False

    def stable(true_set: frozenset) -> bool:
        # Supportedness is a cheap necessary condition before the fixpoint.
        for a in true_set:
            if not any(
                head == a and pos <= true_set and not (neg & true_set)
                for head, pos, neg in compiled
            ):
                return False
        derived: set = set()
        changed = True
        while changed:
            changed = False
            for head, pos, neg in compiled:
                if head is None or neg & true_set:
                    continue
                if head not in derived and pos <= derived:
                    derived.add(head)
                    changed = True
        return derived == true_set

    def walk(i: int) -> None:
        if i == n:
            true_set = frozenset(a for a in range(n) if assign[a])
            if stable(true_set):
                models.append(frozenset(atoms[a] for a in true_set))
            return
        for value in (False, True):
            assign[i] = value
            if not violated_now(i):
                walk(i + 1)
        assign[i] = None

    walk(0)
    models.sort(key=lambda m: tuple(sorted(str(a) for a in m)))
    return models


def theory_certify(signs: dict, bounds):
    """Find one total valuation within bounds matching every atom's sign.

    Difference constraints go through a DiffGraph (negated ones via
    negate_diff); remaining atoms are checked by backtracking over the
    bounded grid, seeded with the shifted graph solution when possible.
    Returns the valuation, or None when no valuation exists within bounds.
    """
    lo, hi = bounds
    if lo > hi:
        raise ValueError(f"empty bounds {lo}..{hi}")
    variables = sorted(
        {v for atom in signs for v in variable_names(atom)}, key=str
    )
    graph = DiffGraph()
    cid = 0
    for atom, sign in sorted(signs.items(), key=lambda kv: str(kv[0])):
        if not isinstance(atom, DiffConstraintAtom):
            continue
        x, y, k = atom.lhs_var, atom.rhs_var, atom.bound
        if not sign:
            x, y, k = negate_diff(x, y, k)
        cid += 1
        if isinstance(graph.assert_diff(x, y, k, cid), Conflict):
            return None

    def consistent(vd: dict) -> bool:
        return all(_elem_true((), vd, atom) == sign for atom, sign in signs.items())

    if not variables:
        return Valuation() if consistent({}) else None

    seed = graph.solution().as_dict()
    values = {v: seed.get(v, 0) for v in variables}
    shift = lo - min(values.values())
    if max(values.values()) + shift <= hi:
        shifted = {v: x + shift for v, x in values.items()}
        if consistent(shifted):
            return Valuation.of(shifted)

    vd: dict = {}

    def feasible_so_far(latest) -> bool:
        for atom, sign in signs.items():
            needed = set(variable_names(atom))
            if latest in needed and needed <= vd.keys():
                if _elem_true((), vd, atom) != sign:
                    return False
        return True

    def grid(i: int):
        if i == len(variables):
            return dict(vd)
        v = variables[i]
        for value in range(lo, hi + 1):
            vd[v] = value
            if feasible_so_far(v):
                found = grid(i + 1)
                if found is not None:
                    return found
            del vd[v]
        return None

    for atom, sign in signs.items():
        if not set(variable_names(atom)) and _elem_true((), {}, atom) != sign:
            return None
    found = grid(0)
    return Valuation.of(found) if found is not None else None


def solve(g: GroundProgram, mode: str, bounds, engine: str = "oracle") -> list:
    """Answer sets of g, via the exhaustive oracle or the search engine."""
    if engine not in ("oracle", "search"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "oracle":
        return enumerate_equilibrium(g, mode, bounds)
    if mode != "casp":
        raise ValueError("engine 'search' supports casp mode only")
    lo, hi = bounds
    if lo > hi:
        raise ValueError(f"empty bounds {lo}..{hi}")
    ab = abstract(g)
    boolean = GroundProgram(
        tuple(sorted(set(ab.rules) | set(choice_rules(ab)), key=str)), g.universe
    )
    _, _, variables = atoms_of(g)
    prop_names = {prop for prop, _ in ab.mapping} | {
        Atom(f"__f{n}") for n in range(1, len(ab.mapping) + 1)
    }
    answers = set()
    for model in stable_models_bool(boolean):
        signs = {theory: (prop in model) for prop, theory in ab.mapping}
        if theory_certify(signs, (lo, hi)) is None:
            continue
        visible = frozenset(a for a in model if a not in prop_names)
        for combo in product(range(lo, hi + 1), repeat=len(variables)):
            vd = dict(zip(variables, combo))
            if all(_elem_true((), vd, t) == s for t, s in signs.items()):
                answers.add(AnswerSet(visible, Valuation.of(vd)))
    return sorted(answers, key=lambda a: _answer_sort_key(a, variables))
