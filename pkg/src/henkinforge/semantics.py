"""Finite models, brute-force evaluation, decidable-fragment decision procedures,
and interpretations (translation + model pullback)."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .syntax import (And, Atom, Const, Eq, Exists, Falsum, Forall, Formula, Imp,
                     Not, Or, Signature, SortError, SyntaxError_, Term, Theory,
                     Var, App, check_formula, free_vars, parse_formula,
                     print_formula, substitute)


class SemanticsError(Exception):
    pass


# ---------------------------------------------------------------------------
# Finite models


@dataclass
class FiniteModel:
    """Finite interpretation: per-sort carriers, predicate extensions as tuple
    sets, total function tables, constant assignments. Elements are ints."""

    signature: Signature
    carriers: dict[str, list[int]]
    predicates: dict[str, set[tuple[int, ...]]]
    functions: dict[str, dict[tuple[int, ...], int]] = field(default_factory=dict)
    constants: dict[str, int] = field(default_factory=dict)

    def validate(self) -> None:
        sig = self.signature
        for s in sig.sorts:
            if s not in self.carriers or not self.carriers[s]:
                raise SemanticsError(f"empty or missing carrier for sort {s}")
        for p, arg_sorts in sig.predicates:
            for tup in self.predicates.get(p, set()):
                if len(tup) != len(arg_sorts):
                    raise SemanticsError(f"extension of {p} has wrong arity")
                for e, s in zip(tup, arg_sorts):
                    if e not in self.carriers[s]:
                        raise SemanticsError(f"extension of {p} leaves carrier of {s}")
        for f, arg_sorts, res in sig.functions:
            table = self.functions.get(f)
            if table is None:
                raise SemanticsError(f"missing table for function {f}")
            for args in itertools.product(*(self.carriers[s] for s in arg_sorts)):
                if args not in table:
                    raise SemanticsError(f"function table for {f} not total")
                if table[args] not in self.carriers[res]:
                    raise SemanticsError(f"function {f} leaves carrier of {res}")
        for c, s in sig.constants:
            if c not in self.constants or self.constants[c] not in self.carriers[s]:
                raise SemanticsError(f"constant {c} not assigned inside carrier of {s}")


def eval_term(m: FiniteModel, t: Term, env: dict[str, int]) -> int:
    if isinstance(t, Var):
        if t.name not in env:
            raise SemanticsError(f"no assignment for variable {t.name}")
        return env[t.name]
    if isinstance(t, Const):
        if t.name in m.constants:
            return m.constants[t.name]
        raise SemanticsError(f"constant {t.name} not interpreted")
    table = m.functions.get(t.name)
    if table is None:
        raise SemanticsError(f"function {t.name} not interpreted")
    return table[tuple(eval_term(m, a, env) for a in t.args)]


def evaluate(m: FiniteModel, phi: Formula, env: Optional[dict[str, int]] = None) -> bool:
    """Standard inductive satisfaction value of phi in m under env."""
    env = env or {}
    if isinstance(phi, Falsum):
        return False
    if isinstance(phi, Atom):
        ext = m.predicates.get(phi.pred, set())
        return tuple(eval_term(m, a, env) for a in phi.args) in ext
    if isinstance(phi, Eq):
        return eval_term(m, phi.left, env) == eval_term(m, phi.right, env)
    if isinstance(phi, Not):
        return not evaluate(m, phi.body, env)
    if isinstance(phi, And):
        return evaluate(m, phi.left, env) and evaluate(m, phi.right, env)
    if isinstance(phi, Or):
        return evaluate(m, phi.left, env) or evaluate(m, phi.right, env)
    if isinstance(phi, Imp):
        return (not evaluate(m, phi.left, env)) or evaluate(m, phi.right, env)
    if isinstance(phi, Forall):
        return all(evaluate(m, phi.body, {**env, phi.var.name: e})
                   for e in m.carriers[phi.var.sort])
    if isinstance(phi, Exists):
        return any(evaluate(m, phi.body, {**env, phi.var.name: e})
                   for e in m.carriers[phi.var.sort])
    raise TypeError(phi)


def satisfies(m: FiniteModel, gamma: Theory) -> bool:
    return all(evaluate(m, phi) for phi in gamma.sentences)


# ---------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True)
class Satisfiable:
    model: FiniteModel


@dataclass(frozen=True)
class Unsatisfiable:
    pass


@dataclass(frozen=True)
class Unknown:
    note: str


@dataclass(frozen=True)
class NotInFragment:
    reason: str = ""


Verdict = Union[Satisfiable, Unsatisfiable, Unknown, NotInFragment]


# ---------------------------------------------------------------------------
# EPR (Bernays-Schoenfinkel) decision by bounded model search


def prenex(phi: Formula) -> tuple[list[tuple[str, Var]], Formula]:
    """Prenex form as (prefix, matrix): prefix entries are ('E'|'A', var),
    bound variables freshly renamed so the prefix never shadows."""
    used = set(_all_names(phi))
    counter = [0]

    def fresh(sort: str) -> Var:
        counter[0] += 1
        name = f"_q{counter[0]}"
        while name in used:
            counter[0] += 1
            name = f"_q{counter[0]}"
        used.add(name)
        return Var(name, sort)

    def go(f: Formula) -> tuple[list[tuple[str, Var]], Formula]:
        if isinstance(f, (Falsum, Atom, Eq)):
            return [], f
        if isinstance(f, Not):
            pre, mat = go(f.body)
            return [(_dual(q), v) for q, v in pre], Not(mat)
        if isinstance(f, (And, Or)):
            pl, ml = go(f.left)
            pr, mr = go(f.right)
            cls = type(f)
            return pl + pr, cls(ml, mr)
        if isinstance(f, Imp):
            pl, ml = go(f.left)
            pr, mr = go(f.right)
            return [(_dual(q), v) for q, v in pl] + pr, Imp(ml, mr)
        if isinstance(f, (Forall, Exists)):
            nv = fresh(f.var.sort)
            body = substitute(f.body, f.var, nv)
            pre, mat = go(body)
            q = "A" if isinstance(f, Forall) else "E"
            return [(q, nv)] + pre, mat
        raise TypeError(f)

    return go(phi)


def _dual(q: str) -> str:
    return "A" if q == "E" else "E"


def _all_names(phi: Formula) -> set[str]:
    from .syntax import _used_names
    return _used_names(phi)


def _epr_split(phi: Formula) -> Optional[tuple[list[Var], list[Var], Formula]]:
    """(existentials, universals, matrix) if the prenex form is E*A*, else None."""
    prefix, matrix = prenex(phi)
    exs: list[Var] = []
    alls: list[Var] = []
    for q, v in prefix:
        if q == "E":
            if alls:
                return None
            exs.append(v)
        else:
            alls.append(v)
    return exs, alls, matrix


def _has_quantifier(phi: Formula) -> bool:
    if isinstance(phi, (Forall, Exists)):
        return True
    if isinstance(phi, Not):
        return _has_quantifier(phi.body)
    if isinstance(phi, (And, Or, Imp)):
        return _has_quantifier(phi.left) or _has_quantifier(phi.right)
    return False


def _has_function_symbol(phi: Formula) -> bool:
    def term_has(t: Term) -> bool:
        return isinstance(t, App)

    if isinstance(phi, Atom):
        return any(term_has(a) for a in phi.args)
    if isinstance(phi, Eq):
        return term_has(phi.left) or term_has(phi.right)
    if isinstance(phi, Not):
        return _has_function_symbol(phi.body)
    if isinstance(phi, (And, Or, Imp)):
        return _has_function_symbol(phi.left) or _has_function_symbol(phi.right)
    if isinstance(phi, (Forall, Exists)):
        return _has_function_symbol(phi.body)
    return False


def epr_size_bound(gamma: Theory) -> Optional[int]:
    """max(1, #constants + #leading existentials) if gamma is EPR, else None."""
    n_ex = 0
    for phi in gamma.sentences:
        if _has_function_symbol(phi):
            return None
        split = _epr_split(phi)
        if split is None:
            return None
        n_ex += len(split[0])
    return max(1, len(gamma.signature.constants) + n_ex)


def all_models(sig: Signature, sizes: dict[str, int]):
    """Deterministic enumeration of every model with the given carrier sizes."""
    carriers = {s: list(range(sizes[s])) for s in sig.sorts}
    const_choices = [carriers[s] for _, s in sig.constants]
    pred_spaces = []
    for p, arg_sorts in sig.predicates:
        tuples = list(itertools.product(*(carriers[s] for s in arg_sorts)))
        pred_spaces.append((p, tuples))
    fun_spaces = []
    for f, arg_sorts, res in sig.functions:
        args = list(itertools.product(*(carriers[s] for s in arg_sorts)))
        fun_spaces.append((f, args, carriers[res]))
    for const_vals in itertools.product(*const_choices):
        consts = {c: v for (c, _), v in zip(sig.constants, const_vals)}
        ext_choices = [itertools.chain.from_iterable(
            itertools.combinations(tuples, r) for r in range(len(tuples) + 1))
            for _, tuples in pred_spaces]
        for exts in itertools.product(*ext_choices):
            preds = {p: set(chosen) for (p, _), chosen in zip(pred_spaces, exts)}
            fun_tables_choices = [itertools.product(rng, repeat=len(args))
                                  for _, args, rng in fun_spaces]
            for tables in itertools.product(*fun_tables_choices):
                funcs = {}
                for (f, args, _), vals in zip(fun_spaces, tables):
                    funcs[f] = dict(zip(args, vals))
                yield FiniteModel(sig, dict(carriers), preds, funcs, consts)


def _size_vectors(sorts: tuple[str, ...], bound: int):
    for sizes in itertools.product(range(1, bound + 1), repeat=len(sorts)):
        yield dict(zip(sorts, sizes))


def decide_epr(gamma: Theory) -> Verdict:
    """Complete satisfiability decision on the E*A*, function-free fragment.

    Searches all models with carriers up to max(1, #constants + #leading
    existentials); outside the fragment returns NotInFragment.
    """
    bound = epr_size_bound(gamma)
    if bound is None:
        return NotInFragment("not an exists*-forall* function-free theory")
    # search smaller carriers first so reported witnesses are minimal
    for total in range(len(gamma.signature.sorts), bound * len(gamma.signature.sorts) + 1):
        for sizes in _size_vectors(gamma.signature.sorts, bound):
            if sum(sizes.values()) != total:
                continue
            for m in all_models(gamma.signature, sizes):
                if satisfies(m, gamma):
                    return Satisfiable(m)
    return Unsatisfiable()


# ---------------------------------------------------------------------------
# Propositional decision by truth tables


def _prop_atoms(phi: Formula) -> Optional[list[str]]:
    """Nullary atoms of phi in first-occurrence order; None if non-propositional."""
    out: list[str] = []

    def walk(f: Formula) -> bool:
        if isinstance(f, Falsum):
            return True
        if isinstance(f, Atom):
            if f.args:
                return False
            if f.pred not in out:
                out.append(f.pred)
            return True
        if isinstance(f, Not):
            return walk(f.body)
        if isinstance(f, (And, Or, Imp)):
            return walk(f.left) and walk(f.right)
        return False

    return out if walk(phi) else None


def eval_propositional(phi: Formula, valuation: dict[str, bool]) -> bool:
    if isinstance(phi, Falsum):
        return False
    if isinstance(phi, Atom):
        return valuation[phi.pred]
    if isinstance(phi, Not):
        return not eval_propositional(phi.body, valuation)
    if isinstance(phi, And):
        return eval_propositional(phi.left, valuation) and eval_propositional(phi.right, valuation)
    if isinstance(phi, Or):
        return eval_propositional(phi.left, valuation) or eval_propositional(phi.right, valuation)
    if isinstance(phi, Imp):
        return (not eval_propositional(phi.left, valuation)) or eval_propositional(phi.right, valuation)
    raise SemanticsError("not a propositional formula")


def _valuation_model(sig: Signature, valuation: dict[str, bool]) -> FiniteModel:
    carriers = {s: [0] for s in sig.sorts} or {}
    preds = {p: ({()} if valuation.get(p, False) else set()) for p, args in sig.predicates if not args}
    m = FiniteModel(sig, carriers, preds, {}, {c: 0 for c, _ in sig.constants})
    return m


def decide_propositional(phi: Formula, sig: Optional[Signature] = None) -> Verdict:
    """Exhaustive truth-table satisfiability for quantifier-free nullary-atom
    formulas; a Satisfiable verdict carries the witnessing valuation as a
    one-element model."""
    atoms = _prop_atoms(phi)
    if atoms is None:
        return NotInFragment("quantifiers or non-nullary atoms present")
    for bits in itertools.product([False, True], repeat=len(atoms)):
        valuation = dict(zip(atoms, bits))
        if eval_propositional(phi, valuation):
            if sig is None:
                sig = Signature(("o",), tuple((a, ()) for a in atoms))
            return Satisfiable(_valuation_model(sig, valuation))
    return Unsatisfiable()


def decide_propositional_theory(gamma: Theory) -> Verdict:
    conj: Optional[Formula] = None
    for phi in gamma.sentences:
        conj = phi if conj is None else And(conj, phi)
    if conj is None:
        return Satisfiable(_valuation_model(gamma.signature, {}))
    return decide_propositional(conj, gamma.signature)


# ---------------------------------------------------------------------------
# Interpretations (translation + pullback)


@dataclass(frozen=True)
class Interpretation:
    """Maps a source language into a target language.

    Each source sort gets a target sort and a one-free-variable domain
    formula; each source predicate/function/constant gets a defining target
    formula over parameter variables (functions and constants are mapped by
    their graph, with an extra final parameter for the value).
    """

    source: Signature
    target: Signature
    sort_map: tuple[tuple[str, str], ...]
    domains: tuple[tuple[str, Var, Formula], ...]           # sort -> (param, delta)
    pred_map: tuple[tuple[str, tuple[Var, ...], Formula], ...]
    fun_map: tuple[tuple[str, tuple[Var, ...], Formula], ...] = ()
    const_map: tuple[tuple[str, Var, Formula], ...] = ()

    def target_sort(self, s: str) -> str:
        for a, b in self.sort_map:
            if a == s:
                return b
        raise SemanticsError(f"sort {s} not mapped")

    def domain(self, s: str) -> tuple[Var, Formula]:
        for a, v, f in self.domains:
            if a == s:
                return v, f
        raise SemanticsError(f"no domain formula for sort {s}")

    def pred_def(self, p: str) -> tuple[tuple[Var, ...], Formula]:
        for a, vs, f in self.pred_map:
            if a == p:
                return vs, f
        raise SemanticsError(f"predicate {p} not mapped")

    def fun_def(self, fn: str) -> tuple[tuple[Var, ...], Formula]:
        for a, vs, f in self.fun_map:
            if a == fn:
                return vs, f
        raise SemanticsError(f"function {fn} not mapped")

    def const_def(self, c: str) -> tuple[Var, Formula]:
        for a, v, f in self.const_map:
            if a == c:
                return v, f
        raise SemanticsError(f"constant {c} not mapped")

    def validate(self) -> None:
        for s, v, f in self.domains:
            check_formula(self.target, f)
            if free_vars(f) - {v}:
                raise SemanticsError(f"domain formula for {s} has stray free variables")
        for p, vs, f in self.pred_map:
            ar = self.source.pred_arity(p)
            if ar is None or len(vs) != len(ar):
                raise SemanticsError(f"bad arity in map for predicate {p}")
            check_formula(self.target, f)
            if free_vars(f) - set(vs):
                raise SemanticsError(f"defining formula for {p} has stray free variables")
        for fn, vs, f in self.fun_map:
            fs = self.source.fun_sig(fn)
            if fs is None or len(vs) != len(fs[0]) + 1:
                raise SemanticsError(f"bad arity in graph for function {fn}")
            check_formula(self.target, f)
        for c, v, f in self.const_map:
            check_formula(self.target, f)
            if free_vars(f) - {v}:
                raise SemanticsError(f"defining formula for {c} has stray free variables")


def _apply_def(params: tuple[Var, ...], body: Formula, args: list[Term]) -> Formula:
    # simultaneous substitution via fresh staging to avoid parameter collisions
    staged = body
    fresh: list[Var] = []
    taken = {v.name for v in params} | {v.name for a in args for v in _tvars(a)} | {
        v.name for v in free_vars(body)}
    for i, p in enumerate(params):
        nv = Var(f"_i{i}", p.sort)
        while nv.name in taken:
            nv = Var(nv.name + "'", p.sort)
        fresh.append(nv)
        staged = substitute(staged, p, nv)
    for nv, a in zip(fresh, args):
        staged = substitute(staged, nv, a)
    return staged


def _tvars(t: Term) -> set[Var]:
    from .syntax import term_vars
    return term_vars(t)


def translate(interp: Interpretation, phi: Formula) -> Formula:
    """phi* : atoms replaced by their defining formulas, quantifiers
    relativised by the domain predicate."""

    counter = [0]

    def fresh_var(sort: str) -> Var:
        counter[0] += 1
        return Var(f"_t{counter[0]}", sort)

    def tr_term(t: Term, out_atoms: list[Formula], binders: list[Var],
                varmap: dict[str, Var]) -> Term:
        # returns a target term (variable) denoting t; compound terms are
        # flattened through their graph formulas with fresh existentials
        if isinstance(t, Var):
            return varmap[t.name]
        if isinstance(t, Const):
            v, delta = interp.const_def(t.name)
            nv = fresh_var(interp.target_sort(t.sort))
            binders.append(nv)
            out_atoms.append(_apply_def((v,), delta, [nv]))
            return nv
        args = [tr_term(a, out_atoms, binders, varmap) for a in t.args]
        vs, graph = interp.fun_def(t.name)
        nv = fresh_var(interp.target_sort(t.sort))
        binders.append(nv)
        out_atoms.append(_apply_def(vs, graph, list(args) + [nv]))
        return nv

    def close_atoms(core: Formula, binders: list[Var], atoms: list[Formula]) -> Formula:
        body = core
        for a in reversed(atoms):
            body = And(a, body)
        for v in reversed(binders):
            body = Exists(v, body)
        return body

    def tr(f: Formula, varmap: dict[str, Var]) -> Formula:
        if isinstance(f, Falsum):
            return f
        if isinstance(f, Atom):
            atoms: list[Formula] = []
            binders: list[Var] = []
            args = [tr_term(a, atoms, binders, varmap) for a in f.args]
            vs, definition = interp.pred_def(f.pred)
            core = _apply_def(vs, definition, list(args))
            return close_atoms(core, binders, atoms)
        if isinstance(f, Eq):
            atoms = []
            binders = []
            l = tr_term(f.left, atoms, binders, varmap)
            r = tr_term(f.right, atoms, binders, varmap)
            return close_atoms(Eq(l, r), binders, atoms)
        if isinstance(f, Not):
            return Not(tr(f.body, varmap))
        if isinstance(f, And):
            return And(tr(f.left, varmap), tr(f.right, varmap))
        if isinstance(f, Or):
            return Or(tr(f.left, varmap), tr(f.right, varmap))
        if isinstance(f, Imp):
            return Imp(tr(f.left, varmap), tr(f.right, varmap))
        if isinstance(f, (Forall, Exists)):
            tv = fresh_var(interp.target_sort(f.var.sort))
            dparam, delta = interp.domain(f.var.sort)
            guard = _apply_def((dparam,), delta, [tv])
            body = tr(f.body, {**varmap, f.var.name: tv})
            if isinstance(f, Forall):
                return Forall(tv, Imp(guard, body))
            return Exists(tv, And(guard, body))
        raise TypeError(f)

    vm = {v.name: Var(v.name, interp.target_sort(v.sort)) for v in free_vars(phi)}
    out = tr(phi, vm)
    check_formula(interp.target, out)
    return out


def pullback_model(interp: Interpretation, b: FiniteModel) -> FiniteModel:
    """The source-signature model read off from b through the interpretation:
    carriers are the delta-definable subsets, extensions the definable sets.

    Function graphs are checked for functionality on the carrier; constants
    must denote exactly one element."""
    carriers: dict[str, list[int]] = {}
    for s in interp.source.sorts:
        v, delta = interp.domain(s)
        elems = [e for e in b.carriers[interp.target_sort(s)]
                 if evaluate(b, delta, {v.name: e})]
        if not elems:
            raise SemanticsError(f"empty delta-carrier for sort {s}")
        carriers[s] = elems
    preds: dict[str, set[tuple[int, ...]]] = {}
    for p, arg_sorts in interp.source.predicates:
        vs, definition = interp.pred_def(p)
        ext = set()
        for tup in itertools.product(*(carriers[s] for s in arg_sorts)):
            env = {v.name: e for v, e in zip(vs, tup)}
            if evaluate(b, definition, env):
                ext.add(tup)
        preds[p] = ext
    funcs: dict[str, dict[tuple[int, ...], int]] = {}
    for fn, arg_sorts, res in interp.source.functions:
        vs, graph = interp.fun_def(fn)
        table: dict[tuple[int, ...], int] = {}
        for tup in itertools.product(*(carriers[s] for s in arg_sorts)):
            values = [e for e in carriers[res]
                      if evaluate(b, graph, {**{v.name: x for v, x in zip(vs[:-1], tup)},
                                             vs[-1].name: e})]
            if len(values) != 1:
                raise SemanticsError(
                    f"graph of function {fn} is not functional on the carrier at {tup}")
            table[tup] = values[0]
        funcs[fn] = table
    consts: dict[str, int] = {}
    for c, s in interp.source.constants:
        v, definition = interp.const_def(c)
        values = [e for e in carriers[s] if evaluate(b, definition, {v.name: e})]
        if len(values) != 1:
            raise SemanticsError(f"constant {c} does not denote a unique element")
        consts[c] = values[0]
    m = FiniteModel(interp.source, carriers, preds, funcs, consts)
    m.validate()
    return m


# ---------------------------------------------------------------------------
# Interpretation file format


def parse_interpretation(text: str, src: Theory, tgt: Theory) -> Interpretation:
    """Parse `interp <name> : <src> -> <tgt>`, `domain <sort> := <formula(x)>`,
    `map <symbol>(x1,..,xn) := <formula>` lines."""
    sort_map: list[tuple[str, str]] = []
    domains: list[tuple[str, Var, Formula]] = []
    pred_map: list[tuple[str, tuple[Var, ...], Formula]] = []
    fun_map: list[tuple[str, tuple[Var, ...], Formula]] = []
    const_map: list[tuple[str, Var, Formula]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "interp":
            continue
        if head == "sortmap":
            a, _, c = rest.partition("->")
            sort_map.append((a.strip(), c.strip()))
            continue
        if head == "domain":
            decl, _, body = rest.partition(":=")
            m = re.fullmatch(r"(\w+)\s*\(\s*(\w+)\s*:\s*(\w+)\s*\)", decl.strip())
            if not m:
                raise SyntaxError_(f"bad domain declaration: {line!r}")
            sort, vn, vsort = m.groups()
            phi = parse_formula(body.strip(), tgt.signature, {vn: vsort})
            domains.append((sort, Var(vn, vsort), phi))
            continue
        if head == "map":
            decl, _, body = rest.partition(":=")
            m = re.fullmatch(r"(\w+)\s*\(([^)]*)\)", decl.strip())
            if not m:
                raise SyntaxError_(f"bad map declaration: {line!r}")
            sym = m.group(1)
            params = []
            if m.group(2).strip():
                for piece in m.group(2).split(","):
                    vn, _, vsort = piece.strip().partition(":")
                    params.append(Var(vn.strip(), vsort.strip()))
            phi = parse_formula(body.strip(), tgt.signature,
                                {v.name: v.sort for v in params})
            if src.signature.pred_arity(sym) is not None:
                pred_map.append((sym, tuple(params), phi))
            elif src.signature.fun_sig(sym) is not None:
                fun_map.append((sym, tuple(params), phi))
            elif src.signature.const_sort(sym) is not None:
                const_map.append((sym, params[0], phi))
            else:
                raise SyntaxError_(f"unknown source symbol {sym!r}")
            continue
        raise SyntaxError_(f"unknown interpretation line {head!r}")
    interp = Interpretation(src.signature, tgt.signature, tuple(sort_map),
                            tuple(domains), tuple(pred_map), tuple(fun_map),
                            tuple(const_map))
    interp.validate()
    return interp
