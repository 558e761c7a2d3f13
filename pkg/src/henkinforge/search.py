"""Bounded goal-directed proof search: iterative-deepening backward search in
the cut-free sequent calculus, then translation to a Hilbert derivation via
the verified embedding.

No completeness is claimed for the search itself; NotFoundWithin is silent on
provability. Budgets count rule applications, never wall-clock time.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from .embed import sequent_to_derivation
from .hilbert import Derivation, check_derivation
from .sequent import (Sequent, SequentProof, fresh_var, remove_one, seq_eq,
                      weaken_to)
from .syntax import (And, App, Atom, Const, Eq, Exists, FALSE, Forall, Formula,
                     Imp, Not, Or, Signature, Term, Theory, Var, alpha_key,
                     free_vars, print_formula, substitute, term_vars)


@dataclass(frozen=True)
class Proved:
    derivation: Derivation


@dataclass(frozen=True)
class NotFoundWithin:
    budget: int


class _Budget:
    def __init__(self, n: int):
        self.left = n

    def spend(self) -> bool:
        if self.left <= 0:
            return False
        self.left -= 1
        return True


def _canon(fs: tuple[Formula, ...]) -> tuple[Formula, ...]:
    seen = {}
    for f in fs:
        seen.setdefault(alpha_key(f), f)
    return tuple(v for _, v in sorted(seen.items(), key=lambda kv: repr(kv[0])))


def _key(ante: tuple[Formula, ...], succ: tuple[Formula, ...]):
    return (frozenset(alpha_key(f) for f in ante),
            frozenset(alpha_key(f) for f in succ))


def _collect_terms(fs: tuple[Formula, ...], sig: Signature) -> list[Term]:
    """Candidate instantiation terms: subterms over the sequent's free
    variables, plus declared constants."""
    out: dict = {}
    allowed: set[Var] = set()
    for f in fs:
        allowed |= free_vars(f)

    def tgo(t: Term) -> None:
        if term_vars(t) <= allowed:
            out.setdefault((print_formula_term(t), t.sort), t)
        if isinstance(t, App):
            for a in t.args:
                tgo(a)

    def go(f: Formula) -> None:
        if isinstance(f, Atom):
            for a in f.args:
                tgo(a)
        elif isinstance(f, Eq):
            tgo(f.left)
            tgo(f.right)
        elif isinstance(f, Not):
            go(f.body)
        elif isinstance(f, (And, Or, Imp)):
            go(f.left)
            go(f.right)
        elif isinstance(f, (Forall, Exists)):
            go(f.body)

    for f in fs:
        go(f)
    for c, s in sig.constants:
        out.setdefault((c, s), Const(c, s))
    return [t for _, t in sorted(out.items())]


def print_formula_term(t: Term) -> str:
    from .syntax import print_term
    return print_term(t)


class _Search:
    def __init__(self, sig: Signature, budget: _Budget):
        self.sig = sig
        self.budget = budget
        self.failed: dict = {}
        self.names: set[str] = set()

    def fresh(self, sort: str) -> Var:
        v = fresh_var(sort, self.names)
        self.names.add(v.name)
        return v

    def prove(self, ante: tuple[Formula, ...], succ: tuple[Formula, ...],
              depth: int) -> Optional[SequentProof]:
        ante, succ = _canon(ante), _canon(succ)
        goal = Sequent(ante, succ)
        if not self.budget.spend():
            raise _OutOfBudget()
        a_keys = {alpha_key(f) for f in ante}
        s_keys = {alpha_key(f) for f in succ}
        common = a_keys & s_keys
        if common:
            phi = next(f for f in ante if alpha_key(f) in common)
            return SequentProof("ax", goal, principal=phi)
        if alpha_key(FALSE) in a_keys:
            return SequentProof("lfalse", goal)
        if depth <= 0:
            return None
        k = _key(ante, succ)
        if self.failed.get(k, -1) >= depth:
            return None

        result = self._expand(ante, succ, goal, depth)
        if result is None:
            self.failed[k] = max(self.failed.get(k, -1), depth)
        return result

    def _expand(self, ante, succ, goal, depth) -> Optional[SequentProof]:
        # invertible single-premise rules first
        for f in ante:
            if isinstance(f, And):
                sub = self.prove(remove_one(ante, f) + (f.left, f.right), succ, depth - 1)
                return self._wrap1(sub, "land", goal, f,
                                   Sequent(remove_one(ante, f) + (f.left, f.right), succ))
            if isinstance(f, Not):
                sub = self.prove(remove_one(ante, f), succ + (f.body,), depth - 1)
                return self._wrap1(sub, "lnot", goal, f,
                                   Sequent(remove_one(ante, f), succ + (f.body,)))
        for f in succ:
            if isinstance(f, Or):
                sub = self.prove(ante, remove_one(succ, f) + (f.left, f.right), depth - 1)
                return self._wrap1(sub, "ror", goal, f,
                                   Sequent(ante, remove_one(succ, f) + (f.left, f.right)))
            if isinstance(f, Imp):
                sub = self.prove(ante + (f.left,), remove_one(succ, f) + (f.right,), depth - 1)
                return self._wrap1(sub, "rimp", goal, f,
                                   Sequent(ante + (f.left,), remove_one(succ, f) + (f.right,)))
            if isinstance(f, Not):
                sub = self.prove(ante + (f.body,), remove_one(succ, f), depth - 1)
                return self._wrap1(sub, "rnot", goal, f,
                                   Sequent(ante + (f.body,), remove_one(succ, f)))
        # invertible eigenvariable rules
        for f in ante:
            if isinstance(f, Exists):
                a = self.fresh(f.var.sort)
                inst = substitute(f.body, f.var, a)
                sub = self.prove(remove_one(ante, f) + (inst,), succ, depth - 1)
                return self._wrap1(sub, "lex", goal, f,
                                   Sequent(remove_one(ante, f) + (inst,), succ), eigen=a)
        for f in succ:
            if isinstance(f, Forall):
                a = self.fresh(f.var.sort)
                inst = substitute(f.body, f.var, a)
                sub = self.prove(ante, remove_one(succ, f) + (inst,), depth - 1)
                return self._wrap1(sub, "rall", goal, f,
                                   Sequent(ante, remove_one(succ, f) + (inst,)), eigen=a)
        # branching rules
        for f in succ:
            if isinstance(f, And):
                s1 = self.prove(ante, remove_one(succ, f) + (f.left,), depth - 1)
                if s1 is None:
                    return None
                s2 = self.prove(ante, remove_one(succ, f) + (f.right,), depth - 1)
                if s2 is None:
                    return None
                w1 = Sequent(ante, remove_one(succ, f) + (f.left,))
                w2 = Sequent(ante, remove_one(succ, f) + (f.right,))
                return SequentProof("rand", goal,
                                    (weaken_to(s1, w1.ante, w1.succ),
                                     weaken_to(s2, w2.ante, w2.succ)), principal=f)
        for f in ante:
            if isinstance(f, Or):
                s1 = self.prove(remove_one(ante, f) + (f.left,), succ, depth - 1)
                if s1 is None:
                    return None
                s2 = self.prove(remove_one(ante, f) + (f.right,), succ, depth - 1)
                if s2 is None:
                    return None
                w1 = Sequent(remove_one(ante, f) + (f.left,), succ)
                w2 = Sequent(remove_one(ante, f) + (f.right,), succ)
                return SequentProof("lor", goal,
                                    (weaken_to(s1, w1.ante, w1.succ),
                                     weaken_to(s2, w2.ante, w2.succ)), principal=f)
            if isinstance(f, Imp):
                s1 = self.prove(remove_one(ante, f), succ + (f.left,), depth - 1)
                if s1 is None:
                    continue
                s2 = self.prove(remove_one(ante, f) + (f.right,), succ, depth - 1)
                if s2 is None:
                    continue
                w1 = Sequent(remove_one(ante, f), succ + (f.left,))
                w2 = Sequent(remove_one(ante, f) + (f.right,), succ)
                return SequentProof("limp", goal,
                                    (weaken_to(s1, w1.ante, w1.succ),
                                     weaken_to(s2, w2.ante, w2.succ)), principal=f)
        # saturation tactic for definite-clause antecedents (machine formulas
        # and the like); emits a complete subproof when it applies
        horn = self._try_horn(ante, succ, goal)
        if horn is not None:
            return horn
        # instantiation choice points; keep the quantified formula available
        terms = _collect_terms(ante + succ, self.sig)
        sorted_ante = [f for f in ante if isinstance(f, Forall)]
        sorted_succ = [f for f in succ if isinstance(f, Exists)]
        moves = []
        for f in sorted_succ:
            cands = [t for t in terms if t.sort == f.var.sort] or [self.fresh(f.var.sort)]
            for t in cands:
                moves.append(("rex", f, t))
        for f in sorted_ante:
            cands = [t for t in terms if t.sort == f.var.sort] or [self.fresh(f.var.sort)]
            for t in cands:
                moves.append(("lall", f, t))
        # prefer instantiations whose instance matches an existing atom
        for rule, f, t in moves:
            inst = substitute(f.body, f.var, t)
            if rule == "lall":
                if any(alpha_key(inst) == alpha_key(g) for g in ante):
                    continue  # no progress
                sub = self.prove(ante + (inst,), succ, depth - 1)
                if sub is not None:
                    return self._keep_quant(sub, "lall", goal, f, term=t, inst=inst)
            else:
                if any(alpha_key(inst) == alpha_key(g) for g in succ):
                    continue
                sub = self.prove(ante, succ + (inst,), depth - 1)
                if sub is not None:
                    return self._keep_quant(sub, "rex", goal, f, term=t, inst=inst)
        return None

    # -- saturation tactic for definite-clause antecedents --------------------

    def _try_horn(self, ante, succ, goal) -> Optional[SequentProof]:
        """When the antecedent is facts + universally quantified definite
        clauses and some succedent member is an exists/or/and combination of
        atoms, forward-saturate and emit the sequent proof directly (cuts on
        derived facts). Falls back to None when the shape does not apply."""
        facts = [f for f in ante if isinstance(f, Atom) and not free_vars(f)]
        rules = []
        for f in ante:
            parts = _horn_parts(f)
            if parts is not None:
                rules.append((f,) + parts)
        if not rules:
            return None
        target = None
        for g in succ:
            plan = _goal_shape(g)
            if plan is not None:
                target = (g, plan)
                break
        if target is None:
            return None
        universe = _closed_universe(ante + succ, self.sig)
        if not universe:
            return None
        try:
            known, steps = self._saturate(facts, rules, universe)
        except _SaturationOverflow:
            return None
        goal_formula, (ex_vars, disjuncts) = target
        found = _find_goal_witness(ex_vars, disjuncts, known, universe)
        if found is None:
            return None
        assignment, disjunct_atoms = found
        needed = _needed_steps(steps, facts, disjunct_atoms)
        if needed is None:
            return None
        return self._emit_horn(goal, goal_formula, assignment, needed)

    def _saturate(self, facts, rules, universe):
        known: dict = {alpha_key(a): a for a in facts}
        steps: list = []
        for _ in range(80):
            new_any = False
            for rule_f, vs, body, head in rules:
                for env in _rule_matches(vs, body, dict(known), universe):
                    head_inst = [_subst_atom(a, env) for a in head]
                    if all(alpha_key(a) in known for a in head_inst):
                        continue
                    if not self.budget.spend():
                        raise _OutOfBudget()
                    body_inst = [_subst_atom(a, env) for a in body]
                    subst = [(v, env[v.name]) for v in vs]
                    steps.append((rule_f, subst, body_inst, head_inst))
                    for a in head_inst:
                        known.setdefault(alpha_key(a), a)
                    new_any = True
                    if len(known) > 5000:
                        raise _SaturationOverflow()
            if not new_any:
                break
        return known, steps

    def _emit_horn(self, goal: Sequent, goal_formula, assignment, needed
                   ) -> SequentProof:
        base_succ = goal.succ

        def spend() -> None:
            if not self.budget.spend():
                raise _OutOfBudget()

        def in_ante(a_now, phi) -> bool:
            k = alpha_key(phi)
            return any(alpha_key(f) == k for f in a_now)

        def prove_conj(a_now, s_now, phi) -> SequentProof:
            # a_now => s_now + (phi,), phi a conjunction tree of present atoms
            spend()
            target = Sequent(a_now, s_now + (phi,))
            if isinstance(phi, And):
                return SequentProof("rand", target,
                                    (prove_conj(a_now, s_now, phi.left),
                                     prove_conj(a_now, s_now, phi.right)),
                                    principal=phi)
            return SequentProof("ax", target, principal=phi)

        def instantiated(rule_f, subst):
            cur = rule_f
            for v, t in subst:
                assert isinstance(cur, Forall)
                cur = substitute(cur.body, cur.var, t)
            return cur

        def prove_step(a_now, rule_f, subst, head_conj) -> SequentProof:
            # a_now => base_succ + (head_conj,) by instantiating the rule
            target_succ = base_succ + (head_conj,)
            lall_stack = []
            cur_f = rule_f
            cur_ante = a_now
            for v, t in subst:
                spend()
                inst = substitute(cur_f.body, cur_f.var, t)
                lall_stack.append((cur_f, t, cur_ante))
                cur_ante = remove_one(cur_ante, cur_f) + (inst,)
                cur_f = inst
            if isinstance(cur_f, Imp):
                spend()
                base = remove_one(cur_ante, cur_f)
                left = prove_conj(base, target_succ, cur_f.left)
                right = SequentProof("ax", Sequent(base + (cur_f.right,), target_succ),
                                     principal=cur_f.right)
                node = SequentProof("limp", Sequent(cur_ante, target_succ),
                                    (left, right), principal=cur_f)
            else:
                spend()
                node = SequentProof("ax", Sequent(cur_ante, target_succ),
                                    principal=cur_f)
            for rule_formula, t, outer_ante in reversed(lall_stack):
                node = SequentProof("lall", Sequent(outer_ante, target_succ),
                                    (node,), principal=rule_formula, term=t)
            return node

        def flatten_into(a_ctx, pending, cont) -> SequentProof:
            # proof of (a_ctx + pending => base_succ); lands split conjunctions
            if not pending:
                return cont(a_ctx)
            phi, rest = pending[0], list(pending[1:])
            if isinstance(phi, And):
                spend()
                inner = flatten_into(a_ctx, [phi.left, phi.right] + rest, cont)
                return SequentProof("land",
                                    Sequent(a_ctx + (phi,) + tuple(rest), base_succ),
                                    (inner,), principal=phi)
            return flatten_into(a_ctx + (phi,), rest, cont)

        def prove_succ(a_now, s_ctx, pending) -> SequentProof:
            spend()
            total = s_ctx + tuple(pending)
            for f in total:
                if in_ante(a_now, f):
                    rep = next(g for g in a_now if alpha_key(g) == alpha_key(f))
                    return SequentProof("ax", Sequent(a_now, total), principal=rep)
            if not pending:
                raise RuntimeError("horn emission lost the goal")
            phi, rest = pending[0], list(pending[1:])
            if isinstance(phi, Or):
                inner = prove_succ(a_now, s_ctx, [phi.left, phi.right] + rest)
                return SequentProof("ror", Sequent(a_now, total), (inner,),
                                    principal=phi)
            if isinstance(phi, Exists) and phi.var.name in assignment:
                t = assignment[phi.var.name]
                inst = substitute(phi.body, phi.var, t)
                inner = prove_succ(a_now, s_ctx, [inst] + rest)
                return SequentProof("rex", Sequent(a_now, total), (inner,),
                                    principal=phi, term=t)
            if isinstance(phi, And) and _conj_atoms(phi) is not None \
                    and all(in_ante(a_now, a) for a in _conj_atoms(phi)):
                p1 = prove_succ(a_now, s_ctx, [phi.left] + rest)
                p2 = prove_succ(a_now, s_ctx, [phi.right] + rest)
                return SequentProof("rand", Sequent(a_now, total), (p1, p2),
                                    principal=phi)
            return prove_succ(a_now, s_ctx + (phi,), rest)

        def chain(i, a_now) -> SequentProof:
            if i == len(needed):
                return prove_succ(a_now, remove_one(base_succ, goal_formula),
                                  [goal_formula])
            rule_f, subst, body_inst, head_inst = needed[i]
            head_conj = instantiated(rule_f, subst)
            if isinstance(head_conj, Imp):
                head_conj = head_conj.right
            left = prove_step(a_now, rule_f, subst, head_conj)
            inner = flatten_into(a_now, [head_conj], lambda a_full: chain(i + 1, a_full))
            spend()
            return SequentProof("cut", Sequent(a_now, base_succ), (left, inner),
                                principal=head_conj)

        return chain(0, goal.ante)

    def _wrap1(self, sub: Optional[SequentProof], rule: str, goal: Sequent,
               principal: Formula, premise: Sequent,
               eigen: Optional[Var] = None, term: Optional[Term] = None
               ) -> Optional[SequentProof]:
        if sub is None:
            return None
        sub = weaken_to(sub, premise.ante, premise.succ)
        return SequentProof(rule, goal, (sub,), principal=principal,
                            eigen=eigen, term=term)

    def _keep_quant(self, sub: SequentProof, rule: str, goal: Sequent,
                    f: Formula, term: Term, inst: Formula) -> SequentProof:
        """Build contraction + instantiation so the quantifier stays usable."""
        if rule == "lall":
            dup = Sequent(goal.ante + (f,), goal.succ)
            prem = Sequent(goal.ante + (inst,), goal.succ)
            sub = weaken_to(sub, prem.ante, prem.succ)
            node = SequentProof("lall", dup, (sub,), principal=f, term=term)
            return SequentProof("cl", goal, (node,), principal=f)
        dup = Sequent(goal.ante, goal.succ + (f,))
        prem = Sequent(goal.ante, goal.succ + (inst,))
        sub = weaken_to(sub, prem.ante, prem.succ)
        node = SequentProof("rex", dup, (sub,), principal=f, term=term)
        return SequentProof("cr", goal, (node,), principal=f)


class _OutOfBudget(Exception):
    pass


class _SaturationOverflow(Exception):
    pass


def _conj_atoms(phi: Formula) -> Optional[list[Atom]]:
    if isinstance(phi, Atom):
        return [phi]
    if isinstance(phi, And):
        l = _conj_atoms(phi.left)
        r = _conj_atoms(phi.right)
        if l is None or r is None:
            return None
        return l + r
    return None


def _horn_parts(phi: Formula) -> Optional[tuple[list[Var], list[Atom], list[Atom]]]:
    """(vars, body atoms, head atoms) for universally quantified definite
    clauses; None when the formula is not of that shape."""
    vs: list[Var] = []
    cur = phi
    while isinstance(cur, Forall):
        vs.append(cur.var)
        cur = cur.body
    if isinstance(cur, Imp):
        body = _conj_atoms(cur.left)
        head = _conj_atoms(cur.right)
        if body is None or head is None:
            return None
        return vs, body, head
    head = _conj_atoms(cur)
    if head is None or not vs and isinstance(phi, Atom):
        return None
    if head is None:
        return None
    if not vs:
        return None
    return vs, [], head


def _goal_shape(g: Formula) -> Optional[tuple[list[Var], list[Formula]]]:
    """(existential vars, disjunct formulas) when g is exists* of a
    disjunction/conjunction of atoms."""
    vs: list[Var] = []
    cur = g
    while isinstance(cur, Exists):
        vs.append(cur.var)
        cur = cur.body

    def disjuncts(f: Formula) -> Optional[list[Formula]]:
        if isinstance(f, Or):
            l = disjuncts(f.left)
            r = disjuncts(f.right)
            if l is None or r is None:
                return None
            return l + r
        return [f] if _conj_atoms(f) is not None else None

    ds = disjuncts(cur)
    if ds is None:
        return None
    return vs, ds


def _closed_universe(fs: tuple[Formula, ...], sig: Signature,
                     cap: int = 24, depth: int = 8) -> list[Term]:
    base = _collect_terms(fs, sig)
    unary = [(f, args[0], res) for f, args, res in sig.functions if len(args) == 1]
    out = {(print_formula_term(t), t.sort): t for t in base}
    frontier = list(base)
    for _ in range(depth):
        new = []
        for t in frontier:
            for fname, argsort, res in unary:
                if t.sort == argsort and len(out) < cap:
                    cand = App(fname, (t,), res)
                    key = (print_formula_term(cand), cand.sort)
                    if key not in out:
                        out[key] = cand
                        new.append(cand)
        if not new or len(out) >= cap:
            break
        frontier = new
    return [t for _, t in sorted(out.items())]


def _match_term(pattern: Term, value: Term, env: dict) -> Optional[dict]:
    if isinstance(pattern, Var):
        bound = env.get(pattern.name)
        if bound is None:
            if pattern.sort != value.sort:
                return None
            env = dict(env)
            env[pattern.name] = value
            return env
        return env if bound == value else None
    if isinstance(pattern, Const):
        return env if pattern == value else None
    if isinstance(value, App) and value.name == pattern.name \
            and len(value.args) == len(pattern.args):
        for p, v in zip(pattern.args, value.args):
            env = _match_term(p, v, env)
            if env is None:
                return None
        return env
    return None


def _subst_atom(a: Atom, env: dict) -> Atom:
    def sub(t: Term) -> Term:
        if isinstance(t, Var):
            return env.get(t.name, t)
        if isinstance(t, App):
            return App(t.name, tuple(sub(x) for x in t.args), t.sort)
        return t

    return Atom(a.pred, tuple(sub(t) for t in a.args))


def _rule_matches(vs: list[Var], body: list[Atom], known: dict,
                  universe: list[Term]):
    """Enumerate variable assignments grounding the body inside the known
    facts; variables not fixed by the body range over the universe."""
    facts = list(known.values())

    def go(i: int, env: dict):
        if i == len(body):
            free = [v for v in vs if v.name not in env]
            if not free:
                yield env
                return
            pools = [[t for t in universe if t.sort == v.sort] for v in free]
            for combo in itertools.product(*pools):
                env2 = dict(env)
                for v, t in zip(free, combo):
                    env2[v.name] = t
                yield env2
            return
        pat = body[i]
        for fact in facts:
            if not isinstance(fact, Atom) or fact.pred != pat.pred \
                    or len(fact.args) != len(pat.args):
                continue
            env2 = env
            ok = True
            for p, v in zip(pat.args, fact.args):
                env2 = _match_term(p, v, env2)
                if env2 is None:
                    ok = False
                    break
            if ok:
                yield from go(i + 1, env2)

    yield from go(0, {})


def _find_goal_witness(ex_vars: list[Var], disjuncts: list[Formula],
                       known: dict, universe: list[Term]):
    pools = [[t for t in universe if t.sort == v.sort] for v in ex_vars]
    for combo in itertools.product(*pools):
        assignment = {v.name: t for v, t in zip(ex_vars, combo)}
        for d in disjuncts:
            atoms = [_subst_atom(a, assignment) for a in _conj_atoms(d)]
            if all(alpha_key(a) in known for a in atoms):
                return assignment, atoms
    return None


def _needed_steps(steps, initial_facts, goal_atoms):
    produced: dict = {}
    for idx, (_, _, _, head_inst) in enumerate(steps):
        for a in head_inst:
            produced.setdefault(alpha_key(a), idx)
    have = {alpha_key(a) for a in initial_facts}
    needed_idx: set[int] = set()
    work = [alpha_key(a) for a in goal_atoms]
    seen = set()
    while work:
        k = work.pop()
        if k in seen or k in have:
            continue
        seen.add(k)
        if k not in produced:
            return None
        idx = produced[k]
        if idx not in needed_idx:
            needed_idx.add(idx)
            for a in steps[idx][2]:
                work.append(alpha_key(a))
    return [steps[i] for i in sorted(needed_idx)]


def prove_sequent(ante: tuple[Formula, ...], succ: tuple[Formula, ...],
                  sig: Signature, budget: int) -> Optional[SequentProof]:
    """Iterative-deepening backward search; returns a checkable proof whose
    end-sequent is the canonicalized goal, or None."""
    b = _Budget(budget)
    searcher = _Search(sig, b)
    for f in ante + succ:
        from .syntax import _used_names
        searcher.names |= _used_names(f)
    depth = 1
    try:
        while b.left > 0:
            searcher.failed = {k: v for k, v in searcher.failed.items()}
            result = searcher.prove(ante, succ, depth)
            if result is not None:
                return result
            depth += 1
            if depth > 200:
                return None
    except _OutOfBudget:
        return None
    return None


def prove_bounded(gamma: Theory, phi: Formula, budget: int
                  ) -> Union[Proved, NotFoundWithin]:
    """Proved(d) guarantees check_derivation(d, gamma, phi); NotFoundWithin
    says nothing about provability."""
    sp = prove_sequent(tuple(gamma.sentences), (phi,), gamma.signature, budget)
    if sp is None:
        return NotFoundWithin(budget)
    d = sequent_to_derivation(sp, tuple(gamma.sentences))
    if not check_derivation(d, gamma, phi):
        raise RuntimeError("embedding produced a derivation the kernel rejects")
    return Proved(d)


def reduce_to_consistency(gamma: Theory, phi: Formula) -> Theory:
    """Gamma |- phi  iff  Gamma + {~phi} |- false: returns the reduced theory."""
    if free_vars(phi):
        raise ValueError("reduction requires a closed formula")
    label = "neg_goal"
    labels = {l for l, _ in gamma.axioms}
    while label in labels:
        label += "'"
    return gamma.extended([(label, Not(phi))],
                          name=(gamma.name + "+neg" if gamma.name else "reduced"))
