"""Hilbert-style proof system: frozen axiom schemes, checkable derivations,
and a proof builder with hypothetical reasoning (deduction theorem).

The scheme list below is the single normative axiomatization used everywhere
in this repository (see docs/proof_system.md); the arithmetized proof
predicate is defined against exactly these schemes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .syntax import (And, Atom, Eq, Exists, FALSE, Forall, Formula, Imp, Not,
                     Or, Signature, SyntaxError_, Term, Theory, Var, alpha_eq,
                     check_formula, free_vars, parse_formula, parse_term,
                     print_formula, print_term, substitute)


class ProofError(Exception):
    pass


MetaValue = Union[Formula, Term, Var]


# ---------------------------------------------------------------------------
# Axiom schemes


@dataclass(frozen=True)
class Scheme:
    sid: str
    meta: tuple[tuple[str, str], ...]   # (metavar, kind) with kind formula|term|var
    description: str

    def instance(self, inst: dict[str, MetaValue]) -> Formula:
        missing = [m for m, _ in self.meta if m not in inst]
        if missing:
            raise ProofError(f"scheme {self.sid}: missing instantiation for {missing}")
        return _BUILDERS[self.sid](inst)


_FORMULA_TYPES = (type(FALSE), Atom, Eq, Not, And, Or, Imp, Forall, Exists)


def _f(inst, key) -> Formula:
    v = inst[key]
    if not isinstance(v, _FORMULA_TYPES):
        raise ProofError(f"metavariable {key} must be a formula")
    return v


def _t(inst, key) -> Term:
    v = inst[key]
    if isinstance(v, _FORMULA_TYPES):
        raise ProofError(f"metavariable {key} must be a term")
    return v


def _v(inst, key) -> Var:
    v = inst[key]
    if not isinstance(v, Var):
        raise ProofError(f"metavariable {key} must be a variable")
    return v


_BUILDERS: dict[str, Callable[[dict], Formula]] = {
    "k": lambda i: Imp(_f(i, "A"), Imp(_f(i, "B"), _f(i, "A"))),
    "s": lambda i: Imp(Imp(_f(i, "A"), Imp(_f(i, "B"), _f(i, "C"))),
                       Imp(Imp(_f(i, "A"), _f(i, "B")), Imp(_f(i, "A"), _f(i, "C")))),
    "and-i": lambda i: Imp(_f(i, "A"), Imp(_f(i, "B"), And(_f(i, "A"), _f(i, "B")))),
    "and-e1": lambda i: Imp(And(_f(i, "A"), _f(i, "B")), _f(i, "A")),
    "and-e2": lambda i: Imp(And(_f(i, "A"), _f(i, "B")), _f(i, "B")),
    "or-i1": lambda i: Imp(_f(i, "A"), Or(_f(i, "A"), _f(i, "B"))),
    "or-i2": lambda i: Imp(_f(i, "B"), Or(_f(i, "A"), _f(i, "B"))),
    "or-e": lambda i: Imp(Imp(_f(i, "A"), _f(i, "C")),
                          Imp(Imp(_f(i, "B"), _f(i, "C")),
                              Imp(Or(_f(i, "A"), _f(i, "B")), _f(i, "C")))),
    "neg-e": lambda i: Imp(Not(_f(i, "A")), Imp(_f(i, "A"), FALSE)),
    "neg-i": lambda i: Imp(Imp(_f(i, "A"), FALSE), Not(_f(i, "A"))),
    "efq": lambda i: Imp(FALSE, _f(i, "A")),
    "tnd": lambda i: Or(_f(i, "A"), Not(_f(i, "A"))),
    "all-e": lambda i: Imp(Forall(_v(i, "x"), _f(i, "A")),
                           substitute(_f(i, "A"), _v(i, "x"), _t(i, "t"))),
    "all-d": lambda i: Imp(Forall(_v(i, "x"), Imp(_f(i, "A"), _f(i, "B"))),
                           Imp(_f(i, "A"), Forall(_v(i, "x"), _f(i, "B")))),
    "ex-i": lambda i: Imp(substitute(_f(i, "A"), _v(i, "x"), _t(i, "t")),
                          Exists(_v(i, "x"), _f(i, "A"))),
    "ex-e": lambda i: Imp(Forall(_v(i, "x"), Imp(_f(i, "A"), _f(i, "B"))),
                          Imp(Exists(_v(i, "x"), _f(i, "A")), _f(i, "B"))),
    "eq-refl": lambda i: Eq(_t(i, "t"), _t(i, "t")),
    "eq-sub": lambda i: Imp(Eq(_t(i, "s"), _t(i, "t")),
                            Imp(substitute(_f(i, "A"), _v(i, "x"), _t(i, "s")),
                                substitute(_f(i, "A"), _v(i, "x"), _t(i, "t")))),
}


def _side_condition(sid: str, inst: dict[str, MetaValue]) -> Optional[str]:
    if sid == "all-d" and _v(inst, "x") in free_vars(_f(inst, "A")):
        return "all-d requires the bound variable not free in the antecedent"
    if sid == "ex-e" and _v(inst, "x") in free_vars(_f(inst, "B")):
        return "ex-e requires the bound variable not free in the conclusion"
    return None


SCHEMES: dict[str, Scheme] = {
    "k": Scheme("k", (("A", "formula"), ("B", "formula")), "A -> (B -> A)"),
    "s": Scheme("s", (("A", "formula"), ("B", "formula"), ("C", "formula")),
                "(A -> (B -> C)) -> ((A -> B) -> (A -> C))"),
    "and-i": Scheme("and-i", (("A", "formula"), ("B", "formula")), "A -> (B -> A & B)"),
    "and-e1": Scheme("and-e1", (("A", "formula"), ("B", "formula")), "A & B -> A"),
    "and-e2": Scheme("and-e2", (("A", "formula"), ("B", "formula")), "A & B -> B"),
    "or-i1": Scheme("or-i1", (("A", "formula"), ("B", "formula")), "A -> A | B"),
    "or-i2": Scheme("or-i2", (("A", "formula"), ("B", "formula")), "B -> A | B"),
    "or-e": Scheme("or-e", (("A", "formula"), ("B", "formula"), ("C", "formula")),
                   "(A -> C) -> ((B -> C) -> (A | B -> C))"),
    "neg-e": Scheme("neg-e", (("A", "formula"),), "~A -> (A -> false)"),
    "neg-i": Scheme("neg-i", (("A", "formula"),), "(A -> false) -> ~A"),
    "efq": Scheme("efq", (("A", "formula"),), "false -> A"),
    "tnd": Scheme("tnd", (("A", "formula"),), "A | ~A"),
    "all-e": Scheme("all-e", (("A", "formula"), ("x", "var"), ("t", "term")),
                    "(forall x A) -> A[x:=t]"),
    "all-d": Scheme("all-d", (("A", "formula"), ("B", "formula"), ("x", "var")),
                    "forall x (A -> B) -> (A -> forall x B), x not free in A"),
    "ex-i": Scheme("ex-i", (("A", "formula"), ("x", "var"), ("t", "term")),
                   "A[x:=t] -> exists x A"),
    "ex-e": Scheme("ex-e", (("A", "formula"), ("B", "formula"), ("x", "var")),
                   "forall x (A -> B) -> (exists x A -> B), x not free in B"),
    "eq-refl": Scheme("eq-refl", (("t", "term"),), "t = t"),
    "eq-sub": Scheme("eq-sub", (("A", "formula"), ("x", "var"), ("s", "term"), ("t", "term")),
                     "s = t -> (A[x:=s] -> A[x:=t])"),
}


def axiom_instance(sid: str, inst: dict[str, MetaValue]) -> Formula:
    if sid not in SCHEMES:
        raise ProofError(f"unknown axiom scheme {sid!r}")
    err = _side_condition(sid, inst)
    if err:
        raise ProofError(err)
    return SCHEMES[sid].instance(inst)


# ---------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class Hyp:
    pass


@dataclass(frozen=True)
class Ax:
    sid: str
    inst: tuple[tuple[str, MetaValue], ...]


@dataclass(frozen=True)
class MP:
    imp: int
    ant: int


@dataclass(frozen=True)
class Gen:
    prev: int
    var: Var


Justification = Union[Hyp, Ax, MP, Gen]


@dataclass(frozen=True)
class Line:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Derivation:
    lines: tuple[Line, ...]

    @property
    def conclusion(self) -> Formula:
        if not self.lines:
            raise ProofError("empty derivation has no conclusion")
        return self.lines[-1].formula

    def hypotheses(self) -> list[Formula]:
        return [ln.formula for ln in self.lines if isinstance(ln.just, Hyp)]


def _ancestor_hyps(d: Derivation, idx: int, cache: dict[int, frozenset[int]]) -> frozenset[int]:
    stack = [idx]
    while stack:
        cur = stack[-1]
        if cur in cache:
            stack.pop()
            continue
        just = d.lines[cur].just
        if isinstance(just, Hyp):
            cache[cur] = frozenset([cur])
            stack.pop()
        elif isinstance(just, Ax):
            cache[cur] = frozenset()
            stack.pop()
        elif isinstance(just, MP):
            deps = [k for k in (just.imp, just.ant) if k not in cache]
            if deps:
                stack.extend(deps)
            else:
                cache[cur] = cache[just.imp] | cache[just.ant]
                stack.pop()
        else:
            if just.prev not in cache:
                stack.append(just.prev)
            else:
                cache[cur] = cache[just.prev]
                stack.pop()
    return cache[idx]


def check_derivation_report(d: Derivation, gamma: Theory, phi: Formula
                            ) -> tuple[bool, Optional[tuple[int, str]]]:
    """Validity check with a first-failing-line report (1-based line numbers)."""
    return _check_lines(d, gamma.signature, gamma.sentences, phi)


def check_derivation_raw(d: Derivation, sig: Signature,
                         hypotheses: tuple[Formula, ...], phi: Formula) -> bool:
    """Kernel check against an explicit hypothesis list (no Theory wrapper);
    used by the arithmetized proof predicate, where hypotheses come from a
    decoded conjunction and need not be closed."""
    return _check_lines(d, sig, hypotheses, phi)[0]


def _check_lines(d: Derivation, sig: Signature,
                 sentences: tuple[Formula, ...], phi: Formula
                 ) -> tuple[bool, Optional[tuple[int, str]]]:
    if not d.lines:
        return False, (0, "empty derivation")
    hyp_cache: dict[int, frozenset[int]] = {}
    for i, ln in enumerate(d.lines):
        try:
            check_formula(sig, ln.formula)
        except SyntaxError_ as e:
            return False, (i + 1, f"ill-sorted formula: {e}")
        j = ln.just
        if isinstance(j, Hyp):
            if not any(alpha_eq(ln.formula, g) for g in sentences):
                return False, (i + 1, "hypothesis not in the theory")
        elif isinstance(j, Ax):
            try:
                want = axiom_instance(j.sid, dict(j.inst))
            except (ProofError, SyntaxError_) as e:
                return False, (i + 1, f"bad axiom instance: {e}")
            if not alpha_eq(want, ln.formula):
                return False, (i + 1, f"formula is not the stated {j.sid} instance")
        elif isinstance(j, MP):
            if not (0 <= j.imp < i and 0 <= j.ant < i):
                return False, (i + 1, "modus ponens refers to a non-earlier line")
            imp = d.lines[j.imp].formula
            if not isinstance(imp, Imp):
                return False, (i + 1, "modus ponens major premise is not an implication")
            if not alpha_eq(imp.left, d.lines[j.ant].formula):
                return False, (i + 1, "modus ponens premises do not match")
            if not alpha_eq(imp.right, ln.formula):
                return False, (i + 1, "modus ponens conclusion does not match")
        elif isinstance(j, Gen):
            if not (0 <= j.prev < i):
                return False, (i + 1, "generalization refers to a non-earlier line")
            if not isinstance(ln.formula, Forall):
                return False, (i + 1, "generalization must conclude a universal formula")
            want = Forall(j.var, d.lines[j.prev].formula)
            if not alpha_eq(want, ln.formula):
                return False, (i + 1, "generalization conclusion does not match")
            for h in _ancestor_hyps(d, j.prev, hyp_cache):
                if j.var in free_vars(d.lines[h].formula):
                    return False, (i + 1,
                                   f"generalized variable {j.var.name} is free in a used hypothesis")
        else:
            return False, (i + 1, "unknown justification")
    if not alpha_eq(d.conclusion, phi):
        return False, (len(d.lines), "last line is not the stated conclusion")
    return True, None


def check_derivation(d: Derivation, gamma: Theory, phi: Formula) -> bool:
    ok, _ = check_derivation_report(d, gamma, phi)
    return ok


# ---------------------------------------------------------------------------
# Proof builder with the deduction theorem


class Prover:
    """Accumulates derivation lines; handles are integer line indices.

    suppose(phi) opens a hypothetical context; discharging it rewrites the
    inner lines through the standard deduction-theorem transformation, so the
    final artifact uses only hyp/ax/mp/gen and re-checks under the kernel.
    """

    def __init__(self):
        self._lines: list[Line] = []
        self._memo: dict = {}

    # -- primitive steps

    def _emit(self, formula: Formula, just: Justification) -> int:
        self._lines.append(Line(formula, just))
        return len(self._lines) - 1

    def hyp(self, phi: Formula) -> int:
        key = ("hyp", alpha_key_of(phi))
        if key not in self._memo:
            self._memo[key] = self._emit(phi, Hyp())
        return self._memo[key]

    def ax(self, sid: str, **inst: MetaValue) -> int:
        phi = axiom_instance(sid, inst)
        key = ("ax", sid, alpha_key_of(phi))
        if key not in self._memo:
            self._memo[key] = self._emit(phi, Ax(sid, tuple(sorted(inst.items()))))
        return self._memo[key]

    def mp(self, imp: int, ant: int) -> int:
        f = self.formula_of(imp)
        if not isinstance(f, Imp):
            raise ProofError("mp: major premise is not an implication")
        if not alpha_eq(f.left, self.formula_of(ant)):
            raise ProofError(
                f"mp: antecedent mismatch: {print_formula(f.left)} vs "
                f"{print_formula(self.formula_of(ant))}")
        return self._emit(f.right, MP(imp, ant))

    def mps(self, imp: int, *ants: int) -> int:
        h = imp
        for a in ants:
            h = self.mp(h, a)
        return h

    def gen(self, prev: int, x: Var) -> int:
        return self._emit(Forall(x, self.formula_of(prev)), Gen(prev, x))

    def formula_of(self, h: int) -> Formula:
        return self._lines[h].formula

    def derivation(self) -> Derivation:
        return Derivation(tuple(self._lines))

    def suppose(self, phi: Formula) -> "_SubProver":
        return _SubProver(self, phi)

    # -- derived combinators

    def imp_refl(self, phi: Formula) -> int:
        a1 = self.ax("s", A=phi, B=Imp(phi, phi), C=phi)
        a2 = self.ax("k", A=phi, B=Imp(phi, phi))
        a3 = self.mp(a1, a2)
        a4 = self.ax("k", A=phi, B=phi)
        return self.mp(a3, a4)

    def imp_trans(self, h_ab: int, h_bc: int) -> int:
        fab = self.formula_of(h_ab)
        if not isinstance(fab, Imp):
            raise ProofError("imp_trans expects implications")
        with self.suppose(fab.left) as sub:
            hb = sub.mp(sub.use(h_ab), sub.assumption_handle)
            hc = sub.mp(sub.use(h_bc), hb)
            return sub.discharge(hc)

    def and_intro(self, h_a: int, h_b: int) -> int:
        a, b = self.formula_of(h_a), self.formula_of(h_b)
        return self.mps(self.ax("and-i", A=a, B=b), h_a, h_b)

    def and_left(self, h: int) -> int:
        f = self.formula_of(h)
        if not isinstance(f, And):
            raise ProofError("and_left expects a conjunction")
        return self.mp(self.ax("and-e1", A=f.left, B=f.right), h)

    def and_right(self, h: int) -> int:
        f = self.formula_of(h)
        if not isinstance(f, And):
            raise ProofError("and_right expects a conjunction")
        return self.mp(self.ax("and-e2", A=f.left, B=f.right), h)

    def or_left(self, h: int, other: Formula) -> int:
        return self.mp(self.ax("or-i1", A=self.formula_of(h), B=other), h)

    def or_right(self, h: int, other: Formula) -> int:
        return self.mp(self.ax("or-i2", A=other, B=self.formula_of(h)), h)

    def efq(self, h_false: int, phi: Formula) -> int:
        return self.mp(self.ax("efq", A=phi), h_false)

    def contradiction(self, h_not: int, h_pos: int) -> int:
        f = self.formula_of(h_not)
        if not isinstance(f, Not):
            raise ProofError("contradiction expects a negation")
        return self.mps(self.ax("neg-e", A=f.body), h_not, h_pos)

    def or_elim(self, h_or: int, h_left_imp: int, h_right_imp: int) -> int:
        f = self.formula_of(h_or)
        goal = self.formula_of(h_left_imp)
        if not isinstance(f, Or) or not isinstance(goal, Imp):
            raise ProofError("or_elim shape mismatch")
        rule = self.ax("or-e", A=f.left, B=f.right, C=goal.right)
        return self.mps(rule, h_left_imp, h_right_imp, h_or)

    def cases(self, h_or: int, left_fn, right_fn) -> int:
        """Case split on a disjunction handle; each branch function receives a
        sub-prover and must return a handle for the common goal."""
        f = self.formula_of(h_or)
        if not isinstance(f, Or):
            raise ProofError("cases expects a disjunction")
        with self.suppose(f.left) as sub:
            h_l = sub.discharge(left_fn(sub))
        with self.suppose(f.right) as sub:
            h_r = sub.discharge(right_fn(sub))
        return self.or_elim(h_or, h_l, h_r)

    def tnd_cases(self, phi: Formula, pos_fn, neg_fn) -> int:
        return self.cases(self.ax("tnd", A=phi), pos_fn, neg_fn)

    def forall_elim(self, h: int, t: Term) -> int:
        f = self.formula_of(h)
        if not isinstance(f, Forall):
            raise ProofError("forall_elim expects a universal formula")
        return self.mp(self.ax("all-e", A=f.body, x=f.var, t=t), h)

    def exists_intro(self, h: int, template: Formula, x: Var, t: Term) -> int:
        # template[x:=t] must be the formula at h
        inst = substitute(template, x, t)
        if not alpha_eq(inst, self.formula_of(h)):
            raise ProofError("exists_intro: handle is not the stated instance")
        return self.mp(self.ax("ex-i", A=template, x=x, t=t), h)

    def neg_intro(self, h_imp_false: int) -> int:
        f = self.formula_of(h_imp_false)
        if not (isinstance(f, Imp) and f.right == FALSE):
            raise ProofError("neg_intro expects A -> false")
        return self.mp(self.ax("neg-i", A=f.left), h_imp_false)

    def exists_elim(self, h_ex: int, witness: Var, body_fn) -> int:
        """From exists x A, prove a goal not mentioning the witness: body_fn
        receives (sub, h_A_with_witness) and returns the goal handle."""
        f = self.formula_of(h_ex)
        if not isinstance(f, Exists):
            raise ProofError("exists_elim expects an existential formula")
        inst = substitute(f.body, f.var, witness)
        with self.suppose(inst) as sub:
            h_goal = body_fn(sub, sub.assumption_handle)
            goal = sub.formula_of(h_goal)
            h_imp = sub.discharge(h_goal)
        if witness in free_vars(goal):
            raise ProofError("exists_elim goal mentions the witness variable")
        h_all = self.gen(h_imp, witness)
        body_renamed = substitute(f.body, f.var, witness)
        rule = self.ax("ex-e", A=body_renamed, B=goal, x=witness)
        h_exi = self.mp(rule, h_all)
        # exists witness body_renamed is alpha-equal to h_ex's formula
        return self.mp(h_exi, h_ex)


def alpha_key_of(phi: Formula):
    from .syntax import alpha_key
    return alpha_key(phi)


class _SubProver(Prover):
    """Hypothetical context: lines here may use the assumption; discharge(h)
    emits phi -> formula(h) into the parent via the deduction theorem."""

    def __init__(self, parent: Prover, assumption: Formula):
        super().__init__()
        self.parent = parent
        self.assumption = assumption
        self._imports: dict[int, int] = {}   # sub handle -> parent handle
        self._dt: dict[int, int] = {}        # sub handle -> parent handle of (phi -> f)
        self.assumption_handle = self._emit(assumption, Hyp())
        self._assume_idx = self.assumption_handle

    def __enter__(self) -> "_SubProver":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        return None

    def hyp(self, phi: Formula) -> int:
        return self.use(self.parent.hyp(phi))

    def use(self, parent_handle: int) -> int:
        """Import a line already proved in the parent context."""
        key = ("import", parent_handle)
        if key not in self._memo:
            h = self._emit(self.parent.formula_of(parent_handle), Hyp())
            self._imports[h] = parent_handle
            self._memo[key] = h
        return self._memo[key]

    def gen(self, prev: int, x: Var) -> int:
        if x in free_vars(self.assumption):
            raise ProofError(
                f"cannot generalize over {x.name}: free in the open assumption")
        return super().gen(prev, x)

    def discharge(self, h: int) -> int:
        """Parent handle of (assumption -> formula(h)); iterative so deeply
        chained subproofs cannot overflow the interpreter stack."""
        stack = [h]
        while stack:
            cur = stack[-1]
            if cur in self._dt:
                stack.pop()
                continue
            ln = self._lines[cur]
            deps = []
            if isinstance(ln.just, MP) and cur != self._assume_idx \
                    and cur not in self._imports:
                deps = [d for d in (ln.just.imp, ln.just.ant) if d not in self._dt]
            elif isinstance(ln.just, Gen):
                deps = [ln.just.prev] if ln.just.prev not in self._dt else []
            if deps:
                stack.extend(deps)
                continue
            stack.pop()
            self._dt[cur] = self._discharge_one(cur)
        return self._dt[h]

    def _discharge_one(self, h: int) -> int:
        p = self.parent
        phi = self.assumption
        ln = self._lines[h]
        if h == self._assume_idx:
            return p.imp_refl(phi)
        if h in self._imports:
            base = self._imports[h]
            k = p.ax("k", A=ln.formula, B=phi)
            return p.mp(k, base)
        if isinstance(ln.just, Hyp):
            raise ProofError("stray hypothesis inside a hypothetical context")
        if isinstance(ln.just, Ax):
            base = p.ax(ln.just.sid, **dict(ln.just.inst))
            k = p.ax("k", A=ln.formula, B=phi)
            return p.mp(k, base)
        if isinstance(ln.just, MP):
            f_imp = self._lines[ln.just.imp].formula
            assert isinstance(f_imp, Imp)
            s = p.ax("s", A=phi, B=f_imp.left, C=f_imp.right)
            return p.mps(s, self._dt[ln.just.imp], self._dt[ln.just.ant])
        assert isinstance(ln.just, Gen)
        x = ln.just.var
        h_all = p.gen(self._dt[ln.just.prev], x)
        rule = p.ax("all-d", A=phi, B=self._lines[ln.just.prev].formula, x=x)
        return p.mp(rule, h_all)


# ---------------------------------------------------------------------------
# Derivation file format


def print_meta(value: MetaValue) -> str:
    if isinstance(value, Var):
        return f"{value.name}:{value.sort}"
    if isinstance(value, _FORMULA_TYPES):
        return print_formula(value)
    return print_term(value)


def print_derivation(d: Derivation) -> str:
    out = []
    for i, ln in enumerate(d.lines):
        j = ln.just
        if isinstance(j, Hyp):
            jtext = "hyp"
        elif isinstance(j, Ax):
            if j.inst:
                parts = "; ".join(f"{k} := {print_meta(v)}" for k, v in j.inst)
                jtext = f"ax {j.sid} [{parts}]"
            else:
                jtext = f"ax {j.sid}"
        elif isinstance(j, MP):
            jtext = f"mp {j.imp + 1} {j.ant + 1}"
        else:
            jtext = f"gen {j.prev + 1} {j.var.name}:{j.var.sort}"
        out.append(f"{i + 1}. {print_formula(ln.formula)} ; {jtext}")
    return "\n".join(out) + "\n"


_LINE_RE = re.compile(r"(\d+)\.\s*(.*)\s*;\s*(hyp|ax .*|mp \d+ \d+|gen \d+ .*)\s*$")


def _var_sorts(phi: Formula) -> dict[str, str]:
    out: dict[str, str] = {}

    def tgo(t: Term) -> None:
        if isinstance(t, Var):
            out[t.name] = t.sort
        elif hasattr(t, "args"):
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
            out[f.var.name] = f.var.sort
            go(f.body)

    go(phi)
    return out


def parse_derivation(text: str, sig: Signature) -> Derivation:
    lines: list[Line] = []
    free_env: dict[str, str] = {}
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _LINE_RE.match(stripped)
        if not m:
            raise ProofError(f"bad derivation line: {raw!r}")
        num, ftext, jtext = int(m.group(1)), m.group(2), m.group(3)
        if num != len(lines) + 1:
            raise ProofError(f"line numbered {num}, expected {len(lines) + 1}")
        formula = parse_formula(ftext, sig, free_env)
        for v in free_vars(formula):
            free_env.setdefault(v.name, v.sort)
        if jtext == "hyp":
            just: Justification = Hyp()
        elif jtext.startswith("mp "):
            _, a, b = jtext.split()
            just = MP(int(a) - 1, int(b) - 1)
        elif jtext.startswith("gen "):
            _, a, vdecl = jtext.split()
            vn, _, vs = vdecl.partition(":")
            just = Gen(int(a) - 1, Var(vn, vs))
        else:
            body = jtext[3:].strip()
            mm = re.fullmatch(r"([a-z0-9-]+)(?:\s*\[(.*)\])?", body)
            if not mm:
                raise ProofError(f"bad axiom justification: {jtext!r}")
            sid = mm.group(1)
            if sid not in SCHEMES:
                raise ProofError(f"unknown axiom scheme {sid!r}")
            inst: dict[str, MetaValue] = {}
            if mm.group(2):
                kinds = dict(SCHEMES[sid].meta)
                pieces: list[tuple[str, str]] = []
                for piece in mm.group(2).split(";"):
                    key, _, val = piece.partition(":=")
                    pieces.append((key.strip(), val.strip()))
                env = dict(free_env)
                env.update(_var_sorts(formula))
                for key, val in pieces:
                    if kinds.get(key) == "var":
                        vn, _, vs = val.partition(":")
                        v = Var(vn.strip(), vs.strip())
                        inst[key] = v
                        env[v.name] = v.sort
                for key, val in pieces:
                    kind = kinds.get(key)
                    if kind is None:
                        raise ProofError(f"scheme {sid} has no metavariable {key!r}")
                    if kind == "formula":
                        inst[key] = parse_formula(val, sig, env)
                    elif kind == "term":
                        inst[key] = parse_term(val, sig, env)
            just = Ax(sid, tuple(sorted(inst.items())))
        lines.append(Line(formula, just))
    return Derivation(tuple(lines))
