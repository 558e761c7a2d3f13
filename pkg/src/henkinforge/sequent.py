"""Two-sided sequent calculus over formula multisets, proof checking, and
Gentzen-style cut elimination via the mix rule.

Rule set (context-sharing for branching rules, explicit weakening and
contraction, quantifier rules do not retain their principal formula):

    ax, lfalse, wl, wr, cl, cr,
    lnot, rnot, land, rand, lor, ror, limp, rimp,
    lall(t), rall(eigen), lex(eigen), rex(t), cut
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, replace
from typing import Optional

from .syntax import (And, Atom, Eq, Exists, FALSE, Forall, Formula, Imp, Not,
                     Or, Term, Var, alpha_eq, alpha_key, free_vars,
                     print_formula, substitute, term_vars)


class SequentError(Exception):
    pass


@dataclass(frozen=True)
class Sequent:
    ante: tuple[Formula, ...]
    succ: tuple[Formula, ...]

    def __str__(self) -> str:
        l = ", ".join(print_formula(f) for f in self.ante)
        r = ", ".join(print_formula(f) for f in self.succ)
        return f"{l} => {r}"


def mset(fs: tuple[Formula, ...]) -> Counter:
    return Counter(alpha_key(f) for f in fs)


def seq_eq(a: Sequent, b: Sequent) -> bool:
    return mset(a.ante) == mset(b.ante) and mset(a.succ) == mset(b.succ)


def count_in(fs: tuple[Formula, ...], phi: Formula) -> int:
    k = alpha_key(phi)
    return sum(1 for f in fs if alpha_key(f) == k)


def remove_one(fs: tuple[Formula, ...], phi: Formula) -> tuple[Formula, ...]:
    k = alpha_key(phi)
    out = list(fs)
    for i, f in enumerate(out):
        if alpha_key(f) == k:
            del out[i]
            return tuple(out)
    raise SequentError(f"formula {print_formula(phi)} not present")


def remove_all(fs: tuple[Formula, ...], phi: Formula) -> tuple[Formula, ...]:
    k = alpha_key(phi)
    return tuple(f for f in fs if alpha_key(f) != k)


@dataclass(frozen=True)
class SequentProof:
    rule: str
    conclusion: Sequent
    premises: tuple["SequentProof", ...] = ()
    principal: Optional[Formula] = None
    term: Optional[Term] = None
    eigen: Optional[Var] = None

    def count_nodes(self) -> int:
        return 1 + sum(p.count_nodes() for p in self.premises)

    def count_cuts(self) -> int:
        return (1 if self.rule == "cut" else 0) + sum(p.count_cuts() for p in self.premises)

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)


def seq_free_vars(s: Sequent) -> set[Var]:
    out: set[Var] = set()
    for f in s.ante + s.succ:
        out |= free_vars(f)
    return out


# ---------------------------------------------------------------------------
# Checking


def _check_node(p: SequentProof) -> Optional[str]:
    c = p.conclusion
    r = p.rule
    n = len(p.premises)

    def prem(i: int) -> Sequent:
        return p.premises[i].conclusion

    if r == "ax":
        if n != 0:
            return "ax takes no premises"
        if p.principal is None or count_in(c.ante, p.principal) == 0 \
                or count_in(c.succ, p.principal) == 0:
            return "ax principal must occur on both sides"
        return None
    if r == "lfalse":
        if n != 0:
            return "lfalse takes no premises"
        if count_in(c.ante, FALSE) == 0:
            return "lfalse needs a false antecedent"
        return None
    if r in ("wl", "wr", "cl", "cr"):
        if n != 1 or p.principal is None:
            return f"{r} needs one premise and a principal formula"
        phi = p.principal
        if r == "wl":
            want = Sequent(remove_one(c.ante, phi), c.succ)
        elif r == "wr":
            want = Sequent(c.ante, remove_one(c.succ, phi))
        elif r == "cl":
            if count_in(c.ante, phi) == 0:
                return "cl principal missing"
            want = Sequent(c.ante + (phi,), c.succ)
        else:
            if count_in(c.succ, phi) == 0:
                return "cr principal missing"
            want = Sequent(c.ante, c.succ + (phi,))
        return None if seq_eq(prem(0), want) else f"{r} premise mismatch"
    if r == "lnot":
        phi = p.principal
        if n != 1 or not isinstance(phi, Not):
            return "lnot needs one premise and a negation principal"
        if count_in(c.ante, phi) == 0:
            return "lnot principal missing"
        want = Sequent(remove_one(c.ante, phi), c.succ + (phi.body,))
        return None if seq_eq(prem(0), want) else "lnot premise mismatch"
    if r == "rnot":
        phi = p.principal
        if n != 1 or not isinstance(phi, Not):
            return "rnot needs one premise and a negation principal"
        if count_in(c.succ, phi) == 0:
            return "rnot principal missing"
        want = Sequent(c.ante + (phi.body,), remove_one(c.succ, phi))
        return None if seq_eq(prem(0), want) else "rnot premise mismatch"
    if r == "land":
        phi = p.principal
        if n != 1 or not isinstance(phi, And):
            return "land needs one premise and a conjunction principal"
        if count_in(c.ante, phi) == 0:
            return "land principal missing"
        want = Sequent(remove_one(c.ante, phi) + (phi.left, phi.right), c.succ)
        return None if seq_eq(prem(0), want) else "land premise mismatch"
    if r == "rand":
        phi = p.principal
        if n != 2 or not isinstance(phi, And):
            return "rand needs two premises and a conjunction principal"
        if count_in(c.succ, phi) == 0:
            return "rand principal missing"
        base = remove_one(c.succ, phi)
        w1 = Sequent(c.ante, base + (phi.left,))
        w2 = Sequent(c.ante, base + (phi.right,))
        if seq_eq(prem(0), w1) and seq_eq(prem(1), w2):
            return None
        return "rand premise mismatch"
    if r == "lor":
        phi = p.principal
        if n != 2 or not isinstance(phi, Or):
            return "lor needs two premises and a disjunction principal"
        if count_in(c.ante, phi) == 0:
            return "lor principal missing"
        base = remove_one(c.ante, phi)
        w1 = Sequent(base + (phi.left,), c.succ)
        w2 = Sequent(base + (phi.right,), c.succ)
        if seq_eq(prem(0), w1) and seq_eq(prem(1), w2):
            return None
        return "lor premise mismatch"
    if r == "ror":
        phi = p.principal
        if n != 1 or not isinstance(phi, Or):
            return "ror needs one premise and a disjunction principal"
        if count_in(c.succ, phi) == 0:
            return "ror principal missing"
        want = Sequent(c.ante, remove_one(c.succ, phi) + (phi.left, phi.right))
        return None if seq_eq(prem(0), want) else "ror premise mismatch"
    if r == "limp":
        phi = p.principal
        if n != 2 or not isinstance(phi, Imp):
            return "limp needs two premises and an implication principal"
        if count_in(c.ante, phi) == 0:
            return "limp principal missing"
        base = remove_one(c.ante, phi)
        w1 = Sequent(base, c.succ + (phi.left,))
        w2 = Sequent(base + (phi.right,), c.succ)
        if seq_eq(prem(0), w1) and seq_eq(prem(1), w2):
            return None
        return "limp premise mismatch"
    if r == "rimp":
        phi = p.principal
        if n != 1 or not isinstance(phi, Imp):
            return "rimp needs one premise and an implication principal"
        if count_in(c.succ, phi) == 0:
            return "rimp principal missing"
        want = Sequent(c.ante + (phi.left,), remove_one(c.succ, phi) + (phi.right,))
        return None if seq_eq(prem(0), want) else "rimp premise mismatch"
    if r == "lall":
        phi = p.principal
        if n != 1 or not isinstance(phi, Forall) or p.term is None:
            return "lall needs one premise, a universal principal and a term"
        if count_in(c.ante, phi) == 0:
            return "lall principal missing"
        inst = substitute(phi.body, phi.var, p.term)
        want = Sequent(remove_one(c.ante, phi) + (inst,), c.succ)
        return None if seq_eq(prem(0), want) else "lall premise mismatch"
    if r == "rall":
        phi = p.principal
        if n != 1 or not isinstance(phi, Forall) or p.eigen is None:
            return "rall needs one premise, a universal principal and an eigenvariable"
        if count_in(c.succ, phi) == 0:
            return "rall principal missing"
        if p.eigen in seq_free_vars(c):
            return "rall eigenvariable occurs free in the conclusion"
        inst = substitute(phi.body, phi.var, p.eigen)
        want = Sequent(c.ante, remove_one(c.succ, phi) + (inst,))
        return None if seq_eq(prem(0), want) else "rall premise mismatch"
    if r == "lex":
        phi = p.principal
        if n != 1 or not isinstance(phi, Exists) or p.eigen is None:
            return "lex needs one premise, an existential principal and an eigenvariable"
        if count_in(c.ante, phi) == 0:
            return "lex principal missing"
        if p.eigen in seq_free_vars(c):
            return "lex eigenvariable occurs free in the conclusion"
        inst = substitute(phi.body, phi.var, p.eigen)
        want = Sequent(remove_one(c.ante, phi) + (inst,), c.succ)
        return None if seq_eq(prem(0), want) else "lex premise mismatch"
    if r == "rex":
        phi = p.principal
        if n != 1 or not isinstance(phi, Exists) or p.term is None:
            return "rex needs one premise, an existential principal and a term"
        if count_in(c.succ, phi) == 0:
            return "rex principal missing"
        inst = substitute(phi.body, phi.var, p.term)
        want = Sequent(c.ante, remove_one(c.succ, phi) + (inst,))
        return None if seq_eq(prem(0), want) else "rex premise mismatch"
    if r == "cut":
        phi = p.principal
        if n != 2 or phi is None:
            return "cut needs two premises and a cut formula"
        w1 = Sequent(c.ante, c.succ + (phi,))
        w2 = Sequent(c.ante + (phi,), c.succ)
        if seq_eq(prem(0), w1) and seq_eq(prem(1), w2):
            return None
        return "cut premise mismatch"
    return f"unknown rule {r!r}"


def check_sequent_proof_report(p: SequentProof, path: str = "root"
                               ) -> tuple[bool, Optional[str]]:
    err = _check_node(p)
    if err:
        return False, f"{path}: {err}"
    for i, q in enumerate(p.premises):
        ok, where = check_sequent_proof_report(q, f"{path}.{i}")
        if not ok:
            return False, where
    return True, None


def check_sequent_proof(p: SequentProof) -> bool:
    return check_sequent_proof_report(p)[0]


# ---------------------------------------------------------------------------
# Subformula property (up to term instantiation)


def _skeleton(phi: Formula):
    """Formula shape with all terms erased; quantifiers erase the bound var."""
    if isinstance(phi, Atom):
        return ("atom", phi.pred, len(phi.args))
    if isinstance(phi, Eq):
        return ("eq",)
    if phi == FALSE:
        return ("false",)
    if isinstance(phi, Not):
        return ("not", _skeleton(phi.body))
    if isinstance(phi, (And, Or, Imp)):
        tag = {And: "and", Or: "or", Imp: "imp"}[type(phi)]
        return (tag, _skeleton(phi.left), _skeleton(phi.right))
    if isinstance(phi, (Forall, Exists)):
        tag = "all" if isinstance(phi, Forall) else "ex"
        return (tag, phi.var.sort, _skeleton(phi.body))
    raise TypeError(phi)


def _sub_skeletons(phi: Formula) -> set:
    out = {_skeleton(phi)}
    if isinstance(phi, Not):
        out |= _sub_skeletons(phi.body)
    elif isinstance(phi, (And, Or, Imp)):
        out |= _sub_skeletons(phi.left) | _sub_skeletons(phi.right)
    elif isinstance(phi, (Forall, Exists)):
        out |= _sub_skeletons(phi.body)
    return out


def subformula_property(p: SequentProof) -> bool:
    """Every formula in the proof is, up to term instantiation, a subformula
    of a formula of the end-sequent."""
    allowed: set = set()
    for f in p.conclusion.ante + p.conclusion.succ:
        allowed |= _sub_skeletons(f)

    def walk(node: SequentProof) -> bool:
        for f in node.conclusion.ante + node.conclusion.succ:
            if _skeleton(f) not in allowed:
                return False
        return all(walk(q) for q in node.premises)

    return walk(p)


# ---------------------------------------------------------------------------
# Structural helpers (explicit weakening / contraction nodes)


def weaken_to(p: SequentProof, ante: tuple[Formula, ...],
              succ: tuple[Formula, ...]) -> SequentProof:
    """Extend p with wl/wr nodes until its conclusion equals (ante => succ).
    Requires p's conclusion to be a sub-multiset of the target."""
    cur = p
    have_a = mset(cur.conclusion.ante)
    want_a = mset(ante)
    have_s = mset(cur.conclusion.succ)
    want_s = mset(succ)
    if any(have_a[k] > want_a[k] for k in have_a) or \
       any(have_s[k] > want_s[k] for k in have_s):
        raise SequentError("weaken_to cannot delete formulas")
    reps = {alpha_key(f): f for f in ante + succ}
    for k, n in (want_a - have_a).items():
        for _ in range(n):
            cur = SequentProof("wl", Sequent(cur.conclusion.ante + (reps[k],),
                                             cur.conclusion.succ),
                               (cur,), principal=reps[k])
    for k, n in (want_s - have_s).items():
        for _ in range(n):
            cur = SequentProof("wr", Sequent(cur.conclusion.ante,
                                             cur.conclusion.succ + (reps[k],)),
                               (cur,), principal=reps[k])
    return cur


def contract_to(p: SequentProof, ante: tuple[Formula, ...],
                succ: tuple[Formula, ...]) -> SequentProof:
    """Shrink p with cl/cr nodes until its conclusion equals (ante => succ).
    Requires the target to be a sub-multiset with the same support."""
    cur = p
    want_a = mset(ante)
    want_s = mset(succ)
    reps = {alpha_key(f): f for f in cur.conclusion.ante + cur.conclusion.succ}
    while True:
        have_a = mset(cur.conclusion.ante)
        extra = {k: have_a[k] - want_a[k] for k in have_a if have_a[k] > want_a[k]}
        if not extra:
            break
        k = next(iter(extra))
        if want_a[k] == 0:
            raise SequentError("contract_to cannot delete a formula entirely")
        cur = SequentProof("cl", Sequent(remove_one(cur.conclusion.ante, reps[k]),
                                         cur.conclusion.succ),
                           (cur,), principal=reps[k])
    while True:
        have_s = mset(cur.conclusion.succ)
        extra = {k: have_s[k] - want_s[k] for k in have_s if have_s[k] > want_s[k]}
        if not extra:
            break
        k = next(iter(extra))
        if want_s[k] == 0:
            raise SequentError("contract_to cannot delete a formula entirely")
        cur = SequentProof("cr", Sequent(cur.conclusion.ante,
                                         remove_one(cur.conclusion.succ, reps[k])),
                           (cur,), principal=reps[k])
    return cur


def adjust(p: SequentProof, target: Sequent) -> SequentProof:
    """weaken_to then contract_to so p proves exactly the target sequent."""
    have_a, want_a = mset(p.conclusion.ante), mset(target.ante)
    have_s, want_s = mset(p.conclusion.succ), mset(target.succ)
    mid_ante = list(p.conclusion.ante)
    mid_succ = list(p.conclusion.succ)
    reps = {alpha_key(f): f for f in target.ante + target.succ}
    for k in want_a:
        for _ in range(max(0, want_a[k] - have_a[k])):
            mid_ante.append(reps[k])
    for k in want_s:
        for _ in range(max(0, want_s[k] - have_s[k])):
            mid_succ.append(reps[k])
    cur = weaken_to(p, tuple(mid_ante), tuple(mid_succ))
    return contract_to(cur, target.ante, target.succ)


# ---------------------------------------------------------------------------
# Substitution and eigenvariable renaming on whole proofs

_GENSYM = itertools.count()


def fresh_var(sort: str, avoid: set[str]) -> Var:
    while True:
        name = f"_e{next(_GENSYM)}"
        if name not in avoid:
            return Var(name, sort)


def proof_var_names(p: SequentProof) -> set[str]:
    out: set[str] = set()

    def names_of(f: Formula) -> set[str]:
        from .syntax import _used_names
        return _used_names(f)

    def walk(node: SequentProof) -> None:
        for f in node.conclusion.ante + node.conclusion.succ:
            out.update(names_of(f))
        if node.eigen is not None:
            out.add(node.eigen.name)
        for q in node.premises:
            walk(q)

    walk(p)
    return out


def subst_proof(p: SequentProof, x: Var, t: Term) -> SequentProof:
    """Substitute t for x in every sequent of the proof; eigenvariables scope
    over their premise and are renamed when they would capture t."""
    if p.rule in ("rall", "lex") and p.eigen is not None:
        if p.eigen == x:
            return p  # x is shadowed by the eigenvariable above this node
        node = p
        if p.eigen in term_vars(t):
            avoid = proof_var_names(p) | {v.name for v in term_vars(t)} | {x.name}
            nv = fresh_var(p.eigen.sort, avoid)
            node = rename_eigen(p, nv)
        prem = subst_proof(node.premises[0], x, t)
        conclusion = Sequent(tuple(substitute(f, x, t) for f in node.conclusion.ante),
                             tuple(substitute(f, x, t) for f in node.conclusion.succ))
        principal = substitute(node.principal, x, t) if node.principal is not None else None
        return replace(node, conclusion=conclusion, premises=(prem,), principal=principal)
    conclusion = Sequent(tuple(substitute(f, x, t) for f in p.conclusion.ante),
                         tuple(substitute(f, x, t) for f in p.conclusion.succ))
    principal = substitute(p.principal, x, t) if p.principal is not None else None
    term = None
    if p.term is not None:
        from .syntax import subst_term
        term = subst_term(p.term, x, t)
    return replace(p, conclusion=conclusion,
                   premises=tuple(subst_proof(q, x, t) for q in p.premises),
                   principal=principal, term=term)


def rename_eigen(p: SequentProof, nv: Var) -> SequentProof:
    """Rename the root eigenvariable of a rall/lex node."""
    if p.rule not in ("rall", "lex") or p.eigen is None:
        raise SequentError("rename_eigen expects a rall/lex node")
    prem = subst_proof(p.premises[0], p.eigen, nv)
    return replace(p, premises=(prem,), eigen=nv)


def freshen_eigen_if(p: SequentProof, avoid_vars: set[Var]) -> SequentProof:
    if p.rule in ("rall", "lex") and p.eigen is not None and p.eigen in avoid_vars:
        avoid = proof_var_names(p) | {v.name for v in avoid_vars}
        return rename_eigen(p, fresh_var(p.eigen.sort, avoid))
    return p


# ---------------------------------------------------------------------------
# Mix (Gentzen's generalized cut) and cut elimination


class _MixDepth:
    limit = 200000
    count = 0


def _mix_target(p1: SequentProof, p2: SequentProof, phi: Formula) -> Sequent:
    return Sequent(p1.conclusion.ante + remove_all(p2.conclusion.ante, phi),
                   remove_all(p1.conclusion.succ, phi) + p2.conclusion.succ)


def mix(p1: SequentProof, p2: SequentProof, phi: Formula) -> SequentProof:
    """Cut-free proof of  G1, (G2 - phi)  =>  (D1 - phi), D2  given cut-free
    proofs p1 of G1 => D1 and p2 of G2 => D2.

    Terminates by the classical lexicographic measure: (degree of phi,
    right rank, left rank); a node budget guards against regressions."""
    _MixDepth.count += 1
    if _MixDepth.count > _MixDepth.limit:
        raise SequentError("mix did not terminate within the node budget")
    target = _mix_target(p1, p2, phi)
    out = _mix(p1, p2, phi, target)
    return adjust(out, target)


def _phi_in_succ(p: SequentProof, phi: Formula) -> bool:
    return count_in(p.conclusion.succ, phi) > 0


def _phi_in_ante(p: SequentProof, phi: Formula) -> bool:
    return count_in(p.conclusion.ante, phi) > 0


def _mix(p1: SequentProof, p2: SequentProof, phi: Formula, target: Sequent) -> SequentProof:
    # guards: the mix formula is absent on the relevant side
    if not _phi_in_succ(p1, phi):
        return adjust(p1, target)
    if not _phi_in_ante(p2, phi):
        return adjust(p2, target)

    # axiom / falsum endpoints
    if p1.rule == "lfalse":
        return SequentProof("lfalse", target)
    if p2.rule == "lfalse":
        if count_in(remove_all(p2.conclusion.ante, phi), FALSE) > 0 or \
                count_in(p1.conclusion.ante, FALSE) > 0:
            return SequentProof("lfalse", target)
        # the falsum was the mix formula itself: phi = false in D1
        return _push_left(p1, p2, phi, target)
    if p1.rule == "ax":
        chi = p1.principal
        if alpha_key(chi) != alpha_key(phi) or count_in(remove_all(p1.conclusion.succ, phi), chi) > 0:
            # chi survives on the right: target is itself an axiom
            if count_in(target.ante, chi) > 0 and count_in(target.succ, chi) > 0:
                return SequentProof("ax", target, principal=chi)
        # the axiom's right occurrence was phi, so phi is in G1
        return adjust(p2, target)
    if p2.rule == "ax":
        chi = p2.principal
        if alpha_key(chi) != alpha_key(phi) or count_in(remove_all(p2.conclusion.ante, phi), chi) > 0:
            if count_in(target.ante, chi) > 0 and count_in(target.succ, chi) > 0:
                return SequentProof("ax", target, principal=chi)
        return adjust(p1, target)

    if any(_phi_in_ante(q, phi) for q in p2.premises):
        return _push_right(p1, p2, phi, target)
    return _push_left(p1, p2, phi, target)


def _push_right(p1: SequentProof, p2: SequentProof, phi: Formula,
                target: Sequent) -> SequentProof:
    """Recurse into p2's premises; reapply p2's rule when its principal is not
    the mix formula, otherwise remix the reapplied proof."""
    p2 = freshen_eigen_if(p2, seq_free_vars(p1.conclusion) | free_vars(phi))
    new_premises = []
    for q in p2.premises:
        if _phi_in_ante(q, phi):
            new_premises.append(mix(p1, q, phi))
        else:
            tq = Sequent(p1.conclusion.ante + q.conclusion.ante,
                         remove_all(p1.conclusion.succ, phi) + q.conclusion.succ)
            new_premises.append(adjust(q, tq))
    principal_is_phi = p2.principal is not None and alpha_key(p2.principal) == alpha_key(phi)
    left_principal = p2.rule in ("lnot", "land", "lor", "limp", "lall", "lex", "cl", "wl")
    if principal_is_phi and left_principal:
        if p2.rule in ("cl", "wl"):
            # contraction/weakening on phi dissolves into the mixed premise
            return adjust(new_premises[0], target)
        reapplied = _reapply(p2, tuple(new_premises),
                             extra_ante=p1.conclusion.ante,
                             extra_succ=remove_all(p1.conclusion.succ, phi),
                             drop_phi=phi)
        return mix(p1, reapplied, phi)
    reapplied = _reapply(p2, tuple(new_premises),
                         extra_ante=p1.conclusion.ante,
                         extra_succ=remove_all(p1.conclusion.succ, phi),
                         drop_phi=phi)
    return adjust(reapplied, target)


def _push_left(p1: SequentProof, p2: SequentProof, phi: Formula,
               target: Sequent) -> SequentProof:
    p1 = freshen_eigen_if(p1, seq_free_vars(p2.conclusion) | free_vars(phi))
    if any(_phi_in_succ(q, phi) for q in p1.premises):
        new_premises = []
        for q in p1.premises:
            if _phi_in_succ(q, phi):
                new_premises.append(mix(q, p2, phi))
            else:
                tq = Sequent(q.conclusion.ante + remove_all(p2.conclusion.ante, phi),
                             q.conclusion.succ + p2.conclusion.succ)
                new_premises.append(adjust(q, tq))
        principal_is_phi = p1.principal is not None and alpha_key(p1.principal) == alpha_key(phi)
        right_principal = p1.rule in ("rnot", "rand", "ror", "rimp", "rall", "rex", "cr", "wr")
        if principal_is_phi and right_principal:
            if p1.rule in ("cr", "wr"):
                return adjust(new_premises[0], target)
            reapplied = _reapply(p1, tuple(new_premises),
                                 extra_ante=remove_all(p2.conclusion.ante, phi),
                                 extra_succ=p2.conclusion.succ,
                                 drop_phi=phi, drop_side="succ")
            return mix(reapplied, p2, phi)
        reapplied = _reapply(p1, tuple(new_premises),
                             extra_ante=remove_all(p2.conclusion.ante, phi),
                             extra_succ=p2.conclusion.succ,
                             drop_phi=phi, drop_side="succ")
        return adjust(reapplied, target)
    # no premise of p1 carries phi on the right: p1's root introduced it
    principal_is_phi = p1.principal is not None and alpha_key(p1.principal) == alpha_key(phi)
    if p1.rule == "wr" and principal_is_phi:
        return adjust(p1.premises[0], target)
    if not principal_is_phi:
        raise SequentError("mix: unexpected left shape (phi vanished without principal)")
    return _principal(p1, p2, phi, target)


def _reapply(node: SequentProof, premises: tuple[SequentProof, ...],
             extra_ante: tuple[Formula, ...], extra_succ: tuple[Formula, ...],
             drop_phi: Formula, drop_side: str = "ante") -> SequentProof:
    """Rebuild node's rule over mixed premises; the conclusion gains the extra
    context and loses all copies of the mix formula on drop_side (except a
    reintroduced principal occurrence, which the caller then remixes)."""
    c = node.conclusion
    if drop_side == "ante":
        new_ante = extra_ante + remove_all(c.ante, drop_phi)
        new_succ = extra_succ + c.succ
        if node.principal is not None and alpha_key(node.principal) == alpha_key(drop_phi) \
                and node.rule in ("lnot", "land", "lor", "limp", "lall", "lex"):
            new_ante = new_ante + (node.principal,)
    else:
        new_ante = c.ante + extra_ante
        new_succ = remove_all(c.succ, drop_phi) + extra_succ
        if node.principal is not None and alpha_key(node.principal) == alpha_key(drop_phi) \
                and node.rule in ("rnot", "rand", "ror", "rimp", "rall", "rex"):
            new_succ = new_succ + (node.principal,)
    conclusion = Sequent(new_ante, new_succ)
    rebuilt = replace(node, conclusion=conclusion, premises=premises)
    err = _check_node(rebuilt)
    if err is None:
        return rebuilt
    # premise contexts may deviate from the exact rule shape: adjust them
    fixed = []
    for want, got in zip(_expected_premises(rebuilt), premises):
        fixed.append(adjust(got, want))
    rebuilt = replace(rebuilt, premises=tuple(fixed))
    err = _check_node(rebuilt)
    if err is not None:
        raise SequentError(f"reapply failed: {err}")
    return rebuilt


def _expected_premises(p: SequentProof) -> list[Sequent]:
    c = p.conclusion
    phi = p.principal
    r = p.rule
    if r == "lnot":
        return [Sequent(remove_one(c.ante, phi), c.succ + (phi.body,))]
    if r == "rnot":
        return [Sequent(c.ante + (phi.body,), remove_one(c.succ, phi))]
    if r == "land":
        return [Sequent(remove_one(c.ante, phi) + (phi.left, phi.right), c.succ)]
    if r == "rand":
        base = remove_one(c.succ, phi)
        return [Sequent(c.ante, base + (phi.left,)), Sequent(c.ante, base + (phi.right,))]
    if r == "lor":
        base = remove_one(c.ante, phi)
        return [Sequent(base + (phi.left,), c.succ), Sequent(base + (phi.right,), c.succ)]
    if r == "ror":
        return [Sequent(c.ante, remove_one(c.succ, phi) + (phi.left, phi.right))]
    if r == "limp":
        base = remove_one(c.ante, phi)
        return [Sequent(base, c.succ + (phi.left,)), Sequent(base + (phi.right,), c.succ)]
    if r == "rimp":
        return [Sequent(c.ante + (phi.left,), remove_one(c.succ, phi) + (phi.right,))]
    if r == "lall":
        inst = substitute(phi.body, phi.var, p.term)
        return [Sequent(remove_one(c.ante, phi) + (inst,), c.succ)]
    if r == "rall":
        inst = substitute(phi.body, phi.var, p.eigen)
        return [Sequent(c.ante, remove_one(c.succ, phi) + (inst,))]
    if r == "lex":
        inst = substitute(phi.body, phi.var, p.eigen)
        return [Sequent(remove_one(c.ante, phi) + (inst,), c.succ)]
    if r == "rex":
        inst = substitute(phi.body, phi.var, p.term)
        return [Sequent(c.ante, remove_one(c.succ, phi) + (inst,))]
    if r == "wl":
        return [Sequent(remove_one(c.ante, phi), c.succ)]
    if r == "wr":
        return [Sequent(c.ante, remove_one(c.succ, phi))]
    if r == "cl":
        return [Sequent(c.ante + (phi,), c.succ)]
    if r == "cr":
        return [Sequent(c.ante, c.succ + (phi,))]
    raise SequentError(f"no premise template for rule {r}")


def _principal(p1: SequentProof, p2: SequentProof, phi: Formula,
               target: Sequent) -> SequentProof:
    """Both roots introduce phi: reduce to mixes on proper subformulas."""
    r1, r2 = p1.rule, p2.rule
    if isinstance(phi, Not) and r1 == "rnot" and r2 == "lnot":
        # p1 premise: G1 + A => D1'; p2 premise: G2' => D2 + A
        s = mix(p2.premises[0], p1.premises[0], phi.body)
        return adjust(s, target)
    if isinstance(phi, And) and r1 == "rand" and r2 == "land":
        pa, pb = p1.premises
        q = p2.premises[0]
        s1 = mix(pa, q, phi.left)
        s2 = mix(pb, s1, phi.right)
        return adjust(s2, target)
    if isinstance(phi, Or) and r1 == "ror" and r2 == "lor":
        pr = p1.premises[0]
        qa, qb = p2.premises
        s1 = mix(pr, qa, phi.left)
        s2 = mix(s1, qb, phi.right)
        return adjust(s2, target)
    if isinstance(phi, Imp) and r1 == "rimp" and r2 == "limp":
        pr = p1.premises[0]          # G1 + A => D1' + B
        qa, qb = p2.premises          # G2' => D2 + A ;  G2' + B => D2
        s1 = mix(qa, pr, phi.left)    # G2' + (G1 - A) => (D2 - A) + D1' + B
        s2 = mix(s1, qb, phi.right)
        return adjust(s2, target)
    if isinstance(phi, Forall) and r1 == "rall" and r2 == "lall":
        inst = substitute(phi.body, phi.var, p2.term)
        p1i = subst_proof(p1.premises[0], p1.eigen, p2.term)
        s = mix(p1i, p2.premises[0], inst)
        return adjust(s, target)
    if isinstance(phi, Exists) and r1 == "rex" and r2 == "lex":
        inst = substitute(phi.body, phi.var, p1.term)
        p2i = subst_proof(p2.premises[0], p2.eigen, p1.term)
        s = mix(p1.premises[0], p2i, inst)
        return adjust(s, target)
    raise SequentError(f"no principal reduction for {r1}/{r2} on {print_formula(phi)}")


def eliminate_cuts(p: SequentProof) -> SequentProof:
    """Cut-free proof of the same end-sequent, by Gentzen's mix reductions;
    the result re-checks and satisfies the subformula property."""
    ok, err = check_sequent_proof_report(p)
    if not ok:
        raise SequentError(f"malformed input proof: {err}")
    out = _eliminate(p)
    assert out.count_cuts() == 0
    if not seq_eq(out.conclusion, p.conclusion):
        raise SequentError("cut elimination changed the end-sequent")
    return out


def _eliminate(p: SequentProof) -> SequentProof:
    premises = tuple(_eliminate(q) for q in p.premises)
    if p.rule != "cut":
        return replace(p, premises=premises)
    left, right = premises
    _MixDepth.count = 0
    m = mix(left, right, p.principal)
    return adjust(m, p.conclusion)
