import random

import pytest

from henkinforge.sequent import (Sequent, SequentError, SequentProof,
                                 check_sequent_proof,
                                 check_sequent_proof_report, eliminate_cuts,
                                 mix, seq_eq, subformula_property, weaken_to)
from henkinforge.syntax import (And, Atom, Const, Eq, Exists, FALSE, Forall,
                                Imp, Not, Or, Var)

a, b, c, d = Atom("a"), Atom("b"), Atom("c"), Atom("d")
ATOMS = [a, b, c, d]


def ax(context_l, phi, context_r):
    return SequentProof("ax", Sequent(tuple(context_l) + (phi,), tuple(context_r) + (phi,)),
                        principal=phi)


def test_axiom_leaf():
    p = ax([], a, [])
    assert check_sequent_proof(p)


def test_axiom_requires_both_sides():
    p = SequentProof("ax", Sequent((a,), (b,)), principal=a)
    ok, err = check_sequent_proof_report(p)
    assert not ok


def test_rand_mismatched_conjuncts_rejected():
    # right-and with premises proving the wrong conjuncts
    p1 = ax([], a, [])
    p2 = ax([], a, [])
    bad = SequentProof("rand", Sequent((a,), (And(a, b),)), (p1, p2), principal=And(a, b))
    assert not check_sequent_proof(bad)


def test_rimp_and_excluded_middle_proof():
    # |- a | ~a   via  a => a
    leaf = ax([], a, [])
    rn = SequentProof("rnot", Sequent((), (a, Not(a))), (leaf,), principal=Not(a))
    ror = SequentProof("ror", Sequent((), (Or(a, Not(a)),)), (rn,), principal=Or(a, Not(a)))
    assert check_sequent_proof(ror)
    assert subformula_property(ror)


def lem_proof():
    leaf = ax([], a, [])
    rn = SequentProof("rnot", Sequent((), (a, Not(a))), (leaf,), principal=Not(a))
    return SequentProof("ror", Sequent((), (Or(a, Not(a)),)), (rn,), principal=Or(a, Not(a)))


def test_cut_gluing_and_elimination():
    # cut the provable p := a | ~a against p => (b -> p)
    p = Or(a, Not(a))
    q = Imp(b, p)
    lhs = weaken_to(lem_proof(), (), (q, p))          # => q, p
    inner = ax([b], p, [])                            # p, b => p
    rimp = SequentProof("rimp", Sequent((p,), (q,)), (inner,), principal=q)
    glued = SequentProof("cut", Sequent((), (q,)), (lhs, rimp), principal=p)
    assert check_sequent_proof(glued)
    assert glued.count_cuts() == 1
    out = eliminate_cuts(glued)
    assert out.count_cuts() == 0
    assert seq_eq(out.conclusion, glued.conclusion)
    assert check_sequent_proof(out)
    assert subformula_property(out)


def test_cutfree_input_unchanged():
    p = lem_proof()
    out = eliminate_cuts(p)
    assert seq_eq(out.conclusion, p.conclusion)
    assert out.count_cuts() == 0


# --- random one-cut proof generation ----------------------------------------


def _forward_moves(proof, rng, pool):
    """All single-rule forward extensions of a proof."""
    s = proof.conclusion
    moves = []
    for phi in pool:
        moves.append(("wl", phi))
        moves.append(("wr", phi))
    for phi in set(s.ante):
        if s.ante.count(phi) >= 2:
            moves.append(("cl", phi))
    for phi in set(s.succ):
        if s.succ.count(phi) >= 2:
            moves.append(("cr", phi))
    for phi in s.ante:
        moves.append(("rnot_from_ante", phi))
    for phi in s.succ:
        moves.append(("lnot_from_succ", phi))
        for psi in s.succ:
            if psi is not phi:
                moves.append(("ror", phi, psi))
    for phi in s.ante:
        for psi in s.ante:
            if psi is not phi:
                moves.append(("land", phi, psi))
    for phi in s.ante:
        for psi in s.succ:
            moves.append(("rimp", phi, psi))
    return moves


def _apply_forward(proof, move):
    s = proof.conclusion
    kind = move[0]
    if kind == "wl":
        phi = move[1]
        return SequentProof("wl", Sequent(s.ante + (phi,), s.succ), (proof,), principal=phi)
    if kind == "wr":
        phi = move[1]
        return SequentProof("wr", Sequent(s.ante, s.succ + (phi,)), (proof,), principal=phi)
    if kind == "cl":
        phi = move[1]
        lst = list(s.ante)
        lst.remove(phi)
        return SequentProof("cl", Sequent(tuple(lst), s.succ), (proof,), principal=phi)
    if kind == "cr":
        phi = move[1]
        lst = list(s.succ)
        lst.remove(phi)
        return SequentProof("cr", Sequent(s.ante, tuple(lst)), (proof,), principal=phi)
    if kind == "rnot_from_ante":
        phi = move[1]
        lst = list(s.ante)
        lst.remove(phi)
        return SequentProof("rnot", Sequent(tuple(lst), s.succ + (Not(phi),)), (proof,),
                            principal=Not(phi))
    if kind == "lnot_from_succ":
        phi = move[1]
        lst = list(s.succ)
        lst.remove(phi)
        return SequentProof("lnot", Sequent(s.ante + (Not(phi),), tuple(lst)), (proof,),
                            principal=Not(phi))
    if kind == "ror":
        phi, psi = move[1], move[2]
        lst = list(s.succ)
        lst.remove(phi)
        lst.remove(psi)
        return SequentProof("ror", Sequent(s.ante, tuple(lst) + (Or(phi, psi),)), (proof,),
                            principal=Or(phi, psi))
    if kind == "land":
        phi, psi = move[1], move[2]
        lst = list(s.ante)
        lst.remove(phi)
        lst.remove(psi)
        return SequentProof("land", Sequent(tuple(lst) + (And(phi, psi),), s.succ), (proof,),
                            principal=And(phi, psi))
    if kind == "rimp":
        phi, psi = move[1], move[2]
        la = list(s.ante)
        la.remove(phi)
        ls = list(s.succ)
        ls.remove(psi)
        return SequentProof("rimp", Sequent(tuple(la), tuple(ls) + (Imp(phi, psi),)), (proof,),
                            principal=Imp(phi, psi))
    raise AssertionError(kind)


def random_cutfree_proof(rng, steps=6):
    pool = ATOMS + [Not(a), Or(a, b), And(c, d), Imp(a, b)]
    base = ax([rng.choice(ATOMS)], rng.choice(ATOMS), [rng.choice(ATOMS)])
    proof = base
    for _ in range(steps):
        moves = _forward_moves(proof, rng, pool)
        if not moves:
            break
        proof = _apply_forward(proof, rng.choice(moves))
    assert check_sequent_proof(proof)
    return proof


def glue_one_cut(rng, p1, p2):
    """Make a one-cut proof from two cut-free proofs, cutting on a formula
    occurring once on p1's right and once on p2's left (weakened in if absent)."""
    phi = rng.choice(ATOMS)
    s1, s2 = p1.conclusion, p2.conclusion
    if phi in s1.succ:
        while s1.succ.count(phi) > 1:
            ls = list(s1.succ)
            ls.remove(phi)
            p1 = SequentProof("cr", Sequent(s1.ante, tuple(ls)), (p1,), principal=phi)
            s1 = p1.conclusion
    else:
        p1 = SequentProof("wr", Sequent(s1.ante, s1.succ + (phi,)), (p1,), principal=phi)
        s1 = p1.conclusion
    if phi in s2.ante:
        while s2.ante.count(phi) > 1:
            la = list(s2.ante)
            la.remove(phi)
            p2 = SequentProof("cl", Sequent(tuple(la), s2.succ), (p2,), principal=phi)
            s2 = p2.conclusion
    else:
        p2 = SequentProof("wl", Sequent(s2.ante + (phi,), s2.succ), (p2,), principal=phi)
        s2 = p2.conclusion
    gamma = s1.ante + tuple(f for f in s2.ante if f != phi or s2.ante.count(phi) == 0)
    gamma = s1.ante + tuple(x for x in s2.ante)
    # shared-context cut: weaken both premises to a common context
    common_ante = s1.ante + tuple(x for x in s2.ante if x != phi)
    common_succ = tuple(x for x in s1.succ if x != phi) + s2.succ
    p1w = weaken_to(p1, common_ante, common_succ + (phi,))
    p2w = weaken_to(p2, common_ante + (phi,), common_succ)
    glued = SequentProof("cut", Sequent(common_ante, common_succ), (p1w, p2w), principal=phi)
    assert check_sequent_proof(glued), check_sequent_proof_report(glued)[1]
    return glued


def test_random_one_cut_proofs_eliminate():
    rng = random.Random(99)
    for i in range(100):
        p1 = random_cutfree_proof(rng, steps=rng.randrange(2, 7))
        p2 = random_cutfree_proof(rng, steps=rng.randrange(2, 7))
        glued = glue_one_cut(rng, p1, p2)
        out = eliminate_cuts(glued)
        assert out.count_cuts() == 0
        assert seq_eq(out.conclusion, glued.conclusion), i
        assert check_sequent_proof(out), i
        assert subformula_property(out), i


def test_quantifier_cut_elimination():
    x = Var("x", "D")
    y = Var("y", "D")
    k = Const("k", "D")
    P = lambda t: Atom("P", (t,))
    # p1: proves  P(k) => forall x P(x) is wrong; instead:
    # p1:  forall x P(x) on the right from eigen proof is not derivable from nothing,
    # so cut  exists x P(x)  between  P(k) => exists x P(x)  and  exists x P(x) => exists y P(y)
    ex = Exists(x, P(x))
    ey = Exists(y, P(y))
    leaf1 = ax([], P(k), [])
    p1 = SequentProof("rex", Sequent((P(k),), (ex,)), (leaf1,), principal=ex, term=k)
    w = Var("w", "D")
    leaf2 = ax([], P(w), [])
    inner = SequentProof("rex", Sequent((P(w),), (ey,)), (leaf2,), principal=ey, term=w)
    p2 = SequentProof("lex", Sequent((ex,), (ey,)), (inner,), principal=ex, eigen=w)
    p1w = weaken_to(p1, (P(k),), (ey, ex))
    p2w = weaken_to(p2, (P(k), ex), (ey,))
    glued = SequentProof("cut", Sequent((P(k),), (ey,)), (p1w, p2w), principal=ex)
    assert check_sequent_proof(glued), check_sequent_proof_report(glued)[1]
    out = eliminate_cuts(glued)
    assert out.count_cuts() == 0
    assert check_sequent_proof(out), check_sequent_proof_report(out)[1]
    assert seq_eq(out.conclusion, glued.conclusion)
    assert subformula_property(out)


def test_forall_cut_elimination():
    x = Var("x", "D")
    k = Const("k", "D")
    P = lambda t: Atom("P", (t,))
    allx = Forall(x, P(x))
    # p1: allx, made from eigen premise: ax with eigen var
    w = Var("w", "D")
    leaf1 = ax([], P(w), [])
    p1 = SequentProof("rall", Sequent((P(w),), (allx,)), (leaf1,), principal=allx, eigen=w)
    # invalid: eigen occurs in antecedent; build a correct one instead:
    leafh = SequentProof("ax", Sequent((Forall(x, P(x)),), (Forall(x, P(x)),)), principal=allx)
    # cut forall x P(x) between hypothesis axiom and instantiation proof
    leaf2 = ax([], P(k), [])
    p2 = SequentProof("lall", Sequent((allx,), (P(k),)), (leaf2,), principal=allx, term=k)
    p1w = weaken_to(leafh, (allx,), (P(k), allx))
    p2w = weaken_to(p2, (allx, allx), (P(k),))
    glued = SequentProof("cut", Sequent((allx,), (P(k),)), (p1w, p2w), principal=allx)
    assert check_sequent_proof(glued), check_sequent_proof_report(glued)[1]
    out = eliminate_cuts(glued)
    assert out.count_cuts() == 0
    assert check_sequent_proof(out)
    assert seq_eq(out.conclusion, glued.conclusion)


def test_eigen_condition_enforced():
    x = Var("x", "D")
    w = Var("w", "D")
    P = lambda t: Atom("P", (t,))
    leaf = ax([], P(w), [])
    bad = SequentProof("rall", Sequent((P(w),), (Forall(x, P(x)),)), (leaf,),
                       principal=Forall(x, P(x)), eigen=w)
    assert not check_sequent_proof(bad)
