"""Shared generators for the proof-system test modules."""
import random

from henkinforge.sequent import Sequent, SequentProof, check_sequent_proof, weaken_to
from henkinforge.syntax import And, Atom, Imp, Not, Or

a, b, c, d = Atom("a"), Atom("b"), Atom("c"), Atom("d")
GEN_ATOMS = [a, b, c, d]


def ax_leaf(context_l, phi, context_r):
    return SequentProof("ax", Sequent(tuple(context_l) + (phi,),
                                      tuple(context_r) + (phi,)), principal=phi)


def forward_moves(proof, pool):
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


def apply_forward(proof, move):
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
    pool = GEN_ATOMS + [Not(a), Or(a, b), And(c, d), Imp(a, b)]
    proof = ax_leaf([rng.choice(GEN_ATOMS)], rng.choice(GEN_ATOMS), [rng.choice(GEN_ATOMS)])
    for _ in range(steps):
        moves = forward_moves(proof, pool)
        if not moves:
            break
        proof = apply_forward(proof, rng.choice(moves))
    assert check_sequent_proof(proof)
    return proof


def glue_one_cut(rng, p1, p2):
    phi = rng.choice(GEN_ATOMS)
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
    common_ante = s1.ante + tuple(x for x in s2.ante if x != phi)
    common_succ = tuple(x for x in s1.succ if x != phi) + s2.succ
    p1w = weaken_to(p1, common_ante, common_succ + (phi,))
    p2w = weaken_to(p2, common_ante + (phi,), common_succ)
    glued = SequentProof("cut", Sequent(common_ante, common_succ), (p1w, p2w), principal=phi)
    assert check_sequent_proof(glued)
    return glued
