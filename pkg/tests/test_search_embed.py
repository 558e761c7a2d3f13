import itertools
import random

import pytest
from conftest import glue_one_cut, random_cutfree_proof

from henkinforge.embed import disj, sequent_to_derivation
from henkinforge.hilbert import check_derivation, check_derivation_report
from henkinforge.search import (NotFoundWithin, Proved, prove_bounded,
                                prove_sequent, reduce_to_consistency)
from henkinforge.semantics import (Satisfiable, Unsatisfiable,
                                   decide_propositional_theory,
                                   eval_propositional)
from henkinforge.sequent import eliminate_cuts
from henkinforge.syntax import (And, Atom, Const, Exists, FALSE, Forall,
                                Formula, Imp, Not, Or, Signature, Theory, Var,
                                alpha_eq)

PROP = Signature(("o",), (("p", ()), ("q", ()), ("r", ())))
ONE = Signature(("D",), (("P", ("D",)), ("Q", ("D",))), constants=(("k", "D"),))

p, q, r = Atom("p"), Atom("q"), Atom("r")


def thy(sig, *sentences):
    return Theory(sig, tuple((f"h{i}", s) for i, s in enumerate(sentences)))


def test_prove_imp_refl():
    out = prove_bounded(thy(PROP), Imp(p, p), 100)
    assert isinstance(out, Proved)
    assert check_derivation(out.derivation, thy(PROP), Imp(p, p))


def test_prove_atomic_fails_with_countermodel():
    out = prove_bounded(thy(PROP), p, 500)
    assert isinstance(out, NotFoundWithin)
    # cross-check: a falsifying valuation exists
    assert not eval_propositional(p, {"p": False, "q": False, "r": False})


def test_prove_from_hypothesis():
    gamma = thy(PROP, p)
    out = prove_bounded(gamma, And(p, p), 200)
    assert isinstance(out, Proved)
    assert check_derivation(out.derivation, gamma, And(p, p))


def test_prove_tautologies():
    taut = [
        Imp(p, Imp(q, p)),
        Or(p, Not(p)),
        Imp(Not(Not(p)), p),
        Imp(And(p, q), And(q, p)),
        Imp(Imp(p, q), Imp(Not(q), Not(p))),
        Or(Imp(p, q), Imp(q, p)),
    ]
    for phi in taut:
        out = prove_bounded(thy(PROP), phi, 3000)
        assert isinstance(out, Proved), phi
        assert check_derivation(out.derivation, thy(PROP), phi)


def test_prove_quantifier_goals():
    x = Var("x", "D")
    y = Var("y", "D")
    Px = Atom("P", (x,))
    Qx = Atom("Q", (x,))
    gamma = thy(ONE, Forall(x, Imp(Px, Qx)), Exists(x, Px))
    goal = Exists(x, Qx)
    out = prove_bounded(gamma, goal, 3000)
    assert isinstance(out, Proved)
    ok, rep = check_derivation_report(out.derivation, gamma, goal)
    assert ok, rep
    # pure-logic validity: forall x P(x) -> P(k)
    phi = Imp(Forall(x, Px), Atom("P", (Const("k", "D"),)))
    out2 = prove_bounded(thy(ONE), phi, 2000)
    assert isinstance(out2, Proved)
    assert check_derivation(out2.derivation, thy(ONE), phi)
    # renaming validity
    phi3 = Imp(Forall(x, Px), Forall(y, Atom("P", (y,))))
    out3 = prove_bounded(thy(ONE), phi3, 2000)
    assert isinstance(out3, Proved)
    assert check_derivation(out3.derivation, thy(ONE), phi3)


def test_empty_sequent_not_derivable_cut_free():
    # desk-scale echo of the consistency of pure logic
    for budget in (50, 500, 5000):
        assert prove_sequent((), (), PROP, budget) is None


def test_embedding_of_random_cutfree_proofs():
    rng = random.Random(31)
    for _ in range(40):
        sp = random_cutfree_proof(rng, steps=rng.randrange(2, 6))
        hyps = tuple(dict.fromkeys(sp.conclusion.ante))
        d = sequent_to_derivation(sp, hyps)
        gamma = Theory(Signature(("o",), (("a", ()), ("b", ()), ("c", ()), ("d", ()))),
                       tuple((f"h{i}", h) for i, h in enumerate(hyps)))
        assert check_derivation(d, gamma, disj(sp.conclusion.succ))


def test_embedding_of_small_cut_proofs():
    # cuts embed through a case split; keep succedents narrow (the wide case
    # explodes combinatorially and the search never produces it)
    rng = random.Random(77)
    done = 0
    attempts = 0
    while done < 5 and attempts < 400:
        attempts += 1
        p1 = random_cutfree_proof(rng, steps=1)
        p2 = random_cutfree_proof(rng, steps=1)
        glued = glue_one_cut(rng, p1, p2)
        if len(glued.conclusion.succ) > 2 or len(glued.premises[0].conclusion.succ) > 3:
            continue
        hyps = tuple(dict.fromkeys(glued.conclusion.ante))
        d = sequent_to_derivation(glued, hyps)
        gamma = Theory(Signature(("o",), (("a", ()), ("b", ()), ("c", ()), ("d", ()))),
                       tuple((f"h{i}", h) for i, h in enumerate(hyps)))
        assert check_derivation(d, gamma, disj(glued.conclusion.succ))
        done += 1


# --- reduction to consistency -------------------------------------------------


def test_reduce_valid_formula():
    red = reduce_to_consistency(thy(PROP), Imp(p, p))
    assert len(red.axioms) == 1
    out = prove_bounded(red, FALSE, 2000)
    assert isinstance(out, Proved)
    assert check_derivation(out.derivation, red, FALSE)


def test_reduce_non_entailed():
    gamma = thy(PROP, p)
    red = reduce_to_consistency(gamma, q)
    out = prove_bounded(red, FALSE, 2000)
    assert isinstance(out, NotFoundWithin)
    # a two-valuation model certifies consistency
    assert eval_propositional(And(p, Not(q)), {"p": True, "q": False, "r": False})
    assert isinstance(decide_propositional_theory(red), Satisfiable)


def random_prop(rng, depth=2):
    if depth == 0 or rng.random() < 0.4:
        return rng.choice([p, q, r, FALSE])
    k = rng.randrange(4)
    if k == 0:
        return Not(random_prop(rng, depth - 1))
    if k == 1:
        return And(random_prop(rng, depth - 1), random_prop(rng, depth - 1))
    if k == 2:
        return Or(random_prop(rng, depth - 1), random_prop(rng, depth - 1))
    return Imp(random_prop(rng, depth - 1), random_prop(rng, depth - 1))


def test_reduction_agrees_with_truth_tables():
    rng = random.Random(13)
    for _ in range(50):
        hyps = [random_prop(rng) for _ in range(rng.randrange(0, 3))]
        phi = random_prop(rng)
        gamma = thy(PROP, *hyps)
        red = reduce_to_consistency(gamma, phi)
        # oracle: truth-table entailment
        entailed = True
        for bits in itertools.product([False, True], repeat=3):
            v = dict(zip(["p", "q", "r"], bits))
            if all(eval_propositional(h, v) for h in hyps) and not eval_propositional(phi, v):
                entailed = False
                break
        unsat = isinstance(decide_propositional_theory(red), Unsatisfiable)
        assert entailed == unsat, (hyps, phi)
