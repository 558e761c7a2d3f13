import random

import pytest

from henkinforge.hilbert import (Ax, Derivation, Gen, Hyp, Line, MP, ProofError,
                                 Prover, axiom_instance, check_derivation,
                                 check_derivation_report, parse_derivation,
                                 print_derivation)
from henkinforge.semantics import all_models, evaluate, satisfies
from henkinforge.syntax import (And, Atom, Const, Eq, Exists, FALSE, Forall,
                                Formula, Imp, Not, Or, Signature, Theory, Var,
                                alpha_eq, parse_formula)

PROP = Signature(("o",), (("p", ()), ("q", ()), ("r", ())))
ONE = Signature(("D",), (("P", ("D",)), ("Q", ("D",)), ("R", ("D", "D"))),
                constants=(("c", "D"),))

p, q, r = Atom("p"), Atom("q"), Atom("r")


def thy(sig, *sentences):
    return Theory(sig, tuple((f"h{i}", s) for i, s in enumerate(sentences)))


def test_one_line_hypothesis():
    d = Derivation((Line(p, Hyp()),))
    assert check_derivation(d, thy(PROP, p), p)
    assert not check_derivation(d, thy(PROP, q), p)


def test_mp_swapped_premises_rejected():
    d = Derivation((
        Line(p, Hyp()),
        Line(Imp(p, q), Hyp()),
        Line(q, MP(1, 0)),
    ))
    assert check_derivation(d, thy(PROP, p, Imp(p, q)), q)
    swapped = Derivation((
        Line(p, Hyp()),
        Line(Imp(p, q), Hyp()),
        Line(q, MP(0, 1)),
    ))
    ok, report = check_derivation_report(swapped, thy(PROP, p, Imp(p, q)), q)
    assert not ok
    assert report[0] == 3


def test_axiom_instance_checking():
    inst = axiom_instance("k", {"A": p, "B": q})
    assert inst == Imp(p, Imp(q, p))
    d = Derivation((Line(inst, Ax("k", (("A", p), ("B", q)))),))
    assert check_derivation(d, thy(PROP), inst)
    wrong = Derivation((Line(Imp(p, Imp(q, q)), Ax("k", (("A", p), ("B", q)))),))
    assert not check_derivation(wrong, thy(PROP), Imp(p, Imp(q, q)))


def test_gen_blocked_on_used_hypothesis():
    Px = Atom("P", (Var("x", "D"),))
    d = Derivation((
        Line(Px, Hyp()),
        Line(Forall(Var("x", "D"), Px), Gen(0, Var("x", "D"))),
    ))
    open_theory = Theory(ONE, (("h0", Forall(Var("x", "D"), Px)),))
    # hypothesis Px is not even in the theory, so use a theory containing it:
    sigx = Signature(("D",), (("P", ("D",)),), constants=(("c", "D"),))
    # a theory axiom must be closed, so craft the check directly: hypothesis
    # line is accepted only when listed; here it is not, so the check fails
    ok, _ = check_derivation_report(d, open_theory, Forall(Var("x", "D"), Px))
    assert not ok


def test_gen_allowed_on_axiom():
    Px = Atom("P", (Var("x", "D"),))
    x = Var("x", "D")
    pr = Prover()
    h = pr.imp_refl(Px)
    g = pr.gen(h, x)
    d = pr.derivation()
    assert check_derivation(d, thy(ONE), Forall(x, Imp(Px, Px)))


def test_prover_imp_refl_and_trans():
    pr = Prover()
    h1 = pr.hyp(Imp(p, q))
    h2 = pr.hyp(Imp(q, r))
    h3 = pr.imp_trans(h1, h2)
    d = pr.derivation()
    assert check_derivation(d, thy(PROP, Imp(p, q), Imp(q, r)), Imp(p, r))


def test_prover_cases_and_tnd():
    pr = Prover()
    # from p | q and (p -> r) and (q -> r), derive r
    h_or = pr.hyp(Or(p, q))
    h_pr = pr.hyp(Imp(p, r))
    h_qr = pr.hyp(Imp(q, r))
    h = pr.cases(h_or,
                 lambda sub: sub.mp(sub.use(h_pr), sub.assumption_handle),
                 lambda sub: sub.mp(sub.use(h_qr), sub.assumption_handle))
    assert alpha_eq(pr.formula_of(h), r)
    d = pr.derivation()
    assert check_derivation(d, thy(PROP, Or(p, q), Imp(p, r), Imp(q, r)), r)


def test_prover_tnd_cases():
    pr = Prover()
    # (p -> q) -> (~p -> q) -> q  via excluded middle, as a theorem from hyps
    h1 = pr.hyp(Imp(p, q))
    h2 = pr.hyp(Imp(Not(p), q))
    h = pr.tnd_cases(p,
                     lambda sub: sub.mp(sub.use(h1), sub.assumption_handle),
                     lambda sub: sub.mp(sub.use(h2), sub.assumption_handle))
    d = pr.derivation()
    assert check_derivation(d, thy(PROP, Imp(p, q), Imp(Not(p), q)), q)


def test_prover_quantifiers():
    x, y = Var("x", "D"), Var("y", "D")
    Px = Atom("P", (x,))
    Qx = Atom("Q", (x,))
    pr = Prover()
    # from forall x (P(x) -> Q(x)) and exists x P(x), derive exists x Q(x)
    h_all = pr.hyp(Forall(x, Imp(Px, Qx)))
    h_ex = pr.hyp(Exists(x, Px))
    w = Var("w", "D")

    def body(sub, h_pw):
        h_imp = sub.forall_elim(sub.use(h_all), w)
        h_qw = sub.mp(h_imp, h_pw)
        return sub.exists_intro(h_qw, Qx, x, w)

    h = pr.exists_elim(h_ex, w, body)
    assert alpha_eq(pr.formula_of(h), Exists(x, Qx))
    d = pr.derivation()
    gamma = thy(ONE, Forall(x, Imp(Px, Qx)), Exists(x, Px))
    ok, rep = check_derivation_report(d, gamma, Exists(x, Qx))
    assert ok, rep


def test_prover_equality():
    x = Var("x", "D")
    c = Const("c", "D")
    pr = Prover()
    # from c = x (as hypothesis scheme shape: use a closed variant) derive P(x) -> P(c) ... use terms
    # simpler: t = t by eq-refl
    h = pr.ax("eq-refl", t=c)
    d = pr.derivation()
    assert check_derivation(d, thy(ONE), Eq(c, c))


def test_derivation_file_roundtrip():
    x = Var("x", "D")
    Px = Atom("P", (x,))
    pr = Prover()
    h_all = pr.hyp(Forall(x, Px))
    h_inst = pr.forall_elim(h_all, Const("c", "D"))
    d = pr.derivation()
    text = print_derivation(d)
    d2 = parse_derivation(text, ONE)
    assert len(d2.lines) == len(d.lines)
    gamma = thy(ONE, Forall(x, Px))
    assert check_derivation(d2, gamma, Atom("P", (Const("c", "D"),)))
    assert print_derivation(d2) == text


def test_derivation_file_bad_line_reported():
    with pytest.raises(ProofError):
        parse_derivation("1. p ; zap\n", PROP)


# --- soundness sweep (kernel vs finite models) ------------------------------


PROP_FORMULAS = [p, q, r, Imp(p, q), Imp(q, r), Or(p, q), And(p, q), Not(p)]


def random_derivation(rng):
    """Random mix of hypotheses, axiom instances, mp and gen steps."""
    hyps = rng.sample(PROP_FORMULAS, k=rng.randrange(1, 4))
    pr = Prover()
    handles = [pr.hyp(h) for h in hyps]
    for _ in range(rng.randrange(1, 12)):
        move = rng.random()
        if move < 0.45:
            sid = rng.choice(["k", "s", "and-i", "and-e1", "and-e2", "or-i1",
                              "or-i2", "or-e", "neg-e", "neg-i", "efq", "tnd"])
            from henkinforge.hilbert import SCHEMES
            inst = {m: rng.choice(PROP_FORMULAS) for m, _ in SCHEMES[sid].meta}
            handles.append(pr.ax(sid, **inst))
        else:
            imps = [h for h in handles if isinstance(pr.formula_of(h), Imp)]
            rng.shuffle(imps)
            done = False
            for hi in imps:
                want = pr.formula_of(hi).left
                ants = [h for h in handles if alpha_eq(pr.formula_of(h), want)]
                if ants:
                    handles.append(pr.mp(hi, rng.choice(ants)))
                    done = True
                    break
            if not done:
                handles.append(pr.ax("tnd", A=rng.choice(PROP_FORMULAS)))
    return Theory(PROP, tuple((f"h{i}", h) for i, h in enumerate(dict.fromkeys(hyps)))), pr.derivation()


def test_soundness_sweep_small():
    rng = random.Random(5)
    for _ in range(100):
        gamma, d = random_derivation(rng)
        conclusion = d.conclusion
        assert check_derivation(d, gamma, conclusion)
        for m in all_models(PROP, {"o": 1}):
            if satisfies(m, gamma):
                assert evaluate(m, conclusion), (gamma, conclusion)


def test_hilbert_derivations_translate_to_sequent_proofs():
    from henkinforge.hilbert_to_sequent import derivation_to_sequent
    from henkinforge.sequent import check_sequent_proof_report, seq_eq
    rng = random.Random(41)
    for _ in range(15):
        gamma, d = random_derivation(rng)
        sp = derivation_to_sequent(d, gamma)
        ok, err = check_sequent_proof_report(sp)
        assert ok, err
        assert alpha_eq(sp.conclusion.succ[0], d.conclusion)


def test_quantified_derivation_translates():
    from henkinforge.hilbert_to_sequent import derivation_to_sequent
    from henkinforge.sequent import check_sequent_proof
    x = Var("x", "D")
    Px = Atom("P", (x,))
    pr = Prover()
    h = pr.imp_refl(Px)
    pr.gen(h, x)
    gamma = thy(ONE)
    sp = derivation_to_sequent(pr.derivation(), gamma)
    assert check_sequent_proof(sp)
