import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from henkinforge.semantics import (FiniteModel, Interpretation, NotInFragment,
                                   Satisfiable, SemanticsError, Unsatisfiable,
                                   all_models, decide_epr,
                                   decide_propositional,
                                   decide_propositional_theory, epr_size_bound,
                                   eval_propositional, evaluate,
                                   parse_interpretation, prenex,
                                   pullback_model, satisfies, translate)
from henkinforge.syntax import (And, Atom, Const, Eq, Exists, FALSE, Forall,
                                Formula, Imp, Not, Or, Signature, Theory, Var,
                                free_vars, parse_formula, parse_theory,
                                substitute)

ONE = Signature(
    sorts=("D",),
    predicates=(("P", ("D",)), ("Q", ("D",)), ("R", ("D", "D"))),
    constants=(("c", "D"),),
)


def model_of(size, P=(), Q=(), R=(), c=0):
    return FiniteModel(ONE, {"D": list(range(size))},
                       {"P": {(e,) for e in P}, "Q": {(e,) for e in Q},
                        "R": set(R)}, {}, {"c": c})


def test_evaluate_one_element():
    m = model_of(1, P=[0])
    assert evaluate(m, parse_formula("forall x:D P(x)", ONE))
    assert evaluate(m, parse_formula("exists x:D P(x)", ONE))
    assert not evaluate(m, parse_formula("exists x:D Q(x)", ONE))


def test_evaluate_two_element():
    m = model_of(2, P=[0])
    assert evaluate(m, parse_formula("exists x:D P(x)", ONE))
    assert not evaluate(m, parse_formula("forall x:D P(x)", ONE))


def test_evaluate_omega_theory():
    omega = parse_theory(
        "theory omega\nsort Being\npred Int(Being)\npred Omnipot(Being)\n"
        "pred Omnipres(Being)\nconst a:Being\n"
        "axiom int: Int(a)\naxiom pot: Omnipot(a)\naxiom pres: Omnipres(a)\n")
    m = FiniteModel(omega.signature, {"Being": [0]},
                    {"Int": {(0,)}, "Omnipot": {(0,)}, "Omnipres": {(0,)}},
                    {}, {"a": 0})
    assert satisfies(m, omega)


def test_evaluate_missing_assignment():
    m = model_of(1)
    with pytest.raises(SemanticsError):
        evaluate(m, Atom("P", (Var("x", "D"),)))


# --- substitution lemma (oracle for substitute) ----------------------------


def random_formula(rng, depth=3):
    terms = [Var("x", "D"), Var("y", "D"), Const("c", "D")]
    if depth == 0 or rng.random() < 0.3:
        k = rng.randrange(5)
        if k == 0:
            return Atom("P", (rng.choice(terms),))
        if k == 1:
            return Atom("Q", (rng.choice(terms),))
        if k == 2:
            return Atom("R", (rng.choice(terms), rng.choice(terms)))
        if k == 3:
            return Eq(rng.choice(terms), rng.choice(terms))
        return FALSE
    k = rng.randrange(6)
    if k == 0:
        return Not(random_formula(rng, depth - 1))
    if k == 1:
        return And(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if k == 2:
        return Or(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if k == 3:
        return Imp(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if k == 4:
        return Forall(rng.choice([Var("x", "D"), Var("y", "D")]), random_formula(rng, depth - 1))
    return Exists(rng.choice([Var("x", "D"), Var("y", "D")]), random_formula(rng, depth - 1))


def random_model(rng, size):
    P = [e for e in range(size) if rng.random() < 0.5]
    Q = [e for e in range(size) if rng.random() < 0.5]
    R = {(a, b) for a in range(size) for b in range(size) if rng.random() < 0.5}
    return model_of(size, P, Q, R, c=rng.randrange(size))


def test_substitution_lemma_50_random():
    rng = random.Random(7)
    checked = 0
    while checked < 50:
        phi = random_formula(rng)
        x = rng.choice([Var("x", "D"), Var("y", "D")])
        if x not in free_vars(phi):
            continue
        t = rng.choice([Var("x", "D"), Var("y", "D"), Const("c", "D")])
        m = random_model(rng, rng.randrange(1, 4))
        out = substitute(phi, x, t)
        for env_vals in itertools.product(m.carriers["D"], repeat=2):
            env = {"x": env_vals[0], "y": env_vals[1]}
            from henkinforge.semantics import eval_term
            tv = eval_term(m, t, env)
            lhs = evaluate(m, out, env)
            rhs = evaluate(m, phi, {**env, x.name: tv})
            assert lhs == rhs, (phi, x, t, env)
        checked += 1


def test_conjoin_is_min_over_conjuncts():
    from henkinforge.syntax import conjoin
    rng = random.Random(11)
    for _ in range(25):
        axioms = []
        for i in range(rng.randrange(1, 4)):
            phi = random_formula(rng, depth=2)
            for v in sorted(free_vars(phi), key=lambda v: v.name):
                phi = Forall(v, phi)
            axioms.append((f"a{i}", phi))
        th = Theory(ONE, tuple(axioms))
        m = random_model(rng, rng.randrange(1, 4))
        assert evaluate(m, conjoin(th)) == min(evaluate(m, phi) for phi in th.sentences)


# --- propositional decision -------------------------------------------------

PROP = Signature(("o",), (("p", ()), ("q", ()), ("r", ())))


def test_decide_propositional_basics():
    p = Atom("p")
    assert isinstance(decide_propositional(And(p, Not(p))), Unsatisfiable)
    # p -> p is valid: negation unsatisfiable
    assert isinstance(decide_propositional(Not(Imp(p, p))), Unsatisfiable)
    v = decide_propositional(Or(Atom("p"), Atom("q")))
    assert isinstance(v, Satisfiable)


def test_decide_propositional_not_in_fragment():
    assert isinstance(decide_propositional(parse_formula("forall x:D P(x)", ONE)), NotInFragment)
    assert isinstance(decide_propositional(Atom("P", (Const("c", "D"),))), NotInFragment)


def random_prop(rng, depth=3):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([Atom("p"), Atom("q"), Atom("r"), FALSE])
    k = rng.randrange(4)
    if k == 0:
        return Not(random_prop(rng, depth - 1))
    if k == 1:
        return And(random_prop(rng, depth - 1), random_prop(rng, depth - 1))
    if k == 2:
        return Or(random_prop(rng, depth - 1), random_prop(rng, depth - 1))
    return Imp(random_prop(rng, depth - 1), random_prop(rng, depth - 1))


def test_decide_propositional_against_truth_table_oracle():
    rng = random.Random(3)
    for _ in range(100):
        phi = random_prop(rng)
        # independent oracle: direct enumeration over the fixed atom set
        sat = False
        for bits in itertools.product([False, True], repeat=3):
            if eval_propositional(phi, dict(zip(["p", "q", "r"], bits))):
                sat = True
                break
        verdict = decide_propositional(phi)
        assert isinstance(verdict, Satisfiable) == sat
        if isinstance(verdict, Satisfiable):
            m = verdict.model
            val = {a: (() in m.predicates.get(a, set())) for a in ["p", "q", "r"]}
            assert eval_propositional(phi, val)


# --- EPR decision ------------------------------------------------------------


def test_prenex_witness_axiom_is_epr():
    phi = parse_formula("(exists x:D P(x)) -> P(c)", ONE)
    prefix, matrix = prenex(phi)
    assert [q for q, _ in prefix] == ["A"]
    th = Theory(ONE, (("w", phi),))
    # prenexes to a universal sentence: bound is the single declared constant
    assert epr_size_bound(th) == 1


def test_decide_epr_omega():
    omega = parse_theory(
        "theory omega\nsort Being\npred Int(Being)\npred Omnipot(Being)\n"
        "pred Omnipres(Being)\nconst a:Being\n"
        "axiom int: Int(a)\naxiom pot: Omnipot(a)\naxiom pres: Omnipres(a)\n")
    v = decide_epr(omega)
    assert isinstance(v, Satisfiable)
    assert len(v.model.carriers["Being"]) == 1
    assert satisfies(v.model, omega)


def test_decide_epr_unsat():
    th = parse_theory(
        "theory t\nsort D\npred P(D)\n"
        "axiom a: exists x:D P(x)\naxiom b: forall x:D ~P(x)\n")
    assert isinstance(decide_epr(th), Unsatisfiable)


def test_decide_epr_not_in_fragment():
    th = parse_theory(
        "theory t\nsort D\npred R(D,D)\n"
        "axiom a: forall x:D exists y:D R(x,y)\n")
    assert isinstance(decide_epr(th), NotInFragment)


UNARY = Signature(sorts=("D",), predicates=(("P", ("D",)), ("Q", ("D",))),
                  constants=(("c", "D"),))


def random_unary_formula(rng, depth=2):
    terms = [Var("x", "D"), Var("y", "D"), Const("c", "D")]
    if depth == 0 or rng.random() < 0.35:
        k = rng.randrange(3)
        if k == 0:
            return Atom("P", (rng.choice(terms),))
        if k == 1:
            return Atom("Q", (rng.choice(terms),))
        return Eq(rng.choice(terms), rng.choice(terms))
    k = rng.randrange(4)
    if k == 0:
        return Not(random_unary_formula(rng, depth - 1))
    if k == 1:
        return And(random_unary_formula(rng, depth - 1), random_unary_formula(rng, depth - 1))
    if k == 2:
        return Or(random_unary_formula(rng, depth - 1), random_unary_formula(rng, depth - 1))
    return Imp(random_unary_formula(rng, depth - 1), random_unary_formula(rng, depth - 1))


def random_epr_theory(rng, sig=UNARY, max_bound=3):
    # keeps #constants + leading existentials <= max_bound so brute force stays cheap
    budget = max_bound - 1  # one declared constant
    n_ax = rng.randrange(1, 4)
    axioms = []
    for i in range(n_ax):
        mat = random_unary_formula(rng)
        fv = sorted(free_vars(mat), key=lambda v: v.name)
        phi = mat
        n_ex = rng.randrange(0, min(max(budget, 0), len(fv)) + 1)
        budget -= n_ex
        for v in fv[n_ex:]:
            phi = Forall(v, phi)
        for v in fv[:n_ex]:
            phi = Exists(v, phi)
        axioms.append((f"a{i}", phi))
    return Theory(sig, tuple(axioms))


def _has_q(phi):
    if isinstance(phi, (Forall, Exists)):
        return True
    if isinstance(phi, Not):
        return _has_q(phi.body)
    if isinstance(phi, (And, Or, Imp)):
        return _has_q(phi.left) or _has_q(phi.right)
    return False


def test_decide_epr_complete_against_brute_force():
    rng = random.Random(19)
    for _ in range(60):
        th = random_epr_theory(rng)
        bound = epr_size_bound(th)
        assert bound is not None
        verdict = decide_epr(th)
        # independent exhaustive search over the same bound
        found = None
        for size in range(1, bound + 1):
            for m in all_models(th.signature, {"D": size}):
                if satisfies(m, th):
                    found = m
                    break
            if found:
                break
        assert isinstance(verdict, Satisfiable) == (found is not None)
        if isinstance(verdict, Satisfiable):
            assert satisfies(verdict.model, th)


# --- interpretations ---------------------------------------------------------

SRC = Signature(sorts=("S",), predicates=(("A", ("S",)), ("B", ("S", "S"))),
                constants=(("k", "S"),))
TGT = Signature(sorts=("T",), predicates=(("U", ("T",)), ("V", ("T", "T"))),
                constants=(("m", "T"),))


def identity_interp():
    x, y = Var("x", "T"), Var("y", "T")
    return Interpretation(
        source=SRC, target=TGT,
        sort_map=(("S", "T"),),
        domains=(("S", x, Eq(x, x)),),
        pred_map=(("A", (x,), Atom("U", (x,))), ("B", (x, y), Atom("V", (x, y)))),
        const_map=(("k", x, Eq(x, Const("m", "T"))),),
    )


def test_translate_relativizes():
    i = identity_interp()
    phi = Forall(Var("s", "S"), Atom("A", (Var("s", "S"),)))
    out = translate(i, phi)
    assert isinstance(out, Forall)
    assert isinstance(out.body, Imp)
    phi2 = Exists(Var("s", "S"), Atom("A", (Var("s", "S"),)))
    out2 = translate(i, phi2)
    assert isinstance(out2, Exists)
    assert isinstance(out2.body, And)


def test_pullback_identity_interp():
    i = identity_interp()
    b = FiniteModel(TGT, {"T": [0, 1]}, {"U": {(0,)}, "V": {(0, 1)}}, {}, {"m": 1})
    a = pullback_model(i, b)
    assert a.carriers["S"] == [0, 1]
    assert a.predicates["A"] == {(0,)}
    assert a.predicates["B"] == {(0, 1)}
    assert a.constants["k"] == 1


def test_pullback_subcarrier():
    x, y = Var("x", "T"), Var("y", "T")
    i = Interpretation(
        source=Signature(("S",), (("A", ("S",)),)),
        target=TGT, sort_map=(("S", "T"),),
        domains=(("S", x, Atom("U", (x,))),),
        pred_map=(("A", (x,), Atom("V", (x, x))),),
    )
    b = FiniteModel(TGT, {"T": [0, 1]}, {"U": {(1,)}, "V": {(1, 1)}}, {}, {"m": 0})
    a = pullback_model(i, b)
    assert a.carriers["S"] == [1]
    assert a.predicates["A"] == {(1,)}


def random_src_sentence(rng, depth=2):
    s = Var("s", "S")
    t = Var("t", "S")
    terms = [s, t, Const("k", "S")]

    def go(d):
        if d == 0 or rng.random() < 0.35:
            k = rng.randrange(3)
            if k == 0:
                return Atom("A", (rng.choice(terms),))
            if k == 1:
                return Atom("B", (rng.choice(terms), rng.choice(terms)))
            return Eq(rng.choice(terms), rng.choice(terms))
        k = rng.randrange(5)
        if k == 0:
            return Not(go(d - 1))
        if k == 1:
            return And(go(d - 1), go(d - 1))
        if k == 2:
            return Or(go(d - 1), go(d - 1))
        if k == 3:
            return Forall(rng.choice([s, t]), go(d - 1))
        return Exists(rng.choice([s, t]), go(d - 1))

    phi = go(depth)
    for v in sorted(free_vars(phi), key=lambda v: v.name):
        phi = Forall(v, phi)
    return phi


def random_interp(rng):
    x, y = Var("x", "T"), Var("y", "T")
    dom_choices = [Eq(x, x), Atom("U", (x,)), Or(Atom("U", (x,)), Eq(x, Const("m", "T")))]
    a_choices = [Atom("U", (x,)), Atom("V", (x, x)), Not(Atom("U", (x,)))]
    b_choices = [Atom("V", (x, y)), And(Atom("U", (x,)), Atom("U", (y,))), Eq(x, y)]
    return Interpretation(
        source=SRC, target=TGT, sort_map=(("S", "T"),),
        domains=(("S", x, rng.choice(dom_choices)),),
        pred_map=(("A", (x,), rng.choice(a_choices)),
                  ("B", (x, y), rng.choice(b_choices))),
        const_map=(("k", x, Eq(x, Const("m", "T"))),),
    )


def random_tgt_model(rng, size):
    U = {(e,) for e in range(size) if rng.random() < 0.6}
    V = {(a, b) for a in range(size) for b in range(size) if rng.random() < 0.5}
    return FiniteModel(TGT, {"T": list(range(size))}, {"U": U, "V": V}, {},
                       {"m": rng.randrange(size)})


def test_fundamental_interpretation_property_randomized():
    rng = random.Random(23)
    done = 0
    while done < 100:
        i = random_interp(rng)
        b = random_tgt_model(rng, rng.randrange(1, 4))
        # k must denote inside the delta-carrier for the pullback to exist
        try:
            a = pullback_model(i, b)
        except SemanticsError:
            continue
        phi = random_src_sentence(rng)
        lhs = evaluate(b, translate(i, phi))
        rhs = evaluate(a, phi)
        assert lhs == rhs, (phi, i)
        done += 1


def test_parse_interpretation_format():
    src = parse_theory("theory s\nsort S\npred A(S)\nconst k:S\naxiom a: A(k)\n")
    tgt = parse_theory("theory t\nsort T\npred U(T)\nconst m:T\naxiom a: U(m)\n")
    text = (
        "interp demo : s -> t\n"
        "sortmap S -> T\n"
        "domain S(x:T) := x = x\n"
        "map A(x:T) := U(x)\n"
        "map k(x:T) := x = m\n"
    )
    i = parse_interpretation(text, src, tgt)
    out = translate(i, Atom("A", (Const("k", "S"),)))
    b = FiniteModel(tgt.signature, {"T": [0]}, {"U": {(0,)}}, {}, {"m": 0})
    assert evaluate(b, out)
