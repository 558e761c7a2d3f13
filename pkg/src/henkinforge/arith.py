"""Arithmetization of consistency: the Con(Gamma) sentence, its bounded-
quantifier matrix, complexity tags, and the reduction of Pi-0-1 problems to
consistency of a single formula.

The arithmetic language has sort N, constants 0 and 1 (numerals are all-digit
constants), functions add/mul, the order predicate Lt, and three coding
predicates with fixed numeric meaning over the frozen Goedel scheme:

    SeqLen(s, n)   the sequence coded by s has length n
    SeqAt(s, i, v) the i-th element of the sequence coded by s is v
    LineOk(d, i, h) line i of the derivation coded by d is correctly
                    justified, hypotheses drawn from the conjuncts of the
                    formula coded by h

Quantifiers in generated matrices are always of the bounded shapes
exists y (Lt(y, t) & ...) / forall y (Lt(y, t) -> ...), which is what the
Pi-0-1 shape checker certifies."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .godel import (DecodeError, GodelCode, dec_derivation, dec_formula,
                    dec_seq, godel_number, infer_signature, pair, unpair)
from .hilbert import Ax, Gen, Hyp, MP, axiom_instance, ProofError
from .machines import TuringMachine, encode_validity
from .syntax import (And, App, Atom, Const, Eq, Exists, Forall, Formula, Imp,
                     Not, Or, Signature, SyntaxError_, Term, Theory, Var,
                     alpha_eq, check_formula, conjoin, free_vars)

ARITH = Signature(
    sorts=("N",),
    predicates=(("Lt", ("N", "N")), ("SeqLen", ("N", "N")),
                ("SeqAt", ("N", "N", "N")), ("LineOk", ("N", "N", "N"))),
    functions=(("add", ("N", "N"), "N"), ("mul", ("N", "N"), "N")),
    constants=(("0", "N"), ("1", "N")),
    numeral_sort="N",
)


class ComplexityTag(enum.Enum):
    SIGMA01 = "Sigma01"
    PI01 = "Pi01"
    DELTA02_STAGED = "Delta02-staged"


@dataclass(frozen=True)
class TaggedSentence:
    """A generated arithmetic sentence with the complexity label its
    construction guarantees; tags are never inferred for arbitrary input."""

    formula: Formula
    tag: ComplexityTag


def num(k: int) -> Term:
    return Const(str(k), "N")


def _b_exists(v: Var, bound: Term, body: Formula) -> Formula:
    return Exists(v, And(Atom("Lt", (v, add(bound, num(1)))), body))


def _b_forall(v: Var, bound: Term, body: Formula) -> Formula:
    return Forall(v, Imp(Atom("Lt", (v, add(bound, num(1)))), body))


def add(a: Term, b: Term) -> Term:
    return App("add", (a, b), "N")


def mul(a: Term, b: Term) -> Term:
    return App("mul", (a, b), "N")


# ---------------------------------------------------------------------------
# Con(Gamma)


def con_formula(gamma: Theory) -> TaggedSentence:
    """The Pi-0-1 sentence 'no number codes a derivation of falsum from the
    conjuncts of Gamma': forall x ~ProofFrom(x, code(/\\Gamma), code(false))."""
    g = godel_number(conjoin(gamma)).value
    b = godel_number(FALSE_FORMULA).value
    x = Var("x", "N")
    matrix = Not(proof_from_matrix(x, num(g), num(b)))
    sentence = Forall(x, matrix)
    check_formula(ARITH, sentence)
    return TaggedSentence(sentence, ComplexityTag.PI01)


from .syntax import FALSE as FALSE_FORMULA  # noqa: E402  (kept near its use)


def proof_from_matrix(x: Var, g: Term, b: Term) -> Formula:
    """ProofFrom(x, g, b): x codes a nonempty derivation, every line is
    correctly justified with hypotheses among the conjuncts of g, and the
    last line's formula is b. All quantifiers bounded by components of x."""
    n = Var("n", "N")
    i = Var("i", "N")
    m = Var("m", "N")
    l = Var("l", "N")
    f = Var("f", "N")
    j = Var("j", "N")
    last_line = _b_exists(m, x, And(
        Eq(add(m, num(1)), n),
        _b_exists(l, x, And(Atom("SeqAt", (x, m, l)),
                            _b_exists(f, x, And(_is_pair_first(l, f, j), Eq(f, b)))))))
    body = And(Atom("SeqLen", (x, n)),
               And(Not(Eq(n, num(0))),
                   And(_b_forall(i, x, Imp(Atom("Lt", (i, n)),
                                           Atom("LineOk", (x, i, g)))),
                       last_line)))
    return _b_exists(n, x, body)


def _is_pair_first(p: Var, a: Var, b: Var) -> Formula:
    """a is the first component of the Cantor pair coded by p (the second is
    existentially bounded): 2p = (a+b)(a+b+1) + 2b."""
    lhs = mul(num(2), p)
    s = add(a, b)
    rhs = add(mul(s, add(s, num(1))), mul(num(2), b))
    return _b_exists(b, p, Eq(lhs, rhs))


# ---------------------------------------------------------------------------
# Pi-0-1 shape checking (the testable form of the classification)


def is_pi01_shape(phi: Formula) -> bool:
    """Exactly one unbounded universal quantifier at the root; every
    quantifier in the matrix is of the bounded shape."""
    if not isinstance(phi, Forall):
        return False
    return _bounded_only(phi.body)


def _bounded_only(phi: Formula) -> bool:
    if isinstance(phi, (Atom, Eq)) or phi == FALSE_FORMULA:
        return True
    if isinstance(phi, Not):
        return _bounded_only(phi.body)
    if isinstance(phi, (And, Or, Imp)):
        return _bounded_only(phi.left) and _bounded_only(phi.right)
    if isinstance(phi, Exists):
        if isinstance(phi.body, And) and _is_bound_guard(phi.body.left, phi.var):
            return _bounded_only(phi.body.right)
        return False
    if isinstance(phi, Forall):
        if isinstance(phi.body, Imp) and _is_bound_guard(phi.body.left, phi.var):
            return _bounded_only(phi.body.right)
        return False
    raise TypeError(phi)


def _is_bound_guard(guard: Formula, v: Var) -> bool:
    return (isinstance(guard, Atom) and guard.pred == "Lt"
            and len(guard.args) == 2 and guard.args[0] == v
            and v not in _term_vars(guard.args[1]))


def _term_vars(t: Term) -> set[Var]:
    from .syntax import term_vars
    return term_vars(t)


# ---------------------------------------------------------------------------
# Evaluation of arithmetic formulas over the standard naturals


class ArithEvalError(Exception):
    pass


def eval_term(t: Term, env: dict[str, int]) -> int:
    if isinstance(t, Var):
        if t.name not in env:
            raise ArithEvalError(f"unbound variable {t.name}")
        return env[t.name]
    if isinstance(t, Const):
        if t.name.isdigit():
            return int(t.name)
        raise ArithEvalError(f"uninterpreted constant {t.name}")
    if t.name == "add":
        return eval_term(t.args[0], env) + eval_term(t.args[1], env)
    if t.name == "mul":
        return eval_term(t.args[0], env) * eval_term(t.args[1], env)
    raise ArithEvalError(f"uninterpreted function {t.name}")


@lru_cache(maxsize=4096)
def _decoded_lines(code: int):
    d = dec_derivation(code)
    return d


def _line_ok(d_code: int, i: int, h_code: int) -> bool:
    try:
        d = _decoded_lines(d_code)
    except DecodeError:
        return False
    if not (0 <= i < len(d.lines)):
        return False
    ln = d.lines[i]
    j = ln.just
    try:
        if isinstance(j, Hyp):
            allowed = _conjuncts(dec_formula(h_code))
            return any(alpha_eq(ln.formula, g) for g in allowed)
        if isinstance(j, Ax):
            want = axiom_instance(j.sid, dict(j.inst))
            return alpha_eq(want, ln.formula)
        if isinstance(j, MP):
            if not (0 <= j.imp < i and 0 <= j.ant < i):
                return False
            imp = d.lines[j.imp].formula
            return (isinstance(imp, Imp)
                    and alpha_eq(imp.left, d.lines[j.ant].formula)
                    and alpha_eq(imp.right, ln.formula))
        if isinstance(j, Gen):
            if not (0 <= j.prev < i) or not isinstance(ln.formula, Forall):
                return False
            if not alpha_eq(Forall(j.var, d.lines[j.prev].formula), ln.formula):
                return False
            # the generalized variable must avoid the used hypotheses
            used = _used_hyps(d, j.prev)
            return all(j.var not in free_vars(d.lines[k].formula) for k in used)
    except (ProofError, SyntaxError_, DecodeError):
        return False
    return False


def _used_hyps(d, idx, cache=None):
    cache = cache if cache is not None else {}
    if idx in cache:
        return cache[idx]
    j = d.lines[idx].just
    if isinstance(j, Hyp):
        out = {idx}
    elif isinstance(j, Ax):
        out = set()
    elif isinstance(j, MP):
        out = _used_hyps(d, j.imp, cache) | _used_hyps(d, j.ant, cache)
    else:
        out = _used_hyps(d, j.prev, cache)
    cache[idx] = out
    return out


def _conjuncts(phi: Formula) -> list[Formula]:
    if isinstance(phi, And):
        return [phi.left] + _conjuncts(phi.right)
    return [phi]


def _eval_atom(name: str, args: list[int]) -> bool:
    if name == "Lt":
        return args[0] < args[1]
    if name == "SeqLen":
        try:
            return len(dec_seq(args[0])) == args[1]
        except DecodeError:
            return False
    if name == "SeqAt":
        try:
            seq = dec_seq(args[0])
        except DecodeError:
            return False
        return 0 <= args[1] < len(seq) and seq[args[1]] == args[2]
    if name == "LineOk":
        return _line_ok(args[0], args[1], args[2])
    raise ArithEvalError(f"unknown predicate {name}")


def eval_arith(phi: Formula, env: Optional[dict[str, int]] = None) -> bool:
    """Evaluate over the standard naturals; quantifiers must be bounded."""
    env = env or {}
    if phi == FALSE_FORMULA:
        return False
    if isinstance(phi, Atom):
        return _eval_atom(phi.pred, [eval_term(a, env) for a in phi.args])
    if isinstance(phi, Eq):
        return eval_term(phi.left, env) == eval_term(phi.right, env)
    if isinstance(phi, Not):
        return not eval_arith(phi.body, env)
    if isinstance(phi, And):
        return eval_arith(phi.left, env) and eval_arith(phi.right, env)
    if isinstance(phi, Or):
        return eval_arith(phi.left, env) or eval_arith(phi.right, env)
    if isinstance(phi, Imp):
        return (not eval_arith(phi.left, env)) or eval_arith(phi.right, env)
    if isinstance(phi, Exists):
        if not (isinstance(phi.body, And) and _is_bound_guard(phi.body.left, phi.var)):
            raise ArithEvalError("unbounded existential quantifier")
        bound = eval_term(phi.body.left.args[1], env)
        return any(eval_arith(phi.body.right, {**env, phi.var.name: k})
                   for k in range(bound))
    if isinstance(phi, Forall):
        if not (isinstance(phi.body, Imp) and _is_bound_guard(phi.body.left, phi.var)):
            raise ArithEvalError("unbounded universal quantifier")
        bound = eval_term(phi.body.left.args[1], env)
        return all(eval_arith(phi.body.right, {**env, phi.var.name: k})
                   for k in range(bound))
    raise TypeError(phi)


def con_matrix_holds_at(gamma: Theory, x: int) -> bool:
    """Evaluate Con(Gamma)'s matrix at the witness candidate x (true means x
    does not refute Gamma)."""
    sentence = con_formula(gamma).formula
    assert isinstance(sentence, Forall)
    return eval_arith(sentence.body, {sentence.var.name: x})


def refutes(gamma: Theory, x: int) -> bool:
    """Independent mirror of the matrix: decode x and run the kernel
    directly against Gamma's conjuncts and conclusion falsum."""
    from .hilbert import check_derivation_raw
    try:
        d = dec_derivation(x)
        allowed = tuple(_conjuncts(conjoin(gamma)))
        sig = infer_signature([ln.formula for ln in d.lines] + list(allowed))
        return check_derivation_raw(d, sig, allowed, FALSE_FORMULA)
    except (DecodeError, SyntaxError_, ValueError):
        return False


# ---------------------------------------------------------------------------
# The reduction chain: halting -> validity -> consistency-of-negation


def pi01_to_con(t: TuringMachine, n: int) -> GodelCode:
    """g(n) = code of ~phi_{t,n}: in CON (negation unprovable, equivalently
    phi_{t,n} underivable) iff t does not halt on n."""
    phi = encode_validity(t, n)
    return godel_number(Not(phi))
