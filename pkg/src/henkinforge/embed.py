"""Verified embedding of sequent proofs into Hilbert derivations.

A proof of Gamma => Delta becomes a derivation of the right-nested
disjunction of Delta from hypotheses Gamma. Each rule is compiled through
flat implication lemmas (disjunction conversions built by or-elimination
folds), so derivation size stays roughly linear in the sequent proof; the
output always re-checks under the kernel, which is what makes the two proof
systems mutually checkable.
"""
from __future__ import annotations

from typing import Callable, Optional

from .hilbert import Prover, _SubProver
from .sequent import SequentProof, remove_one
from .syntax import (FALSE, Formula, Or, alpha_eq, alpha_key, print_formula,
                     substitute)


class EmbedError(Exception):
    pass


def disj(delta: tuple[Formula, ...]) -> Formula:
    if not delta:
        return FALSE
    out = delta[-1]
    for f in reversed(delta[:-1]):
        out = Or(f, out)
    return out


class Env:
    """Formula-class -> (prover, handle) map, lifted into descendant provers."""

    def __init__(self, entries: Optional[dict] = None):
        self.entries = dict(entries or {})

    def child(self) -> "Env":
        return Env(self.entries)

    def set(self, phi: Formula, prover: Prover, handle: int) -> None:
        self.entries[alpha_key(phi)] = (prover, handle)

    def has(self, phi: Formula) -> bool:
        return alpha_key(phi) in self.entries

    def get(self, phi: Formula, prover: Prover) -> int:
        try:
            src, h = self.entries[alpha_key(phi)]
        except KeyError:
            raise EmbedError(f"no hypothesis handle for {print_formula(phi)}")
        return _lift(src, h, prover)


def _lift(src: Prover, h: int, target: Prover) -> int:
    if src is target:
        return h
    if not isinstance(target, _SubProver):
        raise EmbedError("handle lift escaped the prover chain")
    return target.use(_lift(src, h, target.parent))


def _position(lst: tuple[Formula, ...], phi: Formula) -> int:
    k = alpha_key(phi)
    for i, f in enumerate(lst):
        if alpha_key(f) == k:
            return i
    raise EmbedError(f"{print_formula(phi)} not in disjunction list")


def _memo(pr: Prover) -> dict:
    m = getattr(pr, "_embed_memo", None)
    if m is None:
        m = {}
        pr._embed_memo = m
    return m


def imp_to_disj(pr: Prover, lst: tuple[Formula, ...], i: int) -> int:
    """Handle of  lst[i] -> disj(lst)  (or-introduction composition)."""
    key = ("inj", tuple(alpha_key(f) for f in lst), i)
    memo = _memo(pr)
    if key in memo:
        return memo[key]
    if len(lst) == 1:
        out = pr.imp_refl(lst[0])
    elif i == 0:
        out = pr.ax("or-i1", A=lst[0], B=disj(lst[1:]))
    else:
        inner = imp_to_disj(pr, lst[1:], i - 1)
        out = pr.imp_trans(inner, pr.ax("or-i2", A=lst[0], B=disj(lst[1:])))
    memo[key] = out
    return out


def inject(pr: Prover, lst: tuple[Formula, ...], i: int, h: int) -> int:
    if len(lst) == 1:
        return h
    return pr.mp(imp_to_disj(pr, lst, i), h)


def leaf_via(pr: Prover, f: Formula, build) -> int:
    """Handle of  f -> goal  where build(sub, h_f) proves the goal from f."""
    with pr.suppose(f) as sub:
        return sub.discharge(build(sub, sub.assumption_handle))


LeafFn = Callable[[Prover, int, Formula], Optional[int]]


def convert_lemma(pr: Prover, src: tuple[Formula, ...],
                  dst: tuple[Formula, ...],
                  leaf: Optional[LeafFn] = None) -> int:
    """Handle of  disj(src) -> disj(dst). The default leaf injects by class
    position; a custom leaf may supply  src[i] -> disj(dst)  handles."""
    goal = disj(dst)
    imps = []
    for i, f in enumerate(src):
        h = leaf(pr, i, f) if leaf is not None else None
        if h is None:
            h = imp_to_disj(pr, dst, _position(dst, f))
        imps.append(h)

    def fold(rest: tuple[Formula, ...], rest_imps: list[int]) -> int:
        if len(rest) == 1:
            return rest_imps[0]
        tail = fold(rest[1:], rest_imps[1:])
        rule = pr.ax("or-e", A=rest[0], B=disj(rest[1:]), C=goal)
        return pr.mps(rule, rest_imps[0], tail)

    return fold(src, imps)


def convert(pr: Prover, h: int, src: tuple[Formula, ...],
            dst: tuple[Formula, ...], leaf: Optional[LeafFn] = None) -> int:
    """disj(src) handle -> disj(dst) handle."""
    if not src:
        return pr.efq(h, disj(dst)) if dst else h
    if leaf is None and tuple(alpha_key(f) for f in src) == tuple(alpha_key(f) for f in dst):
        return h
    return pr.mp(convert_lemma(pr, src, dst, leaf), h)


def _premise_lemma(pr: Prover, env: Env, hyp: Formula, prem: SequentProof) -> int:
    """Handle of  hyp -> disj(prem.succ): the premise embedded once under a
    single discharged assumption."""
    with pr.suppose(hyp) as sub:
        env2 = env.child()
        env2.set(hyp, sub, sub.assumption_handle)
        return sub.discharge(embed_node(prem, sub, env2))


def try_direct(node: SequentProof, pr: Prover, env: Env,
               target: Formula) -> Optional[int]:
    """Forward reading of the proof: a handle proving `target` itself, with
    no hypothetical contexts. Succeeds on cut-chains of definite facts (the
    saturation tactic's output) and fails fast on genuinely classical rules,
    where the general embedding takes over."""
    if env.has(target):
        return env.get(target, pr)
    rule = node.rule
    phi = node.principal
    kt = alpha_key(target)

    if rule in ("wl", "cl", "wr", "cr"):
        return try_direct(node.premises[0], pr, env, target)
    if rule == "lfalse":
        if env.has(FALSE):
            return pr.efq(env.get(FALSE, pr), target)
        return None
    if rule == "land":
        if not env.has(phi):
            return None
        h_and = env.get(phi, pr)
        env2 = env.child()
        env2.set(phi.left, pr, pr.and_left(h_and))
        env2.set(phi.right, pr, pr.and_right(h_and))
        return try_direct(node.premises[0], pr, env2, target)
    if rule == "lall":
        if not env.has(phi):
            return None
        inst = substitute(phi.body, phi.var, node.term)
        env2 = env.child()
        env2.set(inst, pr, pr.forall_elim(env.get(phi, pr), node.term))
        return try_direct(node.premises[0], pr, env2, target)
    if rule == "rand":
        if alpha_key(phi) == kt:
            h_a = try_direct(node.premises[0], pr, env, phi.left)
            if h_a is None:
                return None
            h_b = try_direct(node.premises[1], pr, env, phi.right)
            if h_b is None:
                return None
            return pr.and_intro(h_a, h_b)
        h = try_direct(node.premises[0], pr, env, target)
        if h is not None:
            return h
        return try_direct(node.premises[1], pr, env, target)
    if rule == "ror":
        if alpha_key(phi) == kt:
            h = try_direct(node.premises[0], pr, env, phi.left)
            if h is not None:
                return pr.or_left(h, phi.right)
            h = try_direct(node.premises[0], pr, env, phi.right)
            if h is not None:
                return pr.or_right(h, phi.left)
            return None
        return try_direct(node.premises[0], pr, env, target)
    if rule == "rex":
        if alpha_key(phi) == kt:
            inst = substitute(phi.body, phi.var, node.term)
            h = try_direct(node.premises[0], pr, env, inst)
            if h is None:
                return None
            return pr.mp(pr.ax("ex-i", A=phi.body, x=phi.var, t=node.term), h)
        return try_direct(node.premises[0], pr, env, target)
    if rule == "limp":
        if not env.has(phi):
            return None
        h = try_direct(node.premises[0], pr, env, target)
        if h is not None:
            return h
        h_a = try_direct(node.premises[0], pr, env, phi.left)
        if h_a is None:
            return None
        h_psi = pr.mp(env.get(phi, pr), h_a)
        env2 = env.child()
        env2.set(phi.right, pr, h_psi)
        return try_direct(node.premises[1], pr, env2, target)
    if rule == "lnot":
        if not env.has(phi):
            return None
        h = try_direct(node.premises[0], pr, env, target)
        if h is not None:
            return h
        h_b = try_direct(node.premises[0], pr, env, phi.body)
        if h_b is None:
            return None
        return pr.efq(pr.contradiction(env.get(phi, pr), h_b), target)
    if rule == "cut":
        h = try_direct(node.premises[0], pr, env, target)
        if h is not None:
            return h
        h_phi = try_direct(node.premises[0], pr, env, phi)
        if h_phi is None:
            return None
        env2 = env.child()
        env2.set(phi, pr, h_phi)
        return try_direct(node.premises[1], pr, env2, target)
    return None


def embed_node(node: SequentProof, pr: Prover, env: Env) -> int:
    """Handle of disj(node.conclusion.succ), derived from env-covered ante.

    Handles stand for formulas (alpha-classes), not occurrences, so a
    disjunct matching an active class is always safe to treat as active.
    """
    succ = node.conclusion.succ
    rule = node.rule

    for i, f in enumerate(succ):
        h = try_direct(node, pr, env, f)
        if h is not None:
            return inject(pr, succ, i, h)

    if rule == "ax":
        return inject(pr, succ, _position(succ, node.principal),
                      env.get(node.principal, pr))

    if rule == "lfalse":
        h = env.get(FALSE, pr)
        return pr.efq(h, disj(succ)) if succ else h

    if rule in ("wl", "cl"):
        return embed_node(node.premises[0], pr, env)

    if rule in ("wr", "cr"):
        prem = node.premises[0]
        h = embed_node(prem, pr, env)
        return convert(pr, h, prem.conclusion.succ, succ)

    if rule == "land":
        phi = node.principal
        h_and = env.get(phi, pr)
        env2 = env.child()
        env2.set(phi.left, pr, pr.and_left(h_and))
        env2.set(phi.right, pr, pr.and_right(h_and))
        return embed_node(node.premises[0], pr, env2)

    if rule == "rand":
        phi = node.principal
        p1, p2 = node.premises
        h1 = embed_node(p1, pr, env)
        h2 = embed_node(p2, pr, env)
        lst1 = p1.conclusion.succ
        lst2 = p2.conclusion.succ
        kl, kr = alpha_key(phi.left), alpha_key(phi.right)

        def leaf1(p, i, f):
            if alpha_key(f) != kl:
                return None

            def build(sub, h_f):
                def leaf2(p_, j, g):
                    if alpha_key(g) != kr:
                        return None

                    def build2(sub2, h_g):
                        h_both = sub2.and_intro(_lift(sub, h_f, sub2), h_g)
                        return inject(sub2, succ, _position(succ, phi), h_both)

                    return leaf_via(p_, g, build2)

                return convert(sub, _lift(pr, h2, sub), lst2, succ, leaf2)

            return leaf_via(p, f, build)

        return convert(pr, h1, lst1, succ, leaf1)

    if rule == "lor":
        phi = node.principal
        p1, p2 = node.premises
        l1 = _premise_lemma(pr, env, phi.left, p1)
        l1 = pr.imp_trans(l1, convert_lemma(pr, p1.conclusion.succ, succ)) \
            if tuple(map(alpha_key, p1.conclusion.succ)) != tuple(map(alpha_key, succ)) else l1
        l2 = _premise_lemma(pr, env, phi.right, p2)
        l2 = pr.imp_trans(l2, convert_lemma(pr, p2.conclusion.succ, succ)) \
            if tuple(map(alpha_key, p2.conclusion.succ)) != tuple(map(alpha_key, succ)) else l2
        rule_ax = pr.ax("or-e", A=phi.left, B=phi.right, C=disj(succ))
        return pr.mps(rule_ax, l1, l2, env.get(phi, pr))

    if rule == "ror":
        phi = node.principal
        prem = node.premises[0]
        h = embed_node(prem, pr, env)
        kl, kr = alpha_key(phi.left), alpha_key(phi.right)
        pos = _position(succ, phi)

        def leaf(p, i, f):
            if alpha_key(f) == kl:
                return p.imp_trans(p.ax("or-i1", A=phi.left, B=phi.right),
                                   imp_to_disj(p, succ, pos))
            if alpha_key(f) == kr:
                return p.imp_trans(p.ax("or-i2", A=phi.left, B=phi.right),
                                   imp_to_disj(p, succ, pos))
            return None

        return convert(pr, h, prem.conclusion.succ, succ, leaf)

    if rule == "limp":
        phi = node.principal
        p1, p2 = node.premises
        h1 = embed_node(p1, pr, env)
        lemma2 = _premise_lemma(pr, env, phi.right, p2)
        lst2 = p2.conclusion.succ
        kl = alpha_key(phi.left)

        def leaf(p, i, f):
            if alpha_key(f) != kl:
                return None

            def build(sub, h_f):
                h_psi = sub.mp(env.get(phi, sub), h_f)
                h_d2 = sub.mp(_lift(pr, lemma2, sub), h_psi)
                return convert(sub, h_d2, lst2, succ)

            return leaf_via(p, f, build)

        return convert(pr, h1, p1.conclusion.succ, succ, leaf)

    if rule == "rimp":
        phi = node.principal
        prem = node.premises[0]

        if len(succ) == 1 and len(prem.conclusion.succ) == 1:
            with pr.suppose(phi.left) as sub:
                env2 = env.child()
                env2.set(phi.left, sub, sub.assumption_handle)
                return sub.discharge(embed_node(prem, sub, env2))

        lemma = _premise_lemma(pr, env, phi.left, prem)
        lst = prem.conclusion.succ
        pos_phi = _position(succ, phi)
        kr = alpha_key(phi.right)

        def pos_branch(sub):
            h = sub.mp(_lift(pr, lemma, sub), sub.assumption_handle)

            def leaf(p, i, f):
                if alpha_key(f) != kr:
                    return None
                k_ax = p.ax("k", A=phi.right, B=phi.left)
                return p.imp_trans(k_ax, imp_to_disj(p, succ, pos_phi))

            return convert(sub, h, lst, succ, leaf)

        def neg_branch(sub):
            with sub.suppose(phi.left) as inner:
                h_bot = inner.contradiction(inner.use(sub.assumption_handle),
                                            inner.assumption_handle)
                h_imp = inner.discharge(inner.efq(h_bot, phi.right))
            return inject(sub, succ, pos_phi, h_imp)

        return pr.tnd_cases(phi.left, pos_branch, neg_branch)

    if rule == "lnot":
        phi = node.principal
        prem = node.premises[0]
        h = embed_node(prem, pr, env)
        kb = alpha_key(phi.body)

        def leaf(p, i, f):
            if alpha_key(f) != kb:
                return None

            def build(sub, h_f):
                h_bot = sub.contradiction(env.get(phi, sub), h_f)
                return sub.efq(h_bot, disj(succ)) if succ else h_bot

            return leaf_via(p, f, build)

        return convert(pr, h, prem.conclusion.succ, succ, leaf)

    if rule == "rnot":
        phi = node.principal
        prem = node.premises[0]
        lemma = _premise_lemma(pr, env, phi.body, prem)
        lst = prem.conclusion.succ
        pos_phi = _position(succ, phi)

        def pos_branch(sub):
            h = sub.mp(_lift(pr, lemma, sub), sub.assumption_handle)
            return convert(sub, h, lst, succ)

        def neg_branch(sub):
            return inject(sub, succ, pos_phi, sub.assumption_handle)

        return pr.tnd_cases(phi.body, pos_branch, neg_branch)

    if rule == "lall":
        phi = node.principal
        inst = substitute(phi.body, phi.var, node.term)
        env2 = env.child()
        env2.set(inst, pr, pr.forall_elim(env.get(phi, pr), node.term))
        return embed_node(node.premises[0], pr, env2)

    if rule == "rall":
        phi = node.principal
        a = node.eigen
        prem = node.premises[0]
        inst = substitute(phi.body, phi.var, a)
        base = remove_one(succ, phi)
        h = embed_node(prem, pr, env)
        lst = prem.conclusion.succ
        pos_phi = _position(succ, phi)
        ki = alpha_key(inst)

        if not base:
            h_inst = convert(pr, h, lst, (inst,))
            return inject(pr, succ, pos_phi, pr.gen(h_inst, a))

        chi = disj(base)

        def pos_branch(sub):
            return convert(sub, sub.assumption_handle, base, succ)

        def neg_branch(sub):
            def leaf(p, i, f):
                if alpha_key(f) == ki:
                    return None  # default injection into the singleton target

                def build(sub2, h_f):
                    h_chi = inject(sub2, base, _position(base, f), h_f)
                    h_bot = sub2.contradiction(_lift(sub, sub.assumption_handle, sub2),
                                               h_chi)
                    return sub2.efq(h_bot, inst)

                return leaf_via(p, f, build)

            h_inst = convert(sub, _lift(pr, h, sub), lst, (inst,), leaf)
            return inject(sub, succ, pos_phi, sub.gen(h_inst, a))

        return pr.tnd_cases(chi, pos_branch, neg_branch)

    if rule == "lex":
        phi = node.principal
        a = node.eigen
        prem = node.premises[0]

        def body(sub, h_inst):
            inst = substitute(phi.body, phi.var, a)
            env2 = env.child()
            env2.set(inst, sub, h_inst)
            h = embed_node(prem, sub, env2)
            return convert(sub, h, prem.conclusion.succ, succ)

        return pr.exists_elim(env.get(phi, pr), a, body)

    if rule == "rex":
        phi = node.principal
        prem = node.premises[0]
        inst = substitute(phi.body, phi.var, node.term)
        h = embed_node(prem, pr, env)
        ki = alpha_key(inst)
        pos_phi = _position(succ, phi)

        def leaf(p, i, f):
            if alpha_key(f) != ki:
                return None
            rule_ax = p.ax("ex-i", A=phi.body, x=phi.var, t=node.term)
            return p.imp_trans(rule_ax, imp_to_disj(p, succ, pos_phi))

        return convert(pr, h, prem.conclusion.succ, succ, leaf)

    if rule == "cut":
        phi = node.principal
        p1, p2 = node.premises
        h1 = embed_node(p1, pr, env)
        lemma2 = _premise_lemma(pr, env, phi, p2)
        lst2 = p2.conclusion.succ
        kp = alpha_key(phi)

        def leaf(p, i, f):
            if alpha_key(f) != kp:
                return None

            def build(sub, h_f):
                h_d2 = sub.mp(_lift(pr, lemma2, sub), h_f)
                return convert(sub, h_d2, lst2, succ)

            return leaf_via(p, f, build)

        return convert(pr, h1, p1.conclusion.succ, succ, leaf)

    raise EmbedError(f"no embedding for rule {rule!r}")


def sequent_to_derivation(proof: SequentProof, hypotheses: tuple[Formula, ...]):
    """Hilbert derivation of disj(succ) from the given hypotheses; the proof's
    antecedent classes must be covered by the hypotheses."""
    pr = Prover()
    env = Env()
    for g in hypotheses:
        env.set(g, pr, pr.hyp(g))
    for f in proof.conclusion.ante:
        if not env.has(f):
            raise EmbedError(f"antecedent {print_formula(f)} not among hypotheses")
    h = embed_node(proof, pr, env)
    goal = disj(proof.conclusion.succ)
    if not alpha_eq(pr.formula_of(h), goal):
        raise EmbedError("embedding produced the wrong conclusion")
    return pr.derivation()
