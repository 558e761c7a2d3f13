"""Translation of kernel-checked Hilbert derivations into sequent proofs.

A derivation of phi from Gamma becomes a sequent proof of

    Gamma, E  =>  phi

where E collects the equality-axiom instances the derivation uses (equality
is axiomatic in this repository, not a sequent rule, so its instances ride
along as antecedent formulas). Logical axiom schemes are re-proved by the
bounded cut-free search; modus ponens becomes a cut, generalization a
right-forall with a fresh eigenvariable. The image always re-checks.
"""
from __future__ import annotations

from .hilbert import Ax, Derivation, Gen, Hyp, MP
from .sequent import Sequent, SequentProof, fresh_var, subst_proof, weaken_to
from .syntax import (Forall, Formula, Imp, Theory, Var, alpha_key, free_vars,
                     substitute)


def _search_closed(phi: Formula):
    from .search import _Budget, _Search
    from .syntax import Signature, _used_names
    searcher = _Search(Signature((), ()), _Budget(500000))
    searcher.names |= _used_names(phi)
    for depth in range(1, 60):
        out = searcher.prove((), (phi,), depth)
        if out is not None:
            return out
    return None


def derivation_to_sequent(d: Derivation, gamma: Theory) -> SequentProof:
    """Sequent proof of  Gamma, E => conclusion  mirroring the derivation."""
    eq_instances: list[Formula] = []
    seen = set()
    for ln in d.lines:
        if isinstance(ln.just, Ax) and ln.just.sid in ("eq-refl", "eq-sub"):
            k = alpha_key(ln.formula)
            if k not in seen:
                seen.add(k)
                eq_instances.append(ln.formula)
    hyps = tuple(gamma.sentences) + tuple(eq_instances)

    scheme_cache: dict = {}
    proofs: list[SequentProof] = []
    for ln in d.lines:
        j = ln.just
        phi = ln.formula
        if isinstance(j, Hyp) or (isinstance(j, Ax) and j.sid in ("eq-refl", "eq-sub")):
            p = SequentProof("ax", Sequent(hyps, (phi,)), principal=_find(hyps, phi))
        elif isinstance(j, Ax):
            k = alpha_key(phi)
            if k not in scheme_cache:
                inner = _search_closed(phi)
                if inner is None:
                    raise ValueError("axiom scheme instance did not re-prove")
                scheme_cache[k] = inner
            p = weaken_to(scheme_cache[k], hyps, (phi,))
        elif isinstance(j, MP):
            imp_formula = d.lines[j.imp].formula
            assert isinstance(imp_formula, Imp)
            chi = imp_formula.right
            p1 = weaken_to(proofs[j.imp], hyps, (chi, imp_formula))
            limp_l = weaken_to(proofs[j.ant], hyps, (chi, imp_formula.left))
            limp_r = SequentProof("ax", Sequent(hyps + (chi,), (chi,)), principal=chi)
            p2 = SequentProof("limp", Sequent(hyps + (imp_formula,), (chi,)),
                              (limp_l, limp_r), principal=imp_formula)
            p = SequentProof("cut", Sequent(hyps, (chi,)), (p1, p2),
                             principal=imp_formula)
        else:
            assert isinstance(j, Gen)
            assert isinstance(phi, Forall)
            x = j.var
            if any(x in free_vars(h) for h in hyps):
                raise ValueError("generalized variable free in a hypothesis")
            from .syntax import _used_names
            names: set[str] = set()
            for h in hyps + (phi,):
                names |= _used_names(h)
            a = fresh_var(x.sort, names)
            prev = subst_proof(proofs[j.prev], x, a)
            inst = substitute(phi.body, phi.var, a)
            prem = weaken_to(prev, hyps, (inst,))
            p = SequentProof("rall", Sequent(hyps, (phi,)), (prem,),
                             principal=phi, eigen=a)
        proofs.append(p)
    return proofs[-1]


def _find(fs: tuple[Formula, ...], phi: Formula) -> Formula:
    k = alpha_key(phi)
    for f in fs:
        if alpha_key(f) == k:
            return f
    raise ValueError("formula not among hypotheses")
