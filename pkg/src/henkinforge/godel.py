"""Goedel numbering of terms, formulas and derivations.

Frozen scheme (normative, see docs/godel_encoding.md):

  pair(a, b)   = (a + b)(a + b + 1)/2 + b          (Cantor pairing)
  seq(e1..ek)  = little-endian base-16 digit stream; each element is written
                 in base 15 (digits 0..14, least significant first) and
                 terminated by the separator digit 15; seq() = 0
  str(s)       = seq of Unicode code points
  node         = seq(tag, component...)            (terms, formulas,
                                                    justifications)
  line         = pair(formula, justification)
  derivation   = seq of line codes

Syntax nodes use the linear seq coding rather than nested pairing: pairing
doubles code length per nesting level, which is unusable past toy depth.
The pair primitive carries derivation lines (so the arithmetized proof
matrix can destructure them by a quadratic equation) and modus-ponens
payloads. Node tags are listed next to the encoders below; regression
constants pin the scheme bit-exactly, and decode(encode(x)) = x on
everything encodable."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional, Union

from .hilbert import (Ax, Derivation, Gen, Hyp, Justification, Line, MP,
                      MetaValue, SCHEMES)
from .syntax import (And, App, Atom, Const, Eq, Exists, FALSE, Forall, Formula,
                     Imp, Not, Or, Signature, SyntaxError_, Term, Var)


class DecodeError(Exception):
    pass


@dataclass(frozen=True)
class GodelCode:
    value: int
    kind: str  # "formula" | "derivation" | "term"

    def __int__(self) -> int:
        return self.value


# ---------------------------------------------------------------------------
# Primitives


def pair(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("pair requires naturals")
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(n: int) -> tuple[int, int]:
    if n < 0:
        raise DecodeError("negative code")
    w = (isqrt(8 * n + 1) - 1) // 2
    t = w * (w + 1) // 2
    b = n - t
    return w - b, b


_SEP = 15
_BASE = 16


def enc_seq(items: list[int]) -> int:
    digits: list[int] = []
    for x in items:
        if x < 0:
            raise ValueError("enc_seq requires naturals")
        while x > 0:
            digits.append(x % 15)
            x //= 15
        digits.append(_SEP)
    code = 0
    for d in reversed(digits):
        code = code * _BASE + d
    return code


def dec_seq(code: int) -> list[int]:
    if code < 0:
        raise DecodeError("negative code")
    if code == 0:
        return []
    digits: list[int] = []
    n = code
    while n > 0:
        digits.append(n % _BASE)
        n //= _BASE
    if digits[-1] != _SEP:
        raise DecodeError("sequence code does not end with a separator")
    out: list[int] = []
    cur = 0
    mult = 1
    for d in digits:
        if d == _SEP:
            out.append(cur)
            cur = 0
            mult = 1
        else:
            cur += d * mult
            mult *= 15
    return out


def enc_str(s: str) -> int:
    return enc_seq([ord(c) for c in s])


def dec_str(code: int) -> str:
    try:
        return "".join(chr(c) for c in dec_seq(code))
    except (ValueError, OverflowError) as e:
        raise DecodeError(str(e))


# ---------------------------------------------------------------------------
# Terms (tags: 0 var, 1 const, 2 app)


def enc_term(t: Term) -> int:
    if isinstance(t, Var):
        return enc_seq([0, enc_str(t.name), enc_str(t.sort)])
    if isinstance(t, Const):
        return enc_seq([1, enc_str(t.name), enc_str(t.sort)])
    return enc_seq([2, enc_str(t.name), enc_str(t.sort),
                    enc_seq([enc_term(a) for a in t.args])])


def dec_term(code: int) -> Term:
    parts = dec_seq(code)
    if not parts:
        raise DecodeError("empty term code")
    tag = parts[0]
    if tag in (0, 1):
        if len(parts) != 3:
            raise DecodeError("bad var/const payload")
        name, sort = dec_str(parts[1]), dec_str(parts[2])
        if not name or not sort:
            raise DecodeError("empty name or sort")
        return Var(name, sort) if tag == 0 else Const(name, sort)
    if tag == 2:
        if len(parts) != 4:
            raise DecodeError("bad app payload")
        name, sort = dec_str(parts[1]), dec_str(parts[2])
        args = tuple(dec_term(c) for c in dec_seq(parts[3]))
        if not name or not sort:
            raise DecodeError("empty name or sort")
        return App(name, args, sort)
    raise DecodeError(f"unknown term tag {tag}")


# ---------------------------------------------------------------------------
# Formulas (tags: 0 false, 1 atom, 2 eq, 3 not, 4 and, 5 or, 6 imp,
#           7 forall, 8 exists)


def enc_formula(phi: Formula) -> int:
    if isinstance(phi, type(FALSE)):
        return enc_seq([0])
    if isinstance(phi, Atom):
        return enc_seq([1, enc_str(phi.pred),
                        enc_seq([enc_term(a) for a in phi.args])])
    if isinstance(phi, Eq):
        return enc_seq([2, enc_term(phi.left), enc_term(phi.right)])
    if isinstance(phi, Not):
        return enc_seq([3, enc_formula(phi.body)])
    if isinstance(phi, And):
        return enc_seq([4, enc_formula(phi.left), enc_formula(phi.right)])
    if isinstance(phi, Or):
        return enc_seq([5, enc_formula(phi.left), enc_formula(phi.right)])
    if isinstance(phi, Imp):
        return enc_seq([6, enc_formula(phi.left), enc_formula(phi.right)])
    if isinstance(phi, Forall):
        return enc_seq([7, enc_term(phi.var), enc_formula(phi.body)])
    if isinstance(phi, Exists):
        return enc_seq([8, enc_term(phi.var), enc_formula(phi.body)])
    raise TypeError(phi)


def dec_formula(code: int) -> Formula:
    parts = dec_seq(code)
    if not parts:
        raise DecodeError("empty formula code")
    tag = parts[0]
    if tag == 0:
        if len(parts) != 1:
            raise DecodeError("false carries no payload")
        return FALSE
    if tag == 1:
        if len(parts) != 3:
            raise DecodeError("bad atom payload")
        pred = dec_str(parts[1])
        if not pred:
            raise DecodeError("empty predicate name")
        return Atom(pred, tuple(dec_term(c) for c in dec_seq(parts[2])))
    if tag == 2:
        if len(parts) != 3:
            raise DecodeError("bad eq payload")
        return Eq(dec_term(parts[1]), dec_term(parts[2]))
    if tag == 3:
        if len(parts) != 2:
            raise DecodeError("bad negation payload")
        return Not(dec_formula(parts[1]))
    if tag in (4, 5, 6):
        if len(parts) != 3:
            raise DecodeError("bad binary payload")
        cls = {4: And, 5: Or, 6: Imp}[tag]
        return cls(dec_formula(parts[1]), dec_formula(parts[2]))
    if tag in (7, 8):
        if len(parts) != 3:
            raise DecodeError("bad quantifier payload")
        v = dec_term(parts[1])
        if not isinstance(v, Var):
            raise DecodeError("quantifier binder is not a variable")
        cls = Forall if tag == 7 else Exists
        return cls(v, dec_formula(parts[2]))
    raise DecodeError(f"unknown formula tag {tag}")


# ---------------------------------------------------------------------------
# Justifications and derivations
# just tags: 0 hyp, 1 ax, 2 mp, 3 gen; metavalue tags: 0 formula, 1 term


def _enc_meta(v: MetaValue) -> int:
    if isinstance(v, (type(FALSE), Atom, Eq, Not, And, Or, Imp, Forall, Exists)):
        return enc_seq([0, enc_formula(v)])
    return enc_seq([1, enc_term(v)])


def _dec_meta(code: int) -> MetaValue:
    parts = dec_seq(code)
    if len(parts) != 2:
        raise DecodeError("bad metavalue payload")
    if parts[0] == 0:
        return dec_formula(parts[1])
    if parts[0] == 1:
        return dec_term(parts[1])
    raise DecodeError(f"unknown metavalue tag {parts[0]}")


def enc_just(j: Justification) -> int:
    if isinstance(j, Hyp):
        return enc_seq([0])
    if isinstance(j, Ax):
        entries = [enc_seq([enc_str(k), _enc_meta(v)]) for k, v in j.inst]
        return enc_seq([1, enc_str(j.sid), enc_seq(entries)])
    if isinstance(j, MP):
        return enc_seq([2, pair(j.imp, j.ant)])
    return enc_seq([3, j.prev, enc_term(j.var)])


def dec_just(code: int) -> Justification:
    parts = dec_seq(code)
    if not parts:
        raise DecodeError("empty justification code")
    tag = parts[0]
    if tag == 0:
        if len(parts) != 1:
            raise DecodeError("hyp carries no payload")
        return Hyp()
    if tag == 1:
        if len(parts) != 3:
            raise DecodeError("bad ax payload")
        sid = dec_str(parts[1])
        if sid not in SCHEMES:
            raise DecodeError(f"unknown scheme {sid!r}")
        inst = []
        for e in dec_seq(parts[2]):
            kv = dec_seq(e)
            if len(kv) != 2:
                raise DecodeError("bad instantiation entry")
            inst.append((dec_str(kv[0]), _dec_meta(kv[1])))
        return Ax(sid, tuple(inst))
    if tag == 2:
        if len(parts) != 2:
            raise DecodeError("bad mp payload")
        i, j = unpair(parts[1])
        return MP(i, j)
    if tag == 3:
        if len(parts) != 3:
            raise DecodeError("bad gen payload")
        v = dec_term(parts[2])
        if not isinstance(v, Var):
            raise DecodeError("gen variable is not a variable")
        return Gen(parts[1], v)
    raise DecodeError(f"unknown justification tag {tag}")


def enc_derivation(d: Derivation) -> int:
    return enc_seq([pair(enc_formula(ln.formula), enc_just(ln.just))
                    for ln in d.lines])


def dec_derivation(code: int) -> Derivation:
    lines = []
    for c in dec_seq(code):
        f, j = unpair(c)
        lines.append(Line(dec_formula(f), dec_just(j)))
    if not lines:
        raise DecodeError("0 codes no derivation")
    return Derivation(tuple(lines))


# ---------------------------------------------------------------------------
# Public surface


def godel_number(x: Union[Formula, Derivation, Term]) -> GodelCode:
    if isinstance(x, Derivation):
        return GodelCode(enc_derivation(x), "derivation")
    if isinstance(x, (Var, Const, App)):
        return GodelCode(enc_term(x), "term")
    return GodelCode(enc_formula(x), "formula")


def decode(code: GodelCode) -> Union[Formula, Derivation, Term]:
    if code.kind == "derivation":
        return dec_derivation(code.value)
    if code.kind == "term":
        return dec_term(code.value)
    return dec_formula(code.value)


def infer_signature(formulas: list[Formula]) -> Signature:
    """Reconstruct a signature from decoded syntax; usage conflicts raise."""
    sorts: dict[str, None] = {}
    preds: dict[str, tuple[str, ...]] = {}
    funs: dict[str, tuple[tuple[str, ...], str]] = {}
    consts: dict[str, str] = {}

    def tgo(t: Term) -> None:
        sorts.setdefault(t.sort, None)
        if isinstance(t, Const):
            if consts.setdefault(t.name, t.sort) != t.sort:
                raise DecodeError(f"constant {t.name} used at two sorts")
        elif isinstance(t, App):
            sig = (tuple(a.sort for a in t.args), t.sort)
            if funs.setdefault(t.name, sig) != sig:
                raise DecodeError(f"function {t.name} used inconsistently")
            for a in t.args:
                tgo(a)

    def go(f: Formula) -> None:
        if isinstance(f, Atom):
            ar = tuple(a.sort for a in f.args)
            if preds.setdefault(f.pred, ar) != ar:
                raise DecodeError(f"predicate {f.pred} used inconsistently")
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
            sorts.setdefault(f.var.sort, None)
            go(f.body)

    for f in formulas:
        go(f)
    return Signature(tuple(sorts), tuple(preds.items()),
                     tuple((k, v[0], v[1]) for k, v in funs.items()),
                     tuple(consts.items()))


def _conjuncts(phi: Formula) -> list[Formula]:
    if isinstance(phi, And):
        return [phi.left] + _conjuncts(phi.right)
    return [phi]


def proof_check_code(m: Union[int, GodelCode], n: Union[int, GodelCode],
                     hyps: Optional[Union[int, GodelCode]] = None) -> bool:
    """The executable proof predicate on codes: true iff m codes a derivation
    of the formula coded by n, with hypotheses among the conjuncts of the
    formula coded by hyps (no hypotheses allowed when hyps is None).

    Garbage codes yield False, never an exception."""
    from .hilbert import check_derivation_raw
    mv = m.value if isinstance(m, GodelCode) else m
    nv = n.value if isinstance(n, GodelCode) else n
    hv = hyps.value if isinstance(hyps, GodelCode) else hyps
    try:
        d = dec_derivation(mv)
        phi = dec_formula(nv)
        allowed = () if hv is None else tuple(_conjuncts(dec_formula(hv)))
        sig = infer_signature([ln.formula for ln in d.lines] + [phi] + list(allowed))
        return check_derivation_raw(d, sig, allowed, phi)
    except (DecodeError, SyntaxError_, ValueError):
        return False
