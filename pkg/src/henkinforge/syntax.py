"""Many-sorted first-order syntax: signatures, terms, formulas, parsing, printing."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union


class SyntaxError_(Exception):
    """Raised for lexical errors, sort mismatches and unknown symbols.

    Carries a source position (offset into the input text) when raised by the
    parser; position is None for programmatic construction errors.
    """

    def __init__(self, message: str, pos: Optional[int] = None):
        super().__init__(message if pos is None else f"{message} (at position {pos})")
        self.pos = pos


class SortError(SyntaxError_):
    pass


# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class Signature:
    """Declares sorts, predicates, functions and constants of a language.

    `numeral_sort`, when set, lets any all-digit name act as a constant of
    that sort (used by the arithmetic language, whose numerals cannot be
    declared one by one).
    """

    sorts: tuple[str, ...]
    predicates: tuple[tuple[str, tuple[str, ...]], ...] = ()
    functions: tuple[tuple[str, tuple[str, ...], str], ...] = ()
    constants: tuple[tuple[str, str], ...] = ()
    numeral_sort: Optional[str] = None

    def __post_init__(self):
        names: list[str] = []
        names += [p for p, _ in self.predicates]
        if len(set(p for p, _ in self.predicates)) != len(self.predicates):
            raise SyntaxError_("duplicate predicate name")
        if len(set(f for f, _, _ in self.functions)) != len(self.functions):
            raise SyntaxError_("duplicate function name")
        if len(set(c for c, _ in self.constants)) != len(self.constants):
            raise SyntaxError_("duplicate constant name")
        if len(set(self.sorts)) != len(self.sorts):
            raise SyntaxError_("duplicate sort name")
        for p, args in self.predicates:
            for s in args:
                self._require_sort(s, f"predicate {p}")
        for f, args, res in self.functions:
            for s in args + (res,):
                self._require_sort(s, f"function {f}")
        for c, s in self.constants:
            self._require_sort(s, f"constant {c}")
        if self.numeral_sort is not None:
            self._require_sort(self.numeral_sort, "numeral sort")

    def _require_sort(self, s: str, where: str) -> None:
        if s not in self.sorts:
            raise SortError(f"undeclared sort {s!r} in {where}")

    def pred_arity(self, name: str) -> Optional[tuple[str, ...]]:
        for p, args in self.predicates:
            if p == name:
                return args
        return None

    def fun_sig(self, name: str) -> Optional[tuple[tuple[str, ...], str]]:
        for f, args, res in self.functions:
            if f == name:
                return args, res
        return None

    def const_sort(self, name: str) -> Optional[str]:
        for c, s in self.constants:
            if c == name:
                return s
        if self.numeral_sort is not None and name.isdigit():
            return self.numeral_sort
        return None

    def with_constants(self, extra: list[tuple[str, str]]) -> "Signature":
        return Signature(self.sorts, self.predicates, self.functions,
                         self.constants + tuple(extra), self.numeral_sort)


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: str
    sort: str


@dataclass(frozen=True)
class Const:
    name: str
    sort: str


@dataclass(frozen=True)
class App:
    name: str
    args: tuple["Term", ...]
    sort: str


Term = Union[Var, Const, App]


def term_sort(t: Term) -> str:
    return t.sort


def term_vars(t: Term) -> set[Var]:
    if isinstance(t, Var):
        return {t}
    if isinstance(t, Const):
        return set()
    out: set[Var] = set()
    for a in t.args:
        out |= term_vars(a)
    return out


def subst_term(t: Term, x: Var, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t == x else t
    if isinstance(t, Const):
        return t
    return App(t.name, tuple(subst_term(a, x, s) for a in t.args), t.sort)


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Falsum:
    pass


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


Formula = Union[Falsum, Atom, Eq, Not, And, Or, Imp, Forall, Exists]

FALSE = Falsum()


def free_vars(phi: Formula) -> set[Var]:
    if isinstance(phi, Falsum):
        return set()
    if isinstance(phi, Atom):
        out: set[Var] = set()
        for t in phi.args:
            out |= term_vars(t)
        return out
    if isinstance(phi, Eq):
        return term_vars(phi.left) | term_vars(phi.right)
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or, Imp)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Forall, Exists)):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(phi)


def is_closed(phi: Formula) -> bool:
    return not free_vars(phi)


def _used_names(phi: Formula) -> set[str]:
    if isinstance(phi, Falsum):
        return set()
    if isinstance(phi, Atom):
        return {v.name for t in phi.args for v in term_vars(t)}
    if isinstance(phi, Eq):
        return {v.name for v in term_vars(phi.left) | term_vars(phi.right)}
    if isinstance(phi, Not):
        return _used_names(phi.body)
    if isinstance(phi, (And, Or, Imp)):
        return _used_names(phi.left) | _used_names(phi.right)
    if isinstance(phi, (Forall, Exists)):
        return _used_names(phi.body) | {phi.var.name}
    raise TypeError(phi)


def fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    stem = base.rstrip("'")
    cand = base + "'"
    while cand in taken:
        cand += "'"
    return cand


def substitute(phi: Formula, x: Var, t: Term) -> Formula:
    """Capture-avoiding substitution of term t for free variable x."""
    if term_sort(t) != x.sort:
        raise SortError(f"cannot substitute {term_sort(t)}-term for {x.sort}-variable {x.name}")
    return _subst(phi, x, t)


def _subst(phi: Formula, x: Var, t: Term) -> Formula:
    if isinstance(phi, Falsum):
        return phi
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(subst_term(a, x, t) for a in phi.args))
    if isinstance(phi, Eq):
        return Eq(subst_term(phi.left, x, t), subst_term(phi.right, x, t))
    if isinstance(phi, Not):
        return Not(_subst(phi.body, x, t))
    if isinstance(phi, And):
        return And(_subst(phi.left, x, t), _subst(phi.right, x, t))
    if isinstance(phi, Or):
        return Or(_subst(phi.left, x, t), _subst(phi.right, x, t))
    if isinstance(phi, Imp):
        return Imp(_subst(phi.left, x, t), _subst(phi.right, x, t))
    if isinstance(phi, (Forall, Exists)):
        cls = type(phi)
        if phi.var == x:
            return phi
        if x not in free_vars(phi.body):
            return phi
        if phi.var in term_vars(t):
            taken = _used_names(phi.body) | {v.name for v in term_vars(t)} | {x.name}
            nv = Var(fresh_name(phi.var.name, taken), phi.var.sort)
            renamed = _subst(phi.body, phi.var, nv)
            return cls(nv, _subst(renamed, x, t))
        return cls(phi.var, _subst(phi.body, x, t))
    raise TypeError(phi)


# ---------------------------------------------------------------------------
# Alpha-equivalence via a de-Bruijn-style canonical key


_ALPHA_INTERN: dict = {}


def _intern(structural: tuple) -> int:
    v = _ALPHA_INTERN.get(structural)
    if v is None:
        v = len(_ALPHA_INTERN)
        _ALPHA_INTERN[structural] = v
    return v


def alpha_key(phi: Formula, _bound: Optional[dict[str, int]] = None, _depth: int = 0) -> int:
    """Interned id of the de-Bruijn-style normal form: equal ids exactly for
    alpha-equivalent formulas. Closed-context keys are cached on the
    (immutable) formula object; the cache attribute is invisible to dataclass
    equality and hashing, and interning keeps comparisons O(1)."""
    if not _bound:
        cached = getattr(phi, "_alpha_cache", None)
        if cached is not None:
            return cached
        out = _alpha_key_raw(phi, None, 0)
        try:
            object.__setattr__(phi, "_alpha_cache", out)
        except Exception:
            pass
        return out
    return _alpha_key_raw(phi, _bound, _depth)


def _alpha_key_raw(phi: Formula, _bound: Optional[dict[str, int]], _depth: int) -> int:
    b = _bound or {}

    def tkey(t: Term) -> int:
        if isinstance(t, Var):
            if t.name in b:
                return _intern(("b", b[t.name], t.sort))
            return _intern(("v", t.name, t.sort))
        if isinstance(t, Const):
            return _intern(("c", t.name, t.sort))
        return _intern(("f", t.name, t.sort, tuple(tkey(a) for a in t.args)))

    if isinstance(phi, Falsum):
        return _intern(("false",))
    if isinstance(phi, Atom):
        return _intern(("atom", phi.pred, tuple(tkey(a) for a in phi.args)))
    if isinstance(phi, Eq):
        return _intern(("eq", tkey(phi.left), tkey(phi.right)))
    if isinstance(phi, Not):
        return _intern(("not", alpha_key(phi.body, b, _depth)))
    if isinstance(phi, (And, Or, Imp)):
        tag = {And: "and", Or: "or", Imp: "imp"}[type(phi)]
        return _intern((tag, alpha_key(phi.left, b, _depth),
                        alpha_key(phi.right, b, _depth)))
    if isinstance(phi, (Forall, Exists)):
        tag = "all" if isinstance(phi, Forall) else "ex"
        b2 = dict(b)
        b2[phi.var.name] = _depth
        return _intern((tag, phi.var.sort, alpha_key(phi.body, b2, _depth + 1)))
    raise TypeError(phi)


def alpha_eq(a: Formula, b: Formula) -> bool:
    return alpha_key(a) == alpha_key(b)


# ---------------------------------------------------------------------------
# Well-sortedness


def check_term(sig: Signature, t: Term) -> str:
    if isinstance(t, Var):
        if t.sort not in sig.sorts:
            raise SortError(f"variable {t.name} has undeclared sort {t.sort}")
        return t.sort
    if isinstance(t, Const):
        s = sig.const_sort(t.name)
        if s is None:
            raise SyntaxError_(f"unknown constant {t.name}")
        if s != t.sort:
            raise SortError(f"constant {t.name} has sort {s}, not {t.sort}")
        return s
    fs = sig.fun_sig(t.name)
    if fs is None:
        raise SyntaxError_(f"unknown function {t.name}")
    arg_sorts, res = fs
    if len(arg_sorts) != len(t.args):
        raise SortError(f"function {t.name} expects {len(arg_sorts)} arguments")
    for a, want in zip(t.args, arg_sorts):
        if check_term(sig, a) != want:
            raise SortError(f"argument of {t.name} has wrong sort")
    if res != t.sort:
        raise SortError(f"application of {t.name} annotated with wrong sort")
    return res


def check_formula(sig: Signature, phi: Formula) -> None:
    if isinstance(phi, Falsum):
        return
    if isinstance(phi, Atom):
        ar = sig.pred_arity(phi.pred)
        if ar is None:
            raise SyntaxError_(f"unknown predicate {phi.pred}")
        if len(ar) != len(phi.args):
            raise SortError(f"predicate {phi.pred} expects {len(ar)} arguments, got {len(phi.args)}")
        for a, want in zip(phi.args, ar):
            if check_term(sig, a) != want:
                raise SortError(f"argument of {phi.pred} has wrong sort")
        return
    if isinstance(phi, Eq):
        if check_term(sig, phi.left) != check_term(sig, phi.right):
            raise SortError("equality between different sorts")
        return
    if isinstance(phi, Not):
        check_formula(sig, phi.body)
        return
    if isinstance(phi, (And, Or, Imp)):
        check_formula(sig, phi.left)
        check_formula(sig, phi.right)
        return
    if isinstance(phi, (Forall, Exists)):
        if phi.var.sort not in sig.sorts:
            raise SortError(f"bound variable {phi.var.name} has undeclared sort")
        check_formula(sig, phi.body)
        return
    raise TypeError(phi)


# ---------------------------------------------------------------------------
# Printing

def print_term(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    return f"{t.name}({', '.join(print_term(a) for a in t.args)})"


def print_formula(phi: Formula, ctx: int = 0) -> str:
    """Minimal-parenthesis printing: ~ binds tightest, then &, |, ->
    (right-associative), with quantifier bodies extending maximally right."""
    if isinstance(phi, Falsum):
        return "false"
    if isinstance(phi, Atom):
        if not phi.args:
            return phi.pred
        return f"{phi.pred}({', '.join(print_term(a) for a in phi.args)})"
    if isinstance(phi, Eq):
        return f"{print_term(phi.left)} = {print_term(phi.right)}"
    if isinstance(phi, Not):
        return "~" + print_formula(phi.body, 4)
    if isinstance(phi, And):
        s = f"{print_formula(phi.left, 3)} & {print_formula(phi.right, 4)}"
        return f"({s})" if ctx > 3 else s
    if isinstance(phi, Or):
        s = f"{print_formula(phi.left, 2)} | {print_formula(phi.right, 3)}"
        return f"({s})" if ctx > 2 else s
    if isinstance(phi, Imp):
        s = f"{print_formula(phi.left, 2)} -> {print_formula(phi.right, 1)}"
        return f"({s})" if ctx > 1 else s
    if isinstance(phi, (Forall, Exists)):
        kw = "forall" if isinstance(phi, Forall) else "exists"
        s = f"{kw} {phi.var.name}:{phi.var.sort} {print_formula(phi.body, 0)}"
        return f"({s})" if ctx > 0 else s
    raise TypeError(phi)


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(r"\s*(->|[()=,:&|~]|[A-Za-z_][A-Za-z0-9_']*|[0-9]+)")
_KEYWORDS = {"forall", "exists", "false"}


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out: list[_Tok] = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            if text[i:].strip() == "":
                break
            raise SyntaxError_(f"unexpected character {text[i:].lstrip()[0]!r}", i)
        tok = m.group(1)
        pos = m.start(1)
        if tok in _KEYWORDS:
            out.append(_Tok("kw", tok, pos))
        elif tok[0].isalpha() or tok[0] == "_" or tok[0].isdigit():
            out.append(_Tok("ident", tok, pos))
        else:
            out.append(_Tok(tok, tok, pos))
        i = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, sig: Signature, bound: Optional[dict[str, str]] = None):
        self.toks = _tokenize(text)
        self.sig = sig
        self.i = 0
        self.bound: dict[str, str] = dict(bound) if bound else {}

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.next()
        if t.kind != kind:
            raise SyntaxError_(f"expected {kind!r}, found {t.text!r}", t.pos)
        return t

    def formula(self) -> Formula:
        t = self.peek()
        if t.kind == "kw" and t.text in ("forall", "exists"):
            self.next()
            name = self.expect("ident").text
            self.expect(":")
            sort = self.expect("ident").text
            if sort not in self.sig.sorts:
                raise SortError(f"undeclared sort {sort!r}", t.pos)
            outer = self.bound.get(name)
            self.bound[name] = sort
            body = self.formula()
            if outer is None:
                del self.bound[name]
            else:
                self.bound[name] = outer
            v = Var(name, sort)
            return Forall(v, body) if t.text == "forall" else Exists(v, body)
        return self.implication()

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek().kind == "->":
            self.next()
            return Imp(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek().kind == "|":
            self.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek().kind == "&":
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        t = self.peek()
        if t.kind == "~":
            self.next()
            return Not(self.unary())
        if t.kind == "(":
            self.next()
            inner = self.formula()
            self.expect(")")
            return inner
        if t.kind == "kw" and t.text == "false":
            self.next()
            return FALSE
        return self.atom()

    def atom(self) -> Formula:
        t = self.peek()
        if t.kind != "ident":
            raise SyntaxError_(f"expected a formula, found {t.text!r}", t.pos)
        name = t.text
        ar = self.sig.pred_arity(name)
        if ar is not None:
            self.next()
            args: tuple[Term, ...] = ()
            if self.peek().kind == "(":
                self.next()
                args = self.term_list()
                self.expect(")")
            if len(args) != len(ar):
                raise SortError(f"predicate {name} expects {len(ar)} arguments, got {len(args)}", t.pos)
            for a, want in zip(args, ar):
                if term_sort(a) != want:
                    raise SortError(f"argument of {name} has sort {term_sort(a)}, expected {want}", t.pos)
            return Atom(name, args)
        left = self.term()
        self.expect("=")
        right = self.term()
        if term_sort(left) != term_sort(right):
            raise SortError("equality between different sorts", t.pos)
        return Eq(left, right)

    def term_list(self) -> tuple[Term, ...]:
        out = [self.term()]
        while self.peek().kind == ",":
            self.next()
            out.append(self.term())
        return tuple(out)

    def term(self) -> Term:
        t = self.expect("ident")
        name = t.text
        fs = self.sig.fun_sig(name)
        if fs is not None:
            self.expect("(")
            args = self.term_list()
            self.expect(")")
            arg_sorts, res = fs
            if len(args) != len(arg_sorts):
                raise SortError(f"function {name} expects {len(arg_sorts)} arguments", t.pos)
            for a, want in zip(args, arg_sorts):
                if term_sort(a) != want:
                    raise SortError(f"argument of {name} has sort {term_sort(a)}, expected {want}", t.pos)
            return App(name, args, res)
        cs = self.sig.const_sort(name)
        if cs is not None:
            return Const(name, cs)
        if name in self.bound:
            return Var(name, self.bound[name])
        if self.peek().kind == ":":
            self.next()
            sort = self.expect("ident").text
            if sort not in self.sig.sorts:
                raise SortError(f"undeclared sort {sort!r}", t.pos)
            return Var(name, sort)
        raise SyntaxError_(f"unknown symbol {name!r} (free variables need a :sort annotation)", t.pos)


def parse_formula(text: str, sig: Signature,
                  free: Optional[dict[str, str]] = None) -> Formula:
    """Parse text to a checked formula; `free` pre-declares free variables
    (name -> sort) so they need no inline :sort annotation."""
    p = _Parser(text, sig, free)
    phi = p.formula()
    tok = p.peek()
    if tok.kind != "eof":
        raise SyntaxError_(f"trailing input {tok.text!r}", tok.pos)
    check_formula(sig, phi)
    return phi


def parse_term(text: str, sig: Signature,
               free: Optional[dict[str, str]] = None) -> Term:
    p = _Parser(text, sig, free)
    t = p.term()
    tok = p.peek()
    if tok.kind != "eof":
        raise SyntaxError_(f"trailing input {tok.text!r}", tok.pos)
    check_term(sig, t)
    return t


# ---------------------------------------------------------------------------
# Theories


@dataclass(frozen=True)
class Theory:
    """A named finite list of closed, well-sorted sentences over a signature."""

    signature: Signature
    axioms: tuple[tuple[str, Formula], ...]
    name: str = ""
    note: str = ""

    def __post_init__(self):
        labels = [l for l, _ in self.axioms]
        if len(set(labels)) != len(labels):
            raise SyntaxError_("duplicate axiom label")
        for label, phi in self.axioms:
            check_formula(self.signature, phi)
            if not is_closed(phi):
                raise SyntaxError_(f"axiom {label} is not closed")

    @property
    def sentences(self) -> tuple[Formula, ...]:
        return tuple(phi for _, phi in self.axioms)

    def extended(self, extra: list[tuple[str, Formula]], name: str = "") -> "Theory":
        return Theory(self.signature, self.axioms + tuple(extra), name or self.name, self.note)


def conjoin(gamma: Theory) -> Formula:
    """Right-nested conjunction of the theory's sentences, in listed order."""
    sentences = gamma.sentences
    if not sentences:
        raise SyntaxError_("cannot conjoin an empty theory")
    out = sentences[-1]
    for phi in reversed(sentences[:-1]):
        out = And(phi, out)
    return out


# ---------------------------------------------------------------------------
# Theory file format


def parse_theory(text: str, name_hint: str = "") -> Theory:
    """Parse the textual theory format.

    Lines: `theory <name>`, `sort <name>`, `pred <name>(<sorts>)`,
    `fun <name>(<sorts>)-><sort>`, `const <name>:<sort>`,
    `axiom <label>: <formula>`; `#` starts a comment.
    """
    name = name_hint
    sorts: list[str] = []
    preds: list[tuple[str, tuple[str, ...]]] = []
    funs: list[tuple[str, tuple[str, ...], str]] = []
    consts: list[tuple[str, str]] = []
    axiom_lines: list[tuple[str, str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "theory":
            name = rest
        elif head == "sort":
            sorts.append(rest)
        elif head == "pred":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_']*)\s*\(([^)]*)\)", rest)
            if not m:
                raise SyntaxError_(f"bad pred declaration: {line!r}")
            args = tuple(s.strip() for s in m.group(2).split(",")) if m.group(2).strip() else ()
            preds.append((m.group(1), args))
        elif head == "fun":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_']*)\s*\(([^)]*)\)\s*->\s*([A-Za-z_][A-Za-z0-9_']*)", rest)
            if not m:
                raise SyntaxError_(f"bad fun declaration: {line!r}")
            args = tuple(s.strip() for s in m.group(2).split(",")) if m.group(2).strip() else ()
            funs.append((m.group(1), args, m.group(3)))
        elif head == "const":
            m = re.fullmatch(r"([A-Za-z_0-9][A-Za-z0-9_']*)\s*:\s*([A-Za-z_][A-Za-z0-9_']*)", rest)
            if not m:
                raise SyntaxError_(f"bad const declaration: {line!r}")
            consts.append((m.group(1), m.group(2)))
        elif head == "axiom":
            label, sep, body = rest.partition(":")
            if not sep:
                raise SyntaxError_(f"bad axiom line: {line!r}")
            axiom_lines.append((label.strip(), body.strip()))
        else:
            raise SyntaxError_(f"unknown declaration {head!r}")
    sig = Signature(tuple(sorts), tuple(preds), tuple(funs), tuple(consts))
    axioms = tuple((label, parse_formula(body, sig)) for label, body in axiom_lines)
    return Theory(sig, axioms, name=name)


def print_theory(th: Theory) -> str:
    sig = th.signature
    lines = [f"theory {th.name or 'unnamed'}"]
    for s in sig.sorts:
        lines.append(f"sort {s}")
    for p, args in sig.predicates:
        lines.append(f"pred {p}({', '.join(args)})")
    for f, args, res in sig.functions:
        lines.append(f"fun {f}({', '.join(args)})->{res}")
    for c, s in sig.constants:
        lines.append(f"const {c}:{s}")
    for label, phi in th.axioms:
        lines.append(f"axiom {label}: {print_formula(phi)}")
    return "\n".join(lines) + "\n"
