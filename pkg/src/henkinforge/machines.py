"""Turing machines over {0,1,blank}, simulation traces, and the reduction
from halting to first-order validity.

The validity encoding follows the standard configuration-describing
construction with one sort acting as both time and tape address, a zero
constant, a successor function, per-state and per-symbol predicates, and
auxiliary successor axioms; the exact schema is frozen in
docs/machine_encoding.md. The machine halts on its input iff the emitted
sentence is valid.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .godel import GodelCode, dec_seq, enc_seq, pair, unpair, DecodeError
from .semantics import FiniteModel
from .syntax import (And, App, Atom, Const, Eq, Exists, Forall, Formula, Imp,
                     Not, Or, Signature, Term, Var)

BLANK = "_"
SYMBOLS = ("0", "1", BLANK)
MOVES = ("L", "R")


class MachineError(Exception):
    pass


@dataclass(frozen=True)
class TuringMachine:
    """Partial transition table; halting = undefined (state, symbol) pair.
    One-sided tape; a left move at cell 0 stays at cell 0."""

    states: int
    start: int
    delta: tuple[tuple[tuple[int, str], tuple[int, str, str]], ...]

    def __post_init__(self):
        keys = [k for k, _ in self.delta]
        if len(set(keys)) != len(keys):
            raise MachineError("duplicate transition")
        for (q, s), (q2, s2, mv) in self.delta:
            if not (0 <= q < self.states and 0 <= q2 < self.states):
                raise MachineError("transition references an undeclared state")
            if s not in SYMBOLS or s2 not in SYMBOLS:
                raise MachineError("transition references an unknown symbol")
            if mv not in MOVES:
                raise MachineError("bad move")
        if not (0 <= self.start < self.states):
            raise MachineError("bad start state")

    def step(self, q: int, s: str) -> Optional[tuple[int, str, str]]:
        for k, v in self.delta:
            if k == (q, s):
                return v
        return None


@dataclass(frozen=True)
class Config:
    state: int
    head: int
    tape: tuple[str, ...]   # cells 0..len-1; cells beyond are blank


@dataclass(frozen=True)
class Trace:
    configs: tuple[Config, ...]
    halted: bool

    @property
    def steps(self) -> int:
        return len(self.configs) - 1


def run(t: TuringMachine, n: int, budget: int) -> Trace:
    """Simulate on unary input (n ones starting at cell 0), head at cell 0."""
    if budget < 0:
        raise MachineError("budget must be nonnegative")
    tape = ["1"] * n
    head = 0
    q = t.start

    def snap() -> Config:
        return Config(q, head, tuple(tape))

    configs = [snap()]
    for _ in range(budget):
        sym = tape[head] if head < len(tape) else BLANK
        tr = t.step(q, sym)
        if tr is None:
            return Trace(tuple(configs), True)
        q2, s2, mv = tr
        while head >= len(tape):
            tape.append(BLANK)
        tape[head] = s2
        q = q2
        head = head + 1 if mv == "R" else max(0, head - 1)
        configs.append(snap())
    sym = tape[head] if head < len(tape) else BLANK
    return Trace(tuple(configs), t.step(q, sym) is None)


# ---------------------------------------------------------------------------
# Machine file format and numeric codes


def parse_machine(text: str) -> TuringMachine:
    states = None
    start = None
    delta = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "states":
            states = int(rest)
        elif head == "start":
            m = re.fullmatch(r"q(\d+)", rest)
            if not m:
                raise MachineError(f"bad start state {rest!r}")
            start = int(m.group(1))
        elif head == "delta":
            m = re.fullmatch(
                r"q(\d+)\s*,\s*([01_])\s*->\s*q(\d+)\s*,\s*([01_])\s*,\s*([LR])", rest)
            if not m:
                raise MachineError(f"bad delta line {raw!r}")
            delta.append(((int(m.group(1)), m.group(2)),
                          (int(m.group(3)), m.group(4), m.group(5))))
        else:
            raise MachineError(f"unknown machine declaration {head!r}")
    if states is None or start is None:
        raise MachineError("machine file needs states and start lines")
    return TuringMachine(states, start, tuple(delta))


def print_machine(t: TuringMachine) -> str:
    lines = [f"states {t.states}", f"start q{t.start}"]
    for (q, s), (q2, s2, mv) in t.delta:
        lines.append(f"delta q{q},{s} -> q{q2},{s2},{mv}")
    return "\n".join(lines) + "\n"


_SYM_NUM = {s: i for i, s in enumerate(SYMBOLS)}
_MOVE_NUM = {m: i for i, m in enumerate(MOVES)}


def machine_code(t: TuringMachine) -> int:
    """Numeric description driving the effective enumeration T0, T1, ...
    (machines ordered by ascending code)."""
    rules = [enc_seq([q, _SYM_NUM[s], q2, _SYM_NUM[s2], _MOVE_NUM[mv]])
             for (q, s), (q2, s2, mv) in t.delta]
    return enc_seq([t.states, t.start, enc_seq(rules)])


def machine_from_code(code: int) -> TuringMachine:
    parts = dec_seq(code)
    if len(parts) != 3:
        raise MachineError("bad machine code")
    states, start, rules_code = parts
    delta = []
    for rc in dec_seq(rules_code):
        vals = dec_seq(rc)
        if len(vals) != 5:
            raise MachineError("bad transition code")
        q, s, q2, s2, mv = vals
        if s >= len(SYMBOLS) or s2 >= len(SYMBOLS) or mv >= len(MOVES):
            raise MachineError("bad transition component")
        delta.append(((q, SYMBOLS[s]), (q2, SYMBOLS[s2], MOVES[mv])))
    return TuringMachine(states, start, tuple(delta))


def trace_json(tr: Trace) -> str:
    return json.dumps({
        "halted": tr.halted,
        "steps": tr.steps,
        "configs": [{"state": c.state, "head": c.head, "tape": "".join(c.tape)}
                    for c in tr.configs],
    }, indent=2)


# ---------------------------------------------------------------------------
# Validity encoding (Example-7-style construction)

SORT = "T"
ZERO = Const("z", SORT)


def _s(t: Term) -> Term:
    return App("s", (t,), SORT)


def _num(k: int) -> Term:
    t: Term = ZERO
    for _ in range(k):
        t = _s(t)
    return t


def machine_signature(t: TuringMachine) -> Signature:
    preds = [("H", (SORT, SORT)), ("Lt", (SORT, SORT))]
    for q in range(t.states):
        preds.append((f"St{q}", (SORT,)))
    for s in SYMBOLS:
        name = "Cb" if s == BLANK else f"C{s}"
        preds.append((name, (SORT, SORT)))
    return Signature((SORT,), tuple(preds), (("s", (SORT,), SORT),), (("z", SORT),))


def _cell(sym: str, time: Term, pos: Term) -> Formula:
    name = "Cb" if sym == BLANK else f"C{sym}"
    return Atom(name, (time, pos))


def _st(q: int, time: Term) -> Formula:
    return Atom(f"St{q}", (time,))


def _conj(fs: list[Formula]) -> Formula:
    # balanced, not right-nested: keeps Goedel codes of machine formulas small
    # (pairing doubles code length per nesting level)
    if not fs:
        raise MachineError("empty conjunction")
    if len(fs) == 1:
        return fs[0]
    mid = len(fs) // 2
    return And(_conj(fs[:mid]), _conj(fs[mid:]))


def _disj(fs: list[Formula]) -> Formula:
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


X = Var("x", SORT)
Y = Var("y", SORT)
Z2 = Var("w", SORT)


def init_axioms(t: TuringMachine, n: int) -> list[Formula]:
    out: list[Formula] = [_st(t.start, ZERO), Atom("H", (ZERO, ZERO))]
    for i in range(n):
        out.append(_cell("1", ZERO, _num(i)))
    # cells at address n + y are blank at time zero, for every y
    out.append(Forall(Y, _cell(BLANK, ZERO, _plus_num(Y, n))))
    return out


def _plus_num(v: Term, k: int) -> Term:
    t = v
    for _ in range(k):
        t = _s(t)
    return t


def order_axioms() -> list[Formula]:
    # just enough order to tell tape cells apart without equality reasoning
    o1 = Forall(X, Atom("Lt", (X, _s(X))))
    o2 = Forall(X, Forall(Y, Imp(Atom("Lt", (X, Y)), Atom("Lt", (X, _s(Y))))))
    return [o1, o2]


def transition_axioms(t: TuringMachine) -> list[Formula]:
    out: list[Formula] = []
    for (q, sym), (q2, sym2, mv) in t.delta:
        pre = [_st(q, X), Atom("H", (X, Y)), _cell(sym, X, Y)]
        if mv == "R":
            post = [_st(q2, _s(X)), Atom("H", (_s(X), _s(Y))), _cell(sym2, _s(X), Y)]
            out.append(Forall(X, Forall(Y, Imp(_conj(pre), _conj(post)))))
        else:
            # left move: separate axioms for head at a successor cell and at zero
            pre_s = [_st(q, X), Atom("H", (X, _s(Y))), _cell(sym, X, _s(Y))]
            post_s = [_st(q2, _s(X)), Atom("H", (_s(X), Y)), _cell(sym2, _s(X), _s(Y))]
            out.append(Forall(X, Forall(Y, Imp(_conj(pre_s), _conj(post_s)))))
            pre_z = [_st(q, X), Atom("H", (X, ZERO)), _cell(sym, X, ZERO)]
            post_z = [_st(q2, _s(X)), Atom("H", (_s(X), ZERO)), _cell(sym2, _s(X), ZERO)]
            out.append(Forall(X, Imp(_conj(pre_z), _conj(post_z))))
    return out


def frame_axioms(t: TuringMachine) -> list[Formula]:
    # the head predicate localizes change: cells strictly left or right of the
    # head keep their symbol
    out: list[Formula] = []
    for sym in SYMBOLS:
        right = Imp(_conj([Atom("H", (X, Y)), Atom("Lt", (Y, Z2)), _cell(sym, X, Z2)]),
                    _cell(sym, _s(X), Z2))
        left = Imp(_conj([Atom("H", (X, Y)), Atom("Lt", (Z2, Y)), _cell(sym, X, Z2)]),
                   _cell(sym, _s(X), Z2))
        out.append(Forall(X, Forall(Y, Forall(Z2, right))))
        out.append(Forall(X, Forall(Y, Forall(Z2, left))))
    return out


def halting_clause(t: TuringMachine) -> Formula:
    defined = {k for k, _ in t.delta}
    cases = []
    for q in range(t.states):
        for sym in SYMBOLS:
            if (q, sym) not in defined:
                cases.append(_conj([_st(q, X), Atom("H", (X, Y)), _cell(sym, X, Y)]))
    if not cases:
        # total transition table: the machine never halts; encode falsum-like clause
        cases.append(_conj([_st(0, X), Not(_st(0, X))]))
    return Exists(X, Exists(Y, _disj(cases)))


def antecedent_axioms(t: TuringMachine, n: int) -> list[Formula]:
    return init_axioms(t, n) + order_axioms() + transition_axioms(t) + frame_axioms(t)


def encode_validity(t: TuringMachine, n: int) -> Formula:
    """First-order sentence valid iff t halts on input n (written in unary)."""
    return Imp(_conj(antecedent_axioms(t, n)), halting_clause(t))


def reduction_f(i: Union[int, GodelCode], x: int) -> GodelCode:
    """The many-one reduction from halting to validity on codes:
    f = goedel-number after encode_validity after decode."""
    from .godel import godel_number
    code = i.value if isinstance(i, GodelCode) else i
    try:
        t = machine_from_code(code)
    except (MachineError, DecodeError, ValueError) as e:
        raise MachineError(f"undecodable machine code: {e}")
    return godel_number(encode_validity(t, x))


# ---------------------------------------------------------------------------
# Canonical structures (the model of a computation)


def canonical_structure(t: TuringMachine, tr: Trace) -> FiniteModel:
    """Finite model on the trace's time x tape grid interpreting the schema
    predicates by the computation; successor clamps at the carrier top."""
    T = len(tr.configs)
    width = max([1] + [len(c.tape) for c in tr.configs]) + 1
    size = max(T, width) + 1
    carrier = list(range(size))
    sig = machine_signature(t)
    preds: dict[str, set] = {p: set() for p, _ in sig.predicates}
    preds["Lt"] = {(i, j) for i in carrier for j in carrier if i < j}
    for time, c in enumerate(tr.configs):
        preds[f"St{c.state}"].add((time,))
        preds["H"].add((time, c.head))
        for pos in range(size):
            sym = c.tape[pos] if pos < len(c.tape) else BLANK
            name = "Cb" if sym == BLANK else f"C{sym}"
            preds[name].add((time, pos))
    funcs = {"s": {(i,): min(i + 1, size - 1) for i in carrier}}
    return FiniteModel(sig, {SORT: carrier}, preds, funcs, {"z": 0})


def grounded_antecedent(t: TuringMachine, n: int, time_bound: int,
                        cell_bound: int) -> list[Formula]:
    """Quantifier-free instances of the antecedent axioms with all universal
    variables instantiated over 0..bound-1 (the restricted reading used to
    check canonical structures)."""
    from .syntax import substitute
    out: list[Formula] = []
    times = [_num(i) for i in range(time_bound)]
    cells = [_num(i) for i in range(cell_bound)]

    def ground(phi: Formula, env: dict) -> None:
        if isinstance(phi, Forall):
            pool = times if phi.var.name == "x" else cells
            for v in pool:
                ground(substitute(phi.body, phi.var, v), env)
        else:
            out.append(phi)

    for ax in antecedent_axioms(t, n):
        ground(ax, {})
    return out
