"""Pair automata deciding the order between positions of a permutation.

An automaton reads the base-k digits of (i, j), most significant first and
zero-padded to a common length, and the output of the state it stops in is
the relation between alpha_i and alpha_j.

File format::

    k=2
    state <name> out <|>|= [initial]
    edge <from> (<d1>,<d2>) <to>

Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .errors import MalformedAutomaton
from .patterns import PermutationView, gamma_of

OUTPUTS = ("<", ">", "=")


@dataclass(frozen=True)
class PairAutomaton:
    k: int
    outputs: dict[str, str]
    initial: str
    transitions: dict[tuple[str, tuple[int, int]], str]
    provenance: dict[tuple[str, tuple[int, int]], str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.initial not in self.outputs:
            raise MalformedAutomaton(f"initial state {self.initial!r} is not declared")
        for (src, pair), dst in self.transitions.items():
            if src not in self.outputs or dst not in self.outputs:
                raise MalformedAutomaton(f"edge {src} {pair} {dst} uses an undeclared state")
            if not all(0 <= d < self.k for d in pair):
                raise MalformedAutomaton(f"digit pair {pair} is outside base {self.k}")
        for name, out in self.outputs.items():
            if out not in OUTPUTS:
                raise MalformedAutomaton(f"state {name} has output {out!r}")

    def reachable(self) -> set[str]:
        seen, stack = {self.initial}, [self.initial]
        while stack:
            s = stack.pop()
            for (src, _), dst in self.transitions.items():
                if src == s and dst not in seen:
                    seen.add(dst)
                    stack.append(dst)
        return seen

    def missing_transitions(self) -> list[tuple[str, tuple[int, int]]]:
        pairs = [(a, b) for a in range(self.k) for b in range(self.k)]
        return [(s, pr) for s in sorted(self.reachable()) for pr in pairs
                if (s, pr) not in self.transitions]

    def step(self, state: str, pair: tuple[int, int]) -> str:
        try:
            return self.transitions[(state, pair)]
        except KeyError:
            raise MalformedAutomaton(f"no transition from {state} on {pair}") from None


def _digits(x, k, width):
    out = []
    for _ in range(width):
        x, r = divmod(x, k)
        out.append(r)
    return out[::-1]


def evaluate(aut: PairAutomaton, i: int, j: int) -> str:
    """Output ('<', '>' or '=') after reading the digit pairs of i and j msd-first."""
    if i < 0 or j < 0:
        raise ValueError("positions are non-negative")
    width, m = 1, max(i, j)
    while aut.k ** width <= m:
        width += 1
    state = aut.initial
    for pair in zip(_digits(i, aut.k, width), _digits(j, aut.k, width)):
        state = aut.step(state, pair)
    return aut.outputs[state]


def crosscheck(aut: PairAutomaton, p: PermutationView, N: int) -> list[tuple[int, int]]:
    """Pairs i < j < N where the automaton disagrees with the permutation."""
    return [(i, j) for i in range(N) for j in range(i + 1, N)
            if evaluate(aut, i, j) != gamma_of(p, i, j).value]


def as_permutation(aut: PairAutomaton) -> PermutationView:
    """The comparator induced by an automaton (no representative)."""
    from .patterns import Relation

    def gamma(i, j):
        out = evaluate(aut, i, j)
        if out == "=":
            raise MalformedAutomaton(f"automaton outputs '=' on distinct positions {i}, {j}")
        return Relation(out)

    return PermutationView(gamma, None, "automaton")


_STATE_RE = re.compile(r"^state\s+(\S+)\s+out\s+([<>=])(\s+initial)?$")
_EDGE_RE = re.compile(r"^edge\s+(\S+)\s+\(\s*(\d+)\s*,\s*(\d+)\s*\)\s+(\S+)$")


def parse_automaton(text: str) -> PairAutomaton:
    k: Optional[int] = None
    outputs: dict[str, str] = {}
    initial = None
    transitions: dict = {}
    provenance: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line, _, comment = raw.partition("#")
        line = line.strip()
        if not line:
            continue
        if line.startswith("k="):
            k = int(line[2:])
            continue
        m = _STATE_RE.match(line)
        if m:
            outputs[m[1]] = m[2]
            if m[3]:
                if initial is not None:
                    raise MalformedAutomaton(f"line {lineno}: second initial state")
                initial = m[1]
            continue
        m = _EDGE_RE.match(line)
        if m:
            key = (m[1], (int(m[2]), int(m[3])))
            if key in transitions and transitions[key] != m[4]:
                raise MalformedAutomaton(f"line {lineno}: conflicting edge {key}")
            transitions[key] = m[4]
            if comment.strip():
                provenance[key] = comment.strip()
            continue
        raise MalformedAutomaton(f"line {lineno}: cannot parse {raw!r}")
    if k is None:
        raise MalformedAutomaton("missing 'k=<base>' header")
    if initial is None:
        raise MalformedAutomaton("no initial state")
    return PairAutomaton(k, outputs, initial, transitions, provenance)


def format_automaton(aut: PairAutomaton) -> str:
    lines = [f"k={aut.k}"]
    for name in aut.outputs:
        flag = " initial" if name == aut.initial else ""
        lines.append(f"state {name} out {aut.outputs[name]}{flag}")
    for (src, (a, b)), dst in aut.transitions.items():
        note = aut.provenance.get((src, (a, b)))
        lines.append(f"edge {src} ({a},{b}) {dst}" + (f"  # {note}" if note else ""))
    return "\n".join(lines) + "\n"


def load_automaton(path) -> PairAutomaton:
    return parse_automaton(Path(path).read_text(encoding="utf-8"))


def tm_automaton() -> PairAutomaton:
    """The eight-state automaton for the Thue-Morse permutation."""
    text = resources.files("permlab.data").joinpath("tm_automaton.txt").read_text(encoding="utf-8")
    return parse_automaton(text)
