"""Families of DFAs: acceptance semantics, normalization, saturation checks,
sink-final analysis, and final-set surgery."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core_automata import (
    AutomatonError,
    DetTS,
    Dfa,
    UpWord,
    Word,
    run_word,
)

PERIODIC = "periodic"
SYNTACTIC = "syntactic"
RECURRENT = "recurrent"
LIMIT = "limit"
FLAVORS = (PERIODIC, SYNTACTIC, RECURRENT, LIMIT)


class SinkFinalMissing(AutomatonError):
    """A progress DFA has final states but no sink final state."""

    def __init__(self, u_class: int):
        super().__init__(f"progress DFA of leading state {u_class} "
                         "has finals but no sink final state")
        self.u_class = u_class


@dataclass(frozen=True)
class Fdfa:
    """A leading DFA without finals plus one progress DFA per leading state.

    ``labels`` are optional representative words (metadata only); ``flavor``
    records which progress congruence the family was built with, if known.
    """

    leading: DetTS
    progress: tuple[Dfa, ...]
    labels: tuple[Word, ...] | None = None
    flavor: str | None = None

    def __post_init__(self) -> None:
        if len(self.progress) != self.leading.state_count:
            raise AutomatonError("need one progress DFA per leading state")
        for p in self.progress:
            if p.ts.alphabet != self.leading.alphabet:
                raise AutomatonError("progress alphabet differs from leading")
        if self.flavor is not None and self.flavor not in FLAVORS:
            raise AutomatonError(f"unknown flavor {self.flavor!r}")


@dataclass(frozen=True)
class Saturated:
    """Decide acceptance from the single normalized decomposition."""


@dataclass(frozen=True)
class ExhaustiveBounded:
    """Search decompositions (pumped prefixes, rotated periods) up to a bound;
    a desk-scale approximation for FDFAs that are not known to be saturated."""

    bound: int

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise AutomatonError("bound must be >= 1")


AcceptanceMode = Saturated | ExhaustiveBounded


def normalize(f: Fdfa, w: UpWord) -> UpWord:
    """Return (u . v^i, v^p) with minimal i >= 0, then minimal p >= 1, such
    that the leading state repeats; denotes the same omega-word."""
    m = f.leading
    state = run_word(m, m.initial, w.prefix)
    states = [state]
    while True:
        state = run_word(m, state, w.period)
        if state in states:
            i = states.index(state)
            p = len(states) - i
            return UpWord(w.prefix + w.period * i, w.period * p)
        states.append(state)


def accepts_decomposition(f: Fdfa, w: UpWord) -> bool:
    m = f.leading
    q = run_word(m, m.initial, w.prefix)
    if run_word(m, q, w.period) != q:
        return False
    return f.progress[q].accepts(w.period)


def _decompositions(w: UpWord, bound: int) -> list[UpWord]:
    """Alternative decompositions of the same omega-word: pump the prefix,
    rotate the period, repeat the period, all within the bound."""
    out = []
    v = w.period
    for i in range(bound + 1):
        for j in range(len(v)):
            prefix = w.prefix + v * i + v[:j]
            rot = v[j:] + v[:j]
            for k in range(1, bound + 1):
                out.append(UpWord(prefix, rot * k))
    return out


def accepts_upword(f: Fdfa, w: UpWord, mode: AcceptanceMode = Saturated()) -> bool:
    if isinstance(mode, Saturated):
        return accepts_decomposition(f, normalize(f, w))
    return any(accepts_decomposition(f, d) for d in _decompositions(w, mode.bound)
               if _is_normalized(f, d))


def _is_normalized(f: Fdfa, w: UpWord) -> bool:
    m = f.leading
    q = run_word(m, m.initial, w.prefix)
    return run_word(m, q, w.period) == q


def _short_words(nletters: int, bound: int) -> list[Word]:
    out: list[Word] = [()]
    layer: list[Word] = [()]
    for _ in range(bound):
        layer = [w + (a,) for w in layer for a in range(nletters)]
        out.extend(layer)
    return out


def is_saturated_bounded(f: Fdfa, bound: int) -> tuple[UpWord, UpWord] | None:
    """Check all UP-words with |u|, |v| <= bound: every normalized
    decomposition within the bound must agree on acceptance.  Returns a
    disagreeing pair of decompositions, or None when saturated so far."""
    nletters = f.leading.alphabet.size
    words = _short_words(nletters, bound)
    periods = [w for w in words if w]
    for u in words:
        for v in periods:
            verdict: tuple[UpWord, bool] | None = None
            for d in _decompositions(UpWord(u, v), bound):
                if not _is_normalized(f, d):
                    continue
                acc = accepts_decomposition(f, d)
                if verdict is None:
                    verdict = (d, acc)
                elif verdict[1] != acc:
                    return (verdict[0], d) if verdict[1] else (d, verdict[0])
    return None


def sink_final_state(p: Dfa) -> int | None:
    """The final state looping to itself on every letter, if any."""
    for s in sorted(p.finals):
        if all(p.ts.delta[s][a] == s for a in range(p.ts.alphabet.size)):
            return s
    return None


def extract_fb(f: Fdfa) -> Fdfa:
    """Keep only the sink final state of each progress DFA.  Raises
    SinkFinalMissing when a progress DFA has finals but no sink final."""
    if f.flavor is not None and f.flavor != LIMIT:
        raise AutomatonError("extract_fb expects a limit-flavor FDFA")
    new_progress = []
    for u_class, p in enumerate(f.progress):
        if not p.finals:
            new_progress.append(p)
            continue
        sink = sink_final_state(p)
        if sink is None:
            raise SinkFinalMissing(u_class)
        new_progress.append(replace(p, finals=frozenset([sink])))
    return replace(f, progress=tuple(new_progress))


def complement_finals(f: Fdfa) -> Fdfa:
    """Complement every progress DFA's final set.  For saturated FDFAs this
    complements the accepted UP-words."""
    new_progress = tuple(
        replace(p, finals=frozenset(range(p.ts.state_count)) - p.finals)
        for p in f.progress)
    return replace(f, progress=new_progress)


@dataclass(frozen=True)
class SizeReport:
    leading: int
    progress: tuple[int, ...]

    @property
    def total(self) -> int:
        return self.leading + sum(self.progress)


def size_report(f: Fdfa) -> SizeReport:
    return SizeReport(f.leading.state_count,
                      tuple(p.ts.state_count for p in f.progress))
