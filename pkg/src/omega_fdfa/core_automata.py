"""Automata types and the graph algorithms everything else builds on.

Conventions used across the package:

- State ids are dense integers ``0..n-1``.
- Letters are indices into an :class:`Alphabet`.
- Transition tables are total.
- Every predicate of the form "u . z^omega is in L" is false for z = epsilon.
  (FDFA acceptance never evaluates an empty period, so progress DFAs may
  still resolve the membership of epsilon itself either way; see
  congruence.progress_dfa.)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

Word = tuple[int, ...]

BUCHI = "buchi"
COBUCHI = "cobuchi"


class AutomatonError(Exception):
    """Base error for malformed automata or invalid inputs."""


class AlphabetError(AutomatonError):
    """A letter or word does not belong to the expected alphabet."""


class ResourceLimitError(AutomatonError):
    """A construction exceeded its configured resource cap."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered, duplicate-free set of letter tokens."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise AlphabetError("alphabet must be nonempty")
        if len(set(self.letters)) != len(self.letters):
            raise AlphabetError("duplicate letters in alphabet")

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise AlphabetError(f"unknown letter {letter!r}") from None

    def parse_word(self, text: str) -> Word:
        """Parse a word.  Single-character alphabets concatenate letters;
        otherwise letters are separated by dots.  '' denotes epsilon."""
        if text == "":
            return ()
        if all(len(t) == 1 for t in self.letters):
            return tuple(self.index(c) for c in text)
        return tuple(self.index(t) for t in text.split("."))

    def format_word(self, w: Word) -> str:
        if all(len(t) == 1 for t in self.letters):
            return "".join(self.letters[a] for a in w)
        return ".".join(self.letters[a] for a in w)


@dataclass(frozen=True)
class DetTS:
    """A deterministic, total transition system."""

    alphabet: Alphabet
    state_count: int
    initial: int
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.state_count <= 0:
            raise AutomatonError("state_count must be positive")
        if not 0 <= self.initial < self.state_count:
            raise AutomatonError("initial state out of range")
        if len(self.delta) != self.state_count:
            raise AutomatonError("delta must have one row per state")
        for row in self.delta:
            if len(row) != self.alphabet.size:
                raise AutomatonError("delta row must cover the alphabet")
            for t in row:
                if not 0 <= t < self.state_count:
                    raise AutomatonError("delta target out of range")

    def step(self, state: int, letter: int) -> int:
        return self.delta[state][letter]


@dataclass(frozen=True)
class Dfa:
    ts: DetTS
    finals: frozenset[int]

    def __post_init__(self) -> None:
        for f in self.finals:
            if not 0 <= f < self.ts.state_count:
                raise AutomatonError("final state out of range")

    def accepts(self, w: Word) -> bool:
        return run_word(self.ts, self.ts.initial, w) in self.finals


@dataclass(frozen=True)
class DetOmega:
    """Deterministic omega-automaton with transition-based acceptance.

    ``acc`` holds (state, letter) pairs.  Buchi polarity accepts runs taking
    marked transitions infinitely often; coBuchi accepts runs taking them
    only finitely often.
    """

    ts: DetTS
    acc: frozenset[tuple[int, int]]
    polarity: str = BUCHI

    def __post_init__(self) -> None:
        if self.polarity not in (BUCHI, COBUCHI):
            raise AutomatonError(f"unknown polarity {self.polarity!r}")
        for s, a in self.acc:
            if not (0 <= s < self.ts.state_count and 0 <= a < self.ts.alphabet.size):
                raise AutomatonError("acc pair out of range")


@dataclass(frozen=True)
class Nba:
    """Nondeterministic Buchi automaton with accepting transitions."""

    alphabet: Alphabet
    state_count: int
    initials: frozenset[int]
    trans: frozenset[tuple[int, int, int]]
    acc: frozenset[tuple[int, int, int]]

    def __post_init__(self) -> None:
        if not self.acc <= self.trans:
            raise AutomatonError("acc must be a subset of trans")
        for s in self.initials:
            if not 0 <= s < self.state_count:
                raise AutomatonError("initial state out of range")
        for s, a, t in self.trans:
            ok = 0 <= s < self.state_count and 0 <= t < self.state_count
            if not (ok and 0 <= a < self.alphabet.size):
                raise AutomatonError("transition out of range")


@dataclass(frozen=True)
class UpWord:
    """The ultimately periodic word prefix . period^omega."""

    prefix: Word
    period: Word

    def __post_init__(self) -> None:
        if not self.period:
            raise AutomatonError("period must be nonempty")


@dataclass(frozen=True)
class Lasso:
    """An emptiness witness: stem into a loop."""

    stem: Word
    loop: Word

    def __post_init__(self) -> None:
        if not self.loop:
            raise AutomatonError("loop must be nonempty")

    def upword(self) -> UpWord:
        return UpWord(self.stem, self.loop)


def run_word(ts: DetTS, state: int, w: Word) -> int:
    for a in w:
        if not 0 <= a < ts.alphabet.size:
            raise AlphabetError(f"letter index {a} outside alphabet")
        state = ts.delta[state][a]
    return state


def member_upword_det(a: DetOmega, w: UpWord) -> bool:
    """Decide u . v^omega in L(a) by iterating the period until the state
    sequence at period boundaries cycles."""
    s = run_word(a.ts, a.ts.initial, w.prefix)
    seen: dict[int, int] = {}
    flags: list[bool] = []
    while s not in seen:
        seen[s] = len(flags)
        hit = False
        for letter in w.period:
            if (s, letter) in a.acc:
                hit = True
            s = a.ts.delta[s][letter]
        flags.append(hit)
    inf_hit = any(flags[seen[s]:])
    return inf_hit if a.polarity == BUCHI else not inf_hit


def _lasso_graph(w: UpWord) -> tuple[list[int], int]:
    """Positions of the lasso word with their letters; returns (letters,
    loop_start).  Position i reads letters[i] and moves to i+1, wrapping the
    last position back to loop_start."""
    letters = list(w.prefix) + list(w.period)
    return letters, len(w.prefix)


def member_upword_nba(a: Nba, w: UpWord) -> bool:
    """Decide membership by producting a with the lasso graph of (u, v) and
    searching for a reachable cycle through an accepting transition."""
    letters, loop_start = _lasso_graph(w)
    length = len(letters)
    by_source: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for tr in a.trans:
        by_source.setdefault((tr[0], tr[1]), []).append(tr)

    index: dict[tuple[int, int], int] = {}
    nodes: list[tuple[int, int]] = []

    def node(q: int, pos: int) -> int:
        key = (q, pos)
        if key not in index:
            index[key] = len(nodes)
            nodes.append(key)
        return index[key]

    queue = deque(node(q, 0) for q in sorted(a.initials))
    edges: list[tuple[int, int, bool]] = []
    visited = set(queue)
    while queue:
        n = queue.popleft()
        q, pos = nodes[n]
        letter = letters[pos]
        nxt_pos = pos + 1 if pos + 1 < length else loop_start
        for tr in by_source.get((q, letter), ()):
            m = node(tr[2], nxt_pos)
            edges.append((n, m, tr in a.acc))
            if m not in visited:
                visited.add(m)
                queue.append(m)

    succ: list[list[int]] = [[] for _ in nodes]
    for s, t, _ in edges:
        succ[s].append(t)
    comp = _scc_ids(succ)
    return any(comp[s] == comp[t] for s, t, hit in edges if hit)


def dfa_product(a: Dfa, b: Dfa, final_rule: Callable[[bool, bool], bool]) -> Dfa:
    """Reachable product DFA; (s, t) is final per final_rule."""
    if a.ts.alphabet != b.ts.alphabet:
        raise AlphabetError("alphabet mismatch in dfa_product")
    alphabet = a.ts.alphabet
    index: dict[tuple[int, int], int] = {}
    pairs: list[tuple[int, int]] = []

    def node(p: tuple[int, int]) -> int:
        if p not in index:
            index[p] = len(pairs)
            pairs.append(p)
        return index[p]

    node((a.ts.initial, b.ts.initial))
    delta: list[tuple[int, ...]] = []
    i = 0
    while i < len(pairs):
        s, t = pairs[i]
        delta.append(tuple(node((a.ts.delta[s][x], b.ts.delta[t][x]))
                           for x in range(alphabet.size)))
        i += 1
    finals = frozenset(i for i, (s, t) in enumerate(pairs)
                       if final_rule(s in a.finals, t in b.finals))
    ts = DetTS(alphabet, len(pairs), 0, tuple(delta))
    return Dfa(ts, finals)


def _reachable_order(ts: DetTS) -> list[int]:
    order = [ts.initial]
    seen = {ts.initial}
    i = 0
    while i < len(order):
        s = order[i]
        for a in range(ts.alphabet.size):
            t = ts.delta[s][a]
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    return order


def canonical_dfa(a: Dfa) -> Dfa:
    """Renumber reachable states in BFS order (letters in alphabet order)."""
    order = _reachable_order(a.ts)
    rename = {s: i for i, s in enumerate(order)}
    delta = tuple(tuple(rename[a.ts.delta[s][x]] for x in range(a.ts.alphabet.size))
                  for s in order)
    finals = frozenset(rename[s] for s in a.finals if s in rename)
    return Dfa(DetTS(a.ts.alphabet, len(order), 0, delta), finals)


def dfa_minimize(a: Dfa) -> Dfa:
    """Minimal complete DFA via partition refinement; states are exactly the
    Nerode classes of L(a)."""
    order = _reachable_order(a.ts)
    pos = {s: i for i, s in enumerate(order)}
    nletters = a.ts.alphabet.size
    block = [1 if s in a.finals else 0 for s in order]
    while True:
        sigs: dict[tuple[int, ...], int] = {}
        new_block = []
        for i, s in enumerate(order):
            sig = (block[i],) + tuple(block[pos[a.ts.delta[s][x]]]
                                      for x in range(nletters))
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new_block.append(sigs[sig])
        if new_block == block:
            break
        block = new_block
    nblocks = max(block) + 1
    rep = [-1] * nblocks
    for i in range(len(order)):
        if rep[block[i]] < 0:
            rep[block[i]] = i
    delta = tuple(tuple(block[pos[a.ts.delta[order[rep[b]]][x]]]
                        for x in range(nletters)) for b in range(nblocks))
    finals = frozenset(b for b in range(nblocks) if order[rep[b]] in a.finals)
    ts = DetTS(a.ts.alphabet, nblocks, block[0], delta)
    return canonical_dfa(Dfa(ts, finals))


def dfa_lang_equal(a: Dfa, b: Dfa) -> bool:
    diff = dfa_product(a, b, lambda x, y: x != y)
    return not diff.finals


def dfa_isomorphic(a: Dfa, b: Dfa) -> bool:
    ca, cb = canonical_dfa(a), canonical_dfa(b)
    return ca.ts.delta == cb.ts.delta and ca.finals == cb.finals \
        and ca.ts.alphabet == cb.ts.alphabet


def _scc_ids(succ: Sequence[Iterable[int]]) -> list[int]:
    """Tarjan SCC ids (iterative); ids are in reverse topological order of
    discovery, but callers should rely on equality only."""
    n = len(succ)
    ids = [-1] * n
    low = [0] * n
    num = [-1] * n
    counter = 0
    comp = 0
    stack: list[int] = []
    on_stack = [False] * n
    for root in range(n):
        if num[root] >= 0:
            continue
        work: list[tuple[int, Iterable[int]]] = [(root, iter(succ[root]))]
        num[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if num[w] < 0:
                    num[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], num[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == num[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    ids[w] = comp
                    if w == v:
                        break
                comp += 1
    return ids


def sccs(succ: Sequence[Iterable[int]]) -> list[list[int]]:
    """Maximal SCCs of a finite graph, in topological order."""
    ids = _scc_ids(succ)
    ncomp = max(ids) + 1 if ids else 0
    groups: list[list[int]] = [[] for _ in range(ncomp)]
    for v, c in enumerate(ids):
        groups[c].append(v)
    # Tarjan emits components in reverse topological order
    return [sorted(g) for g in reversed(groups)]


def _bfs_words(adj: dict[int, list[tuple[int, int]]], sources: Iterable[int],
               allowed: frozenset[int] | None = None) -> dict[int, Word]:
    """Shortest, lexicographically least word from sources to each reachable
    state; adjacency lists must be sorted by (letter, target)."""
    words: dict[int, Word] = {}
    queue: deque[int] = deque()
    for s in sorted(set(sources)):
        if s not in words:
            words[s] = ()
            queue.append(s)
    while queue:
        s = queue.popleft()
        for letter, t in adj.get(s, ()):
            if allowed is not None and t not in allowed:
                continue
            if t not in words:
                words[t] = words[s] + (letter,)
                queue.append(t)
    return words


def one_pair_rabin_empty(a: Nba,
                         avoid: frozenset[tuple[int, int, int]] = frozenset()
                         ) -> Lasso | None:
    """Search for a reachable cycle containing a transition of a.acc and no
    transition of ``avoid``.  Stems may still cross ``avoid`` transitions.

    Returns None when empty, else a deterministic witness: shortest stem to
    the accepting edge, shortest loop back, ties broken lexicographically.
    """
    full_adj: dict[int, list[tuple[int, int]]] = {}
    good_adj: dict[int, list[tuple[int, int]]] = {}
    for s, l, t in sorted(a.trans):
        full_adj.setdefault(s, []).append((l, t))
        if (s, l, t) not in avoid:
            good_adj.setdefault(s, []).append((l, t))
    stems = _bfs_words(full_adj, a.initials)
    reach = frozenset(stems)

    succ: list[list[int]] = [[] for _ in range(a.state_count)]
    for s in reach:
        for _, t in good_adj.get(s, ()):
            if t in reach:
                succ[s].append(t)
    comp = _scc_ids(succ)

    best: tuple[tuple[int, int, Word, Word], Lasso] | None = None
    for s, l, t in sorted(a.acc - avoid):
        if s not in reach or t not in reach or comp[s] != comp[t]:
            continue
        back = _bfs_words(good_adj, [t], allowed=reach).get(s)
        if back is None:
            continue
        stem, loop = stems[s], (l,) + back
        key = (len(stem) + len(loop), len(stem), stem, loop)
        if best is None or key < best[0]:
            best = (key, Lasso(stem, loop))
    return best[1] if best else None


def det_to_nba(d: DetOmega, initial: int | None = None) -> Nba:
    """View a deterministic Buchi automaton as an NBA (optionally re-rooted)."""
    if d.polarity != BUCHI:
        raise AutomatonError("det_to_nba expects Buchi polarity")
    ts = d.ts
    trans = frozenset((s, a, ts.delta[s][a])
                      for s in range(ts.state_count) for a in range(ts.alphabet.size))
    acc = frozenset((s, a, ts.delta[s][a]) for s, a in d.acc)
    start = ts.initial if initial is None else initial
    return Nba(ts.alphabet, ts.state_count, frozenset([start]), trans, acc)


def _product_with_det(a: Nba, b: DetOmega) -> tuple[
        Nba, frozenset[tuple[int, int, int]]]:
    """Reachable product of an NBA with a deterministic Buchi automaton.
    Returns the product (acc = a's accepting transitions) and the transition
    set stemming from b's accepting transitions."""
    if a.alphabet != b.ts.alphabet:
        raise AlphabetError("alphabet mismatch")
    by_source: dict[int, list[tuple[int, int, int]]] = {}
    for tr in sorted(a.trans):
        by_source.setdefault(tr[0], []).append(tr)

    index: dict[tuple[int, int], int] = {}
    nodes: list[tuple[int, int]] = []

    def node(p: tuple[int, int]) -> int:
        if p not in index:
            index[p] = len(nodes)
            nodes.append(p)
        return index[p]

    initials = frozenset(node((q, b.ts.initial)) for q in sorted(a.initials))
    trans: set[tuple[int, int, int]] = set()
    acc: set[tuple[int, int, int]] = set()
    b_acc: set[tuple[int, int, int]] = set()
    i = 0
    while i < len(nodes):
        qa, qb = nodes[i]
        for s, l, t in by_source.get(qa, ()):
            m = node((t, b.ts.delta[qb][l]))
            tr = (i, l, m)
            trans.add(tr)
            if (s, l, t) in a.acc:
                acc.add(tr)
            if (qb, l) in b.acc:
                b_acc.add(tr)
        i += 1
    product = Nba(a.alphabet, len(nodes), initials,
                  frozenset(trans), frozenset(acc))
    return product, frozenset(b_acc)


def nba_dba_included(a: Nba, b: DetOmega) -> Lasso | bool:
    """True iff L(a) is a subset of L(b); otherwise a lasso in L(a) \\ L(b)."""
    if b.polarity != BUCHI:
        raise AutomatonError("nba_dba_included expects a Buchi right side")
    product, b_acc = _product_with_det(a, b)
    witness = one_pair_rabin_empty(product, avoid=b_acc)
    return True if witness is None else witness


def nba_dba_intersection_witness(a: Nba, b: DetOmega) -> Lasso | None:
    """A lasso in L(a) /\\ L(b), or None if the intersection is empty."""
    if b.polarity != BUCHI:
        raise AutomatonError("intersection expects a Buchi right side")
    product, b_acc = _product_with_det(a, b)
    return _two_buchi_witness(product, product.acc, b_acc)


def nba_nba_intersection_witness(a: Nba, b: Nba) -> Lasso | None:
    """A lasso in L(a) /\\ L(b) of two NBAs, or None when empty."""
    if a.alphabet != b.alphabet:
        raise AlphabetError("alphabet mismatch")
    a_by: dict[tuple[int, int], list[int]] = {}
    b_by: dict[tuple[int, int], list[int]] = {}
    for s, l, t in sorted(a.trans):
        a_by.setdefault((s, l), []).append(t)
    for s, l, t in sorted(b.trans):
        b_by.setdefault((s, l), []).append(t)

    index: dict[tuple[int, int], int] = {}
    nodes: list[tuple[int, int]] = []

    def node(p: tuple[int, int]) -> int:
        if p not in index:
            index[p] = len(nodes)
            nodes.append(p)
        return index[p]

    initials = frozenset(node((p, q))
                         for p in sorted(a.initials) for q in sorted(b.initials))
    trans: set[tuple[int, int, int]] = set()
    a_acc: set[tuple[int, int, int]] = set()
    b_acc: set[tuple[int, int, int]] = set()
    i = 0
    while i < len(nodes):
        qa, qb = nodes[i]
        for l in range(a.alphabet.size):
            for ta in a_by.get((qa, l), ()):
                for tb in b_by.get((qb, l), ()):
                    tr = (i, l, node((ta, tb)))
                    trans.add(tr)
                    if (qa, l, ta) in a.acc:
                        a_acc.add(tr)
                    if (qb, l, tb) in b.acc:
                        b_acc.add(tr)
        i += 1
    product = Nba(a.alphabet, len(nodes), initials,
                  frozenset(trans), frozenset(a_acc))
    return _two_buchi_witness(product, frozenset(a_acc), frozenset(b_acc))


def _two_buchi_witness(g: Nba, first: frozenset[tuple[int, int, int]],
                       second: frozenset[tuple[int, int, int]]) -> Lasso | None:
    """Witness for a run of g hitting both transition sets infinitely often,
    via the standard two-phase degeneralization."""
    index: dict[tuple[int, int], int] = {}
    nodes: list[tuple[int, int]] = []

    def node(p: tuple[int, int]) -> int:
        if p not in index:
            index[p] = len(nodes)
            nodes.append(p)
        return index[p]

    by_source: dict[int, list[tuple[int, int, int]]] = {}
    for tr in sorted(g.trans):
        by_source.setdefault(tr[0], []).append(tr)
    initials = frozenset(node((q, 0)) for q in sorted(g.initials))
    trans: set[tuple[int, int, int]] = set()
    acc: set[tuple[int, int, int]] = set()
    i = 0
    while i < len(nodes):
        q, phase = nodes[i]
        for tr in by_source.get(q, ()):
            _, l, t = tr
            if phase == 0:
                nphase = 1 if tr in first else 0
                marked = False
            else:
                nphase = 0 if tr in second else 1
                marked = tr in second
            ptr = (i, l, node((t, nphase)))
            trans.add(ptr)
            if marked:
                acc.add(ptr)
        i += 1
    product = Nba(g.alphabet, len(nodes), initials,
                  frozenset(trans), frozenset(acc))
    return one_pair_rabin_empty(product)


def dba_state_equiv(d: DetOmega, p: int, q: int) -> bool:
    """True iff the residual languages of d from p and from q coincide."""
    if p == q:
        return True
    from_p = det_to_nba(d, p)
    from_q = det_to_nba(d, q)
    as_dba_p = replace(d, ts=replace(d.ts, initial=p))
    as_dba_q = replace(d, ts=replace(d.ts, initial=q))
    return nba_dba_included(from_p, as_dba_q) is True \
        and nba_dba_included(from_q, as_dba_p) is True


def shortest_state_words(ts: DetTS) -> dict[int, Word]:
    """Shortest lexicographically least access word for each reachable state."""
    adj = {s: [(x, ts.delta[s][x]) for x in range(ts.alphabet.size)]
           for s in range(ts.state_count)}
    return _bfs_words(adj, [ts.initial])
