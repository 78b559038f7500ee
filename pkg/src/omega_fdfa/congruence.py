"""Leading right congruence and the four canonical progress DFAs computed
from a reference deterministic Buchi automaton, plus the co-safety
cross-check construction and a bounded refinement checker."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core_automata import (
    AutomatonError,
    BUCHI,
    DetOmega,
    DetTS,
    Dfa,
    ResourceLimitError,
    UpWord,
    Word,
    _reachable_order,
    _scc_ids,
    dba_state_equiv,
    dfa_minimize,
    dfa_product,
    member_upword_det,
    shortest_state_words,
)
from .fdfa import Fdfa, LIMIT, PERIODIC, RECURRENT, SYNTACTIC

PROFILE_CAP = 200_000

Profile = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class LeadingQuotient:
    """The reference DBA quotiented by residual-language equivalence.

    ``class_of[s]`` is the class id of reference state s (-1 if unreachable);
    ``reps[c]`` is the least reference state id in class c; ``rep_words[c]``
    is the shortest, lexicographically least access word of class c.
    """

    ref: DetOmega
    class_of: tuple[int, ...]
    leading: DetTS
    reps: tuple[int, ...]
    rep_words: tuple[Word, ...]


def compute_leading(d: DetOmega) -> LeadingQuotient:
    if d.polarity != BUCHI:
        raise AutomatonError("reference must be a deterministic Buchi automaton")
    ts = d.ts
    reachable = sorted(_reachable_order(ts))
    groups: list[list[int]] = []
    for s in reachable:
        for g in groups:
            if dba_state_equiv(d, g[0], s):
                g.append(s)
                break
        else:
            groups.append([s])
    provisional = [-1] * ts.state_count
    for gi, g in enumerate(groups):
        for s in g:
            provisional[s] = gi

    # quotient transitions, with a well-definedness check
    raw_delta: list[tuple[int, ...]] = []
    for g in groups:
        row = tuple(provisional[ts.delta[g[0]][a]] for a in range(ts.alphabet.size))
        for s in g[1:]:
            if tuple(provisional[ts.delta[s][a]]
                     for a in range(ts.alphabet.size)) != row:
                raise AutomatonError("leading quotient is not well-defined")
        raw_delta.append(row)

    # canonical class numbering: BFS from the initial class in letter order
    order = [provisional[ts.initial]]
    seen = set(order)
    i = 0
    while i < len(order):
        for a in range(ts.alphabet.size):
            t = raw_delta[order[i]][a]
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    rename = {g: c for c, g in enumerate(order)}
    class_of = tuple(rename[provisional[s]] if provisional[s] >= 0 else -1
                     for s in range(ts.state_count))
    delta = tuple(tuple(rename[raw_delta[g][a]] for a in range(ts.alphabet.size))
                  for g in order)
    leading = DetTS(ts.alphabet, len(order), 0, delta)
    reps = tuple(min(groups[g]) for g in order)
    words = shortest_state_words(leading)
    rep_words = tuple(words[c] for c in range(len(order)))
    return LeadingQuotient(d, class_of, leading, reps, rep_words)


def _letter_profiles(d: DetOmega) -> list[Profile]:
    ts = d.ts
    return [tuple((ts.delta[s][a], 1 if (s, a) in d.acc else 0)
                  for s in range(ts.state_count))
            for a in range(ts.alphabet.size)]


def _compose(p: Profile, lp: Profile) -> Profile:
    return tuple((lp[s][0], b | lp[s][1]) for s, b in p)


def _profile_omega_accepts(p: Profile, start: int) -> bool:
    """Whether z^omega is accepted from ``start`` when z has profile p."""
    seen: dict[int, int] = {}
    bits: list[int] = []
    s = start
    while s not in seen:
        seen[s] = len(bits)
        t, b = p[s]
        bits.append(b)
        s = t
    return any(bits[seen[s]:])


def periodic_lang_dfa(lq: LeadingQuotient, u_class: int,
                      cap: int = PROFILE_CAP) -> Dfa:
    """DFA over profile elements recognizing {z : u . z^omega in L};
    epsilon is non-final by convention (the identity profile has no bits)."""
    d = lq.ref
    nletters = d.ts.alphabet.size
    letters = _letter_profiles(d)
    identity: Profile = tuple((q, 0) for q in range(d.ts.state_count))
    index: dict[Profile, int] = {identity: 0}
    profiles: list[Profile] = [identity]
    delta: list[tuple[int, ...]] = []
    i = 0
    while i < len(profiles):
        row = []
        for a in range(nletters):
            nxt = _compose(profiles[i], letters[a])
            if nxt not in index:
                if len(profiles) >= cap:
                    raise ResourceLimitError(
                        f"profile DFA exceeded cap of {cap} states")
                index[nxt] = len(profiles)
                profiles.append(nxt)
            row.append(index[nxt])
        delta.append(tuple(row))
        i += 1
    rep = lq.reps[u_class]
    finals = frozenset(i for i, p in enumerate(profiles)
                       if _profile_omega_accepts(p, rep))
    ts = DetTS(d.ts.alphabet, len(profiles), 0, tuple(delta))
    return Dfa(ts, finals)


def cu_dfa(lq: LeadingQuotient, u_class: int) -> Dfa:
    """Leading TS rooted and final at u_class; its language minus epsilon is
    {v : u . v ~ u}."""
    if not 0 <= u_class < lq.leading.state_count:
        raise AutomatonError("invalid leading class")
    return Dfa(replace(lq.leading, initial=u_class), frozenset([u_class]))


def _epsilon_joins_accepted_returns(d: Dfa) -> Dfa:
    """Copy of d whose initial state is final iff L(d) contains a nonempty
    word, realized with a fresh initial state so no other word is affected.

    FDFA acceptance only ever runs a progress DFA on nonempty periods, so
    the membership of epsilon is a free choice; the recurrent progress DFA
    places epsilon with the accepted returns whenever any exist, which keeps
    the automaton at its canonical size."""
    ts = d.ts
    start = {ts.delta[ts.initial][a] for a in range(ts.alphabet.size)}
    seen = set(start)
    queue = list(start)
    while queue:
        s = queue.pop()
        for a in range(ts.alphabet.size):
            t = ts.delta[s][a]
            if t not in seen:
                seen.add(t)
                queue.append(t)
    nonempty = any(s in d.finals for s in seen)
    if not nonempty:
        return Dfa(ts, d.finals - {ts.initial})
    iota = ts.state_count
    delta = ts.delta + (ts.delta[ts.initial],)
    new_ts = DetTS(ts.alphabet, iota + 1, iota, delta)
    return Dfa(new_ts, d.finals | {iota})


def progress_dfa(lq: LeadingQuotient, u_class: int, flavor: str,
                 cap: int = PROFILE_CAP) -> Dfa:
    per = periodic_lang_dfa(lq, u_class, cap)
    if flavor == PERIODIC:
        return dfa_minimize(per)
    cu = cu_dfa(lq, u_class)
    if flavor == RECURRENT:
        prod = dfa_product(cu, per, lambda c, p: c and p)
        return dfa_minimize(_epsilon_joins_accepted_returns(prod))
    if flavor == LIMIT:
        return dfa_minimize(dfa_product(cu, per, lambda c, p: (not c) or p))
    if flavor == SYNTACTIC:
        # classes are exactly reachable (leading-from-u, limit-class) pairs,
        # so the product stays unminimized
        limit = progress_dfa(lq, u_class, LIMIT, cap)
        return dfa_product(cu, limit, lambda c, p: c and p)
    raise AutomatonError(f"unknown flavor {flavor!r}")


def build_canonical_fdfa(d: DetOmega, flavor: str,
                         cap: int = PROFILE_CAP) -> Fdfa:
    lq = compute_leading(d)
    progress = tuple(progress_dfa(lq, c, flavor, cap)
                     for c in range(lq.leading.state_count))
    return Fdfa(lq.leading, progress, labels=lq.rep_words, flavor=flavor)


def cosafety_vu_dfa(lq: LeadingQuotient, u_class: int) -> Dfa:
    """DFA for V_u = {x in Sigma+ : forall v, u.x.v ~ u implies
    u.(xv)^omega in L}, built per reference state and intersected over the
    class members."""
    d = lq.ref
    if d.polarity != BUCHI:
        raise AutomatonError("co-safety construction needs a Buchi reference")
    ts = d.ts
    n = ts.state_count
    succ: list[list[int]] = [[] for _ in range(n)]
    for s in range(n):
        for a in range(ts.alphabet.size):
            if (s, a) not in d.acc:
                succ[s].append(ts.delta[s][a])
    comp = _scc_ids(succ)
    top = n

    def d_q(q: int) -> Dfa:
        delta = []
        for p in range(n):
            row = []
            for a in range(ts.alphabet.size):
                t = ts.delta[p][a]
                if (p, a) in d.acc or comp[p] != comp[t]:
                    row.append(top)
                else:
                    row.append(t)
            delta.append(tuple(row))
        delta.append(tuple(top for _ in range(ts.alphabet.size)))
        return Dfa(DetTS(ts.alphabet, n + 1, q, tuple(delta)),
                   frozenset([top]))

    members = [s for s in range(n) if lq.class_of[s] == u_class]
    if not members:
        raise AutomatonError("invalid leading class")
    result = d_q(members[0])
    for q in members[1:]:
        result = dfa_product(result, d_q(q), lambda x, y: x and y)
    return dfa_minimize(result)


def _short_words(nletters: int, bound: int) -> list[Word]:
    out: list[Word] = [()]
    layer: list[Word] = [()]
    for _ in range(bound):
        layer = [w + (a,) for w in layer for a in range(nletters)]
        out.extend(layer)
    return out


def check_rp_refinement(lq: LeadingQuotient, u_class: int, flavor: str,
                        bound: int) -> list[tuple[Word, Word, Word]]:
    """For every pair of words the flavor's progress DFA identifies, verify
    the underspecified-congruence condition: whenever both u.x.v ~ u and
    u.y.v ~ u and both periods are nonempty, the periods (xv)^omega and
    (yv)^omega agree on membership.  Returns the list of violating
    (x, y, v) triples (expected empty)."""
    d = lq.ref
    p = progress_dfa(lq, u_class, flavor)
    rep_state = lq.reps[u_class]
    words = _short_words(d.ts.alphabet.size, bound)

    def returns(z: Word) -> bool:
        s = rep_state
        for a in z:
            s = d.ts.delta[s][a]
        return lq.class_of[s] == u_class

    def omega_member(z: Word) -> bool:
        if not z:
            return False
        rooted = replace(d, ts=replace(d.ts, initial=rep_state))
        return member_upword_det(rooted, UpWord((), z))

    groups: dict[int, list[Word]] = {}
    for x in words:
        s = p.ts.initial
        for a in x:
            s = p.ts.delta[s][a]
        groups.setdefault(s, []).append(x)

    violations: list[tuple[Word, Word, Word]] = []
    for group in groups.values():
        rep = group[0]
        for x in group[1:]:
            for v in words:
                if not (x + v) or not (rep + v):
                    continue
                if returns(x + v) and returns(rep + v):
                    if omega_member(x + v) != omega_member(rep + v):
                        violations.append((x, rep, v))
    return violations
