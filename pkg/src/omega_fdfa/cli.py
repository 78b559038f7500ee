"""Command-line workbench: text formats for automata and FDFAs plus the
canon / decide / translate / learn / bench-ln / accepts subcommands.

Exit codes: 0 success or Yes, 3 decision-No, 2 input error, 4 resource or
iteration cap.
"""

from __future__ import annotations

import argparse
import sys
import time

from .congruence import build_canonical_fdfa
from .core_automata import (
    Alphabet,
    AutomatonError,
    BUCHI,
    COBUCHI,
    DetOmega,
    DetTS,
    Dfa,
    Nba,
    ResourceLimitError,
    UpWord,
    Word,
    member_upword_det,
    member_upword_nba,
)
from .decide import decide_dba_recognizable
from .fdfa import FLAVORS, Fdfa, LIMIT, Saturated, accepts_upword, size_report
from .learn import (
    DbaTeacher,
    FdfaTeacher,
    LearnerLimits,
    QueryLog,
    learn_limit_fdfa,
)
from .translate import fdfa_to_dba, fdfa_to_ldba, fdfa_to_nba
from .zoo import gen_ln

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO = 3
EXIT_RESOURCE = 4


# --------------------------------------------------------------------------
# text formats

class ParseError(AutomatonError):
    pass


def _clean_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _parse_block(lines: list[str], pos: int, alphabet: Alphabet | None
                 ) -> tuple[dict, int]:
    """Parse one automaton block starting at lines[pos]; returns the fields
    and the next position."""
    fields: dict = {"trans": [], "finals": None, "acceptance": None,
                    "alphabet": alphabet}
    while pos < len(lines):
        line = lines[pos]
        key, _, rest = line.partition(":")
        key = key.strip()
        rest = rest.strip()
        if ":" not in line:
            break
        if key == "alphabet":
            fields["alphabet"] = Alphabet(tuple(rest.split()))
        elif key == "states":
            fields["states"] = int(rest)
        elif key == "initial":
            fields["initial"] = int(rest)
        elif key == "acceptance":
            if rest not in ("buchi", "cobuchi", "finals"):
                raise ParseError(f"unknown acceptance {rest!r}")
            fields["acceptance"] = rest
        elif key == "trans":
            parts = rest.split()
            if len(parts) not in (3, 4):
                raise ParseError(f"bad transition line {line!r}")
            if len(parts) == 4 and parts[3] != "acc":
                raise ParseError(f"bad transition flag {parts[3]!r}")
            fields["trans"].append((int(parts[0]), parts[1], int(parts[2]),
                                    len(parts) == 4))
        elif key == "finals":
            fields["finals"] = tuple(int(t) for t in rest.split())
        else:
            raise ParseError(f"unknown field {key!r}")
        pos += 1
    if fields["alphabet"] is None:
        raise ParseError("missing alphabet")
    if "states" not in fields or "initial" not in fields:
        raise ParseError("missing states or initial")
    return fields, pos


def _block_to_automaton(fields: dict) -> Dfa | DetOmega | Nba:
    """Build an automaton from block fields; partial transition tables are
    completed with a fresh rejecting sink."""
    alphabet: Alphabet = fields["alphabet"]
    n = fields["states"]
    if n < 1:
        raise ParseError("states must be >= 1")
    initial = fields["initial"]
    if not 0 <= initial < n:
        raise ParseError("initial out of range")
    acceptance = fields["acceptance"] or "finals"
    table: dict[tuple[int, int], list[tuple[int, bool]]] = {}
    for s, letter, t, acc in fields["trans"]:
        a = alphabet.index(letter)
        if not (0 <= s < n and 0 <= t < n):
            raise ParseError("transition state out of range")
        table.setdefault((s, a), []).append((t, acc))

    deterministic = all(len(v) == 1 for v in table.values())
    if not deterministic:
        if acceptance != "buchi":
            raise ParseError("nondeterminism requires buchi acceptance")
        trans = set()
        acc = set()
        for (s, a), targets in table.items():
            for t, marked in targets:
                trans.add((s, a, t))
                if marked:
                    acc.add((s, a, t))
        return Nba(alphabet, n, frozenset([initial]),
                   frozenset(trans), frozenset(acc))

    total = all((s, a) in table for s in range(n) for a in range(alphabet.size))
    count = n if total else n + 1
    delta = []
    acc_pairs = set()
    for s in range(n):
        row = []
        for a in range(alphabet.size):
            if (s, a) in table:
                t, marked = table[(s, a)][0]
                row.append(t)
                if marked:
                    acc_pairs.add((s, a))
            else:
                row.append(n)
        delta.append(tuple(row))
    if not total:
        delta.append(tuple(n for _ in range(alphabet.size)))
    ts = DetTS(alphabet, count, initial, tuple(delta))
    if acceptance == "finals":
        finals = frozenset(fields["finals"] or ())
        return Dfa(ts, finals)
    polarity = BUCHI if acceptance == "buchi" else COBUCHI
    return DetOmega(ts, frozenset(acc_pairs), polarity)


def parse_automaton(text: str) -> Dfa | DetOmega | Nba:
    lines = _clean_lines(text)
    fields, pos = _parse_block(lines, 0, None)
    if pos != len(lines):
        raise ParseError(f"trailing content: {lines[pos]!r}")
    return _block_to_automaton(fields)


def parse_fdfa(text: str) -> Fdfa:
    lines = _clean_lines(text)
    if not lines or lines[0] != "fdfa":
        raise ParseError("expected an 'fdfa' header")
    pos = 1
    flavor = None
    if pos < len(lines) and lines[pos].startswith("flavor:"):
        flavor = lines[pos].split(":", 1)[1].strip()
        if flavor not in FLAVORS:
            raise ParseError(f"unknown flavor {flavor!r}")
        pos += 1
    if pos >= len(lines) or lines[pos] != "leading":
        raise ParseError("expected a 'leading' block")
    fields, pos = _parse_block(lines, pos + 1, None)
    if fields["acceptance"] is not None or fields["finals"] is not None:
        raise ParseError("the leading block carries no acceptance")
    leading_dfa = _block_to_automaton({**fields, "acceptance": "finals"})
    assert isinstance(leading_dfa, Dfa)
    leading = leading_dfa.ts
    alphabet = leading.alphabet

    progress: dict[int, Dfa] = {}
    while pos < len(lines):
        parts = lines[pos].split()
        if len(parts) != 2 or parts[0] != "progress":
            raise ParseError(f"expected a 'progress <state>' block: {lines[pos]!r}")
        state = int(parts[1])
        fields, pos = _parse_block(lines, pos + 1, alphabet)
        dfa = _block_to_automaton({**fields, "acceptance": "finals"})
        if not isinstance(dfa, Dfa):
            raise ParseError("progress blocks must be DFAs")
        progress[state] = dfa
    if sorted(progress) != list(range(leading.state_count)):
        raise ParseError("need exactly one progress block per leading state")
    return Fdfa(leading, tuple(progress[i] for i in range(leading.state_count)),
                flavor=flavor)


def _format_block(ts: DetTS, acceptance: str,
                  acc_pairs: frozenset[tuple[int, int]] = frozenset(),
                  finals: frozenset[int] | None = None,
                  with_alphabet: bool = True) -> list[str]:
    out = []
    if with_alphabet:
        out.append("alphabet: " + " ".join(ts.alphabet.letters))
    out.append(f"states: {ts.state_count}")
    out.append(f"initial: {ts.initial}")
    if acceptance:
        out.append(f"acceptance: {acceptance}")
    for s in range(ts.state_count):
        for a in range(ts.alphabet.size):
            mark = " acc" if (s, a) in acc_pairs else ""
            out.append(f"trans: {s} {ts.alphabet.letters[a]} {ts.delta[s][a]}{mark}")
    if finals is not None:
        out.append("finals: " + " ".join(str(s) for s in sorted(finals)))
    return out


def format_automaton(obj: Dfa | DetOmega | Nba) -> str:
    if isinstance(obj, Dfa):
        lines = _format_block(obj.ts, "finals", finals=obj.finals)
    elif isinstance(obj, DetOmega):
        lines = _format_block(obj.ts, obj.polarity, acc_pairs=obj.acc)
    else:
        lines = ["alphabet: " + " ".join(obj.alphabet.letters),
                 f"states: {obj.state_count}"]
        if len(obj.initials) != 1:
            raise AutomatonError("the text format carries a single initial")
        lines.append(f"initial: {next(iter(obj.initials))}")
        lines.append("acceptance: buchi")
        for s, a, t in sorted(obj.trans):
            mark = " acc" if (s, a, t) in obj.acc else ""
            lines.append(f"trans: {s} {obj.alphabet.letters[a]} {t}{mark}")
    return "\n".join(lines) + "\n"


def format_fdfa(f: Fdfa) -> str:
    lines = ["fdfa"]
    if f.flavor:
        lines.append(f"flavor: {f.flavor}")
    lines.append("leading")
    lines.extend(_format_block(f.leading, ""))
    for i, p in enumerate(f.progress):
        lines.append(f"progress {i}")
        if f.labels is not None:
            lines.append(f"# rep: {f.leading.alphabet.format_word(f.labels[i])}")
        lines.extend(_format_block(p.ts, "", finals=p.finals,
                                   with_alphabet=False))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# commands

def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_dba(path: str) -> DetOmega:
    obj = parse_automaton(_read(path))
    if not isinstance(obj, DetOmega) or obj.polarity != BUCHI:
        raise ParseError("a deterministic Buchi automaton is required")
    return obj


def _parse_word(alphabet: Alphabet, text: str) -> Word:
    if text in ("", "-"):
        return ()
    return alphabet.parse_word(text)


def cmd_canon(args: argparse.Namespace) -> int:
    try:
        ref = _load_dba(args.input)
        f = build_canonical_fdfa(ref, args.flavor)
    except (AutomatonError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    _write_out(format_fdfa(f), args.out)
    report = size_report(f)
    sizes = ",".join(str(s) for s in report.progress)
    print(f"leading={report.leading} progress={sizes} total={report.total}")
    return EXIT_OK


def cmd_decide(args: argparse.Namespace) -> int:
    try:
        f = parse_fdfa(_read(args.input))
        result = decide_dba_recognizable(f)
    except (AutomatonError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    if result.recognizable:
        print("recognizable: yes")
        return EXIT_OK
    print("recognizable: no")
    print(f"reason: {result.reason}")
    if result.witness is not None:
        alphabet = f.leading.alphabet
        stem = alphabet.format_word(result.witness.stem) or "-"
        loop = alphabet.format_word(result.witness.loop)
        print(f"witness: {stem} {loop}")
    return EXIT_NO


def _single_initial(nba: Nba) -> Nba:
    """Equivalent NBA with one initial state.  The text format carries a
    single initial, so a fresh start state inherits the outgoing transitions
    of every initial; with transition-based acceptance this preserves the
    language."""
    if len(nba.initials) == 1:
        return nba
    start = nba.state_count
    trans = set(nba.trans)
    acc = set(nba.acc)
    for i in nba.initials:
        for s, a, t in nba.trans:
            if s == i:
                trans.add((start, a, t))
                if (s, a, t) in nba.acc:
                    acc.add((start, a, t))
    return Nba(nba.alphabet, start + 1, frozenset([start]),
               frozenset(trans), frozenset(acc))


def cmd_translate(args: argparse.Namespace) -> int:
    try:
        f = parse_fdfa(_read(args.input))
        if args.to == "nba":
            out = format_automaton(_single_initial(fdfa_to_nba(f)))
        elif args.to == "ldba":
            out = format_automaton(_single_initial(fdfa_to_ldba(f).nba))
        else:
            out = format_automaton(fdfa_to_dba(f))
    except (AutomatonError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    _write_out(out, args.out)
    return EXIT_OK


def cmd_learn(args: argparse.Namespace) -> int:
    try:
        kind, _, path = args.teacher.partition(":")
        if kind == "dba" and path:
            ref = _load_dba(path)
            log = QueryLog(ref.ts.alphabet) if args.log else None
            teacher = DbaTeacher(ref, log=log)
        elif kind == "fdfa" and path:
            f = parse_fdfa(_read(path))
            log = QueryLog(f.leading.alphabet) if args.log else None
            teacher = FdfaTeacher(f, log=log)
        else:
            raise ParseError("teacher must be dba:FILE or fdfa:FILE")
    except (AutomatonError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    try:
        hypothesis, stats = learn_limit_fdfa(
            teacher, LearnerLimits(max_iterations=args.max_iterations))
    except ResourceLimitError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    except AutomatonError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        _write_out(format_fdfa(hypothesis), args.out)
    if args.log and log is not None:
        _write_out("\n".join(log.lines) + "\n", args.log)
    report = size_report(hypothesis)
    print(f"leading={report.leading} progress_total={sum(report.progress)} "
          f"mq={stats.mq} eq={stats.eq}")
    return EXIT_OK


def cmd_bench_ln(args: argparse.Namespace) -> int:
    if args.max_n < 1 or args.max_n > 12:
        print("error: --max-n must be between 1 and 12", file=sys.stderr)
        return EXIT_INPUT
    flavors = args.flavors.split(",")
    for flavor in flavors:
        if flavor not in FLAVORS:
            print(f"error: unknown flavor {flavor!r}", file=sys.stderr)
            return EXIT_INPUT
    print("n\tflavor\tleading\tprogress_total\ttotal\tmillis")
    try:
        for n in range(1, args.max_n + 1):
            for flavor in flavors:
                start = time.perf_counter()
                f = build_canonical_fdfa(gen_ln(n), flavor)
                millis = int((time.perf_counter() - start) * 1000)
                report = size_report(f)
                print(f"{n}\t{flavor}\t{report.leading}\t"
                      f"{sum(report.progress)}\t{report.total}\t{millis}")
    except ResourceLimitError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_accepts(args: argparse.Namespace) -> int:
    try:
        text = _read(args.input)
        if _clean_lines(text) and _clean_lines(text)[0] == "fdfa":
            f = parse_fdfa(text)
            alphabet = f.leading.alphabet
            w = UpWord(_parse_word(alphabet, args.u),
                       _parse_word(alphabet, args.v))
            member = accepts_upword(f, w, Saturated())
        else:
            obj = parse_automaton(text)
            if isinstance(obj, Dfa):
                raise ParseError("membership needs an omega-automaton or FDFA")
            alphabet = obj.ts.alphabet if isinstance(obj, DetOmega) else obj.alphabet
            w = UpWord(_parse_word(alphabet, args.u),
                       _parse_word(alphabet, args.v))
            if isinstance(obj, DetOmega):
                member = member_upword_det(obj, w)
            else:
                member = member_upword_nba(obj, w)
    except (AutomatonError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    print("member" if member else "non-member")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omega-fdfa",
        description="canonical FDFA workbench for omega-regular languages")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="build a canonical FDFA from a DBA")
    p.add_argument("input")
    p.add_argument("--flavor", choices=FLAVORS, default=LIMIT)
    p.add_argument("--out")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("decide", help="decide DBA-recognizability")
    p.add_argument("input")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("translate", help="translate an FDFA to an automaton")
    p.add_argument("input")
    p.add_argument("--to", choices=("nba", "ldba", "dba"), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("learn", help="learn a limit FDFA from a teacher")
    p.add_argument("--teacher", required=True, metavar="dba:FILE|fdfa:FILE")
    p.add_argument("--log")
    p.add_argument("--out")
    p.add_argument("--max-iterations", type=int, default=500)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("bench-ln", help="size/time table for the L_n family")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--flavors", default=",".join(FLAVORS))
    p.set_defaults(func=cmd_bench_ln)

    p = sub.add_parser("accepts", help="membership of u.v^omega")
    p.add_argument("input")
    p.add_argument("u", help="prefix; '-' for the empty word")
    p.add_argument("v", help="period (nonempty)")
    p.set_defaults(func=cmd_accepts)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "v", None) == "":
        print("error: the period must be nonempty", file=sys.stderr)
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
