"""Command-line front end over line-oriented equation files.

File format:

    p 2
    n 3
    matrix g
    1 1 0
    0 1 1
    0 0 1
    word x^-1 x^-1 g

Blank lines between blocks are allowed.  Matrices use the shared text
format (rows of space-separated residues, unit diagonal).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .embeddings import PHI, PSI, build_embedding
from .modarith import is_prime, power_exponent
from .oracle import EXHAUSTIVE, RANDOM, CapExceededError, SearchSpec, brute_solve
from .solver import (
    IN_GROUP,
    NotRegularError,
    UnsupportedCaseError,
    solve_regular,
)
from .ut_group import GroupElement
from .words import (
    Word,
    WordSyntaxError,
    atom_bracket,
    atom_x_exponent,
    collect,
    evaluate_word,
    parse_word,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSUPPORTED = 2
EXIT_NOT_REGULAR = 3
EXIT_NO_SOLUTION = 4


class EquationFileError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class EquationFile:
    p: int
    n: int
    matrices: dict[str, GroupElement]
    word_text: str
    word: Word


def parse_equation_file(text: str) -> EquationFile:
    lines = text.splitlines()
    cursor = 0

    def next_content() -> tuple[str | None, int]:
        nonlocal cursor
        while cursor < len(lines) and not lines[cursor].strip():
            cursor += 1
        if cursor >= len(lines):
            return None, len(lines)
        cursor += 1
        return lines[cursor - 1].strip(), cursor

    def expect_scalar(key: str) -> int:
        line, no = next_content()
        parts = line.split() if line else []
        if len(parts) != 2 or parts[0] != key:
            raise EquationFileError(f"expected '{key} <integer>'", no)
        try:
            return int(parts[1])
        except ValueError:
            raise EquationFileError(f"bad integer {parts[1]!r}", no) from None

    p = expect_scalar("p")
    if not is_prime(p):
        raise EquationFileError(f"{p} is not prime", cursor)
    n = expect_scalar("n")
    if n < 2:
        raise EquationFileError("n must be >= 2", cursor)

    matrices: dict[str, GroupElement] = {}
    word_text: str | None = None
    while True:
        line, no = next_content()
        if line is None:
            break
        head, _, rest = line.partition(" ")
        if head == "matrix":
            name = rest.strip()
            if not name.isidentifier() or name == "x":
                raise EquationFileError(f"bad matrix name {rest!r}", no)
            if name in matrices:
                raise EquationFileError(f"duplicate matrix {name!r}", no)
            rows = []
            for _ in range(n):
                row_line, row_no = next_content()
                if row_line is None:
                    raise EquationFileError(f"matrix {name!r} is missing rows", no)
                toks = row_line.split()
                if len(toks) != n:
                    raise EquationFileError(
                        f"expected {n} entries, got {len(toks)}", row_no
                    )
                try:
                    rows.append([int(tok) for tok in toks])
                except ValueError:
                    raise EquationFileError("bad matrix entry", row_no) from None
            try:
                matrices[name] = GroupElement.from_matrix(p, rows)
            except ValueError as exc:
                raise EquationFileError(str(exc), no) from None
        elif head == "word":
            word_text = rest.strip()
            break
        else:
            raise EquationFileError(f"unexpected directive {head!r}", no)
    if word_text is None:
        raise EquationFileError("missing 'word' line", len(lines))
    try:
        word = parse_word(word_text, matrices, p=p, n=n)
    except WordSyntaxError as exc:
        raise EquationFileError(str(exc), len(lines)) from None
    return EquationFile(p, n, matrices, word_text, word)


def _load(path: str) -> EquationFile:
    return parse_equation_file(Path(path).read_text())


# -- commands ------------------------------------------------------------------

def cmd_solve(args) -> int:
    eq = _load(args.path)
    try:
        report = solve_regular(eq.word)
    except NotRegularError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NOT_REGULAR
    except UnsupportedCaseError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    print(f"case {report.case}")
    print(f"m {report.m}")
    kind = "none" if report.case == IN_GROUP else report.embedding.kind
    print(f"embedding {kind}")
    print(report.solution.to_text())
    print("VERIFIED")
    if args.trace:
        for line in report.trace_lines():
            print(line)
    return EXIT_OK


def cmd_normalize(args) -> int:
    eq = _load(args.path)
    nf = collect(eq.word)
    names = eq.word.constant_names()
    u1_text = "*".join(names) if names else "1"
    tail_text = "".join(atom_bracket(a) for a in nf.tail)
    print(f"eps={nf.epsilon}; u1={u1_text}; tail={tail_text}")
    print(nf.u1.to_text())
    total = sum(atom_x_exponent(a) for a in nf.tail)
    print(f"tail x-exponent: {total}")
    return EXIT_OK


def cmd_embed(args) -> int:
    eq = _load(args.path)
    if args.s < 0:
        print(f"invalid s {args.s}", file=sys.stderr)
        return EXIT_INPUT
    emb = build_embedding(args.kind, eq.n, eq.p, eq.p ** args.s)
    for name, g in eq.matrices.items():
        print(name)
        print(emb.apply(g).to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    eq = _load(args.path)
    try:
        candidate = GroupElement.from_text(eq.p, Path(args.candidate).read_text())
    except ValueError as exc:
        print(f"bad candidate: {exc}", file=sys.stderr)
        return EXIT_INPUT
    m = candidate.m
    if m == eq.n:
        lift = None
    else:
        if (m - 1) % (eq.n - 1) != 0:
            print(f"candidate size {m} does not fit over n={eq.n}", file=sys.stderr)
            return EXIT_INPUT
        q = (m - 1) // (eq.n - 1)
        if power_exponent(q, eq.p) is None:
            print(f"candidate size {m} is not a p-power refinement", file=sys.stderr)
            return EXIT_INPUT
        lift = build_embedding(args.kind, eq.n, eq.p, q)
    value = evaluate_word(eq.word, candidate, lift=lift)
    if value.is_identity():
        print("SOLUTION")
        return EXIT_OK
    print("NOT A SOLUTION")
    return EXIT_NO_SOLUTION


def cmd_oracle(args) -> int:
    eq = _load(args.path)
    if args.s > 0:
        lift = build_embedding(args.kind, eq.n, eq.p, eq.p ** args.s)
        m = lift.m
    else:
        lift = None
        m = eq.n
    spec = SearchSpec(
        p=eq.p,
        m=m,
        word=eq.word,
        mode=RANDOM if args.mode == "random" else EXHAUSTIVE,
        lift=lift,
        seed=args.seed,
        trials=args.trials,
        cap=args.cap,
    )
    found = brute_solve(spec)
    if found is None:
        print("NO SOLUTION")
        return EXIT_NO_SOLUTION
    print(found.to_text())
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="uteq",
        description="solve, normalize, embed, verify and brute-force "
        "equations over unitriangular groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve the equation and print the root")
    sp.add_argument("path")
    sp.add_argument("--trace", action="store_true", help="print the correction log")
    sp.set_defaults(func=cmd_solve)

    np_ = sub.add_parser("normalize", help="print the collected normal form")
    np_.add_argument("path")
    np_.set_defaults(func=cmd_normalize)

    ep = sub.add_parser("embed", help="print embedded images of the matrices")
    ep.add_argument("path")
    ep.add_argument("--kind", choices=(PHI, PSI), default=PHI)
    ep.add_argument("--s", type=int, default=1)
    ep.set_defaults(func=cmd_embed)

    vp = sub.add_parser("verify", help="check a candidate root")
    vp.add_argument("path")
    vp.add_argument("--candidate", required=True)
    vp.add_argument("--kind", choices=(PHI, PSI), default=PHI)
    vp.set_defaults(func=cmd_verify)

    op = sub.add_parser("oracle", help="brute-force search for a root")
    op.add_argument("path")
    op.add_argument("--kind", choices=(PHI, PSI), default=PHI)
    op.add_argument("--s", type=int, default=0,
                    help="search in the refined group with resolution p^s")
    op.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    op.add_argument("--seed", type=int, default=0)
    op.add_argument("--trials", type=int, default=10000)
    op.add_argument("--cap", type=int, default=2 ** 20)
    op.set_defaults(func=cmd_oracle)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EquationFileError, FileNotFoundError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
