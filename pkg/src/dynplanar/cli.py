"""Line-oriented command interface.

    dynplanar [run] [FILE] [--strict] [--check]
    dynplanar gen --seed N [--vertices N] [--ops N] [--fixture NAME]

Commands, one per line (``#`` starts a comment):

    insert a b | delete a b         update; silent unless rejected
    dist u v                        distance or "unreachable"
    path v x y                      x..y path in v's BFS tree
    state                           "A rebuilds=K" or "B rebuilds=K"
    faces                           face count, "n/a" outside state A
    canon v ve [x]                  canon of x, or of every vertex, in [v, ve]
    iso FILE                        "iso" / "non-iso" against the graph built by FILE
    dump                            tuple count of every maintained relation
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass
from typing import Iterable, TextIO

from . import fixtures, oracle
from .order import UnknownElement
from .store import RELATIONS, Engine, GraphState, RejectedRequest, StateViolation
from .verify import CheckFailed

ARITY = {
    "insert": (2, 2),
    "delete": (2, 2),
    "dist": (2, 2),
    "path": (3, 3),
    "state": (0, 0),
    "faces": (0, 0),
    "canon": (2, 3),
    "iso": (1, 1),
    "dump": (0, 0),
}


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Command:
    verb: str
    args: tuple
    line: int = 0


def parse_command(text: str, lineno: int = 0) -> Command | None:
    """Parse one line; None for blank lines and comments."""
    body = text.split("#", 1)[0].strip()
    if not body:
        return None
    verb, *args = body.split()
    if verb not in ARITY:
        raise ParseError(f"line {lineno}: unknown command {verb!r}")
    lo, hi = ARITY[verb]
    if not lo <= len(args) <= hi:
        want = str(lo) if lo == hi else f"{lo}-{hi}"
        raise ParseError(f"line {lineno}: {verb!r} takes {want} arguments, got {len(args)} in {body!r}")
    return Command(verb, tuple(args), lineno)


def parse_stream(lines: Iterable[str]) -> list[Command]:
    out = []
    for i, line in enumerate(lines, 1):
        cmd = parse_command(line, i)
        if cmd is not None:
            out.append(cmd)
    return out


def _fmt_canon(c) -> str:
    return "[" + ",".join(f"({l},{h})" for l, h in sorted(c)) + "]"


class Session:
    def __init__(self, check: bool = False, strict: bool = False, base_dir: str = "."):
        self.engine = Engine(check=check)
        self.check = check
        self.strict = strict
        self.base_dir = base_dir

    def run(self, commands: Iterable[Command], out: TextIO) -> int:
        """Execute ``commands``, writing one line per response; returns exit status."""
        for cmd in commands:
            try:
                resp = self.execute(cmd)
            except RejectedRequest as exc:
                out.write(f"rejected: {exc}\n")
                if self.strict:
                    return 1
                continue
            if resp is not None:
                out.write(resp + "\n")
        return 0

    def execute(self, cmd: Command) -> str | None:
        eng = self.engine
        v, a = cmd.verb, cmd.args
        if v in ("insert", "delete"):
            getattr(eng, v)(*a)
            return None
        if v == "state":
            return f"{eng.state} rebuilds={eng.rebuilds}"
        if v == "dump":
            card = eng.cardinalities()
            return " ".join(f"{name}={card[name]}" for name in RELATIONS)
        if v == "faces":
            return str(eng.face_count()) if eng.state is GraphState.A else "n/a"
        if v == "iso":
            return self._iso(a[0])
        try:
            if v == "dist":
                d = eng.distance(*a)
                return "unreachable" if d is None else str(d)
            if v == "path":
                p = eng.path_vertices(*a)
                return "unreachable" if p is None else " ".join(p)
            if v == "canon":
                return self._canon(*a)
        except UnknownElement as exc:
            return f"unknown vertex {exc.args[0]}"
        raise AssertionError(v)

    def _canon(self, v, ve, x=None) -> str:
        s = self.engine.store
        if s.state is not GraphState.A:
            return "n/a"
        for q in (v, ve) + ((x,) if x is not None else ()):
            if q not in s.order:
                raise UnknownElement(q)
        if (v, ve) not in s.cbfs.trees:
            return f"no edge {v} {ve}"
        if x is not None:
            return _fmt_canon(self.engine.vertex_canon(v, ve, x))
        return " ".join(f"{q}={_fmt_canon(self.engine.vertex_canon(v, ve, q))}" for q in s.vertices)

    def _iso(self, path: str) -> str:
        full = path if os.path.isabs(path) else os.path.join(self.base_dir, path)
        with open(full, encoding="utf-8") as fh:
            cmds = parse_stream(fh)
        other = Engine(check=self.check)
        for c in cmds:
            if c.verb in ("insert", "delete"):
                try:
                    getattr(other, c.verb)(*c.args)
                except RejectedRequest:
                    pass
        g, h = self.engine.store, other.store
        if g.state is GraphState.A and h.state is GraphState.A:
            ok, _ = self.engine.isomorphic(other)
        else:
            # outside state A there are no canons; fall back to search
            ok, _ = oracle.brute_iso(g.adj, h.adj)
        return "iso" if ok else "non-iso"


def run_stream(text: str, check: bool = False, strict: bool = False, base_dir: str = ".") -> str:
    """Run a whole stream given as a string and return the transcript."""
    import io

    buf = io.StringIO()
    Session(check, strict, base_dir).run(parse_stream(text.splitlines()), buf)
    return buf.getvalue()


def generate(seed: int, vertices: int, ops: int, fixture: str | None, out: TextIO) -> None:
    rng = random.Random(seed)
    if fixture:
        corpus = fixtures.corpus()
        if fixture not in corpus:
            raise SystemExit(f"unknown fixture {fixture!r}; choose from {', '.join(corpus)}")
        edges = corpus[fixture]
        out.write(f"# {fixture}, seed {seed}\n")
        for a, b in fixtures.build_order(edges, rng):
            out.write(f"insert {a} {b}\n")
        out.write("state\nfaces\n")
        for kind, a, b in fixtures.perturbations(edges, rng, ops):
            out.write(f"{kind} {a} {b}\nfaces\n")
        out.write("state\ndump\n")
        return
    out.write(f"# random stream, {vertices} vertices, seed {seed}\n")
    for kind, a, b in fixtures.random_stream(rng, vertices, ops):
        out.write(f"{kind} {a} {b}\n")
        if rng.random() < 0.2:
            u, w = rng.sample(range(vertices), 2)
            out.write(f"dist {u} {w}\n")
    out.write("state\n")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "gen":
        p = argparse.ArgumentParser(prog="dynplanar gen", description="print a request stream")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--vertices", type=int, default=10)
        p.add_argument("--ops", type=int, default=50)
        p.add_argument("--fixture", default=None)
        args = p.parse_args(argv[1:])
        generate(args.seed, args.vertices, args.ops, args.fixture, sys.stdout)
        return 0

    if argv and argv[0] == "run":
        argv = argv[1:]
    p = argparse.ArgumentParser(prog="dynplanar", description="run a command stream against the engine")
    p.add_argument("file", nargs="?", help="command file (default: standard input)")
    p.add_argument("--strict", action="store_true", help="stop at the first rejected update")
    p.add_argument("--check", action="store_true", help="cross-check every update against the oracles")
    args = p.parse_args(argv)

    try:
        if args.file and args.file != "-":
            with open(args.file, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
            base = os.path.dirname(os.path.abspath(args.file))
        else:
            lines = sys.stdin.read().splitlines()
            base = os.getcwd()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        cmds = parse_stream(lines)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    session = Session(args.check, args.strict, base)
    try:
        return session.run(cmds, sys.stdout)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 3
    except (OSError, StateViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
