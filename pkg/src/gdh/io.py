"""Line-oriented text formats for theories, GDHs and families, plus run manifests.

Theory::

    r 3
    gen 1 0 2

GDH (any orbit representative per edge line)::

    n 5
    0 1 2
    2 3 4

Family: ``family <k>`` followed by ``k`` GDH records separated by ``---``.
Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import hashlib
import json
import platform
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .core import GDH, Family, TheorySignature
from .perm_group import Permutation, closure


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((lineno, line.split()))
    return out


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_theory(text: str) -> TheorySignature:
    lines = _lines(text)
    if not lines or lines[0][1][0] != "r" or len(lines[0][1]) != 2:
        raise FormatError("theory must start with 'r <arity>'")
    lineno, head = lines[0]
    (r,) = _ints(head[1:], lineno)
    if r < 1:
        raise FormatError(f"line {lineno}: arity must be positive")
    gens = []
    for lineno, toks in lines[1:]:
        if toks[0] != "gen":
            raise FormatError(f"line {lineno}: expected 'gen', got {toks[0]!r}")
        images = _ints(toks[1:], lineno)
        if len(images) != r:
            raise FormatError(f"line {lineno}: generator has {len(images)} images, arity is {r}")
        try:
            gens.append(Permutation(tuple(images)))
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    return TheorySignature(r, closure(r, gens))


def serialize_theory(theory: TheorySignature) -> str:
    lines = [f"r {theory.r}"]
    lines += ["gen " + " ".join(map(str, g.images)) for g in theory.group.generators()]
    return "\n".join(lines) + "\n"


def _parse_gdh_lines(lines, theory: TheorySignature) -> GDH:
    if not lines or lines[0][1][0] != "n" or len(lines[0][1]) != 2:
        raise FormatError("GDH record must start with 'n <count>'")
    lineno, head = lines[0]
    (n,) = _ints(head[1:], lineno)
    if n < 0:
        raise FormatError(f"line {lineno}: vertex count must be nonnegative")
    G = GDH(theory, n)
    edges = set()
    for lineno, toks in lines[1:]:
        t = _ints(toks, lineno)
        if len(t) != theory.r:
            raise FormatError(f"line {lineno}: edge has {len(t)} vertices, arity is {theory.r}")
        if len(set(t)) != len(t):
            raise FormatError(f"line {lineno}: edge repeats a vertex")
        bad = [v for v in t if not 0 <= v < n]
        if bad:
            raise FormatError(f"line {lineno}: vertex {bad[0]} out of range for n={n}")
        edges.add(theory.canonical(t))
    return GDH(theory, G.n, frozenset(edges))


def parse_gdh(text: str, theory: TheorySignature) -> GDH:
    return _parse_gdh_lines(_lines(text), theory)


def serialize_gdh(G: GDH) -> str:
    lines = [f"n {G.n}"] + [" ".join(map(str, e)) for e in G.sorted_edges]
    return "\n".join(lines) + "\n"


def parse_family(text: str, theory: TheorySignature) -> Family:
    lines = _lines(text)
    if not lines or lines[0][1][0] != "family" or len(lines[0][1]) != 2:
        raise FormatError("family must start with 'family <k>'")
    lineno, head = lines[0]
    (k,) = _ints(head[1:], lineno)
    records, current = [], []
    for item in lines[1:]:
        if item[1] == ["---"]:
            if current:
                records.append(current)
            current = []
        else:
            current.append(item)
    if current:
        records.append(current)
    if len(records) != k:
        raise FormatError(f"family header announces {k} members, found {len(records)}")
    return Family(theory, tuple(_parse_gdh_lines(rec, theory) for rec in records))


def serialize_family(fam: Family) -> str:
    body = "---\n".join(serialize_gdh(F) for F in fam)
    return f"family {len(fam)}\n" + body


def gdh_to_json(G: GDH) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.sorted_edges]}


def gdh_from_json(obj: dict, theory: TheorySignature) -> GDH:
    return GDH.from_tuples(theory, obj["n"], obj["edges"])


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(data: str | bytes) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


@dataclass
class RunManifest:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    seed: int | None = None
    version: str = __version__
    python: str = field(default_factory=platform.python_version)
    wall_time: float = 0.0
    result_digest: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


class ManifestTimer:
    """Fill ``wall_time`` and ``result_digest`` around a run."""

    def __init__(self, manifest: RunManifest):
        self.manifest = manifest

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.manifest.wall_time = time.perf_counter() - self._t0
        return False

    def record(self, result) -> None:
        self.manifest.result_digest = digest(canonical_json(result))


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()
