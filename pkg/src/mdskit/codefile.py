"""
Plain-text code files::

    n=<n> q=<q> alphabet=<spec-string>
    0 0 0
    0 1 1      # comments run to end of line

The header is the first non-comment line.  Writers emit codewords in sorted
order so output is byte-for-byte reproducible.
"""

from __future__ import annotations

import io
import os
from typing import TextIO

from .alphabet import AlphabetError, Alphabet, default_alphabet_spec
from .code import Code


class CodeFileError(ValueError):
    def __init__(self, msg: str, line: int, column: int | None = None):
        where = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{where}: {msg}")
        self.line = line
        self.column = column


def _parse_header(text: str, lineno: int) -> tuple[int, int, str | None]:
    fields = {}
    col = 1
    for tok in text.split():
        key, sep, val = tok.partition("=")
        if not sep or key not in ("n", "q", "alphabet"):
            raise CodeFileError(f"bad header field {tok!r}", lineno, text.find(tok) + 1)
        fields[key] = (val, text.find(tok) + 1)
    for key in ("n", "q"):
        if key not in fields:
            raise CodeFileError(f"header lacks {key}=", lineno, col)
    try:
        n = int(fields["n"][0])
    except ValueError:
        raise CodeFileError(f"n is not an integer: {fields['n'][0]!r}", lineno, fields["n"][1])
    try:
        q = int(fields["q"][0])
    except ValueError:
        raise CodeFileError(f"q is not an integer: {fields['q'][0]!r}", lineno, fields["q"][1])
    alph = fields.get("alphabet", (None, 0))[0]
    return n, q, alph


def loads(text: str) -> Code:
    return load(io.StringIO(text))


def load(fh: TextIO) -> Code:
    header = None
    words = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if header is None:
            header = _parse_header(line, lineno)
            n, q, alph_text = header
            try:
                alphabet = (Alphabet.from_string(alph_text) if alph_text
                            else Alphabet(default_alphabet_spec(q)))
            except AlphabetError as exc:
                raise CodeFileError(str(exc), lineno) from exc
            if alphabet.q != q:
                raise CodeFileError(f"alphabet order {alphabet.q} != q={q}", lineno)
            continue
        toks, pos = [], 0
        for tok in line.split():
            pos = line.index(tok, pos)
            toks.append((tok, pos + 1))
            pos += len(tok)
        if len(toks) != n:
            raise CodeFileError(f"expected {n} symbols, found {len(toks)}", lineno)
        word = []
        for tok, col in toks:
            try:
                s = int(tok)
            except ValueError:
                raise CodeFileError(f"symbol {tok!r} is not an integer", lineno, col)
            if not 0 <= s < q:
                raise CodeFileError(f"symbol {s} outside 0..{q - 1}", lineno, col)
            word.append(s)
        words.append((tuple(word), lineno))
    if header is None:
        raise CodeFileError("missing header line", 1)
    seen: dict[tuple, int] = {}
    for w, lineno in words:
        if w in seen:
            raise CodeFileError(
                f"duplicate codeword {' '.join(map(str, w))} (first on line {seen[w]})", lineno)
        seen[w] = lineno
    return Code(alphabet, seen, n=n)


def read_code(path: str | os.PathLike) -> Code:
    with open(path, encoding="utf-8") as fh:
        return load(fh)


def dumps(code: Code, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"n={code.n} q={code.q} alphabet={code.alphabet.spec_string}")
    out.extend(" ".join(map(str, w)) for w in code)
    return "\n".join(out) + "\n"


def write_code(code: Code, path: str | os.PathLike, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(code, comment))
