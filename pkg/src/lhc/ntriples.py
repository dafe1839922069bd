"""Line-oriented `<s> <p> <o> .` parser and serializer.

Deliberately small: identifiers are opaque strings inside angle brackets
(no blank nodes, no literals, no escapes). Blank lines and `#` comments are
skipped. Parse errors carry 1-based line and column.
"""

from typing import Iterator, TextIO, Tuple

from .errors import ParseError

_FORBIDDEN = set('<>"{}|^`\\') | {" ", "\t", "\n", "\r"}


def serialize_triple(s: str, p: str, o: str) -> str:
    for part in (s, p, o):
        bad = _FORBIDDEN.intersection(part)
        if not part or bad:
            raise ValueError(f"identifier {part!r} cannot be serialized (contains {sorted(bad)})")
    return f"<{s}> <{p}> <{o}> ."


def parse_line(line: str, lineno: int) -> Tuple[str, str, str]:
    pos = 0
    parts = []
    for _ in range(3):
        while pos < len(line) and line[pos] in " \t":
            pos += 1
        if pos >= len(line) or line[pos] != "<":
            raise ParseError("expected '<'", line=lineno, column=pos + 1)
        end = line.find(">", pos + 1)
        if end == -1:
            raise ParseError("unterminated identifier, expected '>'", line=lineno, column=len(line) + 1)
        ident = line[pos + 1 : end]
        if not ident:
            raise ParseError("empty identifier", line=lineno, column=pos + 2)
        parts.append(ident)
        pos = end + 1
    while pos < len(line) and line[pos] in " \t":
        pos += 1
    if pos >= len(line) or line[pos] != ".":
        raise ParseError("expected terminal '.'", line=lineno, column=pos + 1)
    rest = line[pos + 1 :].strip()
    if rest:
        raise ParseError(f"trailing content {rest!r}", line=lineno, column=pos + 2)
    return parts[0], parts[1], parts[2]


def parse_ntriples(stream: TextIO) -> Iterator[Tuple[int, Tuple[str, str, str]]]:
    """Yields (line_number, (s, p, o)); line numbers key the sidecar CSV."""
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, parse_line(line, lineno)
