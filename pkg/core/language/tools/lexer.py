"""Tokenizer for the pipeline specification language."""
from dataclasses import dataclass
from typing import List
import re

from core.language.schemas.pipeline_spec import VERSION_RE
from core.services.error_handling import ParseError

IDENT = "IDENT"
NUMBER = "NUMBER"
VERSION = "VERSION"
LBRACE = "LBRACE"
RBRACE = "RBRACE"
COLON = "COLON"
ARROW = "ARROW"
AT = "AT"
EOF = "EOF"

# Order matters: ARROW before NUMBER so "->" is never read as a sign
TOKEN_SPEC = [
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r\f\v]+"),
    ("COMMENT", r"#[^\n]*"),
    (ARROW, r"->"),
    (NUMBER, r"-?[0-9]+(?:\.[0-9]+)?"),
    (IDENT, r"[A-Za-z_][A-Za-z0-9_]*"),
    (LBRACE, r"\{"),
    (RBRACE, r"\}"),
    (COLON, r":"),
    (AT, r"@"),
    ("MISMATCH", r"."),
]
MASTER_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    type: str
    text: str
    line: int
    column: int


def tokenize(source: str) -> List[Token]:
    """Split source text into tokens, ending with an EOF token.

    A version (``name@<version>``) is read in its own mode because versions
    may contain dots and start with digits.
    """
    tokens: List[Token] = []
    line = 1
    line_start = 0
    pos = 0
    length = len(source)

    while pos < length:
        column = pos - line_start + 1
        if tokens and tokens[-1].type == AT:
            version = VERSION_RE.match(source, pos)
            if version:
                tokens.append(Token(VERSION, version.group(), line, column))
                pos = version.end()
                continue

        match = MASTER_RE.match(source, pos)
        kind = match.lastgroup
        text = match.group()
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
        elif kind in ("SKIP", "COMMENT"):
            pass
        elif kind == "MISMATCH":
            raise ParseError(line, column, f"unexpected character {text!r}")
        else:
            tokens.append(Token(kind, text, line, column))
        pos = match.end()

    tokens.append(Token(EOF, "", line, pos - line_start + 1))
    return tokens
