"""Recursive-descent parsers for Turtle (a practical subset) and N-Triples.

Supported Turtle: ``@prefix``/``PREFIX``, ``@base``/``BASE``, prefixed
names, absolute and relative IRIs, ``a``, predicate lists, object lists,
plain/typed/language-tagged literals, numeric and boolean shorthands,
labelled blank nodes and ``[ ... ]``.  Collections and quoted triples are
rejected with :class:`UnsupportedSyntax`.
"""

from __future__ import annotations

import re

from .terms import (
    RDF_TYPE,
    XSD,
    BlankNode,
    Iri,
    Literal,
    Node,
    Term,
    Triple,
    TripleGraph,
    is_absolute_iri,
)


class ParseError(Exception):
    """Syntax error with a 1-based line/column and the offending token."""

    def __init__(self, message: str, line: int, column: int, token: str = "") -> None:
        super().__init__(message, line, column, token)
        self.message = message
        self.line = line
        self.column = column
        self.token = token

    def __str__(self) -> str:
        where = f"line {self.line}, column {self.column}"
        if self.token:
            return f"{where}: {self.message} (at {self.token!r})"
        return f"{where}: {self.message}"


class UndefinedPrefix(ParseError):
    pass


class UnsupportedSyntax(ParseError):
    """Valid Turtle that this parser deliberately does not accept."""


_PN_CHARS_BASE = (
    "A-Za-z\u00c0-\u00d6\u00d8-\u00f6\u00f8-\u02ff\u0370-\u037d\u037f-\u1fff"
    "\u200c-\u200d\u2070-\u218f\u2c00-\u2fef\u3001-\ud7ff\uf900-\ufdcf"
    "\ufdf0-\ufffd\U00010000-\U000effff"
)
_PN_CHARS_U = _PN_CHARS_BASE + "_"
_PN_CHARS = _PN_CHARS_U + "\\-0-9\u00b7\u0300-\u036f\u203f-\u2040"
_PLX = r"(?:%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%])"
_PN_PREFIX = f"[{_PN_CHARS_BASE}](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"
_PN_LOCAL = (
    f"(?:[{_PN_CHARS_U}:0-9]|{_PLX})"
    f"(?:(?:[{_PN_CHARS}.:]|{_PLX})*(?:[{_PN_CHARS}:]|{_PLX}))?"
)

_PNAME = re.compile(f"({_PN_PREFIX})?:({_PN_LOCAL})?")
_BLANK_LABEL = re.compile(f"_:([{_PN_CHARS_U}0-9](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?)")
_LANGTAG = re.compile(r"@([a-zA-Z]+(?:-[a-zA-Z0-9]+)*)")
_NUMBER = re.compile(
    r"[+-]?(?:(?P<double>(?:[0-9]+\.[0-9]*|\.[0-9]+|[0-9]+)[eE][+-]?[0-9]+)"
    r"|(?P<decimal>[0-9]*\.[0-9]+)|(?P<integer>[0-9]+))"
)
_LOCAL_ESC = re.compile(r"\\([_~.\-!$&'()*+,;=/?#@%])")
_IRI_FORBIDDEN = set('<>"{}|^`\\') | {chr(c) for c in range(0x21)}
_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_NAME_END = re.compile(r"[^A-Za-z0-9_\-:.]|$")

_URI_PARTS = re.compile(r"^(?:([^:/?#]+):)?(?://([^/?#]*))?([^?#]*)(?:\?([^#]*))?(?:#(.*))?$", re.S)


def _remove_dot_segments(path: str) -> str:
    out: list[str] = []
    while path:
        if path.startswith("../"):
            path = path[3:]
        elif path.startswith("./"):
            path = path[2:]
        elif path.startswith("/./"):
            path = path[2:]
        elif path == "/.":
            path = "/"
        elif path.startswith("/../"):
            path = path[3:]
            if out:
                out.pop()
        elif path == "/..":
            path = "/"
            if out:
                out.pop()
        elif path in (".", ".."):
            path = ""
        else:
            start = 1 if path.startswith("/") else 0
            cut = path.find("/", start)
            if cut < 0:
                cut = len(path)
            out.append(path[:cut])
            path = path[cut:]
    return "".join(out)


def resolve_iri(base: str, ref: str) -> str:
    """Resolve ``ref`` against ``base`` following RFC 3986 section 5.2."""
    scheme, auth, path, query, frag = _URI_PARTS.match(ref).groups()
    if scheme is not None:
        path = _remove_dot_segments(path)
    else:
        b_scheme, b_auth, b_path, b_query, _ = _URI_PARTS.match(base).groups()
        if auth is not None:
            path = _remove_dot_segments(path)
        else:
            if path == "":
                path = b_path
                if query is None:
                    query = b_query
            elif path.startswith("/"):
                path = _remove_dot_segments(path)
            else:
                if b_auth is not None and b_path == "":
                    merged = "/" + path
                else:
                    merged = b_path[: b_path.rfind("/") + 1] + path
                path = _remove_dot_segments(merged)
            auth = b_auth
        scheme = b_scheme
    out = f"{scheme}:"
    if auth is not None:
        out += f"//{auth}"
    out += path
    if query is not None:
        out += f"?{query}"
    if frag is not None:
        out += f"#{frag}"
    return out


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        text = data
    else:
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            head = data[: exc.start]
            line = head.count(b"\n") + 1
            column = exc.start - (head.rfind(b"\n") + 1) + 1
            raise ParseError("input is not valid UTF-8", line, column) from None
    return text[1:] if text.startswith("\ufeff") else text


class _Scanner:
    """Lexical helpers shared by both parsers."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.bnodes: dict[str, BlankNode] = {}

    def error(self, message: str, pos: int | None = None, cls: type[ParseError] = ParseError) -> ParseError:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        token = re.match(r"[^\s]{0,20}", self.text[pos:]).group(0)
        return cls(message, line, column, token)

    def peek(self, n: int = 1) -> str:
        return self.text[self.pos:self.pos + n]

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            raise self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def read_uchar(self) -> str:
        # self.pos sits on the 'u' or 'U' after a backslash
        width = 4 if self.text[self.pos] == "u" else 8
        digits = self.text[self.pos + 1:self.pos + 1 + width]
        if len(digits) != width or not all(c in "0123456789abcdefABCDEF" for c in digits):
            raise self.error("malformed unicode escape", self.pos - 1)
        code = int(digits, 16)
        if code > 0x10FFFF or 0xD800 <= code <= 0xDFFF:
            raise self.error("unicode escape out of range", self.pos - 1)
        self.pos += 1 + width
        return chr(code)

    def read_iriref(self) -> str:
        start = self.pos
        self.expect("<")
        chars: list[str] = []
        text = self.text
        while True:
            if self.pos >= len(text):
                raise self.error("unterminated IRI", start)
            ch = text[self.pos]
            if ch == ">":
                self.pos += 1
                return "".join(chars)
            if ch == "\\":
                self.pos += 1
                if self.peek() not in ("u", "U"):
                    raise self.error("only \\u and \\U escapes are allowed in IRIs", self.pos - 1)
                esc_pos = self.pos - 1
                ch = self.read_uchar()
                if ch in _IRI_FORBIDDEN:
                    raise self.error(f"escaped character {ch!r} not allowed in IRI", esc_pos)
                chars.append(ch)
                continue
            if ch in _IRI_FORBIDDEN:
                raise self.error(f"character {ch!r} not allowed in IRI", self.pos)
            chars.append(ch)
            self.pos += 1

    def make_iri(self, value: str, pos: int) -> Iri:
        try:
            return Iri(value)
        except ValueError:
            raise self.error(f"not a valid absolute IRI: {value!r}", pos) from None

    def read_blank_label(self) -> BlankNode:
        m = _BLANK_LABEL.match(self.text, self.pos)
        if m is None:
            raise self.error("malformed blank node label")
        self.pos = m.end()
        label = m.group(1)
        return self.bnodes.setdefault(label, BlankNode(label))

    def read_string(self, allow_long: bool = True, allow_single: bool = True) -> str:
        start = self.pos
        quote = self.peek()
        if quote not in ('"', "'") or (quote == "'" and not allow_single):
            raise self.error("expected a string literal")
        long_form = allow_long and self.peek(3) == quote * 3
        delim = quote * 3 if long_form else quote
        self.pos += len(delim)
        chars: list[str] = []
        text = self.text
        while True:
            if self.pos >= len(text):
                raise self.error("unterminated string literal", start)
            if text.startswith(delim, self.pos):
                # a long string may end with up to two extra quote characters
                if long_form:
                    while text.startswith(delim + quote, self.pos):
                        chars.append(quote)
                        self.pos += 1
                self.pos += len(delim)
                return "".join(chars)
            ch = text[self.pos]
            if ch == "\\":
                self.pos += 1
                esc = self.peek()
                if esc in ("u", "U"):
                    chars.append(self.read_uchar())
                elif esc in _ECHAR:
                    chars.append(_ECHAR[esc])
                    self.pos += 1
                else:
                    raise self.error("invalid escape sequence", self.pos - 1)
                continue
            if not long_form and ch in "\n\r":
                raise self.error("line break in short string literal", self.pos)
            chars.append(ch)
            self.pos += 1

    def read_langtag(self) -> str:
        m = _LANGTAG.match(self.text, self.pos)
        if m is None:
            raise self.error("malformed language tag")
        self.pos = m.end()
        return m.group(1)


class _TurtleParser(_Scanner):
    def __init__(self, text: str, base: str | None) -> None:
        super().__init__(text)
        self.base = base
        self.prefixes: dict[str, str] = {}
        self.triples: list[Triple] = []
        self.anon_count = 0

    def skip_ws(self) -> None:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch in " \t\r\n":
                self.pos += 1
            elif ch == "#":
                nl = text.find("\n", self.pos)
                self.pos = len(text) if nl < 0 else nl + 1
            else:
                break

    def keyword(self, word: str, case_insensitive: bool = False) -> bool:
        chunk = self.text[self.pos:self.pos + len(word)]
        if (chunk.lower() == word.lower()) if case_insensitive else (chunk == word):
            if _NAME_END.match(self.text, self.pos + len(word)):
                self.pos += len(word)
                return True
        return False

    def parse(self) -> TripleGraph:
        while True:
            self.skip_ws()
            if self.at_end():
                break
            self.statement()
        return TripleGraph(self.triples, self.prefixes)

    def statement(self) -> None:
        if self.keyword("@prefix"):
            self.prefix_directive(terminated=True)
        elif self.keyword("@base"):
            self.base_directive(terminated=True)
        elif self.keyword("PREFIX", case_insensitive=True):
            self.prefix_directive(terminated=False)
        elif self.keyword("BASE", case_insensitive=True):
            self.base_directive(terminated=False)
        else:
            self.triples_statement()
            self.skip_ws()
            self.expect(".")

    def prefix_directive(self, terminated: bool) -> None:
        self.skip_ws()
        m = re.compile(f"({_PN_PREFIX})?:").match(self.text, self.pos)
        if m is None:
            raise self.error("expected a prefix label")
        self.pos = m.end()
        self.skip_ws()
        self.prefixes[m.group(1) or ""] = self.iri_from_ref(self.read_iriref())
        if terminated:
            self.skip_ws()
            self.expect(".")

    def base_directive(self, terminated: bool) -> None:
        self.skip_ws()
        self.base = self.iri_from_ref(self.read_iriref())
        if terminated:
            self.skip_ws()
            self.expect(".")

    def iri_from_ref(self, ref: str, pos: int | None = None) -> str:
        if is_absolute_iri(ref):
            return ref
        if self.base is None:
            raise self.error(f"relative IRI <{ref}> with no @base in scope", pos)
        return resolve_iri(self.base, ref)

    def iri(self) -> Iri:
        start = self.pos
        if self.peek() == "<":
            return self.make_iri(self.iri_from_ref(self.read_iriref(), start), start)
        m = _PNAME.match(self.text, self.pos)
        if m is None:
            raise self.error("expected an IRI")
        prefix = m.group(1) or ""
        if prefix not in self.prefixes:
            raise self.error(f"undefined prefix {prefix + ':'!r}", start, UndefinedPrefix)
        self.pos = m.end()
        local = _LOCAL_ESC.sub(r"\1", m.group(2) or "")
        return self.make_iri(self.prefixes[prefix] + local, start)

    def new_anon(self) -> BlankNode:
        self.anon_count += 1
        # '#' cannot occur in a written label, so these never collide
        return BlankNode(f"anon#{self.anon_count}")

    def reject_unsupported(self) -> None:
        if self.peek() == "(":
            raise self.error("RDF collections are not supported", cls=UnsupportedSyntax)
        if self.peek(2) in ("<<", "{|"):
            raise self.error("quoted triples are not supported", cls=UnsupportedSyntax)

    def triples_statement(self) -> None:
        self.reject_unsupported()
        if self.peek() == "[":
            subject = self.blank_property_list()
            self.skip_ws()
            if self.peek() != ".":
                self.predicate_object_list(subject)
            return
        subject = self.subject()
        self.skip_ws()
        self.predicate_object_list(subject)

    def subject(self) -> Node:
        ch = self.peek()
        if ch == "_" and self.peek(2) == "_:":
            return self.read_blank_label()
        if ch == '"' or ch == "'" or _NUMBER.match(self.text, self.pos):
            raise self.error("a literal cannot be used as a subject")
        start = self.pos
        if self.keyword("true") or self.keyword("false"):
            raise self.error("a literal cannot be used as a subject", start)
        return self.iri()

    def verb(self) -> Iri:
        if self.peek() == "a" and _NAME_END.match(self.text, self.pos + 1):
            self.pos += 1
            return RDF_TYPE
        if self.peek() in ("_", "[", '"', "'"):
            raise self.error("a predicate must be an IRI")
        return self.iri()

    def predicate_object_list(self, subject: Node) -> None:
        self.triple_group(subject)
        while True:
            self.skip_ws()
            if self.peek() != ";":
                return
            while self.peek() == ";":
                self.pos += 1
                self.skip_ws()
            if self.peek() in (".", "]", ""):
                return
            self.triple_group(subject)

    def triple_group(self, subject: Node) -> None:
        predicate = self.verb()
        while True:
            self.skip_ws()
            obj = self.object()
            self.triples.append(Triple(subject, predicate, obj))
            self.skip_ws()
            if self.peek() != ",":
                return
            self.pos += 1

    def blank_property_list(self) -> BlankNode:
        self.expect("[")
        node = self.new_anon()
        self.skip_ws()
        if self.peek() != "]":
            self.predicate_object_list(node)
            self.skip_ws()
        self.expect("]")
        return node

    def object(self) -> Term:
        self.reject_unsupported()
        ch = self.peek()
        if ch == "[":
            return self.blank_property_list()
        if ch == "_" and self.peek(2) == "_:":
            return self.read_blank_label()
        if ch in ('"', "'"):
            return self.rdf_literal()
        m = _NUMBER.match(self.text, self.pos)
        if m is not None:
            self.pos = m.end()
            kind = m.lastgroup
            return Literal(m.group(0), Iri(XSD + kind))
        if self.keyword("true"):
            return Literal("true", Iri(XSD + "boolean"))
        if self.keyword("false"):
            return Literal("false", Iri(XSD + "boolean"))
        if ch == "":
            raise self.error("unexpected end of input")
        return self.iri()

    def rdf_literal(self) -> Literal:
        lexical = self.read_string()
        if self.peek() == "@":
            return Literal(lexical, language=self.read_langtag())
        if self.peek(2) == "^^":
            self.pos += 2
            return Literal(lexical, self.iri())
        return Literal(lexical)


class _NTriplesParser(_Scanner):
    def skip_inline_ws(self) -> None:
        while self.peek() in (" ", "\t"):
            self.pos += 1

    def absolute_iri(self) -> Iri:
        start = self.pos
        value = self.read_iriref()
        if not is_absolute_iri(value):
            raise self.error("N-Triples IRIs must be absolute", start)
        return self.make_iri(value, start)

    def parse(self) -> TripleGraph:
        triples: list[Triple] = []
        text = self.text
        while self.pos < len(text):
            self.skip_inline_ws()
            ch = self.peek()
            if ch in ("\n", "\r"):
                self.pos += 1
                continue
            if ch == "#":
                self.skip_comment()
                continue
            if ch == "":
                break
            triples.append(self.statement())
        return TripleGraph(triples)

    def skip_comment(self) -> None:
        nl = self.text.find("\n", self.pos)
        self.pos = len(self.text) if nl < 0 else nl

    def statement(self) -> Triple:
        if self.peek() == "<":
            subject: Node = self.absolute_iri()
        elif self.peek(2) == "_:":
            subject = self.read_blank_label()
        else:
            raise self.error("expected an IRI or blank node as subject")
        self.skip_inline_ws()
        if self.peek() != "<":
            raise self.error("expected an IRI as predicate")
        predicate = self.absolute_iri()
        self.skip_inline_ws()
        obj = self.object()
        self.skip_inline_ws()
        if self.peek() != ".":
            raise self.error("expected '.' at end of statement")
        self.pos += 1
        self.skip_inline_ws()
        if self.peek() == "#":
            self.skip_comment()
        if self.peek() not in ("\n", "\r", ""):
            raise self.error("unexpected content after statement")
        return Triple(subject, predicate, obj)

    def object(self) -> Term:
        ch = self.peek()
        if ch == "<":
            return self.absolute_iri()
        if self.peek(2) == "_:":
            return self.read_blank_label()
        if ch == '"':
            lexical = self.read_string(allow_long=False, allow_single=False)
            if self.peek() == "@":
                return Literal(lexical, language=self.read_langtag())
            if self.peek(2) == "^^":
                self.pos += 2
                return Literal(lexical, self.absolute_iri())
            return Literal(lexical)
        raise self.error("expected an IRI, blank node or literal as object")


def parse_turtle(data: bytes | str, base: str | None = None) -> TripleGraph:
    """Parse a Turtle document.

    Relative IRIs are resolved against ``@base`` (or ``base``); a relative
    IRI with neither in scope is a :class:`ParseError`.
    """
    if base is not None and not is_absolute_iri(base):
        raise ValueError(f"base must be an absolute IRI: {base!r}")
    return _TurtleParser(_decode(data), base).parse()


def parse_ntriples(data: bytes | str) -> TripleGraph:
    """Parse an N-Triples document (one statement per line)."""
    return _NTriplesParser(_decode(data)).parse()
