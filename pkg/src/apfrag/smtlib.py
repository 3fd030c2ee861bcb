"""Reading and writing the SMT-LIB 2 subset used by apfrag.

Supported commands: ``set-logic``, ``set-option``, ``set-info`` (kept as
options), ``declare-const``/``declare-fun`` with zero arguments of sort
``Int`` or ``(Array Int Int)``, ``assert``, and the no-op commands
``check-sat``, ``get-model`` and ``exit``. ``diff`` is built in.
``(exists (...) body)`` is read as ``(not (forall (...) (not body)))``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple

from . import syntax as sx
from .errors import ParseError, ShadowingError, SortError

__all__ = ["Script", "parse_script", "parse_formula", "format_term", "format_formula", "format_script"]


# -- printing -----------------------------------------------------------------

def format_term(t: sx.Term) -> str:
    if isinstance(t, sx.IntLit):
        return str(t.value) if t.value >= 0 else f"(- {-t.value})"
    if isinstance(t, sx.BoolLit):
        return "true" if t.value else "false"
    if isinstance(t, sx.Const):
        return t.symbol.name
    if isinstance(t, sx.Var):
        return t.name
    if isinstance(t, sx.App):
        return "(" + " ".join([t.symbol.name] + [format_term(a) for a in t.args]) + ")"
    raise TypeError(f"not a term: {t!r}")


def format_formula(f: sx.Formula) -> str:
    if isinstance(f, sx.Atom):
        return format_term(f.term)
    if isinstance(f, sx.Not):
        return f"(not {format_formula(f.arg)})"
    if isinstance(f, sx.And):
        return "(and " + " ".join(format_formula(g) for g in f.args) + ")"
    if isinstance(f, sx.Or):
        return "(or " + " ".join(format_formula(g) for g in f.args) + ")"
    if isinstance(f, sx.Implies):
        return f"(=> {format_formula(f.lhs)} {format_formula(f.rhs)})"
    if isinstance(f, sx.Forall):
        binders = " ".join(f"({v.name} Int)" for v in f.vars)
        return f"(forall ({binders}) {format_formula(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


@dataclass
class Script:
    declarations: dict = field(default_factory=dict)
    assertions: list = field(default_factory=list)
    options: list = field(default_factory=list)

    def symbol(self, name):
        return self.declarations[name]


def format_script(script: Script) -> str:
    lines = [f"({cmd} {' '.join(args)})" if args else f"({cmd})" for cmd, args in script.options]
    for name, sym in script.declarations.items():
        lines.append(f"(declare-const {name} {sym.result})")
    for f in script.assertions:
        lines.append(f"(assert {format_formula(f)})")
    return "\n".join(lines) + ("\n" if lines else "")


# -- reading ------------------------------------------------------------------

class _Tok(NamedTuple):
    text: str
    line: int
    col: int


class _List(list):
    def __init__(self, items, line, col):
        super().__init__(items)
        self.line = line
        self.col = col


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>;[^\n]*)
  | (?P<open>\()
  | (?P<close>\))
  | (?P<sym>\|[^|]*\|)
  | (?P<atom>[A-Za-z0-9~!@$%^&*_\-+=<>.?/:]+)
""", re.VERBOSE)


def _tokenize(text):
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("lexical", f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tok = m.group()
            if kind == "sym":
                tok = tok[1:-1]
            yield kind, _Tok(tok, line, pos - line_start + 1)
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()


def _read_sexps(text):
    stack = [_List([], 1, 1)]
    for kind, tok in _tokenize(text):
        if kind == "open":
            stack.append(_List([], tok.line, tok.col))
        elif kind == "close":
            if len(stack) == 1:
                raise ParseError("lexical", "unbalanced ')'", tok.line, tok.col)
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) > 1:
        open_ = stack[-1]
        raise ParseError("lexical", "unclosed '('", open_.line, open_.col)
    return stack[0]


def _pos(node):
    return node.line, node.col


def _err(kind, message, node):
    return ParseError(kind, message, *_pos(node))


_NUMERAL = re.compile(r"[0-9]+\Z")
_ARITH = {"+": sx.PLUS, "-": sx.MINUS, "*": sx.TIMES}
_PRED = {"<": sx.LT, "<=": sx.LE}


class _Reader:
    def __init__(self, declarations):
        self.decls = declarations

    def sort(self, node):
        if isinstance(node, _Tok):
            if node.text == "Int":
                return sx.INT
            raise _err("sort-mismatch", f"unsupported sort {node.text}", node)
        if (len(node) == 3 and isinstance(node[0], _Tok) and node[0].text == "Array"
                and self.sort(node[1]) == sx.INT and self.sort(node[2]) == sx.INT):
            return sx.ARRAY
        raise _err("sort-mismatch", "only Int and (Array Int Int) are supported", node)

    def term(self, node, scope):
        if isinstance(node, _Tok):
            text = node.text
            if _NUMERAL.match(text):
                return sx.IntLit(int(text))
            if text in scope:
                return sx.Var(text)
            if text in self.decls:
                return sx.Const(self.decls[text])
            if text in ("true", "false"):
                raise _err("sort-mismatch", f"{text} used where a term of sort Int or Array is expected", node)
            raise _err("unknown-symbol", f"unknown symbol {text}", node)
        if not node:
            raise _err("syntax", "empty application", node)
        head = node[0]
        if not isinstance(head, _Tok):
            raise _err("syntax", "application head must be a symbol", node)
        args = node[1:]
        name = head.text
        if name in _ARITH:
            if name == "-" and len(args) == 1:
                inner = self.term(args[0], scope)
                if isinstance(inner, sx.IntLit):
                    return sx.IntLit(-inner.value)
                return self.apply(sx.MINUS, [sx.IntLit(0), inner], node, [None, args[0]])
            if len(args) < 2:
                raise _err("arity", f"{name} expects at least 2 arguments", node)
            acc = self.term(args[0], scope)
            for a in args[1:]:
                acc = self.apply(_ARITH[name], [acc, self.term(a, scope)], node, [args[0], a])
            return acc
        if name in ("select", "store", "diff"):
            symbol = {"select": sx.SELECT, "store": sx.STORE, "diff": sx.DIFF}[name]
            if len(args) != len(symbol.arg_sorts):
                raise _err("arity", f"{name} expects {len(symbol.arg_sorts)} arguments, got {len(args)}", node)
            return self.apply(symbol, [self.term(a, scope) for a in args], node, args)
        if name in _PRED or name in ("=", "and", "or", "not", "=>", "forall", "exists"):
            raise _err("sort-mismatch", f"{name} yields Bool where a term is expected", node)
        if name in self.decls or name in scope:
            raise _err("arity", f"{name} is a constant and takes no arguments", node)
        raise _err("unknown-symbol", f"unknown function {name}", head)

    def apply(self, symbol, terms, node, arg_nodes):
        try:
            return sx.App(symbol, tuple(terms))
        except SortError as e:
            where = arg_nodes[e.position] if e.position is not None and e.position < len(arg_nodes) else None
            raise _err("sort-mismatch", str(e), where if where is not None else node) from None

    def formula(self, node, scope):
        if isinstance(node, _Tok):
            if node.text == "true":
                return sx.TRUE
            if node.text == "false":
                return sx.FALSE
            if node.text in scope or node.text in self.decls or _NUMERAL.match(node.text):
                raise _err("sort-mismatch", f"{node.text} is not Boolean", node)
            raise _err("unknown-symbol", f"unknown symbol {node.text}", node)
        if not node or not isinstance(node[0], _Tok):
            raise _err("syntax", "expected a Boolean application", node)
        name, args = node[0].text, node[1:]
        if name in _PRED or name == "=":
            if len(args) != 2:
                raise _err("arity", f"{name} expects 2 arguments, got {len(args)}", node)
            lhs, rhs = (self.term(a, scope) for a in args)
            if name == "=":
                if lhs.sort != rhs.sort:
                    raise _err("sort-mismatch", f"= between {lhs.sort} and {rhs.sort}", args[1])
                symbol = sx.EQ_ARRAY if lhs.sort == sx.ARRAY else sx.EQ
            else:
                symbol = _PRED[name]
            return sx.Atom(self.apply(symbol, [lhs, rhs], node, args))
        if name == "not":
            if len(args) != 1:
                raise _err("arity", "not expects 1 argument", node)
            return sx.Not(self.formula(args[0], scope))
        if name in ("and", "or"):
            parts = [self.formula(a, scope) for a in args]
            return sx.and_(*parts) if name == "and" else sx.or_(*parts)
        if name == "=>":
            if len(args) < 2:
                raise _err("arity", "=> expects at least 2 arguments", node)
            parts = [self.formula(a, scope) for a in args]
            acc = parts[-1]
            for p in reversed(parts[:-1]):
                acc = sx.Implies(p, acc)
            return acc
        if name in ("forall", "exists"):
            if len(args) != 2 or isinstance(args[0], _Tok) or not args[0]:
                raise _err("syntax", f"{name} expects a non-empty binder list and a body", node)
            names = []
            for b in args[0]:
                if isinstance(b, _Tok) or len(b) != 2 or not isinstance(b[0], _Tok):
                    raise _err("syntax", "binder must be (name sort)", b)
                if self.sort(b[1]) != sx.INT:
                    raise _err("sort-mismatch", "quantified variables must have sort Int", b[1])
                if b[0].text in scope or b[0].text in self.decls or b[0].text in names:
                    raise _err("syntax", f"binder {b[0].text} shadows an existing name", b[0])
                names.append(b[0].text)
            body = self.formula(args[1], scope | set(names))
            vs = tuple(sx.Var(n) for n in names)
            try:
                if name == "forall":
                    return sx.Forall(vs, body)
                return sx.Not(sx.Forall(vs, sx.Not(body)))
            except ShadowingError as e:
                raise _err("syntax", str(e), node) from None
        if name in ("+", "-", "*", "select", "store", "diff"):
            self.term(node, scope)      # arity and argument errors come first
            raise _err("sort-mismatch", f"{name} yields a non-Boolean term", node)
        raise _err("unknown-symbol", f"unknown function {name}", node[0])


def parse_script(text: str) -> Script:
    script = Script()
    reader = _Reader(script.declarations)
    for cmd in _read_sexps(text):
        if isinstance(cmd, _Tok) or not cmd or not isinstance(cmd[0], _Tok):
            raise _err("syntax", "expected a command", cmd)
        head, args = cmd[0].text, cmd[1:]
        if head in ("set-logic", "set-option", "set-info"):
            script.options.append((head, [a.text for a in args if isinstance(a, _Tok)]))
        elif head in ("declare-const", "declare-fun"):
            if head == "declare-fun":
                if len(args) != 3 or isinstance(args[1], _Tok) or len(args[1]) != 0:
                    raise _err("arity", "only nullary declare-fun is supported", cmd)
                args = [args[0], args[2]]
            if len(args) != 2 or not isinstance(args[0], _Tok):
                raise _err("arity", "declare-const expects a name and a sort", cmd)
            name = args[0].text
            if name in script.declarations or name in ("diff", "select", "store", "true", "false"):
                raise _err("syntax", f"{name} is already declared", args[0])
            script.declarations[name] = sx.FuncSymbol(name, (), reader.sort(args[1]))
        elif head == "assert":
            if len(args) != 1:
                raise _err("arity", "assert expects exactly one formula", cmd)
            script.assertions.append(reader.formula(args[0], frozenset()))
        elif head in ("check-sat", "get-model", "exit"):
            continue
        else:
            raise _err("unknown-symbol", f"unsupported command {head}", cmd[0])
    return script


def parse_formula(text: str, declarations: dict) -> sx.Formula:
    """Parse a single formula against existing declarations."""
    nodes = _read_sexps(text)
    if len(nodes) != 1:
        raise ParseError("syntax", "expected exactly one formula", 1, 1)
    return _Reader(declarations).formula(nodes[0], frozenset())
