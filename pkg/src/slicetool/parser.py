"""Parser for the textual SLIR format.

SLIR is line-oriented with `;`-terminated statements and `//` comments.
Unknown statement forms are hard syntax errors: silently skipping a
statement would corrupt the dependence edges built on top of the model.
"""

from __future__ import annotations

import re
from typing import Optional

from .errors import SlirSyntaxError, SlirValidationError
from .ir import (ArrayRead, ArrayRef, BinExpr, ClassDef, FieldRead, FieldRef,
                 FloatConst, Imm, ImmValue, IntConst, InvokeExpr, InvokeKind,
                 Local, LocalRef, LValue, MethodDef, MethodSig, NewExpr,
                 NullConst, Program, RValue, Stmt, StmtKind, StringConst)

_KEYWORDS = {
    "class", "method", "if", "goto", "return", "new",
    "virtualinvoke", "staticinvoke", "null", "cmp",
}

_TOKEN_RE = re.compile(r"""
      (?P<ws>[ \t\r]+)
    | (?P<comment>//[^\n]*)
    | (?P<newline>\n)
    | (?P<string>"(?:\\.|[^"\\\n])*")
    | (?P<float>-?[0-9]+\.[0-9]+)
    | (?P<int>-?[0-9]+)
    | (?P<ident>\$?[A-Za-z_][A-Za-z0-9_$]*(?:\[\])*)
    | (?P<at>@)
    | (?P<op><<|>>|<=|>=|==|!=|:=|[-+*/%&|^<>=:;{}(),.\[\]])
""", re.VERBOSE)

_CMP_OPS = {"==", "!=", "<", "<=", ">", ">="}
_BIN_OPS = {"+", "-", "*", "/", "%", "&", "|", "^", "<<", ">>", "cmp"}

_LOCAL_RE = re.compile(r"^\$?[a-z][A-Za-z0-9_]*$")
_LABEL_RE = re.compile(r"^L[0-9]+$")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind: str, text: str, line: int, col: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Token({self.kind!r}, {self.text!r}, {self.line}:{self.col})"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise SlirSyntaxError(f"unexpected character {text[pos]!r}",
                                  line, pos - line_start + 1)
        kind = match.lastgroup
        lexeme = match.group()
        col = pos - line_start + 1
        pos = match.end()
        if kind == "newline":
            line += 1
            line_start = pos
            continue
        if kind in ("ws", "comment"):
            continue
        if kind == "ident" and lexeme in _KEYWORDS:
            kind = lexeme
        tokens.append(_Token(kind, lexeme, line, col))
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


def _unescape(raw: str) -> str:
    body = raw[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            out.append({"n": "\n", "t": "\t", '"': '"', "\\": "\\"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.peek()
        raise SlirSyntaxError(message, tok.line, tok.col)

    def expect(self, kind: str, what: Optional[str] = None) -> _Token:
        tok = self.next()
        if tok.kind != kind and tok.text != kind:
            self.error(f"expected {what or kind}, found {tok.text or 'end of input'}", tok)
        return tok

    def parse_qname(self) -> str:
        """A dotted qualified name; single-segment names are allowed."""
        return ".".join(self._qname_segments())

    def _qname_segments(self) -> list[str]:
        segments = [self.expect("ident", "name").text]
        while self.peek().text == "." and self.peek(1).kind == "ident":
            self.next()
            segments.append(self.next().text)
        return segments

    # -- grammar --------------------------------------------------------

    def parse_program(self) -> Program:
        classes = []
        while self.peek().kind != "eof":
            classes.append(self.parse_class())
        if not classes:
            self.error("empty input: expected at least one class")
        return Program(tuple(classes))

    def parse_class(self) -> ClassDef:
        self.expect("class")
        name = self.parse_qname()
        self.expect("{")
        methods = []
        while self.peek().text != "}":
            methods.append(self.parse_method())
        self.expect("}")
        return ClassDef(name, tuple(methods))

    def parse_method(self) -> MethodDef:
        self.expect("method")
        sig = self.parse_sig()
        self.expect("{")
        locals_: list[tuple[str, str]] = []
        while True:
            decl = self._try_declaration()
            if decl is None:
                break
            locals_.append(decl)
        body: list[Stmt] = []
        labels: dict[int, int] = {}
        while self.peek().text != "}":
            tok = self.peek()
            if (tok.kind == "ident" and _LABEL_RE.fullmatch(tok.text)
                    and self.peek(1).text == ":" and self.peek(1).kind == "op"):
                self.next()
                self.next()
                label_id = int(tok.text[1:])
                if label_id in labels:
                    self.error(f"duplicate label L{label_id}", tok)
                labels[label_id] = len(body)
                continue
            body.append(self.parse_stmt(len(body)))
        self.expect("}")
        return MethodDef(sig, tuple(locals_), tuple(body), labels)

    def _try_declaration(self) -> Optional[tuple[str, str]]:
        """Parse `TYPE LOCAL ;` if the upcoming tokens form one."""
        saved = self.pos
        if self.peek().kind != "ident":
            return None
        ty = ".".join(self._qname_segments())
        if self.peek().kind == "ident" and self.peek(1).text == ";":
            name = self.next().text
            self.next()
            return (name, ty)
        self.pos = saved
        return None

    def parse_sig(self) -> MethodSig:
        self.expect("<")
        cls = self.parse_qname()
        self.expect(":")
        ret = self.parse_qname()
        name = self.expect("ident", "method name").text
        self.expect("(")
        params: list[str] = []
        if self.peek().text != ")":
            params.append(self.parse_qname())
            while self.peek().text == ",":
                self.next()
                params.append(self.parse_qname())
        self.expect(")")
        self.expect(">")
        return MethodSig(cls, ret, name, tuple(params))

    def parse_stmt(self, ordinal: int) -> Stmt:
        tok = self.peek()
        if tok.kind == "if":
            return self._finish(self.parse_if(ordinal))
        if tok.kind == "goto":
            self.next()
            target = self._goto_target()
            return self._finish(Stmt(StmtKind.GOTO, ordinal, target=target))
        if tok.kind == "return":
            self.next()
            value = None if self.peek().text == ";" else self.parse_imm()
            return self._finish(Stmt(StmtKind.RETURN, ordinal, ret_value=value))
        if tok.kind in ("virtualinvoke", "staticinvoke"):
            expr = self.parse_invoke_expr()
            return self._finish(Stmt(StmtKind.INVOKE, ordinal, rhs=expr))
        if tok.kind == "ident":
            return self._finish(self.parse_assign_like(ordinal))
        self.error(f"expected a statement, found {tok.text or 'end of input'}")

    def _finish(self, stmt: Stmt) -> Stmt:
        self.expect(";")
        return stmt

    def _goto_target(self) -> int:
        tok = self.expect("ident", "label")
        if not _LABEL_RE.fullmatch(tok.text):
            self.error(f"expected label of the form L<n>, found {tok.text}", tok)
        return int(tok.text[1:])

    def parse_if(self, ordinal: int) -> Stmt:
        self.expect("if")
        left = self.parse_imm()
        op_tok = self.next()
        if op_tok.text not in _CMP_OPS:
            self.error(f"expected comparison operator, found {op_tok.text}", op_tok)
        right = self.parse_imm()
        self.expect("goto")
        target = self._goto_target()
        return Stmt(StmtKind.IF, ordinal, cond_op=op_tok.text,
                    cond_left=left, cond_right=right, target=target)

    def parse_assign_like(self, ordinal: int) -> Stmt:
        lhs = self.parse_lvalue()
        tok = self.next()
        if tok.text == ":=":
            if not isinstance(lhs, LocalRef):
                self.error("identity statements assign to a plain local", tok)
            self.expect("at", "@this or @parameterN")
            what = self.expect("ident", "this or parameterN")
            if what.text == "this":
                return Stmt(StmtKind.IDENTITY, ordinal, lhs=lhs, identity_index=None)
            match = re.fullmatch(r"parameter([0-9]+)", what.text)
            if not match:
                self.error(f"expected @this or @parameterN, found @{what.text}", what)
            return Stmt(StmtKind.IDENTITY, ordinal, lhs=lhs,
                        identity_index=int(match.group(1)))
        if tok.text != "=":
            self.error(f"expected '=' or ':=', found {tok.text}", tok)
        rhs = self.parse_rvalue()
        return Stmt(StmtKind.ASSIGN, ordinal, lhs=lhs, rhs=rhs)

    def parse_lvalue(self) -> LValue:
        first = self.peek()
        segments = self._qname_segments()
        if len(segments) == 1:
            name = segments[0]
            if self.peek().text == "[":
                if not _LOCAL_RE.fullmatch(name):
                    self.error(f"array base must be a local, found {name}", first)
                self.next()
                index = self.parse_imm()
                self.expect("]")
                return ArrayRef(name, index)
            if not _LOCAL_RE.fullmatch(name):
                self.error(f"{name} is not a valid local name", first)
            return LocalRef(name)
        field = segments[-1]
        base = ".".join(segments[:-1])
        if len(segments) == 2 and _LOCAL_RE.fullmatch(base):
            return FieldRef(field, base_local=base)
        return FieldRef(field, base_class=base)

    def parse_rvalue(self) -> RValue:
        tok = self.peek()
        if tok.kind == "new":
            self.next()
            return NewExpr(self.parse_qname())
        if tok.kind in ("virtualinvoke", "staticinvoke"):
            return self.parse_invoke_expr()
        if tok.kind == "ident" and (
                (self.peek(1).text == "." and self.peek(2).kind == "ident")
                or self.peek(1).text == "["):
            lv = self.parse_lvalue()
            if isinstance(lv, ArrayRef):
                return ArrayRead(lv)
            if isinstance(lv, FieldRef):
                return FieldRead(lv)
            self.error("plain local is not a field or array read", tok)
        left = self.parse_imm()
        nxt = self.peek()
        if nxt.text in _BIN_OPS:
            op = self.next().text
            right = self.parse_imm()
            return BinExpr(op, left, right)
        return ImmValue(left)

    def parse_invoke_expr(self) -> InvokeExpr:
        tok = self.next()
        if tok.kind == "virtualinvoke":
            recv_tok = self.expect("ident", "receiver local")
            if not _LOCAL_RE.fullmatch(recv_tok.text):
                self.error(f"receiver must be a local, found {recv_tok.text}", recv_tok)
            self.expect(".")
            sig = self.parse_sig()
            args = self.parse_args()
            return InvokeExpr(InvokeKind.VIRTUAL, sig, receiver=recv_tok.text, args=args)
        sig = self.parse_sig()
        args = self.parse_args()
        return InvokeExpr(InvokeKind.STATIC, sig, args=args)

    def parse_args(self) -> tuple[Imm, ...]:
        self.expect("(")
        args: list[Imm] = []
        if self.peek().text != ")":
            args.append(self.parse_imm())
            while self.peek().text == ",":
                self.next()
                args.append(self.parse_imm())
        self.expect(")")
        return tuple(args)

    def parse_imm(self) -> Imm:
        tok = self.next()
        if tok.kind == "int":
            return IntConst(int(tok.text))
        if tok.kind == "float":
            return FloatConst(float(tok.text))
        if tok.kind == "string":
            return StringConst(_unescape(tok.text))
        if tok.kind == "null":
            return NullConst()
        if tok.kind == "ident" and _LOCAL_RE.fullmatch(tok.text):
            return Local(tok.text)
        self.error(f"expected an immediate, found {tok.text or 'end of input'}", tok)


def parse_sig(text: str) -> MethodSig:
    """Parse a single canonical method signature."""
    parser = _Parser(_tokenize(text))
    sig = parser.parse_sig()
    if parser.peek().kind != "eof":
        parser.error("trailing input after signature")
    return sig


def parse_program(text: str) -> Program:
    """Parse and validate a full SLIR compilation unit."""
    program = _Parser(_tokenize(text)).parse_program()
    _validate(program)
    return program


def _validate(program: Program) -> None:
    seen: set[MethodSig] = set()
    for cls in program.classes:
        for method in cls.methods:
            if method.sig in seen:
                raise SlirValidationError("duplicate method signature",
                                          method.sig.render())
            seen.add(method.sig)
            _validate_method(method)


def _validate_method(method: MethodDef) -> None:
    sig_text = method.sig.render()
    declared = {name for name, _ in method.locals}
    if len(declared) != len(method.locals):
        raise SlirValidationError("duplicate local declaration", sig_text)

    for label_id, index in method.labels.items():
        if index >= len(method.body):
            raise SlirValidationError(f"label L{label_id} has no statement", sig_text)

    in_prefix = True
    for stmt in method.body:
        if stmt.kind is StmtKind.IDENTITY:
            if not in_prefix:
                raise SlirValidationError(
                    "identity statements must form a prefix of the body", sig_text)
            if (stmt.identity_index is not None
                    and stmt.identity_index >= len(method.sig.param_types)):
                raise SlirValidationError(
                    f"@parameter{stmt.identity_index} out of range", sig_text)
        else:
            in_prefix = False
        if stmt.kind in (StmtKind.IF, StmtKind.GOTO) and stmt.target not in method.labels:
            raise SlirValidationError(f"goto target L{stmt.target} does not exist",
                                      sig_text)
        for name in _referenced_locals(stmt):
            if name not in declared:
                raise SlirValidationError(f"undeclared local {name}", sig_text)


def _referenced_locals(stmt: Stmt) -> set[str]:
    names: set[str] = set()
    if isinstance(stmt.lhs, LocalRef):
        names.add(stmt.lhs.name)
    elif isinstance(stmt.lhs, ArrayRef):
        names.add(stmt.lhs.base)
        names |= _imm_local(stmt.lhs.index)
    elif isinstance(stmt.lhs, FieldRef) and stmt.lhs.base_local is not None:
        names.add(stmt.lhs.base_local)
    rhs = stmt.rhs
    if isinstance(rhs, ImmValue):
        names |= _imm_local(rhs.imm)
    elif isinstance(rhs, BinExpr):
        names |= _imm_local(rhs.left) | _imm_local(rhs.right)
    elif isinstance(rhs, InvokeExpr):
        if rhs.receiver is not None:
            names.add(rhs.receiver)
        for arg in rhs.args:
            names |= _imm_local(arg)
    elif isinstance(rhs, FieldRead) and rhs.ref.base_local is not None:
        names.add(rhs.ref.base_local)
    elif isinstance(rhs, ArrayRead):
        names.add(rhs.ref.base)
        names |= _imm_local(rhs.ref.index)
    for imm in (stmt.cond_left, stmt.cond_right, stmt.ret_value):
        names |= _imm_local(imm)
    return names


def _imm_local(imm) -> set[str]:
    return {imm.name} if isinstance(imm, Local) else set()
