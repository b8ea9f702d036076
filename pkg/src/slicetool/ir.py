"""In-memory model of SLIR, a three-address IR in the Jimple family.

Programs are immutable after parsing and safe to share across threads.
Every construct can render itself back to canonical SLIR text; parsing
the rendered text yields an equal model (whitespace-insensitive
round-trip).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


@dataclass(frozen=True)
class MethodSig:
    """Fully qualified method signature, the matching key for all lookups."""

    declaring_class: str
    return_type: str
    method_name: str
    param_types: tuple[str, ...] = ()

    def render(self) -> str:
        """Canonical form `<pkg.Class: ret name(t1,t2)>`, no stray whitespace."""
        params = ",".join(self.param_types)
        return f"<{self.declaring_class}: {self.return_type} {self.method_name}({params})>"

    def __str__(self) -> str:
        return self.render()


def render_sig(sig: MethodSig) -> str:
    return sig.render()


# --- immediates -------------------------------------------------------------

@dataclass(frozen=True)
class Local:
    name: str

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class IntConst:
    value: int

    def render(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class FloatConst:
    value: float

    def render(self) -> str:
        return repr(self.value)


@dataclass(frozen=True)
class StringConst:
    value: str

    def render(self) -> str:
        escaped = self.value.replace("\\", "\\\\").replace('"', '\\"')
        escaped = escaped.replace("\n", "\\n").replace("\t", "\\t")
        return f'"{escaped}"'


@dataclass(frozen=True)
class NullConst:
    def render(self) -> str:
        return "null"


Imm = Union[Local, IntConst, FloatConst, StringConst, NullConst]


# --- lvalues ----------------------------------------------------------------

@dataclass(frozen=True)
class LocalRef:
    name: str

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class ArrayRef:
    base: str
    index: Imm

    def render(self) -> str:
        return f"{self.base}[{self.index.render()}]"


@dataclass(frozen=True)
class FieldRef:
    """Field access. `base_local` is set for instance access through a local,
    `base_class` for static access through a qualified class name."""

    field_name: str
    base_local: Optional[str] = None
    base_class: Optional[str] = None

    def render(self) -> str:
        base = self.base_local if self.base_local is not None else self.base_class
        return f"{base}.{self.field_name}"


LValue = Union[LocalRef, ArrayRef, FieldRef]


# --- rvalues ----------------------------------------------------------------

class InvokeKind(str, Enum):
    VIRTUAL = "virtual"
    STATIC = "static"


@dataclass(frozen=True)
class ImmValue:
    imm: Imm

    def render(self) -> str:
        return self.imm.render()


@dataclass(frozen=True)
class BinExpr:
    op: str
    left: Imm
    right: Imm

    def render(self) -> str:
        return f"{self.left.render()} {self.op} {self.right.render()}"


@dataclass(frozen=True)
class InvokeExpr:
    kind: InvokeKind
    callee: MethodSig
    receiver: Optional[str] = None  # local name; required for virtual invokes
    args: tuple[Imm, ...] = ()

    def render(self) -> str:
        rendered_args = ", ".join(a.render() for a in self.args)
        if self.kind is InvokeKind.VIRTUAL:
            return f"virtualinvoke {self.receiver}.{self.callee.render()}({rendered_args})"
        return f"staticinvoke {self.callee.render()}({rendered_args})"


@dataclass(frozen=True)
class FieldRead:
    ref: FieldRef

    def render(self) -> str:
        return self.ref.render()


@dataclass(frozen=True)
class ArrayRead:
    ref: ArrayRef

    def render(self) -> str:
        return self.ref.render()


@dataclass(frozen=True)
class NewExpr:
    class_name: str

    def render(self) -> str:
        return f"new {self.class_name}"


RValue = Union[ImmValue, BinExpr, InvokeExpr, FieldRead, ArrayRead, NewExpr]


# --- statements -------------------------------------------------------------

class StmtKind(str, Enum):
    IDENTITY = "Identity"
    ASSIGN = "Assign"
    INVOKE = "InvokeStmt"
    IF = "If"
    GOTO = "Goto"
    RETURN = "Return"


@dataclass(frozen=True)
class Stmt:
    """One SLIR statement. Unused fields stay None for kinds that lack them.

    Identity statements bind `@this` (identity_index is None) or
    `@parameterN` (identity_index == N) to a local.
    """

    kind: StmtKind
    ordinal: int
    lhs: Optional[LValue] = None
    rhs: Optional[RValue] = None
    identity_index: Optional[int] = None
    cond_op: Optional[str] = None
    cond_left: Optional[Imm] = None
    cond_right: Optional[Imm] = None
    target: Optional[int] = None  # label id for If / Goto
    ret_value: Optional[Imm] = None

    def render(self) -> str:
        if self.kind is StmtKind.IDENTITY:
            src = "@this" if self.identity_index is None else f"@parameter{self.identity_index}"
            return f"{self.lhs.render()} := {src}"
        if self.kind is StmtKind.ASSIGN:
            return f"{self.lhs.render()} = {self.rhs.render()}"
        if self.kind is StmtKind.INVOKE:
            return self.rhs.render()
        if self.kind is StmtKind.IF:
            return (f"if {self.cond_left.render()} {self.cond_op} "
                    f"{self.cond_right.render()} goto L{self.target}")
        if self.kind is StmtKind.GOTO:
            return f"goto L{self.target}"
        if self.ret_value is None:
            return "return"
        return f"return {self.ret_value.render()}"

    def invoke_expr(self) -> Optional[InvokeExpr]:
        """The call expression carried by this statement, if any."""
        if isinstance(self.rhs, InvokeExpr):
            return self.rhs
        return None


@dataclass(frozen=True)
class MethodDef:
    sig: MethodSig
    locals: tuple[tuple[str, str], ...]  # (name, type) in declaration order
    body: tuple[Stmt, ...]
    labels: dict[int, int] = field(default_factory=dict)  # label id -> stmt index

    def __post_init__(self):
        object.__setattr__(self, "local_types", dict(self.locals))

    def render(self, indent: str = "  ") -> str:
        lines = [f"{indent}method {self.sig.render()} {{"]
        for name, ty in self.locals:
            lines.append(f"{indent}  {ty} {name};")
        index_to_label = {idx: lid for lid, idx in self.labels.items()}
        for stmt in self.body:
            prefix = f"L{index_to_label[stmt.ordinal]}: " if stmt.ordinal in index_to_label else ""
            lines.append(f"{indent}  {prefix}{stmt.render()};")
        lines.append(f"{indent}}}")
        return "\n".join(lines)


@dataclass(frozen=True)
class ClassDef:
    name: str
    methods: tuple[MethodDef, ...]

    def render(self) -> str:
        body = "\n".join(m.render() for m in self.methods)
        return f"class {self.name} {{\n{body}\n}}"


@dataclass(frozen=True)
class Program:
    classes: tuple[ClassDef, ...]

    def __post_init__(self):
        index: dict[MethodSig, MethodDef] = {}
        for cls in self.classes:
            for method in cls.methods:
                index[method.sig] = method
        object.__setattr__(self, "index", index)

    def methods(self) -> list[MethodDef]:
        return [m for cls in self.classes for m in cls.methods]

    def render(self) -> str:
        return "\n".join(cls.render() for cls in self.classes) + "\n"


def stmt_defs(stmt: Stmt) -> list[tuple[str, bool]]:
    """Locals defined by a statement as (name, kills) pairs.

    An array-element write is a partial update: it defines the array local
    but does not kill earlier definitions of it.
    """
    if stmt.kind is StmtKind.IDENTITY:
        return [(stmt.lhs.name, True)]
    if stmt.kind is StmtKind.ASSIGN:
        if isinstance(stmt.lhs, LocalRef):
            return [(stmt.lhs.name, True)]
        if isinstance(stmt.lhs, ArrayRef):
            return [(stmt.lhs.base, False)]
    return []


def _imm_locals(*imms: Optional[Imm]) -> set[str]:
    return {imm.name for imm in imms if isinstance(imm, Local)}


def stmt_uses(stmt: Stmt) -> set[str]:
    """Local names read by a statement, including invoke receivers and
    the base/index reads implied by array and field lvalues."""
    uses: set[str] = set()
    if stmt.kind is StmtKind.IF:
        return _imm_locals(stmt.cond_left, stmt.cond_right)
    if stmt.kind is StmtKind.RETURN:
        return _imm_locals(stmt.ret_value)
    if stmt.kind in (StmtKind.ASSIGN, StmtKind.INVOKE):
        rhs = stmt.rhs
        if isinstance(rhs, ImmValue):
            uses |= _imm_locals(rhs.imm)
        elif isinstance(rhs, BinExpr):
            uses |= _imm_locals(rhs.left, rhs.right)
        elif isinstance(rhs, InvokeExpr):
            if rhs.receiver is not None:
                uses.add(rhs.receiver)
            uses |= _imm_locals(*rhs.args)
        elif isinstance(rhs, FieldRead):
            if rhs.ref.base_local is not None:
                uses.add(rhs.ref.base_local)
        elif isinstance(rhs, ArrayRead):
            uses.add(rhs.ref.base)
            uses |= _imm_locals(rhs.ref.index)
        if isinstance(stmt.lhs, ArrayRef):
            uses.add(stmt.lhs.base)
            uses |= _imm_locals(stmt.lhs.index)
        elif isinstance(stmt.lhs, FieldRef) and stmt.lhs.base_local is not None:
            uses.add(stmt.lhs.base_local)
    return uses
