"""Loading of the two pipe-separated datasets: privacy-relevant data source
signatures (with risk tiers) and privacy-relevant library packages (with
the category-to-operation-class binning in the file header)."""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from typing import Optional

from .errors import DatasetFormatError
from .ir import MethodSig
from .parser import parse_sig

PSEUDO_STRENGTHS = ("weak", "strong")

LIBRARY_CATEGORIES = {
    "pseudonymization", "analytics", "advertisements", "authentication",
    "network", "io", "email", "image", "serialization", "location",
    "logging", "string",
}

OP_CLASSES = (
    "collection", "string_manipulation", "processing_storage",
    "third_party_sharing", "pseudonymization",
)


@dataclass(frozen=True)
class IdentifierEntry:
    """One data-source signature. `class_prefix` is set instead of an exact
    signature when the dataset line used a `.*` wildcard on the class."""

    signature: MethodSig
    data_category: str
    risk: int
    class_prefix: Optional[str] = None

    def matches(self, callee: MethodSig) -> bool:
        if self.class_prefix is None:
            return callee == self.signature
        return (callee.declaring_class.startswith(self.class_prefix + ".")
                and callee.return_type == self.signature.return_type
                and callee.method_name == self.signature.method_name
                and callee.param_types == self.signature.param_types)


@dataclass(frozen=True)
class LibraryEntry:
    package_prefix: str
    category: str
    pseudo_strength: Optional[str] = None

    def matches(self, declaring_class: str) -> bool:
        return (declaring_class == self.package_prefix
                or declaring_class.startswith(self.package_prefix + "."))


@dataclass(frozen=True)
class LibraryDataset:
    entries: tuple[LibraryEntry, ...]
    category_map: dict[str, str]  # category -> operation class


def load_identifier_dataset(text: str) -> list[IdentifierEntry]:
    entries: list[IdentifierEntry] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise DatasetFormatError("expected `signature | category | risk`", lineno)
        sig_text, category, risk_text = parts
        if not category:
            raise DatasetFormatError("empty data category", lineno)
        try:
            risk = int(risk_text)
        except ValueError:
            raise DatasetFormatError(f"risk tier must be an integer, got {risk_text!r}",
                                     lineno) from None
        if risk < 1:
            raise DatasetFormatError(f"risk tier must be >= 1, got {risk}", lineno)
        class_prefix = None
        if ".*:" in sig_text:
            prefix_part = sig_text.split(":", 1)[0].lstrip("<").strip()
            class_prefix = prefix_part[:-2]  # drop trailing `.*`
            sig_text = sig_text.replace(prefix_part, class_prefix, 1)
        try:
            sig = parse_sig(sig_text)
        except Exception as exc:
            raise DatasetFormatError(f"bad signature: {exc}", lineno) from None
        if sig_text in seen:
            raise DatasetFormatError(f"duplicate signature {sig.render()}", lineno)
        seen.add(sig_text)
        entries.append(IdentifierEntry(sig, category, risk, class_prefix))
    return entries


def load_library_dataset(text: str) -> LibraryDataset:
    entries: list[LibraryEntry] = []
    category_map: dict[str, str] = {}
    seen_prefixes: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#!"):
            parts = line[2:].split()
            if len(parts) != 4 or parts[0] != "opclass" or parts[2] != "=":
                raise DatasetFormatError("expected `#! opclass <category> = <class>`",
                                         lineno)
            _, category, _, op_class = parts
            if op_class not in OP_CLASSES:
                raise DatasetFormatError(f"unknown operation class {op_class!r}", lineno)
            category_map[category] = op_class
            continue
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) not in (2, 3):
            raise DatasetFormatError(
                "expected `prefix | category [| strength]`", lineno)
        prefix, category = parts[0], parts[1]
        strength = parts[2] if len(parts) == 3 and parts[2] else None
        if category not in LIBRARY_CATEGORIES:
            raise DatasetFormatError(f"unknown category {category!r}", lineno)
        if (strength is not None) != (category == "pseudonymization"):
            raise DatasetFormatError(
                "pseudonymization strength is required exactly for the "
                "pseudonymization category", lineno)
        if strength is not None and strength not in PSEUDO_STRENGTHS:
            raise DatasetFormatError(f"strength must be weak or strong, got {strength!r}",
                                     lineno)
        if prefix in seen_prefixes:
            raise DatasetFormatError(f"duplicate prefix {prefix!r}", lineno)
        seen_prefixes.add(prefix)
        entries.append(LibraryEntry(prefix, category, strength))
    return LibraryDataset(tuple(entries), category_map)


def _read_bundled(name: str) -> str:
    return (importlib.resources.files("slicetool") / "data" / name).read_text("utf-8")


def default_identifiers() -> list[IdentifierEntry]:
    return load_identifier_dataset(_read_bundled("identifiers.psv"))


def default_libraries() -> LibraryDataset:
    return load_library_dataset(_read_bundled("libraries.psv"))
