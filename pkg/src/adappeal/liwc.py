"""LIWC-format dictionary parsing, compilation, and token tagging.

File format (line-oriented UTF-8): a header opened and closed by lines
containing only ``%``; header lines are ``<id><TAB><name>`` (an optional
``name/qualifier`` suffix is ignored); body lines are
``<word>[*]<TAB><id>[<TAB><id>...]``.  Blank lines and ``#`` comments
are skipped.  A trailing ``*`` marks a prefix (wildcard) entry.

Matching is case-insensitive after NFKC normalization.  A hit on a
child category also increments every ancestor (negemo rolls up into
affect), mirroring how LIWC2015 composes its hierarchy.
"""

from __future__ import annotations

import hashlib
import unicodedata
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Mapping, Sequence


class DictionaryError(ValueError):
    """Malformed dictionary file; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Category:
    id: int
    name: str
    parent: int | None = None


@dataclass(frozen=True)
class WordEntry:
    stem: str
    wildcard: bool
    categories: frozenset[int]


@dataclass(frozen=True)
class Dictionary:
    categories: tuple[Category, ...]
    entries: tuple[WordEntry, ...]
    source_digest: str

    def category_names(self) -> dict[int, str]:
        return {c.id: c.name for c in self.categories}

    def name_to_id(self) -> dict[str, int]:
        return {c.name: c.id for c in self.categories}


@dataclass(frozen=True)
class CategoryVector:
    """Per-text category occurrence counts and percentages."""

    counts: dict[int, int]
    total_tokens: int
    percentages: dict[int, float]

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], total_tokens: int,
                    category_ids: Iterable[int]) -> "CategoryVector":
        full = {cid: counts.get(cid, 0) for cid in category_ids}
        if total_tokens > 0:
            pct = {cid: 100.0 * n / total_tokens for cid, n in full.items()}
        else:
            pct = {cid: 0.0 for cid in full}
        return cls(counts=full, total_tokens=total_tokens, percentages=pct)


def normalize_token(token: str) -> str:
    """NFKC then case-fold; applied to both dictionary stems and tokens."""
    return unicodedata.normalize("NFKC", token).casefold()


def load_builtin_hierarchy() -> dict[str, str]:
    """Child-name -> parent-name table following LIWC2015 conventions."""
    text = resources.files("adappeal.data").joinpath("liwc2015_hierarchy.tsv").read_text("utf-8")
    return _parse_hierarchy_lines(text.splitlines())


def parse_hierarchy_sidecar(text: str) -> dict[str, str]:
    """Parse a ``child<TAB>parent`` override file (same format as built-in)."""
    return _parse_hierarchy_lines(text.splitlines())


def _parse_hierarchy_lines(lines: Iterable[str]) -> dict[str, str]:
    table: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise DictionaryError("hierarchy line must be child<TAB>parent", lineno)
        table[parts[0]] = parts[1]
    return table


def parse_dictionary(raw: bytes, hierarchy: Mapping[str, str] | None = None) -> Dictionary:
    """Parse a LIWC-format dictionary from bytes.

    ``hierarchy`` maps child category names to parent names; defaults to
    the built-in LIWC2015 table.  Parent links are resolved only when
    both names are present in the file.
    """
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise DictionaryError(f"dictionary must be UTF-8: {e}") from None
    digest = hashlib.sha256(raw).hexdigest()
    if hierarchy is None:
        hierarchy = load_builtin_hierarchy()

    lines = text.splitlines()
    fences = [i for i, ln in enumerate(lines) if ln.strip() == "%"]
    if len(fences) < 2:
        raise DictionaryError("missing `%` header fences", len(fences) and fences[0] + 1 or 1)
    head_start, head_end = fences[0], fences[1]

    categories: list[Category] = []
    seen_ids: set[int] = set()
    for i in range(head_start + 1, head_end):
        lineno = i + 1
        line = lines[i].strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split(None, 1)
        if len(parts) != 2:
            raise DictionaryError("header line must be <id><TAB><name>", lineno)
        if not parts[0].isdigit():
            raise DictionaryError(f"non-numeric category id {parts[0]!r}", lineno)
        cid = int(parts[0])
        if cid <= 0:
            raise DictionaryError(f"category id must be positive, got {cid}", lineno)
        if cid in seen_ids:
            raise DictionaryError(f"duplicate category id {cid}", lineno)
        seen_ids.add(cid)
        name = parts[1].strip().split("/", 1)[0].strip()
        if not name:
            raise DictionaryError("empty category name", lineno)
        categories.append(Category(id=cid, name=name))

    if not categories:
        raise DictionaryError("no categories in header", head_end + 1)

    # Resolve parent links by name.
    by_name = {c.name: c.id for c in categories}
    categories = [
        Category(c.id, c.name, by_name.get(hierarchy[c.name]))
        if c.name in hierarchy and hierarchy[c.name] in by_name else c
        for c in categories
    ]

    entries: list[WordEntry] = []
    seen_entries: set[tuple[str, bool]] = set()
    for i in range(head_end + 1, len(lines)):
        lineno = i + 1
        line = lines[i].strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise DictionaryError("entry line must be <word><TAB><id>...", lineno)
        word = parts[0].strip()
        wildcard = word.endswith("*")
        stem = normalize_token(word[:-1] if wildcard else word)
        if not stem:
            raise DictionaryError("empty word stem", lineno)
        if "*" in stem:
            raise DictionaryError("`*` allowed only at end of word", lineno)
        cids: set[int] = set()
        for p in parts[1:]:
            p = p.strip()
            if not p:
                continue
            if not p.isdigit():
                raise DictionaryError(f"non-numeric category id {p!r}", lineno)
            cid = int(p)
            if cid not in seen_ids:
                raise DictionaryError(f"unknown category id {cid}", lineno)
            cids.add(cid)
        if not cids:
            raise DictionaryError("entry has no category ids", lineno)
        key = (stem, wildcard)
        if key in seen_entries:
            raise DictionaryError(f"duplicate entry {word!r}", lineno)
        seen_entries.add(key)
        entries.append(WordEntry(stem=stem, wildcard=wildcard, categories=frozenset(cids)))

    if not entries:
        raise DictionaryError("no word entries in body")

    return Dictionary(categories=tuple(categories), entries=tuple(entries),
                      source_digest=digest)


def serialize_dictionary(d: Dictionary) -> str:
    """Render a Dictionary back to LIWC file format (round-trip safe)."""
    out = ["%"]
    for c in d.categories:
        out.append(f"{c.id}\t{c.name}")
    out.append("%")
    for e in d.entries:
        word = e.stem + ("*" if e.wildcard else "")
        out.append("\t".join([word] + [str(cid) for cid in sorted(e.categories)]))
    return "\n".join(out) + "\n"


class _TrieNode:
    __slots__ = ("children", "exact", "wildcard")

    def __init__(self):
        self.children: dict[str, _TrieNode] = {}
        self.exact: frozenset[int] | None = None
        self.wildcard: frozenset[int] | None = None


class Matcher:
    """Immutable compiled matcher: a character trie over dictionary stems.

    Exact entries match whole tokens; wildcard entries match any token
    having the stem as a prefix.  Overlapping matches take the union of
    their category sets, and every hit is expanded to include ancestor
    categories.
    """

    def __init__(self, dictionary: Dictionary):
        self._root = _TrieNode()
        self._ancestors = _ancestor_closure(dictionary.categories)
        self._category_ids = tuple(c.id for c in dictionary.categories)
        self.dictionary = dictionary
        for e in dictionary.entries:
            node = self._root
            for ch in e.stem:
                node = node.children.setdefault(ch, _TrieNode())
            if e.wildcard:
                node.wildcard = frozenset().union(node.wildcard or frozenset(), e.categories)
            else:
                node.exact = frozenset().union(node.exact or frozenset(), e.categories)

    @property
    def category_ids(self) -> tuple[int, ...]:
        return self._category_ids

    def match_token(self, token: str) -> set[int]:
        """Category ids for one token, ancestors included; {} if no match."""
        token = normalize_token(token)
        hits: set[int] = set()
        node = self._root
        last = len(token) - 1
        for i, ch in enumerate(token):
            node = node.children.get(ch)
            if node is None:
                break
            if node.wildcard is not None:
                hits |= node.wildcard
            if i == last and node.exact is not None:
                hits |= node.exact
        if not hits:
            return hits
        expanded = set(hits)
        for cid in hits:
            expanded |= self._ancestors[cid]
        return expanded

    def longest_stem_prefix(self, text: str, start: int = 0) -> int:
        """Length of the longest stem that prefixes ``text[start:]``; 0 if none.

        Used by the segmenter for greedy longest-match over CJK runs.
        Characters are folded individually; folds that change length
        stop the walk (treated as a non-match at that point).
        """
        node = self._root
        best = 0
        i = start
        while i < len(text):
            folded = normalize_token(text[i])
            if len(folded) != 1:
                break
            node = node.children.get(folded)
            if node is None:
                break
            i += 1
            if node.exact is not None or node.wildcard is not None:
                best = i - start
        return best

    def tag_tokens(self, tokens: Sequence[str]) -> CategoryVector:
        """Tag a token sequence into a CategoryVector over all categories."""
        counts: dict[int, int] = {}
        for tok in tokens:
            for cid in self.match_token(tok):
                counts[cid] = counts.get(cid, 0) + 1
        return CategoryVector.from_counts(counts, len(tokens), self._category_ids)


def _ancestor_closure(categories: Sequence[Category]) -> dict[int, frozenset[int]]:
    parent = {c.id: c.parent for c in categories}
    closure: dict[int, frozenset[int]] = {}
    for cid in parent:
        seen: set[int] = set()
        cur = parent.get(cid)
        while cur is not None and cur not in seen:
            seen.add(cur)
            cur = parent.get(cur)
        closure[cid] = frozenset(seen)
    return closure


def compile_matcher(dictionary: Dictionary) -> Matcher:
    return Matcher(dictionary)


def match_token_naive(dictionary: Dictionary, token: str) -> set[int]:
    """Reference matcher: linear scan over all entries (test oracle)."""
    token = normalize_token(token)
    hits: set[int] = set()
    for e in dictionary.entries:
        if (e.wildcard and token.startswith(e.stem)) or (not e.wildcard and token == e.stem):
            hits |= e.categories
    if not hits:
        return hits
    ancestors = _ancestor_closure(dictionary.categories)
    expanded = set(hits)
    for cid in hits:
        expanded |= ancestors[cid]
    return expanded
