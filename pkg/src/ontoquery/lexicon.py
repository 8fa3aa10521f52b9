"""Keyword pipeline resources: stopwords, a file-based synonym lexicon,
tokenization with minimal plural lemmatization, and compound-name
segmentation.

Replaces an online thesaurus with a plain TSV file so runs are
reproducible: each line is ``lemma<TAB>syn1,syn2,...`` and the loaded
relation is closed under symmetry.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Union


class EmptyQueryError(ValueError):
    """No token survives tokenization and stopword removal."""


@dataclass(frozen=True)
class StopwordList:
    words: frozenset[str]

    @classmethod
    def default(cls) -> "StopwordList":
        text = resources.files("ontoquery").joinpath("data/stopwords.txt").read_text()
        return cls._from_text(text)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "StopwordList":
        return cls._from_text(Path(path).read_text())

    @classmethod
    def _from_text(cls, text: str) -> "StopwordList":
        words = set()
        for line in text.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                words.add(line.lower())
        return cls(frozenset(words))

    def contains(self, token: str) -> bool:
        return token.lower() in self.words


@dataclass(frozen=True)
class SynonymLexicon:
    """Symmetric word-to-synonyms relation, lower-cased on load."""

    table: dict[str, frozenset[str]]

    @classmethod
    def empty(cls) -> "SynonymLexicon":
        return cls({})

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SynonymLexicon":
        pairs: dict[str, set[str]] = {}

        def link(a: str, b: str) -> None:
            if a != b:
                pairs.setdefault(a, set()).add(b)
                pairs.setdefault(b, set()).add(a)

        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            lemma, _, rest = line.partition("\t")
            lemma = lemma.strip().lower()
            for syn in rest.split(","):
                syn = syn.strip().lower()
                if lemma and syn:
                    link(lemma, syn)
        return cls({w: frozenset(s) for w, s in pairs.items()})


def synonyms_of(lex: SynonymLexicon, word: str) -> set[str]:
    """Synonyms of a word, case-insensitively; never includes the word."""
    return set(lex.table.get(word.lower(), frozenset()))


_TOKEN_RE = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_-]*[A-Za-z0-9_])?")

# Plural stripping, deliberately minimal: sibilant -es forms, -ies -> y,
# then a bare -s (never after -ss/-us/-is).
_SIBILANT_ES = ("sses", "xes", "zes", "ches", "shes")


def _lemmatize(token: str) -> str:
    low = token.lower()
    if any(low.endswith(suf) for suf in _SIBILANT_ES) and len(token) > 3:
        return token[:-2]
    if low.endswith("ies") and len(token) > 4:
        return token[:-3] + "y"
    if (
        low.endswith("s")
        and not low.endswith(("ss", "us", "is"))
        and len(token) > 3
    ):
        return token[:-1]
    return token


def preprocess(
    query: str,
    stop: StopwordList,
    known_names: Iterable[str] = (),
) -> list[str]:
    """Tokenize, drop stopwords, lemmatize; original casing is kept.

    Tokens are maximal runs of word characters with interior hyphens, so
    "Lobe-of-prostate" is one token. A token equal (case-insensitively)
    to a known entity name is exempt from lemmatization. Raises
    EmptyQueryError when nothing survives.
    """
    known_lower = {n.lower() for n in known_names}
    out: list[str] = []
    for token in _TOKEN_RE.findall(query):
        if stop.contains(token):
            continue
        if token.lower() not in known_lower:
            token = _lemmatize(token)
        out.append(token)
    if not out:
        raise EmptyQueryError(f"no searchable token in {query!r}")
    return out


_SEGMENT_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z0-9])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")


def segment_name(name: str) -> list[str]:
    """Split a compound entity name into lower-case parts.

    Boundaries: '-', '_', lowercase-to-uppercase, and letter/digit
    transitions; acronym runs stay together ("HTTPServer" -> http,
    server). Concatenating the parts reproduces the case-folded input
    minus separators.
    """
    parts: list[str] = []
    for chunk in re.split(r"[-_]", name):
        parts.extend(m.lower() for m in _SEGMENT_RE.findall(chunk))
    return parts
