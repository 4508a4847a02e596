"""Access to the shipped corpus of semigroup table files."""

from __future__ import annotations

from importlib import resources

from .core import parse_semigroup


def _corpus_dir():
    return resources.files(__package__) / "corpus"


def corpus_names():
    return sorted(p.name for p in _corpus_dir().iterdir() if p.name.endswith(".sgp"))


def corpus_text(name):
    return (_corpus_dir() / name).read_text()


def load_corpus(name):
    return parse_semigroup(corpus_text(name))
