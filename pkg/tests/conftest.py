import random

import pytest
from importlib import resources

from adappeal import compile_matcher, parse_dictionary
from adappeal.liwc import Category, Dictionary, WordEntry, serialize_dictionary


@pytest.fixture(scope="session")
def sample_dict_bytes() -> bytes:
    return resources.files("adappeal.data").joinpath("sample_liwc.dic").read_bytes()


@pytest.fixture(scope="session")
def sample_dict(sample_dict_bytes):
    return parse_dictionary(sample_dict_bytes)


@pytest.fixture(scope="session")
def sample_matcher(sample_dict):
    return compile_matcher(sample_dict)


# Names drawn from the built-in hierarchy exercise ancestor roll-up in
# randomly generated dictionaries.
HIERARCHY_NAMES = ["affect", "posemo", "negemo", "cogproc", "cause", "bio",
                   "health", "relativ", "time"]


def random_dictionary(rng: random.Random, n_categories: int = 6,
                      n_entries: int = 20, alphabet: str = "abc") -> Dictionary:
    """Random but valid dictionary; entries are short stems over a tiny
    alphabet so exact/wildcard overlaps are common."""
    names = rng.sample(HIERARCHY_NAMES, min(n_categories, len(HIERARCHY_NAMES)))
    while len(names) < n_categories:
        name = "cat" + "".join(rng.choices("xyz", k=4)) + str(len(names))
        if name not in names:
            names.append(name)
    ids = rng.sample(range(1, 100), n_categories)
    categories = [Category(id=i, name=n) for i, n in zip(ids, names)]
    entries = {}
    for _ in range(n_entries):
        stem = "".join(rng.choices(alphabet, k=rng.randint(1, 4)))
        wildcard = rng.random() < 0.5
        cats = frozenset(rng.sample(ids, rng.randint(1, min(3, len(ids)))))
        entries[(stem, wildcard)] = WordEntry(stem=stem, wildcard=wildcard,
                                              categories=cats)
    text = serialize_dictionary(Dictionary(
        categories=tuple(categories), entries=tuple(entries.values()),
        source_digest=""))
    # Round through the parser so parent links resolve the same way they
    # would for a user-supplied file.
    return parse_dictionary(text.encode("utf-8"))


def random_token(rng: random.Random, alphabet: str = "abc") -> str:
    return "".join(rng.choices(alphabet, k=rng.randint(1, 6)))
