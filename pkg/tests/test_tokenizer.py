import random

from hypothesis import given, strategies as st

from adappeal import compile_matcher, parse_dictionary, tokenize

_cjk = st.text(alphabet="あいうえお試価格円漢字アイウ", min_size=0, max_size=40)
_mixed = st.text(alphabet="あい試字アイ abc012!?⭐", min_size=0, max_size=60)


def _dict(text: str):
    return compile_matcher(parse_dictionary(text.encode("utf-8")))


def test_whitespace_and_class_transition():
    assert tokenize("very happy!").tokens == ("very", "happy", "!")


def test_class_runs_kept_whole():
    assert tokenize("abc123!?").tokens == ("abc", "123", "!?")


def test_cjk_fallback_single_chars():
    assert tokenize("不安だ").tokens == ("不", "安", "だ")


def test_cjk_greedy_longest_match():
    m = _dict("%\n1\taffect\n%\n不安\t1\n不安感\t1\n")
    assert tokenize("不安感がある", m).tokens == ("不安感", "が", "あ", "る")


def test_dictionary_stem_at_run_start():
    m = _dict("%\n1\taffect\n%\n価格\t1\n")
    assert tokenize("価格は", m).tokens == ("価格", "は")


def test_alphabetic_run_not_split_by_matcher():
    m = _dict("%\n1\taffect\n%\nhap*\t1\n")
    assert tokenize("happiness", m).tokens == ("happiness",)


def test_boundaries_are_source_slices():
    text = "お試し 価格 500円!"
    tl = tokenize(text)
    for tok, (s, e) in zip(tl.tokens, tl.boundaries):
        assert text[s:e] == tok
    starts = [s for s, _ in tl.boundaries]
    assert starts == sorted(starts)


@given(_cjk)
def test_reconstruction_cjk(text):
    tl = tokenize(text)
    assert "".join(tl.tokens) == text


@given(_mixed)
def test_reconstruction_whitespace_removed(text):
    tl = tokenize(text)
    assert "".join(tl.tokens) == "".join(c for c in text if not c.isspace())


def test_reconstruction_with_matcher_random():
    m = _dict("%\n1\taffect\n%\n不安\t1\nお試し\t1\n試験*\t1\n")
    rng = random.Random(9)
    alphabet = "不安お試し験価格円あい a1"
    for _ in range(300):
        text = "".join(rng.choices(alphabet, k=rng.randint(0, 30)))
        tl = tokenize(text, m)
        assert "".join(tl.tokens) == "".join(c for c in text if not c.isspace())
        for tok, (s, e) in zip(tl.tokens, tl.boundaries):
            assert text[s:e] == tok
