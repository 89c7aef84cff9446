"""Walkthrough: dictionary tagging and character profiling of ad copy.

Loads the shipped synthetic dictionary, then tags a few Japanese ad
texts and prints their category percentages next to their character
profiles.
"""

from importlib import resources

from adappeal import compile_matcher, parse_dictionary, profile_text, tokenize
from adappeal.chartypes import PUBLIC_CLASSES

ADS = [
    "お試し価格500円(税込)！今すぐチェック",
    "不安な毎日にさようなら。疲労対策はこちら",
    "＼先着15,000名様限定！／特別キャンペーン実施中",
]

raw = resources.files("adappeal.data").joinpath("sample_liwc.dic").read_bytes()
dictionary = parse_dictionary(raw)
matcher = compile_matcher(dictionary)
names = dictionary.category_names()

for text in ADS:
    print(f"\n=== {text}")
    tokens = tokenize(text, matcher)
    print("tokens:", " / ".join(tokens.tokens))

    vec = matcher.tag_tokens(tokens.tokens)
    hits = {names[cid]: pct for cid, pct in vec.percentages.items() if pct > 0}
    for name, pct in sorted(hits.items(), key=lambda kv: -kv[1]):
        print(f"  {name:10s} {pct:5.1f}%")

    profile = profile_text(text)
    mix = ", ".join(f"{c.value}={profile.counts[c]}"
                    for c in PUBLIC_CLASSES if profile.counts[c])
    print(f"characters: total={profile.total} ({mix})")
