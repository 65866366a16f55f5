"""English to first-order logic with the bundled categorial lexicon."""

from visent import ParseError, default_lexicon, parse, polarity
from visent.semparser import tokenize

sentences = [
    "A man is wearing a hat.",
    "There are at least two cats.",
    "All cats are white.",
    "No umbrella is colorful.",
    "A man is not walking on a street.",
    "Every man isn't eating anything.",
    "There are two cups or three cups.",
]
for text in sentences:
    f = parse(text)
    print(f"{text:38} [{polarity(f).value}]\n    {f}")

# Inflected multiword relations are found by the chart, not the tokenizer.
print("\ntokens:", tokenize("A man is not walking on a street."))

# Unknown words fail loudly; the lexicon can be grown in place.
try:
    parse("A zebra chases a cat")
except ParseError as err:
    print("\nparse error:", err)
lex = default_lexicon().extend_vocabulary(nouns=["zebra"], relations=["chase"])
print("with extra vocabulary:", parse("A zebra chases a cat", lex))
