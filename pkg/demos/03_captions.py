"""Enriching a scene with facts read off its captions."""

from visent import Structure, extend_with_sentences

scene = Structure(
    ("d1", "d2", "d3", "d4"),
    {"woman": {"d1"}, "table": {"d2"}, "phone": {"d3"}, "chair": {"d4"}},
    {"touch": {("d1", "d3")}, "on": {("d3", "d2")}},
)
captions = [
    "The woman is calling.",
    "The woman is wearing glasses.",
    "A dog is sleeping.",
    "No chair is red.",          # not existential-conjunctive: skipped
    "The woman is blorping.",    # unknown word: skipped
]
report = []
richer = extend_with_sentences(scene, captions, report=report)
for r in report:
    extra = f" fresh={r.fresh}" if r.fresh else ""
    print(f"{r.status:8} {r.caption:32} {r.reason}{extra}")

print("\nbefore:", scene)
print("after :", richer)
