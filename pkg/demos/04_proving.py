"""Asking the prover whether a scene entails a query, in each mode."""

from visent import Budget, Structure, TranslationMode, entails, parse, parse_formula, prove

scene = Structure(("d1", "d2"), {"man": {"d1"}, "hat": {"d2"}, "red": {"d2"}},
                  {"wear": {("d1", "d2")}})
queries = ["There is a red hat", "A man is wearing a hat", "No cat is white",
           "No man wears a hat", "Every hat is red", "There are at least two hats"]

print(f"{'query':32}" + "".join(f"{m.value:>14}" for m in TranslationMode))
for text in queries:
    q = parse(text)
    row = [entails(scene, q, mode).status.value for mode in TranslationMode]
    print(f"{text:32}" + "".join(f"{v:>14}" for v in row))

# Counting relies on distinct constants naming distinct objects.
cats = Structure(("d1", "d2"), {"cat": {"d1", "d2"}})
q = parse("There are at least two cats")
print("\ntwo cats, with UNA   :", entails(cats, q).status.value)
print("two cats, without UNA:", entails(cats, q, una=False).status.value)

# The prover also works on raw premises.
v = prove([parse_formula("forall x. (cat(x) -> animal(x))"), parse_formula("cat(d1)")],
          parse_formula("exists y. animal(y)"))
print("\nraw premises:", v.status.value, f"({v.clauses} clauses, {v.decisions} decisions)")

# A zero-second budget trips before search starts.
print("starved budget:", entails(scene, parse("There is a red hat"),
                                 budget=Budget(max_seconds=0)).status.value)
