"""From a scene graph to logic: the open-world and closed-world readings."""

from visent import SceneGraph, build_bundle, parse_formula, scene_graph_to_structure
from visent import translate_complex, translate_simple, TranslationMode
from visent.structure import SceneObject, SceneRelation

graph = SceneGraph(
    objects=(SceneObject("d1", "man"), SceneObject("d2", "hat", ("red",))),
    relations=(SceneRelation("d1", "wear", "d2"),),
    image_id="man_with_hat",
)
s = scene_graph_to_structure(graph)
print("structure:", s)

# The open-world translation lists the facts and nothing else.
print("\nsimple :", translate_simple(s))

# The closed-world translation adds one biconditional per predicate,
# so anything not listed is provably false.
print("\ncomplex:", translate_complex(s))

# A bundle carries the core plus distinctness of the constants.
query = parse_formula("-(exists x. (cat(x) & white(x)))")
bundle = build_bundle(s, query, TranslationMode.HYBRID)
print(f"\nhybrid picks {bundle.mode.value} for a negative query; premises:")
for p in bundle.premises():
    print("  ", p)
