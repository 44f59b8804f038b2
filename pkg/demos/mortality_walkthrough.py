"""Three small amoebas, three fates, end to end.

Run: python3 demos/mortality_walkthrough.py
"""

from amoebas import (
    Amoeba,
    Tree,
    classify,
    dot_graph,
    find_confining_tree,
    is_confining,
    run_generation,
    verify_log,
)

# 1. A 4-star rooted at a leaf. Max degree 3 exceeds 1 + k = 2, so the
#    degree conditions alone prove mortality; simulation then shows the
#    whole story in three steps.
star_leaf = Amoeba(Tree(4, ((0, 1), (0, 2), (0, 3))), (0, 1, 0, 0))
c = classify(star_leaf, 1)
print("star with a leaf root:", c.verdict, "via", c.certificate.kind)

r = run_generation(star_leaf, 1)
final = r.state.current
print(f"  FirstAlive run: {r.outcome} after {r.steps} steps,"
      f" final tree on {final.vertex_count} vertices")
print(f"  final tree confines the amoeba: {is_confining(final, star_leaf, 1)}")
print(f"  log replays cleanly: {verify_log(r.state.log) == []}")

# 2. P3 rooted at the center. No degree obstruction, but one growth turns
#    the path into a 4-star in which every copy is dead.
p3_mid = Amoeba(Tree(3, ((0, 1), (1, 2))), (0, 1, 0))
r = run_generation(p3_mid, 1)
print("\nP3 with a center root:", r.outcome, "after", r.steps, "step")
smallest = find_confining_tree(p3_mid, 1, 4)
print("  smallest confining tree, as DOT:")
print("\n".join("  " + line for line in dot_graph(smallest).splitlines()))

# 3. A single rooted edge. The slow-caterpillar criterion proves it
#    immortal: the rooted end keeps stepping away forever.
edge = Amoeba(Tree(2, ((0, 1),)), (1, 0))
c = classify(edge, 1)
print("rooted edge:", c.verdict, "via", c.certificate.kind)
r = run_generation(edge, 1, max_steps=500, max_vertices=600)
print(f"  survives {r.steps} steps without confinement ({r.outcome})")
print(f"  no confining tree on up to 9 vertices: {find_confining_tree(edge, 1, 9) is None}")
