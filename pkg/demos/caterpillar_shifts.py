"""Caterpillar amoebas: the shift that keeps slow ones alive, and where
the exact criterion stops answering.

Run: python3 demos/caterpillar_shifts.py
"""

from amoebas import (
    canonical_code,
    decide_caterpillar,
    ell_extension,
    parse_caterpillar,
    shift_step,
)

# A 1-extension of a path-rooted caterpillar is the same caterpillar read
# one position to the right. Iterating the shift is the immortality
# witness for slow specs.
spec = parse_caterpillar("C(0,2,2,3,0) roots=1,3,4")
print("start:", spec.text())
s = spec
for i in range(3):
    s = shift_step(s)
    print(f"  shift {i + 1}:", s.text())

grown = ell_extension(spec.to_amoeba(), 1)
same = canonical_code(grown) == canonical_code(shift_step(spec).to_amoeba().shape)
print("one 1-extension matches one shift up to isomorphism:", same)

# The exact verdicts. Slow specs are immortal; leg counts that both rise
# and drop by two or more are mortal regardless of root placement.
for text in [
    "C(0,0) roots=1",
    "C(0,1,0,0) roots=3,4",
    "C(0,2,0) roots=2",
    "C(0,0,2,0) roots=1",
]:
    d = decide_caterpillar(parse_caterpillar(text).to_amoeba())
    note = f" ({d.orientation})" if d.orientation else ""
    print(f"{text}: {d.status}{note}")

# Between those regions the criterion refuses to answer, for good reason:
# with the same failure shape, (P3, center) dies in one step while the
# amoeba below grows past 600 vertices with no confining tree through
# n=13. Simulation (amoebas classify / simulate) is the honest tool there.
for text in ["C(0,0,0) roots=2", "C(0,0,2,1,0) roots=1,2,4"]:
    d = decide_caterpillar(parse_caterpillar(text).to_amoeba())
    print(f"{text}: {d.status} - {d.reason}")
