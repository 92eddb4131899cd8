"""
Legal lattice paths and Narayana numbers
========================================

Counting legal paths by brute force, by the b-recursion, and by the
cut-and-glue rotation argument gives the same Narayana triangle.
"""

from laguerre_mp.lattice_paths import (
    cut_and_glue_census,
    enumerate_legal_paths,
    iter_legal_paths,
    narayana,
    path_table_recursion,
)

# all legal paths to (3, 1), as height sequences
for path in iter_legal_paths(3, 1):
    print(path)

table = path_table_recursion(7, 3)
for k in range(1, 8):
    row = [table.get(k, 1, j) for j in range(1, k + 1)]
    brute = [enumerate_legal_paths(k, 1, j) for j in range(1, k + 1)]
    print(f"k={k}  recursion={row}  enumeration={brute}  narayana={[int(narayana(k, j)) for j in range(1, k + 1)]}")

# free paths fall into rotation classes of size k, one legal path each
for k, j in [(3, 2), (5, 3), (6, 2)]:
    free, classes = cut_and_glue_census(k, j)
    print(f"k={k} j={j}: {free} free paths, {classes} classes")
