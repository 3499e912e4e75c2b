# Matroids up to isomorphism, straight from the basis exchange axiom.

from matrealize.enumeration import dumps_catalog, enumerate_matroids
from matrealize.matroid import canonicalize, dual_matroid, relabel, uniform_matroid

# %% a matroid is a family of d-subsets; U(2,4) takes every pair
U = uniform_matroid(2, 4)
print(U)
print("bases:", U.bases)

# relabelling does not change the canonical form
V = relabel(U, (3, 1, 4, 2))
print(canonicalize(V)[0] == canonicalize(U)[0])

# %% counts per rank on 6 elements; the dual flips the rank
for d in range(7):
    print(d, len(enumerate_matroids(d, 6)))

M = enumerate_matroids(2, 5).entries[3]
print(M.bases)
print(dual_matroid(M).bases)

# %% catalogs are plain text with a checksum trailer
print(dumps_catalog(enumerate_matroids(2, 4)))
