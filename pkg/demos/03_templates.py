# Template matrices and the polynomial systems they define.

from itertools import combinations

from matrealize.matroid import Matroid, first_basis_revlex, uniform_matroid
from matrealize.realize import fill_matrix, find_rational_point, generate_system, reduce_realization

# %% U(2,4): four points on a line, one free cross-ratio
U = uniform_matroid(2, 4)
T = fill_matrix(2, 4, first_basis_revlex(U), U)
print(T)
S = generate_system(T, U)
print("equalities:", [str(p) for p in S.equalities])
print("inequalities:", [str(p) for p in S.inequalities])
print("witness:", find_rational_point(S))

# %% the Fano plane: seven lines are forced, but no rational point exists
lines = {(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (1, 5, 6), (2, 6, 7), (1, 3, 7)}
F = Matroid(7, 3, tuple(c for c in combinations(range(1, 8), 3) if c not in lines))
T = fill_matrix(3, 7, first_basis_revlex(F), F)
print(T)
S = generate_system(T, F)
print([str(p) for p in S.equalities])   # forces 2 = 0
print(find_rational_point(S))

# %% any realization can be brought into the template's shape
res = reduce_realization([[2, 0, 4, 2], [0, 3, 6, 9]])
for row in res.normalized:
    print([str(x) for x in row])
