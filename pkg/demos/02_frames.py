# Normal frames: which entries of a matrix can be scaled to 1.

from fractions import Fraction

from matrealize.frame import apply_scaling, compute_frame, deletable_line, scale_to_frame

Q = [[0, 2, 3, 0],
     [4, 0, 6, 1],
     [0, 5, 0, 7]]

# %% the board: blue for the first nonzero of each column, red for the first
# remaining nonzero of each row; both end up green
board, frame = compute_frame(Q)
print(board)
print("frame:", sorted(frame.positions))

# %% a line with exactly one green square whose removal commutes with the boards
print(deletable_line(Q))

# %% row and column scalings that put ones on the frame
d1, d2 = scale_to_frame(Q)
print("rows:", [str(x) for x in d1])
print("cols:", [str(x) for x in d2])
for row in apply_scaling(d1, Q, d2):
    print([str(Fraction(x)) for x in row])
