"""Arrays transcribed from published figures, in expanded form."""

import numpy as np

# outline square with P=(4,1,1), Q=(3,2,1), R=(2,2,2)
OUTLINE_SQUARE_GROUPS = [(4, 1, 1), (3, 2, 1), (2, 2, 2)]
OUTLINE_SQUARE = [
    [1, 1, 1, 2, 2, 1],
    [1, 1, 1, 2, 2, 1],
    [2, 2, 3, 3, 3, 2],
    [3, 3, 3, 3, 3, 2],
    [2, 2, 3, 1, 1, 3],
    [2, 2, 3, 1, 1, 3],
]

# reduction of the order-5 square modulo P=(2,2,1), Q=(4,1), R=(2,1,1,1)
REDUCTION_GROUPS = [(2, 2, 1), (4, 1), (2, 1, 1, 1)]
REDUCTION = [
    [1, 1, 1, 1, 2],
    [2, 3, 4, 4, 3],
    [1, 1, 2, 2, 1],
    [3, 3, 4, 4, 1],
    [1, 1, 2, 3, 4],
]

# outline box with P=R=S=(1^4), Q=(2^2); printed as layers of rows, column pairs are cells
_BOX_DISPLAY = np.array([
    [[3, 4, 1, 2], [3, 4, 1, 2], [1, 2, 3, 4], [1, 2, 3, 4]],
    [[2, 4, 1, 3], [2, 3, 1, 4], [1, 3, 2, 4], [1, 4, 2, 3]],
    [[1, 3, 2, 4], [1, 2, 3, 4], [2, 4, 1, 3], [3, 4, 1, 2]],
    [[1, 2, 3, 4], [1, 4, 2, 3], [3, 4, 1, 2], [2, 3, 1, 4]],
])
BOX_GROUPS = [(1, 1, 1, 1), (2, 2), (1, 1, 1, 1), (1, 1, 1, 1)]
BOX = _BOX_DISPLAY.transpose(0, 2, 1)  # index order (i, j, k)

# expanded ab^2 outline for a=3, b=2 with groupings (2,1,2,2)
AB2_3_2 = [
    [1, 1, 1, 3, 3, 4, 4],
    [2, 2, 1, 3, 3, 4, 4],
    [1, 1, 2, 4, 4, 3, 3],
    [4, 4, 3, 1, 1, 2, 2],
    [4, 4, 3, 1, 1, 3, 3],
    [3, 3, 4, 2, 2, 1, 1],
    [3, 3, 4, 4, 4, 1, 1],
]
