"""Reference values generated by tools/oracles.py (sympy); do not edit by hand."""

DISPIN_ZTILDE = {1: [0, 1], 2: [-1, 2], 3: [-3, 3], 4: [-6, 4], 5: [-10, 5], 6: [-15, 6], 7: [-21, 7], 8: [-28, 8]}

DISPIN_ZEROS = {'-1': ([], [1]),
 '-2': ([], [3]),
 '-3/2': ([], [2]),
 '0': ([1], []),
 '1': ([3], []),
 '1/2': ([2], []),
 '2': ([5], []),
 '5': ([11], [])}

UQ_ZTILDE2 = ('(q^2 + 1)/(q*(q - 1)*(q + 1))', '-q*(q^2 + 1)/((q - 1)*(q + 1))')

UQ_ZEROS = {0: ([1], []), 1: ([2], []), 2: ([3], []), 3: ([4], []), 4: ([5], []), 5: ([6], []), 6: ([7], [])}

UQ_ZEROS_OTHER = {'-q^3': ([4], []), '2': ([], []), 'q^-2': ([], [1])}

UQ_CASIMIR = ('q^3/((q - 1)^2*(q + 1)^2)', 'q/((q - 1)^2*(q + 1)^2)')

WEYL_PRODUCTS = {(0, 0): {(0, 0): 1},
 (0, 1): {(1, 0): 1},
 (0, 2): {(2, 0): 1},
 (0, 3): {(3, 0): 1},
 (0, 4): {(4, 0): 1},
 (1, 0): {(0, 1): 1},
 (1, 1): {(0, 0): 1, (1, 1): 1},
 (1, 2): {(1, 0): 2, (2, 1): 1},
 (1, 3): {(2, 0): 3, (3, 1): 1},
 (1, 4): {(3, 0): 4, (4, 1): 1},
 (2, 0): {(0, 2): 1},
 (2, 1): {(0, 1): 2, (1, 2): 1},
 (2, 2): {(0, 0): 2, (1, 1): 4, (2, 2): 1},
 (2, 3): {(1, 0): 6, (2, 1): 6, (3, 2): 1},
 (2, 4): {(2, 0): 12, (3, 1): 8, (4, 2): 1},
 (3, 0): {(0, 3): 1},
 (3, 1): {(0, 2): 3, (1, 3): 1},
 (3, 2): {(0, 1): 6, (1, 2): 6, (2, 3): 1},
 (3, 3): {(0, 0): 6, (1, 1): 18, (2, 2): 9, (3, 3): 1},
 (3, 4): {(1, 0): 24, (2, 1): 36, (3, 2): 12, (4, 3): 1},
 (4, 0): {(0, 4): 1},
 (4, 1): {(0, 3): 4, (1, 4): 1},
 (4, 2): {(0, 2): 12, (1, 3): 8, (2, 4): 1},
 (4, 3): {(0, 1): 24, (1, 2): 36, (2, 3): 12, (3, 4): 1},
 (4, 4): {(0, 0): 24, (1, 1): 96, (2, 2): 72, (3, 3): 16, (4, 4): 1}}

CLASSICAL_ROWS = {'1': [(1, '1', '1'),
       (2, '1', '1'),
       (3, '0', '0'),
       (4, '-2', '-2'),
       (5, '-5', '-5'),
       (6, '-9', '-9')],
 '1/2': [(1, '1/2', '1/2'),
         (2, '0', '0'),
         (3, '-3/2', '-3/2'),
         (4, '-4', '-4'),
         (5, '-15/2', '-15/2'),
         (6, '-12', '-12')],
 '2': [(1, '2', '2'), (2, '3', '3'), (3, '3', '3'), (4, '2', '2'), (5, '0', '0'), (6, '-3', '-3')],
 '3/2': [(1, '3/2', '3/2'),
         (2, '2', '2'),
         (3, '3/2', '3/2'),
         (4, '0', '0'),
         (5, '-5/2', '-5/2'),
         (6, '-6', '-6')]}

KRON_DISPIN = [[1, 1, 1, 1], [1, 2, 1, 2], [1, 1, 2, 2], [1, 2, 2, 4]]

KRON_DISPIN_D = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]

