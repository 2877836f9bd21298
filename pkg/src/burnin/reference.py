"""Published reference values used for regression summaries.

Percent-scale values are stored exactly as printed (x100); ``None`` marks a
cell printed as "-".
"""

# n -> design -> (r, eps, r+eps, b, BP), all x100 except b
TABLE1 = {
    200: {
        "er": (0.00, 0.00, 0.00, None, None),
        "pbb": (65.77, 0.00, 65.77, 65, 64.94),
        "brar-u": (34.25, 0.83, 35.09, 51, 50.13),
        "brar-t": (9.72, 0.36, 10.08, 30, 29.55),
        "n0": (18.91, 1.53, 20.43, 37, 36.63),
        "n1": (13.62, 32.41, 46.03, 54, 53.64),
        "r0": (19.48, 1.18, 20.65, 37, 36.37),
        "r1": (25.12, 16.97, 42.09, 54, 53.91),
        "ptw": (36.15, 1.29, 37.44, 52, 51.88),
        "rpw": (25.41, 1.79, 27.20, 43, 42.30),
    },
    500: {
        "er": (0.00, 0.00, 0.00, None, None),
        "pbb": (72.02, 0.00, 72.02, 137, 54.46),
        "brar-u": (38.61, 1.07, 39.68, 109, 43.30),
        "brar-t": (11.93, 0.12, 12.05, 63, 24.81),
        "n0": (23.05, 0.90, 23.95, 80, 31.73),
        "n1": (21.01, 33.94, 54.95, 119, 47.58),
        "r0": (24.69, 0.85, 25.54, 82, 32.46),
        "r1": (33.84, 17.38, 51.22, 118, 46.92),
        "ptw": (38.76, 0.85, 39.61, 109, 43.42),
        "rpw": (26.74, 1.25, 27.99, 91, 36.13),
    },
    1000: {
        "er": (0.00, 0.00, 0.00, None, None),
        "pbb": (75.50, 0.00, 75.50, 210, 41.93),
        "brar-u": (43.92, 0.60, 44.52, 170, 33.88),
        "brar-t": (13.23, 0.10, 13.32, 102, 20.38),
        "n0": (26.03, 0.57, 26.59, 128, 25.48),
        "n1": (28.11, 34.54, 62.65, 192, 38.21),
        "r0": (29.64, 0.62, 30.27, 135, 26.98),
        "r1": (37.76, 18.41, 56.17, 188, 37.42),
        "ptw": (40.25, 0.58, 40.83, 165, 32.80),
        "rpw": (30.39, 0.85, 31.24, 138, 27.59),
    },
    2000: {
        "er": (0.00, 0.00, 0.00, None, None),
        "pbb": (78.24, 0.00, 78.24, 288, 28.72),
        "brar-u": (45.72, 0.51, 46.23, 235, 23.45),
        "brar-t": (15.46, 0.09, 15.55, 144, 14.31),
        "n0": (28.98, 0.40, 29.37, 177, 17.62),
        "n1": (34.87, 34.35, 69.22, 274, 27.36),
        "r0": (31.65, 0.39, 32.04, 186, 18.51),
        "r1": (42.11, 17.84, 59.95, 258, 25.73),
        "ptw": (41.76, 0.39, 42.16, 221, 22.10),
        "rpw": (31.05, 0.69, 31.74, 190, 18.91),
    },
}

# scenario -> design -> (r, eps, r+eps, b, BP)
TABLE2 = {
    "ARREST": {
        "er": (0.00, 0.00, 0.00, None, None),
        "pbb": (57.60, 0.00, 57.60, 32, 72.66),
        "brar-u": (22.19, 0.16, 22.36, 20, 46.40),
        "brar-t": (6.62, 0.06, 6.68, 12, 27.12),
        "n0": (27.94, 2.05, 29.99, 23, 52.63),
        "n1": (4.83, 32.86, 37.69, 26, 59.02),
        "r0": (19.65, 1.76, 21.40, 20, 45.61),
        "r1": (13.66, 29.06, 42.73, 27, 62.27),
        "ptw": (31.95, 0.96, 32.91, 24, 54.64),
        "rpw": (18.82, 1.44, 20.26, 18, 41.70),
    },
    "CALISTO": {
        "er": (0.00, 0.00, 0.00, None, None),
        "pbb": (70.03, 0.00, 70.03, 124, 68.55),
        "brar-u": (25.64, 0.51, 26.15, 98, 54.09),
        "brar-t": (4.13, 0.02, 4.15, 69, 37.87),
        "n0": (22.00, 4.11, 26.12, 98, 54.38),
        "n1": (24.83, 27.04, 51.87, 116, 63.95),
        "r0": (7.26, 0.21, 7.47, 61, 33.44),
        "r1": (7.42, 0.21, 7.64, 67, 36.84),
        "ptw": (35.10, 2.77, 37.86, 106, 58.80),
        "rpw": (7.56, 5.66, 13.22, 79, 43.76),
    },
}


def formula_b(scenario: str) -> dict:
    """Published formula burn-in per design for a case study."""
    return {k: v[3] for k, v in TABLE2[scenario].items() if v[3] is not None}


# (design, burn-in) -> (type1 Z1, type1 Z0, power Z1, power Z0) in %, n1/n, MSE
TABLE3 = {
    ("er", None): (5.93, 5.93, 80.88, 79.94, 0.500, 0.0078),
    ("pbb", 2): (78.24, 5.83, 78.47, 0.42, 0.977, 0.0591),
    ("pbb", 32): (6.66, 4.17, 79.56, 74.34, 0.628, 0.0078),
    ("pbb", 29): (4.82, 7.06, 71.86, 79.71, 0.663, 0.0078),
    ("brar-u", 2): (20.86, 0.64, 74.82, 40.71, 0.835, 0.0113),
    ("brar-u", 20): (13.83, 2.70, 77.97, 66.21, 0.735, 0.0079),
    ("brar-u", 29): (4.38, 9.90, 73.80, 80.14, 0.649, 0.0078),
    ("brar-t", 2): (9.95, 4.10, 80.78, 74.03, 0.691, 0.0081),
    ("brar-t", 12): (9.19, 4.21, 80.31, 73.79, 0.685, 0.0080),
    ("brar-t", 29): (4.40, 7.67, 76.38, 80.65, 0.615, 0.0079),
    ("n0", 2): (None, 5.94, None, 79.52, 0.393, 0.0090),
    ("n0", 23): (None, 5.52, None, 79.15, 0.399, 0.0091),
    ("n0", 29): (None, 3.59, None, 78.27, 0.415, 0.0087),
    ("n1", 2): (89.80, None, 94.79, None, 0.714, 0.0530),
    ("n1", 26): (12.16, None, 81.86, None, 0.591, 0.0077),
    ("n1", 29): (4.96, None, 79.04, None, 0.581, 0.0077),
    ("r0", 2): (None, 5.50, None, 77.74, 0.442, 0.0082),
    ("r0", 20): (None, 5.75, None, 79.07, 0.442, 0.0080),
    ("r0", 29): (None, 3.93, None, 79.25, 0.446, 0.0078),
    ("r1", 2): (89.65, None, 94.84, None, 0.753, 0.0347),
    ("r1", 27): (11.37, None, 82.07, None, 0.609, 0.0075),
    ("r1", 29): (5.36, None, 78.42, None, 0.598, 0.0077),
    ("ptw", 2): (5.12, 4.51, 81.01, 78.84, 0.578, 0.0075),
    ("ptw", 24): (5.61, 4.41, 81.38, 79.12, 0.536, 0.0076),
    ("ptw", 29): (4.60, 5.87, 79.23, 81.65, 0.526, 0.0075),
    ("rpw", 2): (6.05, 4.42, 80.26, 76.87, 0.578, 0.0077),
    ("rpw", 18): (5.84, 4.52, 81.18, 78.45, 0.559, 0.0077),
    ("rpw", 29): (4.80, 5.66, 79.08, 81.42, 0.536, 0.0077),
}

TABLE4 = {
    ("er", None): (4.91, 4.90, 79.53, 79.53, 0.500, 0.0004),
    ("pbb", 2): (88.58, 11.74, 35.58, 12.15, 0.994, 0.0289),
    ("pbb", 124): (5.45, 4.71, 71.10, 81.57, 0.656, 0.0005),
    ("pbb", 120): (4.79, 5.24, 79.57, 67.91, 0.667, 0.0005),
    ("brar-u", 2): (2.62, 16.94, 5.13, 76.12, 0.881, 0.0176),
    ("brar-u", 98): (2.93, 6.55, 56.24, 80.63, 0.708, 0.0005),
    ("brar-u", 120): (5.94, 3.07, 82.80, 71.10, 0.655, 0.0005),
    ("brar-t", 2): (3.38, 6.39, 63.66, 81.21, 0.701, 0.0007),
    ("brar-t", 69): (3.31, 6.02, 67.31, 81.89, 0.681, 0.0006),
    ("brar-t", 120): (5.29, 3.70, 82.12, 73.15, 0.620, 0.0005),
    ("n0", 2): (None, 5.25, None, 79.97, 0.723, 0.0016),
    ("n0", 98): (None, 5.17, None, 79.86, 0.663, 0.0005),
    ("n0", 120): (None, 3.51, None, 70.65, 0.624, 0.0004),
    ("n1", 2): (96.23, None, 94.17, None, 0.158, 0.0009),
    ("n1", 116): (7.92, None, 83.94, None, 0.363, 0.0003),
    ("n1", 120): (4.80, None, 75.50, None, 0.371, 0.0003),
    ("r0", 2): (None, 5.75, None, 81.37, 0.672, 0.0007),
    ("r0", 61): (None, 6.32, None, 81.39, 0.661, 0.0005),
    ("r0", 120): (None, 3.48, None, 71.09, 0.599, 0.0004),
    ("r1", 2): (5.65, None, 78.79, None, 0.506, 0.0024),
    ("r1", 67): (5.28, None, 79.05, None, 0.505, 0.0004),
    ("r1", 120): (4.94, None, 79.45, None, 0.505, 0.0004),
    ("ptw", 2): (2.72, 6.12, 9.56, 74.53, 0.847, 0.0049),
    ("ptw", 106): (4.23, 5.52, 69.23, 80.31, 0.636, 0.0005),
    ("ptw", 120): (5.40, 4.41, 80.30, 72.88, 0.607, 0.0004),
    ("rpw", 2): (4.85, 5.43, 67.77, 75.95, 0.582, 0.0006),
    ("rpw", 79): (5.07, 5.24, 79.39, 80.12, 0.519, 0.0004),
    ("rpw", 120): (5.28, 5.38, 79.97, 79.45, 0.510, 0.0004),
}
