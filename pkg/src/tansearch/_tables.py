"""Coefficient tables for the fixed-dimension benchmark functions.

Single source of truth: both the pure-Python evaluators and the compiled
kernel read these, so the two backends see identical doubles.
"""

# Shekel's foxholes: a[0][j] cycles -32..32, a[1][j] repeats each value 5 times
FOXHOLES_A1 = tuple(float(v) for v in (-32, -16, 0, 16, 32) * 5)
FOXHOLES_A2 = tuple(float(v) for v in (-32, -16, 0, 16, 32) for _ in range(5))

KOWALIK_A = (
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
    0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
)
KOWALIK_B = (
    4.0, 2.0, 1.0, 0.5, 0.25, 1.0 / 6.0, 0.125, 0.1,
    1.0 / 12.0, 1.0 / 14.0, 0.0625,
)

HARTMAN_C = (1.0, 1.2, 3.0, 3.2)

HARTMAN3_A = (
    (3.0, 10.0, 30.0),
    (0.1, 10.0, 35.0),
    (3.0, 10.0, 30.0),
    (0.1, 10.0, 35.0),
)
HARTMAN3_P = (
    (0.3689, 0.1170, 0.2673),
    (0.4699, 0.4387, 0.7470),
    (0.1091, 0.8732, 0.5547),
    (0.0381, 0.5743, 0.8828),
)

HARTMAN6_A = (
    (10.0, 3.0, 17.0, 3.5, 1.7, 8.0),
    (0.05, 10.0, 17.0, 0.1, 8.0, 14.0),
    (3.0, 3.5, 1.7, 10.0, 17.0, 8.0),
    (17.0, 8.0, 0.05, 10.0, 0.1, 14.0),
)
HARTMAN6_P = (
    (0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886),
    (0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991),
    (0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650),
    (0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381),
)

# 5-term inverse-quadric (fc20): minimum -10.1532 at (4, 4, 4, 4)
INVQUAD_A = (
    (4.0, 4.0, 4.0, 4.0),
    (1.0, 1.0, 1.0, 1.0),
    (8.0, 8.0, 8.0, 8.0),
    (6.0, 6.0, 6.0, 6.0),
    (3.0, 7.0, 3.0, 7.0),
)
INVQUAD_C = (0.1, 0.2, 0.2, 0.4, 0.4)
