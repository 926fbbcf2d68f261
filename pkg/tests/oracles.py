"""Independent reference computations used only by the tests."""
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.spatial import ConvexHull

from polyih.exact import det, solve


def brute_vertices(A, b):
    """Vertices of <a_i, v> + b_i >= 0 by solving every square subsystem."""
    n = len(A[0])
    pts = set()
    for I in combinations(range(len(A)), n):
        x = solve([list(A[i]) for i in I], [-b[i] for i in I])
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(A[j], x)) + b[j] >= 0 for j in range(len(A))):
            pts.add(tuple(x))
    return sorted(pts)


def hull_volume(points):
    """Exact volume: boundary simplices from a floating hull, coned from the centroid."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    n = len(pts[0])
    hull = ConvexHull(np.array([[float(x) for x in p] for p in pts]))
    c = [sum(col, Fraction(0)) / len(pts) for col in zip(*pts)]
    total = Fraction(0)
    for simplex in hull.simplices:
        M = [[pts[k][j] - c[j] for j in range(n)] for k in simplex]
        total += abs(det(M))
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    return total / fact


def displaced_volume(P, eps):
    b = [bi - e for bi, e in zip(P.b, eps)]
    return hull_volume(brute_vertices(P.A, b))
