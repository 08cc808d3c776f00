"""The l = 2 real-part display, written out as data for the tests.

Real coordinates are ordered (x1, y1, x2, y2) -> indices 0..3.  Each entry is
(coefficient name, coordinate factor, wedge indices as printed, sign, scale
exponent) where scale is 1/(2 pi^2 |z|^4) for the top part and
1/(4 pi^2 |z|^2) for the X part.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

X1, Y1, X2, Y2 = range(4)

TOP = [  # coefficient 1/(2 pi^2 |z|^4)
    (X1, (X2, Y1, Y2), +1),
    (X2, (X1, Y1, Y2), +1),
    (Y1, (X1, X2, Y2), -1),
    (Y2, (X1, X2, Y1), -1),
]

LOW = [  # coefficient 1/(4 pi^2 |z|^2); first field names A, B, C or D
    ("A", X2, (Y2,), -1), ("A", Y2, (X2,), +1),
    ("B", X1, (X2,), +1), ("B", Y1, (Y2,), +1), ("B", X2, (X1,), -1), ("B", Y2, (Y1,), -1),
    ("C", X1, (Y2,), +1), ("C", Y1, (X2,), -1), ("C", X2, (Y1,), +1), ("C", Y2, (X1,), -1),
    ("D", X1, (Y1,), -1), ("D", Y2, (X2,), +1),
]


def x_from_abcd(A, B, C, D) -> np.ndarray:
    return np.array([[1j * A, B + 1j * C], [-B + 1j * C, 1j * D]])


def _sort_sign(idx):
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
            elif idx[i] == idx[j]:
                return 0, None
    return sign, tuple(sorted(idx))


def display_components(p, abcd, low=LOW, top=TOP):
    """Components {sorted index tuple: value} of the printed real part at p."""
    x = list(p)
    r2 = sum(v * v for v in x)
    vals = dict(zip("ABCD", abcd))
    out = {}
    for fac, idx, s in top:
        sg, key = _sort_sign(idx)
        out[key] = out.get(key, 0.0) + s * sg * x[fac] / (2 * math.pi ** 2 * r2 ** 2)
    for name, fac, idx, s in low:
        sg, key = _sort_sign(idx)
        out[key] = out.get(key, 0.0) + s * sg * vals[name] * x[fac] / (4 * math.pi ** 2 * r2)
    return out


REAL_BASIS = [np.array(v, dtype=complex) for v in ([1, 0], [1j, 0], [0, 1], [0, 1j])]


def form_components(beta, p, X):
    """Real parts of beta on ordered real basis vectors, degrees 1 and 3."""
    z = np.array([p[0] + 1j * p[1], p[2] + 1j * p[3]])
    out = {}
    for k in (1, 3):
        for key in itertools.combinations(range(4), k):
            out[key] = beta.evaluate(z, [REAL_BASIS[i] for i in key], X=X).real
    return out


NAMES = "x1 y1 x2 y2".split()


def _wedge_name(idx):
    return "^".join("d" + NAMES[i] for i in idx)


def term_labels():
    labels = [("top", f"{NAMES[f]} {_wedge_name(idx)}", f, idx, s) for f, idx, s in TOP]
    labels += [(L, f"{L} {NAMES[f]} {_wedge_name(idx)}", f, idx, s) for L, f, idx, s in LOW]
    return labels


def measure_signs(beta, points, tol=1e-10):
    """Per printed term: +1 if beta agrees, -1 if it has the opposite sign,
    0 if beta has no such component.  Also returns components of beta that
    the display does not have, as {(letter, wedge): factor name}.

    Each letter is switched on alone, so each (letter, key) pair carries at
    most one printed term.
    """
    signs = {}
    extras = {}
    for letter in ["top", "A", "B", "C", "D"]:
        abcd = [1.0 if L == letter else 0.0 for L in "ABCD"]
        X = x_from_abcd(*abcd)
        ours = [form_components(beta, p, X) for p in points]
        printed = {}
        for L, label, f, idx, s in term_labels():
            if L != letter:
                continue
            sg, key = _sort_sign(idx)
            printed[key] = (label, f)
        degree = 3 if letter == "top" else 1
        power = 2 if letter == "top" else 1
        scale = (2 if letter == "top" else 4) * math.pi ** 2
        for key in itertools.combinations(range(4), degree):
            found = None
            for f in range(4):
                ratios = []
                for p, comp in zip(points, ours):
                    r2 = float(np.dot(p, p))
                    ratios.append(comp[key] * scale * r2 ** power / p[f])
                ratios = np.array(ratios)
                if np.all(np.abs(ratios - ratios[0]) < tol) and abs(ratios[0]) > 0.5:
                    found = (f, ratios[0])
                    break
            if key in printed:
                label, f_disp = printed[key]
                sg, _ = _sort_sign([i for i in (label_idx(label))])
                if found is None:
                    signs[label] = 0
                elif found[0] != f_disp:
                    signs[label] = 0
                    extras[(letter, _wedge_name(key))] = _extra(found)
                else:
                    # printed value on the sorted key is s * sg * factor
                    s = next(t[4] for t in term_labels() if t[1] == label)
                    signs[label] = int(round(found[1] / (s * sg)))
            elif found is not None or any(abs(c[key]) > tol for c in ours):
                extras[(letter, _wedge_name(key))] = _extra(found) if found else "?"
    return signs, extras


def _extra(found):
    f, ratio = found
    return f"{'+' if ratio > 0 else '-'}{abs(ratio):g} {NAMES[f]}"


def label_idx(label):
    wedge = label.split()[-1]
    return [NAMES.index(w[1:]) for w in wedge.split("^")]
