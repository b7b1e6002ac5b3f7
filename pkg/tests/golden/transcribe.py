"""Regenerate the d=3 golden files from hand-transcribed sympy matrices.

Run from the repository root:  python3 tests/golden/transcribe.py
Entries are stored as sympy strings; the tests compare them with the
library output through sympy, so the goldens are independent of the
library's canonical form.
"""

import json
from pathlib import Path

import sympy as sp

q, t = sp.symbols("q t")


def br(n):
    return (q ** n - q ** -n) / (q - 1 / q)


Eq = sp.Matrix([
    [q**-3, q**3 - q**-3, 0, 0],
    [0, q**-1, q**3 - q**-1, 0],
    [0, 0, q, q**3 - q],
    [0, 0, 0, q**3],
])

S_extra = sp.Matrix([
    [q - q**-5, q**-5 - q, 0, 0],
    [q**-3 - q**-5, (q - q**-1) * (q**2 + 1 - q**-4), q**-1 - q**3, 0],
    [0, q - q**-3, (q - q**-1) * (q**4 - 1 - q**-2), q**3 - q**5],
    [0, 0, q**5 - q**-1, q**-1 - q**5],
])

den3 = (1 - t * q**-2) * (1 - t) * (1 - t * q**2)

GOLDEN = {
    "Z": sp.Matrix(4, 4, lambda i, j: 1 if i + j == 3 else 0),
    "K": sp.diag(q**3, q, q**-1, q**-3),
    "D": sp.diag(1, 1 - t * q**2, (1 - t * q**2) * (1 - t),
                 (1 - t * q**2) * (1 - t) * (1 - t * q**-2)),
    "CalD": sp.diag(1, t * q**2, t**2 * q**4, t**3 * q**6),
    "T": sp.Matrix([
        [1, 0, 0, 0],
        [1, -1, 0, 0],
        [1, -q**-1 * br(2), q**-2, 0],
        [1, -q**-2 * br(3), q**-4 * br(3), -q**-6],
    ]),
    "E": Eq,
    "Einv": sp.Matrix([
        [q**3, (1 - q**6) * q, (1 - q**4) * (1 - q**6) * q**-1,
         (1 - q**2) * (1 - q**4) * (1 - q**6) * q**-3],
        [0, q, (1 - q**4) * q**-1, (1 - q**2) * (1 - q**4) * q**-3],
        [0, 0, q**-1, (1 - q**2) * q**-3],
        [0, 0, 0, q**-3],
    ]),
    "F": sp.Matrix([
        [q**-3, (q**3 - q**-3) * q**-2 * t, 0, 0],
        [0, q**-1, (q**3 - q**-1) * q**-2 * t, 0],
        [0, 0, q, (q**3 - q) * q**-2 * t],
        [0, 0, 0, q**3],
    ]),
    "G": sp.Matrix([
        [q**-3, (q**3 - q**-3) * (1 - t * q**2), 0, 0],
        [0, q**-1, (q**3 - q**-1) * (1 - t), 0],
        [0, 0, q, (q**3 - q) * (1 - t * q**-2)],
        [0, 0, 0, q**3],
    ]),
    "L": sp.Matrix([
        [q**-3, (q**3 - q**-3) / (1 - t * q**2), 0, 0],
        [0, q**-1, (q**3 - q**-1) / (1 - t), 0],
        [0, 0, q, (q**3 - q) / (1 - t * q**-2)],
        [0, 0, 0, q**3],
    ]),
    "Linv": sp.Matrix([
        [q**3, (1 - q**6) * q / (1 - t * q**2),
         (1 - q**4) * (1 - q**6) * q**-1 / ((1 - t) * (1 - t * q**2)),
         (1 - q**2) * (1 - q**4) * (1 - q**6) * q**-3 / den3],
        [0, q, (1 - q**4) * q**-1 / (1 - t),
         (1 - q**2) * (1 - q**4) * q**-3 / ((1 - t * q**-2) * (1 - t))],
        [0, 0, q**-1, (1 - q**2) * q**-3 / (1 - t * q**-2)],
        [0, 0, 0, q**-3],
    ]),
    "S": Eq + t * S_extra,
    "M": sp.Matrix([
        [(1 - t * q**4) / (q**3 * (1 - t * q**-2)),
         (1 - t * q**4) * (1 - q**-6) / (q * (1 - t * q**-2) * (1 - t)),
         q * (1 - t * q**4) * (1 - q**-4) * (1 - q**-6) / den3,
         q**3 * (1 - q**-2) * (1 - q**-4) * (1 - q**-6) / den3],
        [(q**-1 - q) / (1 / t - q**-2),
         (1 - t * q**4) * (1 - t * q**-4) / (q * (1 - t * q**-2) * (1 - t)),
         q * (1 - t * q**4) * (1 - t * q**-4) * (1 - q**-4) / den3,
         q**3 * (1 - t * q**-4) * (1 - q**-2) * (1 - q**-4) / den3],
        [0, (q**-1 - q**3) / (1 / t - 1),
         q * (1 - t * q**4) * (1 - t * q**-4) / ((1 - t) * (1 - t * q**2)),
         q**3 * (1 - t * q**-4) * (1 - q**-2) / ((1 - t) * (1 - t * q**2))],
        [0, 0, (q**-1 - q**5) / (1 / t - q**2),
         q**3 * (1 - t * q**-4) / (1 - t * q**2)],
    ]),
}


def main():
    out = Path(__file__).parent / "d3"
    out.mkdir(exist_ok=True)
    for name, m in GOLDEN.items():
        doc = {"name": name, "d": 3,
               "entries": [[str(sp.factor(m[i, j])) for j in range(4)] for i in range(4)]}
        (out / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main()
