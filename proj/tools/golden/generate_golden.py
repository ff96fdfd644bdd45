#!/usr/bin/env python3
"""Writes data/golden_tables.json from the closed-form generator and relation formulas.

Run from the repository root:  python3 tools/golden/generate_golden.py
"""
import json
import pathlib


def m(pairs):
    return {k: v for k, v in pairs if v}


def term(monomial, c=1):
    return {"coefficient": c, "monomial": monomial}


def a_case(n):
    xn = "x1'" if n == 1 else f"x{n}"
    ys = [f"y{i}" for i in range(1, n + 1)]
    z1 = m([(y, i) for i, y in enumerate(ys, 1)] + [(xn, n + 1)])
    z2 = m([("x1", n + 1)] + [(y, n + 1 - i) for i, y in enumerate(ys, 1)])
    w = m([("x1", 1)] + [(y, 1) for y in ys] + [(xn, 1)])
    return {
        "family": "A", "n": n,
        "variables": ["x1", xn] + ys,
        "generators": [{"name": "z1", "monomial": z1}, {"name": "z2", "monomial": z2}, {"name": "w", "monomial": w}],
        "relations": [{"left": {"z1": 1, "z2": 1}, "right": {"w": n + 1}}],
        "alternative_relations": [],
        "cuts": [], "principal_cuts": [],
        "candidate_relation": [],
    }


def d_candidate(n):
    last = f"x{n - 1}"
    chain = m([(f"y{i}", i - 2) for i in range(3, n)] + [(last, n - 2)])
    return [term({"y1": 1, "x1": 2}), term({"y2": 1, "x2": 2}), term(chain)]


def d_even(n):
    k = n // 2
    last = f"x{n - 1}"
    tail = lambda f: [(f"y{i}", f(i)) for i in range(3, n)]
    gens = [
        ("Z1", m([("x1", 2), ("y0", 2 * k - 2), ("y1", k), ("y2", k - 1)] + tail(lambda i: 2 * k - i))),
        ("Z2", m([("x2", 2), ("y0", 2 * k - 2), ("y1", k - 1), ("y2", k)] + tail(lambda i: 2 * k - i))),
        ("Z3", m([(last, 2), ("y0", 2), ("y1", 1), ("y2", 1)] + tail(lambda i: 2))),
        ("W", m([("x1", 1), ("x2", 1), (last, 1), ("y0", 2 * k - 1), ("y1", k), ("y2", k)] + tail(lambda i: 2 * k + 1 - i))),
    ]
    return {
        "family": "D", "n": n,
        "variables": ["x1", "x2", last] + [f"y{i}" for i in range(n)],
        "generators": [{"name": a, "monomial": b} for a, b in gens],
        "relations": [{"left": {"W": 2}, "right": {"Z1": 1, "Z2": 1, "Z3": 1}}],
        "alternative_relations": [],
        "cuts": [[term({"Z1": 1}), term({"Z2": 1}), term({"Z3": k - 1})]],
        "principal_cuts": [0],
        "common_factor": m([("y0", 2 * k - 2), ("y1", k - 1), ("y2", k - 1)] + tail(lambda i: 2 * k - i)),
        "candidate_relation": d_candidate(n),
    }


def d_odd(n):
    k = (n - 1) // 2
    last = f"x{n - 1}"
    tail = lambda f: [(f"y{i}", f(i)) for i in range(3, n)]
    gens = [
        ("Z1", m([(last, 2), ("y0", 2), ("y1", 1), ("y2", 1)] + tail(lambda i: 2))),
        ("Z2", m([("x1", 1), ("x2", 1), ("y0", 2 * k - 1), ("y1", k), ("y2", k)] + tail(lambda i: 2 * k + 1 - i))),
        ("Z3", m([("x2", 2), (last, 1), ("y0", 2 * k), ("y1", k), ("y2", k + 1)] + tail(lambda i: 2 * k + 2 - i))),
        ("Z4", m([("x1", 2), (last, 1), ("y0", 2 * k), ("y1", k + 1), ("y2", k)] + tail(lambda i: 2 * k + 2 - i))),
        ("Z5", m([("x2", 4), ("y0", 4 * k - 2), ("y1", 2 * k - 1), ("y2", 2 * k + 1)] + tail(lambda i: 4 * k + 2 - 2 * i))),
        ("Z6", m([("x1", 4), ("y0", 4 * k - 2), ("y1", 2 * k + 1), ("y2", 2 * k - 1)] + tail(lambda i: 4 * k + 2 - 2 * i))),
    ]
    rel = lambda l, r: {"left": l, "right": r}
    z1k1 = {"Z1": k - 1} if k > 1 else {}
    return {
        "family": "D", "n": n,
        "variables": ["x1", "x2", last] + [f"y{i}" for i in range(n)],
        "generators": [{"name": a, "monomial": b} for a, b in gens],
        "relations": [
            rel({"Z2": 4}, {"Z5": 1, "Z6": 1}),
            rel({"Z1": 1, "Z2": 2}, {"Z3": 1, "Z4": 1}),
            rel({"Z2": 2, "Z4": 1}, {"Z3": 1, "Z6": 1}),
            rel({"Z2": 2, "Z3": 1}, {"Z4": 1, "Z5": 1}),
            rel({"Z4": 2}, {"Z1": 1, "Z6": 1}),
            rel({"Z3": 2}, {"Z1": 1, "Z5": 1}),
        ],
        "alternative_relations": [],
        "cuts": [
            [term({"Z1": k}), term({"Z3": 1}), term({"Z4": 1})],
            [term(dict(z1k1, Z3=1)), term({"Z2": 2}), term({"Z5": 1})],
            [term(dict(z1k1, Z4=1)), term({"Z2": 2}), term({"Z6": 1})],
        ],
        "principal_cuts": [1, 2],
        "candidate_relation": d_candidate(n),
    }


def parse(text):
    out = {}
    for factor in text.split("*"):
        name, _, power = factor.partition("^")
        out[name] = out.get(name, 0) + int(power or 1)
    return out


def e_candidate(n):
    last = f"x{n - 1}"
    chain = m([(f"y{i}", i - 3) for i in range(4, n)] + [(last, n - 3)])
    return [term({"y1": 1, "x1": 2}), term({"y2": 1, "y3": 2, "x3": 3}), term(chain)]


E_TABLE = {
    6: (["y0^3*y1^2*y2^2*y3*y4^2*y5*x1",
         "y0^4*y1^2*y2^3*y3^2*y4^3*y5^2*x3*x5",
         "y0^6*y1^3*y2^4*y3^2*y4^5*y5^4*x3^3",
         "y0^6*y1^3*y2^5*y3^4*y4^4*y5^2*x5^3"],
        [{"left": {"Z2": 3}, "right": {"Z3": 1, "Z4": 1}}], [],
        [[term({"Z1": 2}), term({"Z3": 1}), term({"Z4": 1})]]),
    7: (["y0^4*y1^2*y2^3*y3^2*y4^3*y5^2*y6*x3",
         "y0^12*y1^7*y2^8*y3^4*y4^9*y5^6*y6^3*x1^2",
         "y0^9*y1^5*y2^6*y3^3*y4^7*y5^5*y6^3*x1*x6",
         "y0^6*y1^3*y2^4*y3^2*y4^5*y5^4*y6^3*x6^2"],
        [{"left": {"Z2": 2}, "right": {"Z3": 1, "Z4": 1}}],
        [{"left": {"Z3": 2}, "right": {"Z2": 1, "Z4": 1}}],
        [[term({"Z1": 3}), term({"Z2": 1}), term({"Z4": 2})]]),
    8: (["y0^15*y1^8*y2^10*y3^5*y4^12*y5^9*y6^6*y7^3*x1",
         "y0^6*y1^3*y2^4*y3^2*y4^5*y5^4*y6^3*y7^2*x7",
         "y0^10*y1^5*y2^7*y3^4*y4^8*y5^6*y6^4*y7^2*x3"],
        [], [],
        [[term({"Z2": 5}), term({"Z3": 3}), term({"Z1": 2})]]),
}


def e_case(n):
    gens, rels, alts, cuts = E_TABLE[n]
    return {
        "family": "E", "n": n,
        "variables": ["x1", "x3", f"x{n - 1}"] + [f"y{i}" for i in range(n)],
        "generators": [{"name": f"Z{i + 1}", "monomial": parse(g)} for i, g in enumerate(gens)],
        "relations": rels,
        "alternative_relations": alts,
        "cuts": cuts,
        "principal_cuts": [0],
        "candidate_relation": e_candidate(n),
    }


def main():
    cases = {}
    for n in range(1, 11):
        cases[f"A{n}"] = a_case(n)
    for n in range(4, 13):
        cases[f"D{n}"] = d_even(n) if n % 2 == 0 else d_odd(n)
    for n in (6, 7, 8):
        cases[f"E{n}"] = e_case(n)
    doc = {
        "version": 1,
        "cases": cases,
        "counterexample": {
            "branches": [2, 2, 3],
            "figure_relation": [term({"y1": 1, "y2": 2, "x2": 3}), term({"y3": 1, "y4": 2, "x4": 3}),
                                term({"y5": 1, "y6": 2, "y7": 3, "x7": 4})],
            "displayed_ring_variables": ["x2", "x4", "x6"] + [f"y{i}" for i in range(7)],
            "displayed_relation": "y1*y2^2*x2^3 + y3*y4^2*x4^3 + y5*y6^2*x6^3",
            "start_degree": {"node": 7, "multiple": 2},
            "step": {"kind": "AddCurve", "node": 7},
            "expected_dim": 1,
            "actual_dim": 0,
        },
    }
    out = pathlib.Path(__file__).resolve().parents[2] / "data" / "golden_tables.json"
    out.write_text(json.dumps(doc, indent=1, sort_keys=False) + "\n")


if __name__ == "__main__":
    main()
