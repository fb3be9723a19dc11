"""Recomputes per-node energies and output-token means for the test fixtures
straight from the raw JSONL files.
"""
import json
import math
import re
from collections import Counter
from pathlib import Path

import mpmath

mpmath.mp.dps = 50
FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
TOKEN = re.compile(r"[A-Za-z0-9_]+|[^\sA-Za-z0-9_]")


def ceil_ln(x):
    k = 0
    while mpmath.power(mpmath.e, k) < x:
        k += 1
    return k


def energies(name):
    schema = json.loads((FIXTURES / name / "schema.json").read_text())
    nodes = [json.loads(l) for l in (FIXTURES / name / "nodes.jsonl").read_text().splitlines() if l.strip()]
    edges = [json.loads(l) for l in (FIXTURES / name / "edges.jsonl").read_text().splitlines() if l.strip()]
    degree = Counter()
    for e in edges:
        degree[e["src"]] += 1
        degree[e["dst"]] += 1
    out = {}
    for n in nodes:
        text = " ".join(str(n[f]) for f in schema["attribute_fields"] if f in n)
        t = len(TOKEN.findall(text))
        d = degree[n["id"]]
        out[n["id"]] = {"t": t, "d": d, "h": t * ceil_ln(d + 1) if t and d else 0}
    return out, nodes


def main():
    result = {}
    for name in ("citeworld", "fuzzy_case"):
        e, nodes = energies(name)
        result[name] = {"nodes": e, "total_energy": sum(v["h"] for v in e.values())}
    _, nodes = energies("citeworld")
    abstracts = [n["abstract"] for n in nodes]
    result["citeworld"]["abstract_token_mean"] = sum(len(TOKEN.findall(a)) for a in abstracts) / len(abstracts)
    Path(__file__).with_name("data").joinpath("fixture_energies.json").write_text(
        json.dumps(result, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
