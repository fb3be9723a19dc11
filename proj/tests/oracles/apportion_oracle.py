"""Largest-remainder apportionment with exact rationals.

Remainder ties go to the lower index. Used for split sizes, the package
allocation example and random integer-weight cases.
"""
import json
import random
from fractions import Fraction
from pathlib import Path


def largest_remainder(weights, total):
    s = sum(weights)
    quotas = [Fraction(w * total, s) for w in weights]
    seats = [q.numerator // q.denominator for q in quotas]
    rest = total - sum(seats)
    order = sorted(range(len(weights)), key=lambda i: (-(quotas[i] - seats[i]), i))
    for i in order[:rest]:
        seats[i] += 1
    return seats


def main():
    splits = []
    for n in (10, 101, 17093):
        for ratios in ((5, 1, 4), (7, 1, 2), (2, 1, 7), (10, 0, 0)):
            splits.append({"n": n, "ratios": ratios, "sizes": largest_remainder(ratios, n)})

    rng = random.Random(4242)
    cases = []
    for _ in range(60):
        k = rng.randint(1, 8)
        weights = [rng.choice([0, rng.randint(1, 9), rng.randint(1, 1000)]) for _ in range(k)]
        if sum(weights) == 0:
            weights[0] = 1
        total = rng.randint(0, 500)
        cases.append({"weights": weights, "total": total,
                      "seats": largest_remainder(weights, total)})

    # allocation: weights proportional to [1, 3], 8 packages, 1 guaranteed each
    remaining = 8 - 2
    extra = largest_remainder([1, 3], remaining)
    allocation = {"weights": [1, 3], "total": 8, "min": 1,
                  "counts": [1 + e for e in extra]}

    out = {"splits": splits, "integer_cases": cases, "allocation_example": allocation}
    Path(__file__).with_name("data").joinpath("apportion_cases.json").write_text(
        json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
