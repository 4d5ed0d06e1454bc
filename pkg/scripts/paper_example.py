#!/usr/bin/env python3
"""Walk through the worked median example on 2-component count vectors."""

from functools import reduce

from latmed.lattice_median import generalized_medians, medians_via_meet_join
from latmed.order_core import format_vector, join, meet

INPUTS = [(1, 0), (0, 1), (0, 2)]


def main():
    print("inputs: ", " ".join(format_vector(v) for v in INPUTS))
    for r in range(len(INPUTS[0])):
        col = sorted(v[r] for v in INPUTS)
        print(f"coordinate {r} sorted: {col}")
    medians = generalized_medians(INPUTS)
    print("medians:", " ".join(format_vector(v) for v in medians))
    via_ops = medians_via_meet_join(INPUTS)
    assert via_ops == medians, "comparator network disagrees"
    print("meet of all:", format_vector(reduce(meet, INPUTS)))
    print("join of all:", format_vector(reduce(join, INPUTS)))
    print("meet((1,0),(0,1)) =", format_vector(meet((1, 0), (0, 1))))
    print("join((1,0),(0,2)) =", format_vector(join((1, 0), (0, 2))))


if __name__ == "__main__":
    main()
