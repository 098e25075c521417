"""Classify multiplied diameter-4 trees and build witness orientations.

A diameter-4 tree has a center, branches, and leaves hanging off the
branches.  Multiplying every vertex into >= 2 independent copies gives a
graph whose best strong orientation has diameter either 4 or 5, and which
of the two depends only on the center multiplicity s and how many branches
carry 2 copies, 3 copies, 4-or-more copies, or no leaves at all.

Run:  python demos/classify_and_construct.py
"""

from orient4 import (BranchSpec, TreeSpec, Refusal, classify,
                     construct_optimal, diameter, is_strong, to_edge_list)


def spec_of(s, twos=0, threes=0, fours=0, bare=0):
    branches = [BranchSpec(2, (2,)) for _ in range(twos)]
    branches += [BranchSpec(3, (2,)) for _ in range(threes)]
    branches += [BranchSpec(4, (2,)) for _ in range(fours)]
    branches += [BranchSpec(2, ()) for _ in range(bare)]
    return TreeSpec(s, tuple(branches))


def describe(name, spec):
    cls = classify(spec)
    print(f"{name}: {cls.verdict} (rule {cls.rule})")
    print(f"  threshold: {cls.threshold_note}")
    try:
        res = construct_optimal(spec)
    except Refusal as exc:
        print(f"  no diameter-4 witness: {exc}")
        print()
        return
    d = res.orientation
    print(f"  witness built by recipe {res.case}: diameter {diameter(d)}, "
          f"strong={is_strong(d)}, {len(d.bits)} arcs")
    print("  first arcs:", ", ".join(
        f"{t}->{h}" for t, h in d.arcs()[:5]), "...")
    print()


def main():
    print("== A path-shaped tree is always fine ==")
    describe("path, all doubled", spec_of(2, twos=2))

    print("== Doubling everything fails once the center has 3 neighbours ==")
    describe("degree-3, all doubled", spec_of(2, twos=2, bare=1))

    print("== Raising the center multiplicity restores diameter 4 ==")
    describe("same shape, center x3", spec_of(3, twos=2, bare=1))

    print("== Thresholds are exact: one extra branch flips the verdict ==")
    describe("s=4, eight 3-copy branches", spec_of(4, threes=8))
    describe("s=4, nine 3-copy branches", spec_of(4, threes=9))

    print("== The odd equality clause needs enough 2-copy branches ==")
    describe("s=5, |A2|=6, |A3|=7", spec_of(5, twos=6, threes=7))
    describe("s=5, |A2|=5, |A3|=9", spec_of(5, twos=5, threes=9))

    print("== Full edge list of a small witness ==")
    res = construct_optimal(spec_of(2, twos=2))
    print(to_edge_list(res.orientation))


if __name__ == "__main__":
    main()
