#!/usr/bin/env python3
"""Survey of the combiner over seeded random action systems.

Builds systems mixing plane and tree models with valid witnesses, runs the
schedule search, re-verifies every certificate, and summarizes how hard
the search had to work (stage exponents, candidates tried, word lengths).
"""

import argparse
import time
from collections import Counter

from hypiso import SearchSchedule, simultaneous_hyperbolic, verify_certificate
from hypiso.sampling import random_action_system


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100, help="number of seeded systems")
    ap.add_argument("--seed0", type=int, default=0, help="first seed")
    ap.add_argument("--max-exponent", type=int, default=32)
    args = ap.parse_args()

    schedule = SearchSchedule(args.max_exponent)
    exponent_pairs = Counter()
    tried = Counter()
    kinds = Counter()
    word_lengths = []
    start = time.perf_counter()
    for seed in range(args.seed0, args.seed0 + args.count):
        system = random_action_system(seed)
        kinds.update(a.model.kind for a in system.actions)
        cert = simultaneous_hyperbolic(system, schedule)
        assert verify_certificate(system, cert), f"seed {seed}: certificate failed"
        word_lengths.append(len(cert.word))
        for s in cert.stages:
            if not s.trivial:
                exponent_pairs[(s.a, s.b)] += 1
                tried[s.candidates_tried] += 1
    elapsed = time.perf_counter() - start

    print(f"{args.count}/{args.count} systems combined and re-verified in {elapsed:.2f}s")
    print(f"action kinds: {dict(kinds)}")
    print(f"word length: max {max(word_lengths)}, mean {sum(word_lengths)/len(word_lengths):.2f}")
    print(f"search stage exponents (a, b): {dict(sorted(exponent_pairs.items()))}")
    print(f"candidates tried per non-trivial stage: {dict(sorted(tried.items()))}")


if __name__ == "__main__":
    main()
