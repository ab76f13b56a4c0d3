#!/usr/bin/env python3
"""Writes the synthetic multi-syllable corpora used by the coverage tests.

Output is deterministic: the same seed always yields the same files.
"""
import argparse
import pathlib
import random

CONSONANTS = ["p", "t", "k", "b", "d", "g", "m", "n", "s", "l", "r", "ts", "zh"]
VOWELS = ["a", "e", "i", "o", "u", "ai", "oo"]

# (syllable count, stressed syllable 1-based) shapes that reach every class.
COVERAGE = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2),
            (4, 3), (4, 4), (5, 3), (6, 4)]

CORPORA = {
    # name: (seed, stress weighting by position, share of unmarked monosyllables)
    "corpus_a": (11, "initial", 0.05),
    "corpus_b": (23, "penultimate", 0.08),
    "corpus_c": (37, "uniform", 0.03),
}


def syllable(rng):
    onset = "".join(rng.choice(CONSONANTS) for _ in range(rng.choice([0, 1, 1, 2])))
    coda = "".join(rng.choice(CONSONANTS) for _ in range(rng.choice([0, 0, 1])))
    return onset + rng.choice(VOWELS) + coda


def stress_position(rng, n, style):
    if style == "initial":
        return 1 if rng.random() < 0.7 else rng.randint(1, n)
    if style == "penultimate":
        return max(1, n - 1) if rng.random() < 0.7 else rng.randint(1, n)
    return rng.randint(1, n)


def word(rng, n, stress):
    parts = [syllable(rng) for _ in range(n)]
    if stress is not None:
        parts[stress - 1] = "'" + parts[stress - 1]
    return "-".join(parts)


def corpus(seed, style, unmarked_share, size=120):
    rng = random.Random(seed)
    lines = [word(rng, n, s) for n, s in COVERAGE]
    lines.append(word(rng, 1, None))
    while len(lines) < size:
        if rng.random() < unmarked_share:
            lines.append(word(rng, 1, None))
            continue
        n = rng.choice([1, 1, 2, 2, 2, 3, 3, 4, 5, 6])
        lines.append(word(rng, n, stress_position(rng, n, style)))
    return lines


def alphabet():
    rows = [f"{c}: CONSONANTS" for c in CONSONANTS] + [f"{v}: VOWELS" for v in VOWELS]
    return "# Synthetic phoneme inventory.\n" + "\n".join(rows) + "\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", type=pathlib.Path)
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    (args.outdir / "synthetic.alphabet").write_text(alphabet())
    for name, (seed, style, share) in CORPORA.items():
        text = "# Synthetic corpus, seed %d, %s stress.\n" % (seed, style)
        text += "\n".join(corpus(seed, style, share)) + "\n"
        (args.outdir / f"{name}.txt").write_text(text)


if __name__ == "__main__":
    main()
