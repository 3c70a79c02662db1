# Copyright 2026 The Subseg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates data/sample_corpus.txt, the bundled 10,000-line sample corpus.

The text is synthetic but shaped like natural language: a Zipf-weighted stem
inventory crossed with a small suffix inventory, mixed with function words.
The output is committed, so the seed is fixed and regeneration is exact.
"""

import pathlib
import random

LINES = 10_000
SEED = 20260401

CONSONANTS = "bcdfghklmnprstvz"
VOWELS = "aeiou"

FUNCTION_WORDS = [
    "the", "of", "and", "to", "in", "a", "is", "that", "for", "it",
    "as", "with", "was", "on", "be", "at", "by", "this", "had", "not",
    "are", "but", "from", "or", "have",
]

SUFFIXES = [
    "", "", "", "s", "s", "ing", "ed", "er", "est", "ly",
    "ion", "al", "ness", "ment", "ful", "ous", "ity", "ive",
]


def make_stems(rng, count):
    stems = set()
    while len(stems) < count:
        syllables = rng.randint(1, 3)
        stem = ""
        for _ in range(syllables):
            stem += rng.choice(CONSONANTS) + rng.choice(VOWELS)
            if rng.random() < 0.3:
                stem += rng.choice(CONSONANTS)
        stems.add(stem)
    return sorted(stems)


def main():
    rng = random.Random(SEED)
    stems = make_stems(rng, 300)
    stem_weights = [1.0 / (rank + 1) for rank in range(len(stems))]
    suffix_weights = [1.0 / (rank + 1) for rank in range(len(SUFFIXES))]

    out_path = pathlib.Path(__file__).resolve().parent.parent / "data"
    out_path.mkdir(exist_ok=True)
    with open(out_path / "sample_corpus.txt", "w", encoding="ascii") as out:
        for _ in range(LINES):
            tokens = []
            for _ in range(rng.randint(6, 14)):
                if rng.random() < 0.35:
                    tokens.append(rng.choice(FUNCTION_WORDS))
                else:
                    stem = rng.choices(stems, stem_weights)[0]
                    suffix = rng.choices(SUFFIXES, suffix_weights)[0]
                    tokens.append(stem + suffix)
            tokens.append(".")
            out.write(" ".join(tokens) + "\n")


if __name__ == "__main__":
    main()
