# Copyright 2026 The dissbus Authors.
# Licensed under the Apache License, Version 2.0; see LICENSE.
"""Regenerates fixtures/stems.tsv from the reference Snowball English stemmer.

Needs `pip install snowballstemmer`; the C++ build does not.
"""

import json
import random
import re
from pathlib import Path

import snowballstemmer

HERE = Path(__file__).parent

ROOTS = """hop fit fil fail gener commun emerg inter later organ past univers arsen agre feed bleed succ proc exc
even cann inn earr herr out d l t y sky ski happ rel nation condition valu friend serv cook taste spic fresh deli
geolog bio luxur fizz troubl sens abl fl hope run sing ce crea eat go do sea be""".split()

SUFFIXES = ["", "s", "es", "ies", "ed", "ing", "ly", "edly", "ingly", "eed", "eedly", "ational", "tional", "enci",
            "anci", "abli", "entli", "izer", "ization", "ation", "ator", "alism", "aliti", "alli", "fulness", "ful",
            "ousli", "ousness", "iveness", "iviti", "biliti", "bli", "ogi", "ogist", "fulli", "lessli", "li", "icate",
            "ative", "alize", "iciti", "ical", "ness", "al", "ance", "ence", "er", "ic", "able", "ible", "ant",
            "ement", "ment", "ent", "ism", "ate", "iti", "ous", "ive", "ize", "ion", "e", "ll", "y", "ying", "yed"]

EXCEPTIONS = """skis skies dying lying tying idly gently ugly early only singly sky news howe atlas cosmos bias andes
inning outing canning herring earring proceed exceed succeed generate generously communism arsenal emergency
interesting lately pasted universal university organized internal add egg off added adding agreed stemming stems
stemmer stemmed service friendly highly delicious limited ambiance atmosphere excellent choice""".split()


def main():
    words = set(EXCEPTIONS)
    for line in (HERE / "corpus.jsonl").read_text().splitlines():
        words.update(re.findall(r"[a-z]+", json.loads(line)["body"].lower()))
    rng = random.Random(7)
    while len(words) < 3000:
        w = rng.choice(ROOTS) + rng.choice(SUFFIXES)
        if rng.random() < 0.3:
            w += rng.choice(SUFFIXES)
        words.add(w)
    stemmer = snowballstemmer.stemmer("english")
    with (HERE / "stems.tsv").open("w") as f:
        for w in sorted(words):
            f.write(f"{w}\t{stemmer.stemWord(w)}\n")


if __name__ == "__main__":
    main()
