#!/usr/bin/env python3
"""Turn the WordNet 3.1 data.* files into a one-document-per-line corpus.

Each synset becomes one line: "lemma, lemma: gloss". Usage:

    extract_wordnet.py DICT_DIR OUT.txt.gz
"""
import gzip
import sys
from pathlib import Path


def documents(dict_dir):
    for name in ("data.noun", "data.verb", "data.adj", "data.adv"):
        with open(Path(dict_dir) / name, encoding="utf-8", errors="replace") as f:
            for line in f:
                if line.startswith("  "):
                    continue
                head, _, gloss = line.partition("|")
                parts = head.split()
                count = int(parts[3], 16)
                lemmas = [parts[4 + 2 * i].split("(")[0].replace("_", " ") for i in range(count)]
                yield ", ".join(lemmas) + ": " + gloss.strip()


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    with gzip.open(sys.argv[2], "wt", encoding="utf-8", compresslevel=9) as out:
        for doc in documents(sys.argv[1]):
            out.write(doc + "\n")


if __name__ == "__main__":
    main()
