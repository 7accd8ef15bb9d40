"""Writes the 20-document scoring corpus and its toy embedding table.

The table holds a seeded random 8-dimensional vector for every word of the
corpus except a small held-out set, so that out-of-vocabulary handling is
exercised. Words in the same topic group share a centroid, so that related
sentences are close and unrelated ones are far apart.
"""

import json
import pathlib
import re

import numpy as np

HERE = pathlib.Path(__file__).parent

DOCS = [
    ("d01", "The cat sat on the mat. The cat slept on the warm mat."),
    ("d02", "The monkey took a bunch of bananas on the desk. "
            "It took a bunch of bananas on the desk."),
    ("d03", ""),
    ("d04", "A single sentence about the river."),
    ("d05", "The river flows south to the sea. Boats sail down the river. "
            "Fishermen cast nets from the boats."),
    ("d06", "The market opened early. Traders sold fruit and bread. "
            "Quantum chromodynamics describes gluons."),
    ("d07", "Dr. Smith arrived at the clinic. She examined the patient. "
            "The patient felt better."),
    ("d08", "Zyxwv qwrtp. The cat sat on the mat."),
    ("d09", "It rained all day. The streets were wet. Children stayed inside. "
            "They played board games."),
    ("d10", "   "),
    ("d11", "The bottle is the bottle. A bottle in the water bottle. "
            "It's the bottle."),
    ("d12", "Firefighters freed the boy from the drain. The boy had fallen "
            "down the drain. Police helped the firefighters."),
    ("d13", "Prices rose by 3.5 percent in Oct. last year. Analysts expected "
            "a smaller rise."),
    ("d14", "The team won the final. Fans celebrated in the streets. "
            "The coach praised the players."),
    ("d15", "Gluons bind quarks. Bread is sold at the market."),
    ("d16", "\"Stop!\" he shouted. The car stopped just in time."),
    ("d17", "The garden was full of roses. Bees visited every flower. "
            "The roses smelled sweet. The garden was full of roses."),
    ("d18", "Ships carry cargo across the ocean. Ports load and unload "
            "the ships. Cargo reaches the markets."),
    ("d19", "Music filled the hall. The orchestra played Mozart. "
            "The audience applauded loudly."),
    ("d20", "A cat. A dog. A bird. A fish."),
]

HELD_OUT = {"zyxwv", "qwrtp", "mozart"}

GROUPS = [
    {"cat", "mat", "slept", "warm", "sat", "dog", "bird", "fish"},
    {"river", "sea", "boats", "sail", "fishermen", "nets", "flows", "ships",
     "ocean", "ports", "cargo"},
    {"quantum", "chromodynamics", "gluons", "quarks", "bind", "describes"},
]


def tokens(text):
    out = []
    for piece in text.split():
        word = re.sub(r"^\W+|\W+$", "", piece).lower()
        if word:
            out.append(word)
    return out


def main():
    with open(HERE / "docs.jsonl", "w") as f:
        for doc_id, text in DOCS:
            f.write(json.dumps({"id": doc_id, "text": text}) + "\n")

    vocab = sorted({w for _, t in DOCS for w in tokens(t)} - HELD_OUT)
    rng = np.random.RandomState(20201)
    centroids = [rng.normal(0.0, 3.0, 8) for _ in GROUPS]
    rows = []
    for word in vocab:
        vec = rng.normal(0.0, 1.0, 8)
        for group, centroid in zip(GROUPS, centroids):
            if word in group:
                vec = centroid + 0.3 * vec
        rows.append(word + " " + " ".join("%.6f" % x for x in vec))
    with open(HERE / "toy.vec", "w") as f:
        f.write("%d 8\n" % len(rows))
        f.write("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
