#!/usr/bin/env python3
"""Generates the synthetic ten-author corpus used by the CLI tests.

Run once from this directory; the outputs are committed. Text is produced
from per-author templates with a fixed seed so the files never change.
"""
import json
import random
from pathlib import Path

here = Path(__file__).parent
rng = random.Random(20261017)

AUTHORS = {
    "SR": (["ship", "sword", "castle", "knight"], ["bold", "grim"], ["Ivanhoe", "Rowena"]),
    "JA": (["letter", "ball", "estate", "fortune"], ["agreeable", "civil"], ["Elizabeth", "Darcy"]),
    "NH": (["scarlet", "forest", "minister", "town"], ["solemn", "pale"], ["Hester", "Pearl"]),
    "MT": (["river", "raft", "village", "fence"], ["lazy", "muddy"], ["Huck", "Jim"]),
    "OW": (["portrait", "garden", "party", "youth"], ["charming", "dreadful"], ["Dorian", "Basil"]),
    "CPG": (["wallpaper", "room", "window", "nursery"], ["yellow", "strange"], ["John", "Jennie"]),
    "VW": (["lighthouse", "wave", "window", "hour"], ["luminous", "faint"], ["Ramsay", "Lily"]),
    "VL": (["cabin", "ice", "compass", "hull"], ["frozen", "silent"], ["Nansen", "Karin"]),
    "PGW": (["club", "aunt", "butler", "pig"], ["topping", "rummy"], ["Jeeves", "Bertie"]),
    "GO": (["ministry", "telescreen", "diary", "poster"], ["grey", "loyal"], ["Winston", "Julia"]),
}
VERBS = ["walked", "waited", "looked", "listened", "turned", "smiled", "worked", "stayed"]
SUBJECTS = ["He", "She", "They", "We", "The old man", "The girl"]
PLACES = ["London", "Paris"]


def sentence(nouns, adjs, names):
    n = rng.choice(nouns)
    a = rng.choice(adjs)
    v = rng.choice(VERBS)
    s = rng.choice(SUBJECTS)
    name = rng.choice(names)
    kind = rng.randrange(7)
    if kind == 0:
        return f"{s} {v} by the {a} {n}."
    if kind == 1:
        return f"{s} {v} near the {n}, and {rng.choice(SUBJECTS).lower()} {rng.choice(VERBS)} too."
    if kind == 2:
        return f"Although the {n} was {a}, {s.lower()} {v}; nobody {rng.choice(VERBS)}."
    if kind == 3:
        return f'"The {n} is {a}," said {name}.'
    if kind == 4:
        return f"{s} {v} in {rng.choice(PLACES)} because the {n} seemed {a}."
    if kind == 5:
        return f"Mr. {name} {v} slowly: the {n} was {a}."
    return f"The {a} {n} {v} again and again."


def book(author, index, sentences=90):
    nouns, adjs, names = AUTHORS[author]
    body = []
    for p in range(sentences // 6):
        body.append(" ".join(sentence(nouns, adjs, names) for _ in range(6)))
    text = "\n\n".join(body) + "\n"
    if index % 2 == 0:
        title = f"{author} book {index}"
        text = (f"The Project Gutenberg eBook of {title}\n\n"
                f"*** START OF THE PROJECT GUTENBERG EBOOK {title.upper()} ***\n\n"
                + text +
                f"\n*** END OF THE PROJECT GUTENBERG EBOOK {title.upper()} ***\n\nLicense text.\n")
    return text


for author in AUTHORS:
    d = here / "authors" / author
    d.mkdir(parents=True, exist_ok=True)
    for i in range(3):
        (d / f"{author.lower()}{i + 1}.txt").write_text(book(author, i), encoding="utf-8")

# 100 generations, ten per author.
with open(here / "generations.jsonl", "w", encoding="utf-8") as f:
    for author in AUTHORS:
        nouns, adjs, names = AUTHORS[author]
        for k in range(10):
            text = " ".join(sentence(nouns, adjs, names) for _ in range(5))
            rec = {"gen_id": f"{author}/ours/{k}", "author_id": author, "method": "ours",
                   "prompt_id": f"{author}-{k}", "text": text}
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")

# One 256-token training chunk with exactly three person tokens.
words = []
tags = []
sentences = []
filler = ["The", "rain", "fell", "on", "the", "roof", "."]
filler_tags = ["DET", "NOUN", "VERB", "ADP", "DET", "NOUN", "PUNCT"]
named = [("Mary", True), ("slept", False), (".", False)]
named_tags = ["PROPN", "VERB", "PUNCT"]
plan = ["named", "filler"] * 3
while sum(len(s) for s in sentences) < 256:
    kind = plan.pop(0) if plan else "filler"
    if kind == "named":
        toks = [{"t": w, "pos": t, "person": p} if p else {"t": w, "pos": t}
                for (w, p), t in zip(named, named_tags)]
    else:
        toks = [{"t": w, "pos": t} for w, t in zip(filler, filler_tags)]
    sentences.append(toks)
# Trim the last sentence so the chunk is exactly 256 tokens.
excess = sum(len(s) for s in sentences) - 256
if excess:
    sentences[-1] = sentences[-1][:-excess]
tokens = [t["t"] for s in sentences for t in s]
assert len(tokens) == 256
assert sum(1 for s in sentences for t in s if t.get("person")) == 3
m = here / "mask"
m.mkdir(exist_ok=True)
with open(m / "chunks.jsonl", "w", encoding="utf-8") as f:
    rec = {"author_id": "PGW", "book_id": "m1", "split": "train", "index": 0, "tokens": tokens}
    f.write(json.dumps(rec, separators=(",", ":")) + "\n")
with open(m / "annotations.jsonl", "w", encoding="utf-8") as f:
    for i, s in enumerate(sentences):
        f.write(json.dumps({"book_id": "m1", "sent_index": i, "tokens": s},
                           separators=(",", ":")) + "\n")
