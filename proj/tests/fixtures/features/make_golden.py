"""Builds the golden annotation file and expected profile for the feature tests.

The expected values are computed here, independently of the C++ code, from
the hand-tagged sentences in sentences.tsv.
"""
import json
from pathlib import Path

here = Path(__file__).parent
PUNCT = "PUNCT"
CATS = ["SIMPLE", "COMPOUND", "COMPLEX", "COMPLEX-COMPOUND", "OTHER"]


def load_tsv(name):
    out = {}
    for line in (here / name).read_text().splitlines():
        word, value = line.split("\t")
        out[word.lower()] = float(value)
    return out


subj = load_tsv("subjectivity.tsv")
conc = load_tsv("concreteness.tsv")
sentences = []
for line in (here / "sentences.tsv").read_text().splitlines():
    if line.startswith("#"):
        continue
    pairs, cat = line.split("\t")
    toks = [p.rsplit("/", 1) for p in pairs.split(" ")]
    sentences.append((toks, cat))

with open(here / "annotations.jsonl", "w") as f:
    for i, (toks, cat) in enumerate(sentences):
        rec = {"book_id": "golden", "sent_index": i,
               "tokens": [{"t": t, "pos": p} for t, p in toks]}
        f.write(json.dumps(rec) + "\n")
(here / "text.txt").write_text(" ".join(t for toks, _ in sentences for t, _ in toks) + "\n")

n = len(sentences)
lex = [0.0] * 6
surf = [0.0] * 4
letters = 0
words_total = 0
hist = [0] * 5
for toks, cat in sentences:
    words = [(t, p) for t, p in toks if p != PUNCT]
    lex[0] += sum(p in ("NOUN", "PROPN") for _, p in words)
    lex[1] += sum(p == "VERB" for _, p in words)
    lex[2] += sum(p == "ADJ" for _, p in words)
    lex[3] += len({t.lower() for t, _ in words})
    hits = [subj[t.lower()] for t, _ in words if t.lower() in subj]
    lex[4] += sum(hits) / len(hits) if hits else 0.0
    lex[5] += sum(conc.get(t.lower(), 0) > 3 for t, _ in words)
    punct = "".join(t for t, p in toks if p == PUNCT)
    surf[0] += punct.count(",")
    surf[1] += punct.count(";")
    surf[2] += punct.count(":")
    surf[3] += len(words)
    letters += sum(sum(c.isalpha() for c in t) for t, _ in words)
    words_total += len(words)
    hist[CATS.index(cat)] += 1

golden = {
    "label": "golden",
    "n_sentences": n,
    "lexical": [v / n for v in lex],
    "syntactic": [h / n for h in hist],
    "surface": [v / n for v in surf] + [letters / words_total],
    "categories": [cat for _, cat in sentences],
}
(here / "golden.json").write_text(json.dumps(golden, indent=2) + "\n")
