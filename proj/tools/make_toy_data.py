#!/usr/bin/env python3
# Copyright 2026 The cqarank Authors.
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
"""Generates the bundled toy corpus and resource files (deterministic)."""

import argparse
import json
import math
import os
import random

TOPICS = {
    "visa": ["visa", "permit", "sponsor", "passport", "embassy", "residency", "renewal"],
    "housing": ["apartment", "rent", "landlord", "lease", "deposit", "flat", "furniture"],
    "car": ["car", "license", "insurance", "driving", "test", "garage", "engine"],
    "bank": ["bank", "account", "loan", "transfer", "salary", "card", "branch"],
    "school": ["school", "teacher", "fees", "kids", "curriculum", "uniform", "grade"],
}
PLURALS = {w: w + "s" for ws in TOPICS.values() for w in ws if not w.endswith("s")}
FILLER = ["the", "a", "i", "is", "to", "for", "my", "how", "can", "do", "what", "in", "of", "any", "with"]
VERBS = ["need", "find", "get", "know", "pay", "change", "apply", "open", "renew"]
OFF_TOPIC_COMMENTS = [
    "Thanks!", "lol", "Same question here.", "Welcome to the forum.", "No idea sorry.",
]


def sentence(rng, topic, n_topic):
    words = rng.sample(TOPICS[topic], n_topic)
    out = []
    for w in words:
        out.append(rng.choice(FILLER))
        out.append(rng.choice(VERBS))
        out.append(PLURALS[w] if w in PLURALS and rng.random() < 0.3 else w)
    text = " ".join(out)
    return text[0].upper() + text[1:] + rng.choice(["?", ".", "!"])


def make_thread(rng, tid):
    topic = rng.choice(sorted(TOPICS))
    thread = {
        "id": tid,
        "subject": sentence(rng, topic, 2),
        "body": sentence(rng, topic, 4),
        "related": [],
    }
    others = [t for t in sorted(TOPICS) if t != topic]
    for r in range(10):
        on_topic = r < 4 or rng.random() < 0.15
        rtopic = topic if on_topic else rng.choice(others)
        if on_topic:
            rlabel = "PerfectMatch" if rng.random() < 0.4 else "Relevant"
        else:
            rlabel = "Irrelevant"
        # Search ranks are noisy so the rank feature alone does not solve B.
        rank_key = (0 if on_topic else 1) + rng.random() * 1.6
        comments = []
        for c in range(rng.randint(3, 6)):
            good = rng.random() < 0.55
            if good:
                ctext = sentence(rng, rtopic, 3)
                crel = "Good"
            elif rng.random() < 0.5:
                ctext = rng.choice(OFF_TOPIC_COMMENTS)
                crel = "Bad"
            else:
                ctext = sentence(rng, rng.choice(sorted(TOPICS)), 1)
                crel = "PotentiallyUseful"
            orgq = crel if on_topic else "Bad"
            comments.append({
                "id": f"{tid}_R{r + 1}_C{c + 1}",
                "text": ctext,
                "relevance_to_relq": crel,
                "relevance_to_orgq": orgq,
            })
        thread["related"].append({
            "id": f"{tid}_R{r + 1}",
            "subject": sentence(rng, rtopic, 2),
            "body": sentence(rng, rtopic, 3),
            "relevance_to_orgq": rlabel,
            "_rank_key": rank_key,
            "comments": comments,
        })
    order = sorted(range(10), key=lambda i: thread["related"][i]["_rank_key"])
    for rank, i in enumerate(order, start=1):
        thread["related"][i]["search_rank"] = rank
    for rq in thread["related"]:
        del rq["_rank_key"]
    return thread


def write_lines(path, lines):
    with open(path, "w", encoding="utf-8") as f:
        for line in lines:
            f.write(line + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "toy"))
    ap.add_argument("--seed", type=int, default=2016)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    os.makedirs(args.out, exist_ok=True)

    threads = [make_thread(rng, f"Q{i + 1}") for i in range(20)]
    write_lines(os.path.join(args.out, "train.jsonl"), [json.dumps(t) for t in threads[:14]])
    write_lines(os.path.join(args.out, "dev.jsonl"), [json.dumps(t) for t in threads[14:]])

    write_lines(os.path.join(args.out, "stopwords.txt"),
                ["the", "a", "i", "is", "to", "for", "my", "how", "can", "do", "what", "in", "of", "any", "with"])
    write_lines(os.path.join(args.out, "lemmas.tsv"),
                [f"{p}\t{w}" for w, p in sorted(PLURALS.items())])
    write_lines(os.path.join(args.out, "nouns.txt"),
                sorted(w for ws in TOPICS.values() for w in ws))

    # Embeddings: a per-topic direction plus small per-word noise.
    dim = 8
    vocab = sorted({w for ws in TOPICS.values() for w in ws} | set(VERBS) | {"thanks", "lol", "same", "question", "here", "welcome", "forum", "no", "idea", "sorry"})
    centers = {}
    for k, topic in enumerate(sorted(TOPICS)):
        v = [0.0] * dim
        v[k] = 1.0
        centers[topic] = v
    rows = []
    for w in vocab:
        topic = next((t for t, ws in TOPICS.items() if w in ws), None)
        base = centers[topic] if topic else [0.0] * (dim - 2) + [0.7, 0.7]
        vec = [b + rng.gauss(0.0, 0.25) for b in base]
        if math.sqrt(sum(x * x for x in vec)) == 0.0:
            vec[0] = 1.0
        rows.append(w + " " + " ".join(f"{x:.6f}" for x in vec))
    write_lines(os.path.join(args.out, "vectors.txt"), [f"{len(rows)} {dim}"] + rows)

    # Network: each topic word is a concept linked to its topic hub.
    edges, senses = [], []
    for topic, ws in sorted(TOPICS.items()):
        for w in ws:
            edges.append(f"c:{w}\trelated_to\tc:{topic}\t0.8")
            edges.append(f"c:{topic}\trelated_to\tc:{w}\t0.4")
            senses.append(f"{w}\tc:{w}")
    senses.append("card\tc:playing_card")
    edges.append("c:playing_card\tis_a\tc:game\t0.5")
    write_lines(os.path.join(args.out, "kg_edges.tsv"), edges)
    write_lines(os.path.join(args.out, "kg_senses.tsv"), senses)

    frames = {
        "visa": "Immigration", "permit": "Immigration", "sponsor": "Immigration", "passport": "Documents",
        "apartment": "Residence", "rent": "Renting", "landlord": "Renting", "lease": "Renting",
        "car": "Vehicle", "license": "Documents", "driving": "Operate_vehicle", "engine": "Vehicle",
        "bank": "Commerce", "loan": "Borrowing", "transfer": "Commerce", "salary": "Earnings",
        "school": "Education", "teacher": "Education", "fees": "Commerce", "grade": "Education",
        "pay": "Commerce", "apply": "Request", "renew": "Request",
    }
    write_lines(os.path.join(args.out, "frames.tsv"), [f"{k}\t{v}" for k, v in sorted(frames.items())])

    write_lines(os.path.join(args.out, "config.conf"), [
        "# Toy configuration; paths are relative to this file.",
        "preprocess.stopwords_path = stopwords.txt",
        "preprocess.lemmas_path = lemmas.tsv",
        "preprocess.nouns_path = nouns.txt",
        "embeddings.path = vectors.txt",
        "kg.edges_path = kg_edges.tsv",
        "kg.senses_path = kg_senses.tsv",
        "frames.lexicon_path = frames.tsv",
        "kg.depth = 2",
        "kg.decay = 0.5",
        "ranker.epochs = 200",
        "ranker.seed = 13",
    ])


if __name__ == "__main__":
    main()
