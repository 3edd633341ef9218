#!/usr/bin/env python3
# Copyright 2026 The ocrpost Authors.
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

"""Regenerates corpus.txt: charter-style clauses from a fixed grammar.

Words that the golden test expects to stay unknown to the model (such,
fid, fraid, timias, ti, meas, ike, wife, ...) never appear here.

    python3 make_corpus.py > corpus.txt
"""
import random
import sys

NOUNS = [
    "guardians", "governor", "deputy-governor", "treasurer", "clerk", "court",
    "beadle", "assistants", "inhabitants", "poor", "overseers", "justices",
    "churchwardens", "corporation", "workhouse", "parish", "officers", "master",
]
PLURAL = {"guardians", "assistants", "inhabitants", "poor", "overseers", "justices",
          "churchwardens", "officers"}
QUALIFIERS = ["", "", "said", "said", "said twenty", "same", "present", "other", "chief"]
HOLDERS = ["for the time being", "for the time being and their successors",
           "for the year ensuing"]
MODALS = ["shall", "shall", "shall", "may", "must", "do", "will"]
VERBS = [
    "attend", "meet", "preside", "assemble", "proceed", "appear", "act", "serve",
    "elect", "appoint", "call", "pay", "receive", "demand", "keep", "give", "hold",
    "provide", "examine", "order", "direct", "relieve", "employ", "remove",
]
OBJECTS = [
    "a court", "the poor", "the accounts", "a book of accounts", "notice",
    "the same", "an account", "another", "a clerk", "a governor", "the rates",
    "the said sums", "the money", "the guardians", "their successors", "the workhouse",
    "all orders as they think fit", "the officers",
]
OBLIGATIONS = ["required", "enjoined", "authorised", "empowered", "directed",
               "likewise enjoined and required", "likewise required", "likewise authorised"]
ADVERBIALS = [
    "at all times", "at all times hereafter", "from time to time", "as often as need be",
    "so often as they think fit", "in the absence of the governor", "upon notice given",
    "on his refutal", "within ten days", "at the next court", "in the said workhouse",
    "for ever", "at the times appointed", "as aforesaid",
]


def noun_phrase(rng):
    noun = rng.choice(NOUNS)
    qual = rng.choice(QUALIFIERS)
    if qual.startswith("said twenty"):
        noun = "guardians"
    phrase = " ".join(x for x in ("the", qual, noun) if x)
    if noun in ("governor", "deputy-governor", "treasurer", "master") and rng.random() < 0.4:
        phrase += " " + rng.choice(HOLDERS)
    if rng.random() < 0.15:
        phrase = "every " + rng.choice(["guardian", "officer", "inhabitant", "person"])
    return phrase


def predicate(rng):
    kind = rng.randrange(4)
    verb = rng.choice(VERBS)
    obj = rng.choice(OBJECTS) if rng.random() < 0.7 else ""
    if kind == 0:
        core = f"{rng.choice(MODALS)} {verb} {obj}"
    elif kind == 1:
        core = f"shall be bound and {rng.choice(['is', 'are'])} hereby {rng.choice(OBLIGATIONS)} to {verb} {obj}"
    elif kind == 2:
        core = f"{rng.choice(['is', 'are'])} hereby {rng.choice(OBLIGATIONS)} to {verb} and {rng.choice(VERBS)} {obj}"
    else:
        core = f"{rng.choice(MODALS)} be bound to {verb} {obj}"
    return core.strip()


def clause(rng):
    roll = rng.random()
    if roll < 0.25:
        head = rng.choice(ADVERBIALS) + " " + noun_phrase(rng)
    elif roll < 0.35:
        head = f"if they so desire and on his refutal {noun_phrase(rng)}"
    elif roll < 0.42:
        head = f"so desire and on his refutal {noun_phrase(rng)}"
    elif roll < 0.5:
        head = f"and {noun_phrase(rng)}"
    elif roll < 0.56:
        # OCR lines start mid-clause
        obligation = rng.choice([o for o in OBLIGATIONS if not o.startswith("likewise")])
        return f"likewise {obligation} to {rng.choice(VERBS)} and {rng.choice(VERBS)} {rng.choice(OBJECTS)}"
    else:
        head = noun_phrase(rng)
    body = f"{head} {predicate(rng)}"
    if rng.random() < 0.3:
        body += " " + rng.choice(ADVERBIALS)
    return " ".join(body.split())


def main():
    rng = random.Random(1719)
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 3000
    for _ in range(n):
        print(clause(rng))


if __name__ == "__main__":
    main()
