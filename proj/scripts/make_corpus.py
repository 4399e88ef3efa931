#!/usr/bin/env python3
"""Generates data/corpus10k.txt, the bundled training corpus for the decoding lab.

The text is synthetic news-register English produced from weighted templates,
so the file carries no third-party copyright (treat it as public domain).
Regeneration is deterministic; the committed file is the one tests rely on.
"""

import random
from pathlib import Path

SEED = 20240817
NUM_LINES = 10500

rng = random.Random(SEED)


def zipf_pick(items, s=1.7):
    weights = [1.0 / (i + 1) ** s for i in range(len(items))]
    return rng.choices(items, weights=weights, k=1)[0]


PEOPLE = [
    "minister", "mayor", "farmer", "teacher", "president", "journalist",
    "doctor", "engineer", "captain", "artist", "lawyer", "senator",
    "researcher", "driver", "nurse", "painter", "banker", "soldier",
    "librarian", "merchant", "pilot", "judge", "poet", "clerk",
    "governor", "baker", "fisherman", "editor", "spokesman", "economist",
]

THINGS = [
    "report", "budget", "bridge", "harbour", "election", "contract",
    "railway", "school", "hospital", "market", "factory", "museum",
    "village", "proposal", "letter", "agreement", "ship", "road",
    "garden", "theatre", "library", "festival", "church", "mill",
    "border", "castle", "island", "river", "valley", "forest",
    "airport", "station", "tunnel", "canal", "farm", "mine",
    "monument", "square", "tower", "warehouse", "orchard", "quarry",
]

ABSTRACT = [
    "plan", "crisis", "decision", "statement", "policy", "reform",
    "investigation", "ceremony", "debate", "campaign", "strike",
    "shortage", "scandal", "recovery", "survey", "verdict", "merger",
    "protest", "drought", "harvest",
]

VERBS_T = [
    "announced", "approved", "criticized", "visited", "inspected",
    "rejected", "welcomed", "described", "defended", "postponed",
    "opened", "closed", "repaired", "praised", "condemned",
    "financed", "abandoned", "restored", "examined", "signed",
    "cancelled", "organized", "promised", "demanded", "delivered",
    "purchased", "painted", "measured", "questioned", "supported",
]

VERBS_I = [
    "arrived", "departed", "resigned", "collapsed", "recovered",
    "vanished", "protested", "celebrated", "waited", "succeeded",
    "failed", "improved", "spoke", "voted", "travelled",
]

ADJ = [
    "new", "old", "local", "national", "quiet", "busy", "famous",
    "ancient", "modern", "small", "large", "wooden", "empty",
    "crowded", "controversial", "unexpected", "annual", "official",
    "foreign", "rural", "coastal", "northern", "southern", "central",
    "abandoned", "historic", "narrow", "broad",
]

ADV = [
    "quickly", "quietly", "finally", "suddenly", "carefully",
    "reluctantly", "openly", "repeatedly", "formally", "recently",
    "eventually", "briefly", "firmly", "warmly",
]

PLACES = [
    "in the capital", "near the harbour", "in the old town",
    "on the northern coast", "across the river", "behind the station",
    "in the main square", "outside the ministry", "along the canal",
    "at the border", "on the island", "in the valley",
]

TIMES = [
    "on monday", "on tuesday", "on friday", "last week", "last month",
    "yesterday", "this morning", "in march", "in october", "in 2018",
    "in 2019", "earlier this year", "over the weekend", "at dawn",
]

OPENERS = [
    "according to the report ,", "despite the rain ,", "in the end ,",
    "after a long delay ,", "to the surprise of many ,",
    "for the third time ,", "as expected ,", "once again ,",
]

# Rare proper nouns give the corpus a long singleton-heavy tail, the way real
# news text has names that appear once or twice.  Built combinatorially so the
# pool is large without hand-listing thousands of strings.
_ONSETS = [
    "b", "br", "c", "cr", "d", "dr", "f", "g", "gr", "h", "j", "k", "l",
    "m", "n", "p", "pr", "r", "s", "st", "t", "tr", "v", "w", "y", "z",
    "bl", "cl", "fl", "gl", "pl", "sl", "sh", "ch", "th",
]
_MIDS = [
    "a", "e", "i", "o", "u", "ar", "er", "or", "an", "en", "on",
    "al", "el", "il", "am", "em", "im",
]
_PERSON_ENDS = [
    "son", "sen", "man", "berg", "holm", "feld", "gard", "strom",
    "wick", "ford", "mark", "thal", "stein", "dahl", "lund", "vik",
]
_PLACE_ENDS = [
    "ville", "burg", "stad", "ton", "field", "bridge", "haven", "port",
    "dale", "moor", "wald", "minster", "gate", "by", "ham", "wich",
]
_THING_ENDS = [
    "works", "yard", "house", "hall", "mills", "dock", "press", "depot",
]


def _name_pool(ends, size):
    combos = [o + m + e for o in _ONSETS for m in _MIDS for e in ends]
    return rng.sample(combos, size)


RARE_PEOPLE = _name_pool(_PERSON_ENDS, 1200)
RARE_PLACES = _name_pool(_PLACE_ENDS, 1200)
RARE_THINGS = _name_pool(_THING_ENDS, 800)

THAT_CLAUSES = [
    "that the work would continue", "that the costs had doubled",
    "that nothing had changed", "that the talks had failed",
    "that a decision was near", "that the figures were wrong",
    "that the deadline would hold", "that repairs were urgent",
]


def np_person():
    r = rng.random()
    if r < 0.10:
        return rng.choice(RARE_PEOPLE)
    if r < 0.15:
        return f"the {zipf_pick(PEOPLE)} of {rng.choice(RARE_PLACES)}"
    if r < 0.24:
        return f"the {zipf_pick(ADJ)} {zipf_pick(PEOPLE)}"
    return f"the {zipf_pick(PEOPLE)}"


def place():
    if rng.random() < 0.10:
        return f"{rng.choice(['in', 'near', 'at'])} {rng.choice(RARE_PLACES)}"
    return zipf_pick(PLACES)


def np_thing():
    if rng.random() < 0.10:
        return f"the {rng.choice(RARE_THINGS)}"
    pool = THINGS if rng.random() < 0.7 else ABSTRACT
    if rng.random() < 0.15:
        return f"the {zipf_pick(ADJ)} {zipf_pick(pool)}"
    return f"the {zipf_pick(pool)}"


def clause():
    r = rng.random()
    if r < 0.22:
        return f"{np_person()} {zipf_pick(VERBS_T)} {np_thing()}"
    elif r < 0.40:
        return f"{np_person()} {zipf_pick(VERBS_T)} {np_thing()} {place()}"
    elif r < 0.52:
        return f"{zipf_pick(TIMES)} {np_person()} {zipf_pick(VERBS_T)} {np_thing()}"
    elif r < 0.62:
        return f"{np_person()} {zipf_pick(ADV)} {zipf_pick(VERBS_T)} {np_thing()}"
    elif r < 0.72:
        return f"{np_person()} {zipf_pick(VERBS_I)} {place()} {zipf_pick(TIMES)}"
    elif r < 0.80:
        return f"{zipf_pick(OPENERS)} {np_person()} {zipf_pick(VERBS_T)} {np_thing()}"
    elif r < 0.88:
        return f"{np_person()} said {zipf_pick(THAT_CLAUSES)}"
    elif r < 0.94:
        n = rng.choice([12, 14, 20, 30, 40, 200, 300])
        noun = rng.choice(["workers", "residents", "students", "visitors", "farmers"])
        return f"{n} {noun} {zipf_pick(VERBS_I)} {place()}"
    else:
        return (f"{np_person()} {zipf_pick(VERBS_T)} {np_thing()} "
                f"and {zipf_pick(VERBS_T)} {np_thing()}")


def sentence():
    s = clause()
    while rng.random() < 0.30:
        s += f" , and {clause()}"
    return s + " ."


def main():
    out = Path(__file__).resolve().parent.parent / "data" / "corpus10k.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as f:
        for _ in range(NUM_LINES):
            f.write(sentence() + "\n")
    print(f"wrote {NUM_LINES} lines to {out}")


if __name__ == "__main__":
    main()
