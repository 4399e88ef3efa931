#!/usr/bin/env python3
"""Builds the mixed candidate-group fixture used by the CLI golden tests.

40 triplet groups: half near-duplicate ("beam-like"), half unrelated
("sampling-like"), with a flat line-aligned parse file (3 lines per group).
Two groups carry a deliberately blank parse line to exercise the
skipped-group tally.  Deterministic; the committed files are frozen.
"""

import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXDIR = ROOT / "tests" / "fixtures"

rng = random.Random(99)

SENTS = [
    "the minister announced the new budget on tuesday",
    "the mayor opened the old bridge near the harbour",
    "workers repaired the narrow road across the river",
    "students protested outside the ministry this morning",
    "local farmers delivered the harvest to the market",
    "engineers inspected the tunnel under the canal",
    "heavy rain postponed the match for the third time",
    "the editor praised the young journalist warmly",
    "fishermen returned to the coastal harbour at dawn",
    "a sudden storm damaged the wooden warehouse",
    "the museum displayed the restored paintings",
    "the committee rejected the controversial proposal",
]

SWAPS = {
    "tuesday": "monday", "budget": "plan", "bridge": "railway",
    "road": "path", "ministry": "station", "market": "square",
    "canal": "river", "match": "vote", "journalist": "painter",
    "harbour": "village", "warehouse": "mill", "paintings": "statues",
    "proposal": "contract", "morning": "evening", "storm": "flood",
}


def variant(sent):
    words = sent.split()
    cands = [words[:]]
    swappable = [i for i, w in enumerate(words) if w in SWAPS]
    for k in range(2):
        w2 = words[:]
        if swappable:
            i = swappable[k % len(swappable)]
            w2[i] = SWAPS[w2[i]] if k == 0 else SWAPS[w2[i]] + "s"
        else:
            w2[-1] = "again"
        cands.append(w2)
    return [" ".join(c) for c in cands]


def np(words):
    if len(words) == 1:
        return f"(NP (NN {words[0]}))"
    if len(words) == 2:
        return f"(NP (DT {words[0]}) (NN {words[1]}))"
    return f"(NP (DT {words[0]}) (JJ {words[1]}) (NN {words[2]}))"


def tree_for(sent, shape):
    words = sent.split()
    if shape == 0 and len(words) >= 5:
        cut = min(3, len(words) - 2)
        subj = np(words[:cut])
        verb = f"(VBD {words[cut]})"
        rest = " ".join(f"(NN {w})" for w in words[cut + 1:])
        return f"(S {subj} (VP {verb} (NP {rest})) (. .))"
    if shape == 1 and len(words) >= 4:
        pp = f"(PP (IN {words[0]}) (NP (NN {words[1]})))"
        subj = np(words[2:3])
        rest = " ".join(f"(NN {w})" for w in words[3:])
        return f"(S {pp} {subj} (VP (VBD {rest if rest else 'said'})) (. .))" if not rest else \
            f"(S {pp} {subj} (VP (VBD {words[3]}) (NP {' '.join(f'(NN {w})' for w in words[4:]) or '(NN it)'})) (. .))"
    # fallback: flat clause
    body = " ".join(f"(NN {w})" for w in words)
    return f"(FRAG (NP {body}) (. .))"


def main():
    FIXDIR.mkdir(parents=True, exist_ok=True)
    groups = []
    for g in range(40):
        gid = f"g{g:04d}"
        if g < 20:  # near-duplicate triplets
            base = SENTS[g % len(SENTS)]
            cands = variant(base)
            shapes = [0, 0, 0]
        else:  # unrelated triplets
            cands = rng.sample(SENTS, 3)
            cands = [" ".join(rng.sample(c.split(), len(c.split()))) for c in cands]
            shapes = [0, 1, 2]
        groups.append((gid, cands, shapes))

    with (FIXDIR / "mixed_groups.jsonl").open("w", encoding="utf-8") as f:
        for gid, cands, _ in groups:
            rec = {"id": gid, "source": f"src for {gid}", "candidates": cands}
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")

    blank_groups = {7, 29}  # one missing parse each
    with (FIXDIR / "mixed_groups.trees").open("w", encoding="utf-8") as f:
        for g, (gid, cands, shapes) in enumerate(groups):
            for j, (cand, shape) in enumerate(zip(cands, shapes)):
                if g in blank_groups and j == 1:
                    f.write("\n")
                else:
                    f.write(tree_for(cand, shape) + "\n")
    print("wrote", len(groups), "groups")


if __name__ == "__main__":
    main()
