#!/usr/bin/env python3
"""Builds the frozen scoring fixtures under tests/fixtures/.

The scorers below are a self-contained Python transcription of the standard
sacreBLEU algorithms for the pinned signatures

    BLEU|nrefs:1|case:mixed|eff:no|tok:13a|smooth:exp
    chrF2|nrefs:1|case:mixed|eff:yes|nc:6|nw:0|space:no

kept deliberately independent of the C++ implementation (different language,
regex engine instead of hand-rolled scanners).  Fixture values are frozen
once; the C++ side must reproduce them within +/-0.01.

Outputs:
    tests/fixtures/tok13a_cases.tsv   input <TAB> space-joined tokens
    tests/fixtures/score_pairs.tsv    bleu <TAB> chrf <TAB> hyp <TAB> ref
    tests/fixtures/wc_fixture.txt     whitespace-torture file for word counting
"""

import math
import random
import re
from collections import Counter
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXDIR = ROOT / "tests" / "fixtures"

# ---------------------------------------------------------------- 13a tokenizer

_RULES = [
    (re.compile(r'([\{-\~\[-\` -\&\(-\+\:-\@\/])'), r' \1 '),
    (re.compile(r'([^0-9])([\.,])'), r'\1 \2 '),
    (re.compile(r'([\.,])([^0-9])'), r' \1 \2'),
    (re.compile(r'([0-9])(\-)'), r'\1 \2 '),
    (re.compile(r'\s+'), r' '),
]


def tokenize_13a(line: str):
    line = line.replace('<skipped>', '')
    line = line.replace('-\n', '')
    line = line.replace('\n', ' ')
    if '&' in line:
        line = line.replace('&quot;', '"')
        line = line.replace('&amp;', '&')
        line = line.replace('&lt;', '<')
        line = line.replace('&gt;', '>')
    line = f' {line} '
    for pattern, repl in _RULES:
        line = pattern.sub(repl, line)
    line = line.strip()
    return line.split(' ') if line else []

# ---------------------------------------------------------------------- BLEU


def _word_ngrams(tokens, n):
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def sentence_bleu(hyp: str, ref: str, effective_order: bool = False) -> float:
    max_order = 4
    h = tokenize_13a(hyp)
    r = tokenize_13a(ref)
    correct = [0] * max_order
    total = [0] * max_order
    for n in range(1, max_order + 1):
        hc = _word_ngrams(h, n)
        rc = _word_ngrams(r, n)
        total[n - 1] = sum(hc.values())
        correct[n - 1] = sum(min(c, rc[g]) for g, c in hc.items() if g in rc)

    sys_len, ref_len = len(h), len(r)
    if sys_len < ref_len:
        bp = math.exp(1 - ref_len / sys_len) if sys_len > 0 else 0.0
    else:
        bp = 1.0

    prec = [0.0] * max_order
    smooth = 1.0
    eff = max_order
    for n in range(1, max_order + 1):
        if total[n - 1] == 0:
            break
        if effective_order:
            eff = n
        if correct[n - 1] == 0:
            smooth *= 2.0
            prec[n - 1] = 100.0 / (smooth * total[n - 1])
        else:
            prec[n - 1] = 100.0 * correct[n - 1] / total[n - 1]

    if sum(prec) == 0.0:
        return 0.0

    def safe_log(x):
        return -9999999999 if x == 0.0 else math.log(x)

    return bp * math.exp(sum(safe_log(p) for p in prec[:eff]) / eff)

# ---------------------------------------------------------------------- chrF


def _char_ngrams(line: str, n: int):
    line = ''.join(line.split())
    return Counter(line[i:i + n] for i in range(len(line) - n + 1))


def sentence_chrf(hyp: str, ref: str, char_order: int = 6, beta: float = 2.0) -> float:
    factor = beta * beta
    score = 0.0
    effective_order = 0
    for n in range(1, char_order + 1):
        hc = _char_ngrams(hyp, n)
        rc = _char_ngrams(ref, n)
        n_hyp = sum(hc.values())
        n_ref = sum(rc.values())
        n_match = sum(min(c, rc[g]) for g, c in hc.items() if g in rc)
        if n_hyp > 0 and n_ref > 0:
            prec = n_match / n_hyp
            rec = n_match / n_ref
            denom = factor * prec + rec
            score += ((1 + factor) * prec * rec / denom) if denom > 0 else 0.0
            effective_order += 1
    if effective_order == 0:
        return 0.0
    return 100.0 * score / effective_order

# ----------------------------------------------------------------- fixtures


TOK_CASES = [
    "Hello, world!",
    "",
    "a b",
    "  a   b  ",
    "The U.S. economy grew 3.5% in Q3.",
    "1,000,000 people visited 2-3 times.",
    "pre-war era, post-1945 split",
    "He said: \"don't stop\".",
    "(parens) [brackets] {braces} <tags>",
    "price is $4.99; tax=0.07",
    "a&amp;b &lt;x&gt; &quot;q&quot;",
    "İstanbul'da öğrenciler %20'lik dilimde",
    "Þetta er 13. bókin í röðinni",
    "ražotājs pārdeva 3,14 tonnas",
    "em—dash and ellipsis… stay glued",
    "mixed   multiple   spaces",
    "trailing dots...",
    "A.B.C. initials",
    "3.14159 stays, .5 splits",
    "x/y a+b c=d e#f g@h",
    "semi;colon co:lon quest?ion",
    "don't can't won't 'tis",
    "ано́маліја küçük þorp",
    "12-13 14- -15 a-b",
    "comma,separated,values 1,2,3",
]

POOL = [
    "the minister announced the new budget on tuesday",
    "the minister announced the new budget on monday",
    "the mayor opened the old bridge near the harbour",
    "a quiet village celebrated the annual festival",
    "workers repaired the narrow road across the river",
    "the famous painter restored the ancient mural",
    "students protested outside the ministry this morning",
    "the committee rejected the controversial proposal",
    "local farmers delivered the harvest to the market",
    "the railway between the towns reopened last week",
    "engineers inspected the tunnel under the canal",
    "the library acquired two hundred rare manuscripts",
    "heavy rain postponed the match for the third time",
    "the court postponed the verdict until october",
    "the editor praised the young journalist warmly",
    "the old theatre was crowded on friday evening",
    "fishermen returned to the coastal harbour at dawn",
    "the governor defended the official statement",
    "a sudden storm damaged the wooden warehouse",
    "the museum displayed the restored paintings",
]

EDGE_PAIRS = [
    ("the minister announced the new budget on tuesday",
     "the minister announced the new budget on tuesday"),
    ("completely disjoint words here", "no overlap tokens at all"),
    ("", "a non-empty reference sentence"),
    ("one two three", "one two three"),
    ("short", "a much longer reference with many more tokens than that"),
    ("a much longer hypothesis with many extra tokens appended here",
     "a much longer hypothesis"),
    ("İstanbul'da öğrenciler %20'lik dilimde kaldı",
     "İstanbul'da öğrenciler %25'lik dilimde kaldı"),
    ("Þetta er 13. bókin í röðinni", "Þetta er 14. bókin í röðinni"),
    ("prices rose 3.5% in 2019, then fell", "prices rose 3.5% in 2019, then rose"),
    ("he said \"don't stop\" twice", "she said \"don't stop\" once"),
]


def perturb(rng, sent):
    words = sent.split()
    mode = rng.randrange(5)
    if mode == 0 and len(words) > 3:
        i = rng.randrange(len(words))
        del words[i]
    elif mode == 1:
        i = rng.randrange(len(words))
        words[i] = rng.choice(["report", "harbour", "quietly", "2020", "festival"])
    elif mode == 2 and len(words) > 4:
        i = rng.randrange(len(words) - 1)
        words[i], words[i + 1] = words[i + 1], words[i]
    elif mode == 3:
        words.insert(rng.randrange(len(words) + 1), rng.choice(["very", "almost", "reportedly"]))
    else:
        rng.shuffle(words)
    return " ".join(words)


def build_pairs():
    rng = random.Random(13)
    pairs = list(EDGE_PAIRS)
    while len(pairs) < 60:
        ref = rng.choice(POOL)
        pairs.append((perturb(rng, ref), ref))
    while len(pairs) < 85:
        pairs.append((rng.choice(POOL), rng.choice(POOL)))
    while len(pairs) < 100:
        ref = rng.choice(POOL)
        hyp = perturb(rng, perturb(rng, ref))
        pairs.append((hyp, ref))
    return pairs


WC_FIXTURE = (
    "one\ttwo  three\n"
    "   leading and trailing   \n"
    "\n"
    "\t\t\n"
    "tabs\tbetween\twords\there\n"
    "a  b   c    d\n"
    "ünïcode wörds çount tøo\n"
    "punctuation, still; one-word tokens!\n"
    "   \t  mixed \t runs \t \n"
    "last line without newline"
)


def main():
    FIXDIR.mkdir(parents=True, exist_ok=True)

    with (FIXDIR / "tok13a_cases.tsv").open("w", encoding="utf-8") as f:
        for case in TOK_CASES:
            assert "\t" not in case
            f.write(case + "\t" + " ".join(tokenize_13a(case)) + "\n")

    with (FIXDIR / "score_pairs.tsv").open("w", encoding="utf-8") as f:
        for hyp, ref in build_pairs():
            assert "\t" not in hyp and "\t" not in ref
            b = sentence_bleu(hyp, ref)
            c = sentence_chrf(hyp, ref)
            f.write(f"{b:.6f}\t{c:.6f}\t{hyp}\t{ref}\n")

    (FIXDIR / "wc_fixture.txt").write_text(WC_FIXTURE, encoding="utf-8")

    words = len(WC_FIXTURE.split())
    print("wc_fixture words (python .split):", words)
    print("disjoint-pair bleu:",
          sentence_bleu("completely disjoint words here", "no overlap tokens at all"))
    print("identity bleu:", sentence_bleu(POOL[0], POOL[0]))
    print("identity chrf:", sentence_chrf(POOL[0], POOL[0]))
    print("3-token identity bleu (eff:no):", sentence_bleu("one two three", "one two three"))
    print("tok demo:", tokenize_13a("Hello, world!"))


if __name__ == "__main__":
    main()
