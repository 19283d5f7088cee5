"""Regenerate the checked-in test fixtures under tests/data/.

Run from the repo root: python3 tests/make_fixtures.py

Deliberately independent of the igtaug package: everything here is
written with plain loops so the frozen golden values act as an oracle for
the library. The prompt golden file is composed by hand below, not via
the library template.
"""

import csv
import json
import random
from pathlib import Path

DATA = Path(__file__).parent / "data"

COLUMNS = ["id", "speaker", "audio", "duration_s", "text", "ipa", "gloss",
           "pos", "translation_en", "translation_other"]

# 37 gloss tags for the invented demo language "Veldima". A mix of entries
# with one, two or three word alternatives so the alternative rate is
# non-trivial and chi-square fixtures have multi-word sets to draw from.
LEXICON = {
    "1s": ["na"],
    "2s": ["ki"],
    "3s": ["tovu", "tesk"],
    "1p": ["nara"],
    "3p": ["tovura"],
    "go.prs": ["lemi", "ladu"],
    "go.pst": ["lemok", "ladok", "letak"],
    "say.prs": ["siru"],
    "say.pst": ["sirok", "sivak"],
    "see.prs": ["kelu", "koda"],
    "see.pst": ["kelok"],
    "eat.prs": ["mansu"],
    "eat.pst": ["mansok", "mavok"],
    "sleep.prs": ["dormu"],
    "come.pst": ["venok", "vesak"],
    "give.pst": ["donok"],
    "take.prs": ["prenu", "pratu"],
    "house": ["kasa", "domi"],
    "water": ["aqui"],
    "fire": ["fogu", "ember"],
    "mother": ["mama", "nene"],
    "father": ["papa"],
    "child": ["bimbi", "ninu", "peque"],
    "dog": ["kanu"],
    "bird": ["avi", "tiku"],
    "sun": ["mira"],
    "moon": ["luma", "selu"],
    "mountain": ["monti"],
    "river": ["riva", "flumi"],
    "big": ["grandi"],
    "small": ["mikra", "tini"],
    "good": ["boni"],
    "loc": ["en"],
    "gen": ["de"],
    "neg": ["nix"],
    "q": ["ken"],
    "and": ["eti", "ya"],
}

GLOSSES = list(LEXICON)
WORD_GLOSS = [(w, g) for g, ws in LEXICON.items() for w in ws]
SPEAKERS = ["spkA", "spkB", "spkC", "spkD", "spkE", "spkF"]


def make_mini_corpus():
    rng = random.Random(20250825)
    # Guarantee every (gloss, word) pair occurs: chunk a shuffled copy of
    # all pairs into the first sentences, then pad with random draws.
    pairs = WORD_GLOSS[:]
    rng.shuffle(pairs)
    sentences = []
    i = 0
    while i < len(pairs):
        k = rng.randint(4, 7)
        chunk = pairs[i : i + k]
        if len(chunk) < 3:
            chunk = pairs[i:]
            sentences[-1].extend(chunk)
            break
        sentences.append(chunk)
        i += k
    while len(sentences) < 50:
        k = rng.randint(3, 7)
        sentences.append(
            [
                (rng.choice(LEXICON[g]), g)
                for g in (rng.choice(GLOSSES) for _ in range(k))
            ]
        )
    sentences = sentences[:50]

    rows = []
    for n, sent in enumerate(sentences):
        words = [w for w, _ in sent]
        glosses = [g for _, g in sent]
        rows.append(
            {
                "id": f"utt{n:03d}",
                "speaker": SPEAKERS[rng.randint(0, len(SPEAKERS) - 1)],
                "audio": f"audio/utt{n:03d}.wav",
                "duration_s": repr(round(rng.uniform(2.0, 8.0), 1)),
                "text": " ".join(words),
                "ipa": "",
                "gloss": " ".join(glosses),
                "pos": "",
                "translation_en": " ".join(glosses).replace(".", " "),
                "translation_other": "",
            }
        )
    with open(DATA / "mini_corpus.tsv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([row[c] for c in COLUMNS])
    return rows


def independent_split(rows, seed, train_frac=0.8, val_frac=0.1, test_frac=0.1):
    """Mirror of the documented split contract, written independently:
    val/test sizes are round(frac*N), remainder to train, assignment from
    a numpy permutation keyed on the seed, original order preserved."""
    import numpy as np

    n = len(rows)
    n_val = int(round(val_frac * n))
    n_test = int(round(test_frac * n))
    n_train = n - n_val - n_test
    order = np.random.default_rng(np.random.SeedSequence(seed)).permutation(n)
    train_idx = sorted(order[:n_train])
    return [rows[i] for i in train_idx]


def brute_force_stats(rows, train_rows, llm_tokens):
    minutes = sum(float(r["duration_s"]) for r in rows) / 60.0
    speakers = len({r["speaker"] for r in rows})
    total_words = 0
    total_vocab = set()
    for r in rows:
        toks = r["text"].split()
        total_words += len(toks)
        total_vocab.update(toks)
    train_words = 0
    train_vocab = set()
    gloss_words = {}
    for r in train_rows:
        toks = r["text"].split()
        glosses = r["gloss"].split()
        train_words += len(toks)
        train_vocab.update(toks)
        for w, g in zip(toks, glosses):
            gloss_words.setdefault(g, set()).add(w)
    with_alts = sum(1 for ws in gloss_words.values() if len(ws) >= 2)
    pct_alt = 100.0 * with_alts / len(gloss_words)
    oov = sum(1 for t in llm_tokens if t not in train_vocab)
    pct_out = 100.0 * oov / len(llm_tokens)
    return {
        "minutes": minutes,
        "speakers": speakers,
        "total_words": total_words,
        "total_unique": len(total_vocab),
        "train_words": train_words,
        "train_unique": len(train_vocab),
        "gloss_count": len(gloss_words),
        "pct_alt": pct_alt,
        "pct_out": pct_out,
    }


def make_llm_fixtures(rows):
    """LLM raw output: 8 rows, 3 misaligned, 5 accepted rows of 8 tokens
    each with exactly 10 OOV tokens total (relative to the full mini
    corpus vocabulary)."""
    vocab = sorted({t for r in rows for t in r["text"].split()})
    inv = ["zorp", "blik", "vruna", "skelta", "mox", "quib", "drall",
           "yentu", "plim", "gwar"]  # hallucinated words, guaranteed OOV
    assert not set(inv) & set(vocab)
    iv = vocab  # in-vocabulary pool

    def sent(words):
        return " ".join(words)

    accepted = [
        inv[0:2] + iv[0:6],          # 2 OOV
        inv[2:4] + iv[6:12],         # 2 OOV
        inv[4:6] + iv[12:18],        # 2 OOV
        inv[6:8] + iv[18:24],        # 2 OOV
        inv[8:10] + iv[24:30],       # 2 OOV
    ]
    glosses8 = sent(["g%d" % i for i in range(8)])
    lines = [["text", "clean_text", "english", "gloss"]]
    for words in accepted[:2]:
        lines.append([sent(words), sent(words), "filler", glosses8])
    # three misaligned rows: 5 text tokens vs 4 gloss tokens etc.
    lines.append([sent(iv[30:35]), "", "bad", sent(["g1", "g2", "g3", "g4"])])
    lines.append([sent(iv[35:38]), "", "bad", sent(["g1", "g2"])])
    for words in accepted[2:4]:
        lines.append([sent(words), sent(words), "filler", glosses8])
    lines.append([sent(iv[38:44]), "", "bad", sent(["g1"])])
    lines.append([sent(accepted[4]), sent(accepted[4]), "filler", glosses8])
    with open(DATA / "llm_raw.tsv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerows(lines)

    # 8 tokens, 5 OOV -> 62.5% against the full mini corpus vocabulary
    tokens = [vocab[0], inv[0], inv[1], vocab[1], inv[2], inv[3], vocab[2], inv[4]]
    (DATA / "llm_tokens.txt").write_text(" ".join(tokens) + "\n", encoding="utf-8")
    return [t for row in accepted for t in row], tokens


def make_tiny_train_and_prompt_golden():
    rows = [
        ["u1", "spk1", "audio/u1.wav", "2.5", "mira tovu ken", "",
         "sun rise.pst q", "", "did the sun rise", ""],
        ["u2", "spk1", "audio/u2.wav", "3.0", "na lemok en kasa", "",
         "1s go.pst loc house", "", "I went to the house", ""],
    ]
    with open(DATA / "tiny_train.tsv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(COLUMNS)
        writer.writerows(rows)

    # Hand-composed expected prompt bytes for the tiny corpus: the fixed
    # instruction text with count=2, language and description filled in,
    # a blank line, then the serialized training split.
    head = (
        "Given the following CSV, focus on columns [text, clean_text, "
        "english, gloss] and generate 2 sentences in a CSV with all of the "
        "original columns, consisting of only the new sentences; this is in "
        "Veldima, an invented agglutinative demonstration language; do not "
        "use Python code to generate the sentences but rather use your "
        "understanding of other languages as an LLM to generate sentences; "
        "make sure that the text and gloss generated match; this text will "
        "be passed on to a TTS model to generate synthetic audio, to use "
        "for additional training data for a wav2vec2-based ASR model."
    )
    payload_lines = [
        "\t".join(COLUMNS),
        "u1\tspk1\taudio/u1.wav\t2.5\tmira tovu ken\t\tsun rise.pst q\t\t"
        "did the sun rise\t",
        "u2\tspk1\taudio/u2.wav\t3.0\tna lemok en kasa\t\t1s go.pst loc kasa"
        "\t\tI went to the house\t",
    ]
    # fix gloss column typo guard: keep exactly what the corpus holds
    payload_lines[2] = (
        "u2\tspk1\taudio/u2.wav\t3.0\tna lemok en kasa\t\t1s go.pst loc house"
        "\t\tI went to the house\t"
    )
    golden = head + "\n\n" + "\n".join(payload_lines) + "\n"
    (DATA / "prompt_golden.txt").write_text(golden, encoding="utf-8")


def main():
    DATA.mkdir(exist_ok=True)
    rows = make_mini_corpus()
    accepted_tokens, oov_tokens = make_llm_fixtures(rows)
    make_tiny_train_and_prompt_golden()
    train_rows = independent_split(rows, seed=7)
    golden = brute_force_stats(rows, train_rows, oov_tokens)
    golden["split_seed"] = 7
    # lexicon over the full corpus covers every pair by construction
    full_gloss = {}
    for r in rows:
        for w, g in zip(r["text"].split(), r["gloss"].split()):
            full_gloss.setdefault(g, set()).add(w)
    golden["full_gloss_count"] = len(full_gloss)
    golden["full_lexicon"] = {g: sorted(ws) for g, ws in sorted(full_gloss.items())}
    with open(DATA / "mini_stats_golden.json", "w", encoding="utf-8") as fh:
        json.dump(golden, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print("gloss types in full corpus:", len(full_gloss))
    print("stats golden:", {k: v for k, v in golden.items() if k != "full_lexicon"})


if __name__ == "__main__":
    main()
