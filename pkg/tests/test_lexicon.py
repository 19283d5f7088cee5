import pytest

from igtaug.corpus import Corpus, Utterance
from igtaug.errors import EmptyLexiconError, ToolkitError
from igtaug.lexicon import (
    alternative_rate,
    build_lexicon,
    corpus_stats,
    oov_rate,
    vocabulary,
)


def corpus_of(*rows, name="c"):
    utts = []
    for i, (words, glosses) in enumerate(rows):
        utts.append(
            Utterance(
                id=f"u{i}",
                speaker="s",
                text_tokens=tuple(words.split()),
                gloss_tokens=tuple(glosses.split()) if glosses else None,
            )
        )
    return Corpus(name=name, utterances=tuple(utts))


class TestBuildLexicon:
    def test_single_sentence(self):
        lex = build_lexicon(corpus_of(("wa wb", "G1 G2")))
        assert lex.entries == {"G1": ("wa",), "G2": ("wb",)}

    def test_shared_gloss_collects_both_words(self):
        lex = build_lexicon(corpus_of(("wa x", "G1 GX"), ("wc y", "G1 GY")))
        assert lex.entries["G1"] == ("wa", "wc")

    def test_words_deduplicated_first_occurrence_order(self):
        lex = build_lexicon(corpus_of(("b a b", "G G G"), ("a c", "G G")))
        assert lex.entries["G"] == ("b", "a", "c")

    def test_no_glosses_anywhere_raises(self):
        with pytest.raises(EmptyLexiconError):
            build_lexicon(corpus_of(("wa wb", None)))

    def test_mini_corpus_matches_brute_force_golden(self, mini_corpus, mini_golden):
        lex = build_lexicon(mini_corpus)
        assert len(lex) == mini_golden["full_gloss_count"] == 37
        golden = {g: set(ws) for g, ws in mini_golden["full_lexicon"].items()}
        assert {g: set(ws) for g, ws in lex.entries.items()} == golden

    def test_closure_every_pair_occurs_in_training(self, mini_corpus):
        lex = build_lexicon(mini_corpus)
        positions = set()
        for u in mini_corpus:
            positions.update(zip(u.gloss_tokens, u.text_tokens))
        for g, words in lex.entries.items():
            for w in words:
                assert (g, w) in positions


class TestVocabulary:
    def test_empty(self):
        assert vocabulary(Corpus(name="e", utterances=())) == []

    def test_dedup_in_order(self):
        assert vocabulary(corpus_of(("a b a", "G G G"))) == ["a", "b"]

    def test_mini_corpus_brute_force(self, mini_corpus, mini_golden):
        vocab = vocabulary(mini_corpus)
        brute = set()
        for u in mini_corpus:
            brute.update(u.text_tokens)
        assert set(vocab) == brute
        assert len(vocab) == mini_golden["total_unique"]


class TestAlternativeRate:
    def test_half(self):
        lex = build_lexicon(corpus_of(("w1 w3", "G1 G2"), ("w2", "G1")))
        assert alternative_rate(lex) == 50.0

    def test_all_singletons(self):
        lex = build_lexicon(corpus_of(("w1 w2", "G1 G2")))
        assert alternative_rate(lex) == 0.0

    def test_invariant_under_duplication(self, mini_corpus):
        lex = build_lexicon(mini_corpus)
        doubled = Corpus(
            name="d",
            utterances=tuple(mini_corpus.utterances)
            + tuple(
                Utterance(
                    id=u.id + "-copy",
                    speaker=u.speaker,
                    text_tokens=u.text_tokens,
                    gloss_tokens=u.gloss_tokens,
                )
                for u in mini_corpus
            ),
        )
        assert alternative_rate(build_lexicon(doubled)) == alternative_rate(lex)

    def test_empty_lexicon_rejected(self):
        from igtaug.lexicon import GlossLexicon

        with pytest.raises(EmptyLexiconError):
            alternative_rate(GlossLexicon(entries={}))


class TestOovRate:
    def test_all_in_vocab(self):
        assert oov_rate(["a", "b"], {"a", "b", "c"}) == 0.0

    def test_half_oov(self):
        assert oov_rate(["a", "x", "b", "y"], {"a", "b"}) == 50.0

    def test_fixture_62_5(self, mini_corpus, data_dir):
        tokens = (data_dir / "llm_tokens.txt").read_text().split()
        vocab = vocabulary(mini_corpus)
        # independent brute-force count
        brute = 100.0 * sum(1 for t in tokens if t not in set(vocab)) / len(tokens)
        assert brute == 62.5
        assert oov_rate(tokens, vocab) == 62.5

    def test_by_type(self):
        # 2 OOV types of 3 types, but 4 OOV tokens of 5 occurrences
        tokens = ["x", "x", "x", "y", "a"]
        assert oov_rate(tokens, {"a"}) == 80.0
        assert oov_rate(tokens, {"a"}, by_type=True) == pytest.approx(200 / 3)

    def test_monotone_as_tokens_go_oov(self):
        vocab = {"a", "b", "c"}
        tokens = ["a", "b", "c", "a"]
        rates = []
        for i in range(len(tokens) + 1):
            replaced = [f"zz{j}" if j < i else t for j, t in enumerate(tokens)]
            rates.append(oov_rate(replaced, vocab))
        assert rates == sorted(rates)

    def test_empty_rejected(self):
        with pytest.raises(ToolkitError):
            oov_rate([], {"a"})


class TestCorpusStats:
    def test_single_utterance(self):
        u = Utterance(
            id="u0",
            speaker="s",
            duration=60.0,
            text_tokens=("a", "b", "c", "d", "e"),
            gloss_tokens=("G1", "G2", "G3", "G4", "G5"),
        )
        c = Corpus(name="c", utterances=(u,))
        stats = corpus_stats(c, c)
        assert stats.minutes == 1.0
        assert stats.speakers == 1
        assert stats.total_words == 5
        assert stats.pct_out is None

    def test_train_not_subset_rejected(self, mini_corpus):
        other = corpus_of(("w", "G"), name="other")
        with pytest.raises(ToolkitError):
            corpus_stats(mini_corpus, other)

    def test_mini_corpus_matches_golden(self, mini_corpus, mini_golden, data_dir):
        from igtaug.corpus import SplitSpec, split_corpus

        train, _, _ = split_corpus(
            mini_corpus, SplitSpec(0.8, 0.1, 0.1, seed=mini_golden["split_seed"])
        )
        llm_tokens = (data_dir / "llm_tokens.txt").read_text().split()
        stats = corpus_stats(mini_corpus, train, llm_tokens)
        assert stats.minutes == pytest.approx(mini_golden["minutes"], abs=1e-9)
        assert stats.speakers == mini_golden["speakers"]
        assert stats.total_words == mini_golden["total_words"]
        assert stats.total_unique == mini_golden["total_unique"]
        assert stats.train_words == mini_golden["train_words"]
        assert stats.train_unique == mini_golden["train_unique"]
        assert stats.gloss_count == mini_golden["gloss_count"]
        assert stats.pct_alt == pytest.approx(mini_golden["pct_alt"], abs=1e-9)
        assert stats.pct_out == pytest.approx(mini_golden["pct_out"], abs=1e-9)

    def test_train_unique_matches_vocabulary(self, mini_corpus):
        stats = corpus_stats(mini_corpus, mini_corpus)
        assert stats.train_unique == len(vocabulary(mini_corpus))
