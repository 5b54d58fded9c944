import random
import string
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from codelineage.corpus import load_corpus
from codelineage.cparse import extract_functions
from codelineage.errors import LexiconLoadError
from codelineage.tags import (
    Lexicon,
    RawTag,
    TagSource,
    default_lexicon,
    extract_raw_tags,
    function_tags,
    load_lexicon,
    normalize_tags,
    split_raw_tag,
)

FIXTURES = Path(__file__).parent / "fixtures" / "corpus"


@pytest.fixture(scope="module")
def lexicon():
    return default_lexicon()


def unit_of(src):
    units, _ = extract_functions(src)
    assert len(units) == 1
    return units[0]


class TestSplitRawTag:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("grab_start", ["grab", "start"]),
            ("GrabStart", ["Grab", "Start"]),
            ("cpu_speed", ["cpu", "speed"]),
            ("HTTPServer", ["HTTP", "Server"]),
            ("parseHTTPResponse2", ["parse", "HTTP", "Response", "2"]),
            ("__init__", ["init"]),
            ("x", ["x"]),
            ("", []),
        ],
    )
    def test_examples(self, raw, expected):
        assert split_raw_tag(raw) == expected

    @given(st.text(alphabet=string.ascii_letters + string.digits + "_-. ", max_size=40))
    @settings(max_examples=200, deadline=None)
    def test_pieces_are_alnum_runs_covering_input(self, text):
        pieces = split_raw_tag(text)
        for p in pieces:
            assert p
            assert p.isalnum()
        # every alphanumeric character of the input survives, in order
        assert "".join(pieces) == "".join(c for c in text if c.isalnum())


class TestNormalizeTags:
    def test_function_name_fixture(self, lexicon):
        src = (
            "void grab_start() {\n"
            "    HWND window = GetForegroundWindow();\n"
            "    send_bytes(window);\n"
            "}\n"
        )
        tags = function_tags(unit_of(src), lexicon)
        assert {"grab", "start", "window", "send"} <= set(tags.tags)

    def test_abbreviation_expansion(self, lexicon):
        raw = [RawTag("cpu_speed", TagSource.VariableName), RawTag("cnt", TagSource.VariableName)]
        tags = normalize_tags(raw, lexicon)
        assert set(tags.tags) == {"cpu", "speed", "count"}

    def test_gibberish_and_stopwords_dropped(self, lexicon):
        raw = [RawTag("xZq9", TagSource.VariableName), RawTag("the", TagSource.VariableName)]
        assert normalize_tags(raw, lexicon).tags == []

    def test_short_fragments_dropped_unless_whitelisted(self, lexicon):
        raw = [RawTag("do_it_to_cpu", TagSource.VariableName)]
        tags = normalize_tags(raw, lexicon)
        assert "cpu" in tags.tags  # whitelisted despite len < MIN via lexicon
        assert "it" not in tags.tags
        assert "do" not in tags.tags

    def test_output_sorted_lowercase_unique(self, lexicon):
        raw = [
            RawTag("SendWindow", TagSource.FunctionName),
            RawTag("window_send", TagSource.VariableName),
        ]
        tags = normalize_tags(raw, lexicon).tags
        assert tags == sorted(set(tags))
        assert all(t == t.lower() for t in tags)

    def test_idempotence(self, lexicon):
        corpus = load_corpus(FIXTURES / "corpus.json")
        for s in corpus:
            for f in s.files:
                units, _ = extract_functions(f.text, specimen_id=s.id)
                for u in units:
                    once = function_tags(u, lexicon).tags
                    again = normalize_tags(
                        [RawTag(t, TagSource.VariableName) for t in once], lexicon
                    ).tags
                    assert again == once

    def test_order_independence(self, lexicon):
        raw = [
            RawTag("grab_start", TagSource.FunctionName),
            RawTag("cnt", TagSource.VariableName),
            RawTag("windowSend", TagSource.VariableName),
        ]
        rng = random.Random(1)
        baseline = normalize_tags(raw, lexicon).tags
        for _ in range(10):
            shuffled = raw[:]
            rng.shuffle(shuffled)
            assert normalize_tags(shuffled, lexicon).tags == baseline

    def test_purity(self, lexicon):
        raw = [RawTag("grab_start", TagSource.FunctionName)]
        assert normalize_tags(raw, lexicon).tags == normalize_tags(raw, lexicon).tags

    def test_provenance_tracks_sources(self, lexicon):
        raw = [
            RawTag("send", TagSource.FunctionName),
            RawTag("send", TagSource.Comment),
        ]
        tags = normalize_tags(raw, lexicon)
        assert tags.provenance["send"] == {TagSource.FunctionName, TagSource.Comment}

    def test_abbreviation_chain_resolved_to_fixed_point(self, tmp_path):
        (tmp_path / "words.txt").write_text("message\n")
        (tmp_path / "abbrev.tsv").write_text("msg\tmesg\nmesg\tmessage\n")
        (tmp_path / "white.txt").write_text("")
        (tmp_path / "black.txt").write_text("")
        lex = load_lexicon(
            tmp_path / "words.txt",
            tmp_path / "abbrev.tsv",
            tmp_path / "white.txt",
            tmp_path / "black.txt",
        )
        assert lex.abbreviations["msg"] == "message"
        tags = normalize_tags([RawTag("msg", TagSource.VariableName)], lex)
        assert tags.tags == ["message"]


class TestExtractRawTags:
    def test_function_name_always_present(self, lexicon):
        raw = extract_raw_tags(unit_of("void nop(){ }"), lexicon)
        assert RawTag("nop", TagSource.FunctionName) in raw

    def test_identifiers_collected(self, lexicon):
        raw = extract_raw_tags(
            unit_of("void f(){ int counter = limit; }"), lexicon
        )
        var_texts = {r.text for r in raw if r.source is TagSource.VariableName}
        assert {"counter", "limit"} <= var_texts

    def test_registry_string_literal(self, lexicon):
        src = 'void f(){ reg_write("HKEY_LOCAL_MACHINE\\\\Software\\\\Run"); }'
        raw = extract_raw_tags(unit_of(src), lexicon)
        assert any(r.source is TagSource.RegistryPath for r in raw)

    def test_filepath_string_literal(self, lexicon):
        src = 'void f(){ drop("C:\\\\temp\\\\svc.exe"); }'
        raw = extract_raw_tags(unit_of(src), lexicon)
        assert any(r.source is TagSource.FilePath for r in raw)

    def test_plain_string_not_a_path_tag(self, lexicon):
        raw = extract_raw_tags(unit_of('void f(){ say("hello world"); }'), lexicon)
        assert not any(
            r.source in (TagSource.FilePath, TagSource.RegistryPath) for r in raw
        )

    def test_comment_keywords_capped_at_five(self, lexicon):
        comment = "// " + " ".join(f"uniqueword{i}" for i in range(12))
        src = "void f(){\n%s\nx = 1;\n}" % comment
        raw = extract_raw_tags(unit_of(src), lexicon)
        assert sum(1 for r in raw if r.source is TagSource.Comment) <= 5

    def test_comment_keywords_frequency_ranked(self, lexicon):
        src = (
            "void f(){\n"
            "// cycle cycle cycle speed speed count alpha beta gamma delta\n"
            "x = 1;\n}"
        )
        raw = [r.text for r in extract_raw_tags(unit_of(src), lexicon)
               if r.source is TagSource.Comment]
        assert raw[0] == "cycle"
        assert raw[1] == "speed"
        assert len(raw) == 5

    def test_fixture_miner_comment_tags(self, lexicon):
        corpus = load_corpus(FIXTURES / "corpus.json")
        miner = corpus.by_id("minerY")
        units, _ = extract_functions(miner.files[0].text, specimen_id="minerY")
        cpuspeed = [u for u in units if u.name == "cpuspeed"][0]
        tags = function_tags(cpuspeed, lexicon)
        assert {"cpu", "speed"} <= set(tags.tags)
        assert {"cycle", "count"} <= set(tags.tags)  # from the comment


class TestLexiconLoading:
    def test_default_lexicon_loads(self, lexicon):
        assert lexicon.is_word("window")
        assert not lexicon.is_word("the")  # blacklisted stopword
        assert lexicon.is_word("cpu")  # whitelisted short token

    def test_missing_file(self, tmp_path):
        with pytest.raises(LexiconLoadError):
            load_lexicon(
                tmp_path / "nope.txt",
                tmp_path / "nope.tsv",
                tmp_path / "nope.txt",
                tmp_path / "nope.txt",
            )

    def test_bad_abbrev_row(self, tmp_path):
        for name in ("words.txt", "white.txt", "black.txt"):
            (tmp_path / name).write_text("")
        (tmp_path / "abbrev.tsv").write_text("no-tab-here\n")
        with pytest.raises(LexiconLoadError):
            load_lexicon(
                tmp_path / "words.txt",
                tmp_path / "abbrev.tsv",
                tmp_path / "white.txt",
                tmp_path / "black.txt",
            )

    def test_all_abbreviation_expansions_are_kept_words(self, lexicon):
        # every expansion must survive the dictionary filter, otherwise the
        # expand step silently deletes tags
        for expansion in lexicon.abbreviations.values():
            assert lexicon.is_word(expansion), expansion
