""" Testing sentence splitting, classification and block grouping """
import pytest
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent / "vermin"))
from errors import UnbalancedScope, UnterminatedComment, UnterminatedString  # pylint: disable=import-error
from sentences import (
    BlockKind,
    Document,
    SentenceKind,
    Token,
    group_blocks,
    lex,
    render,
    split_sentences,
)


@pytest.fixture
def scoped_doc():
    return Document.parse(
        "Require Import A.\n"
        "Module M.\n"
        "Definition x := 0.\n"
        "End M.\n"
        "Lemma l : M.x = M.x.\n"
        "Proof. reflexivity. Qed.\n",
        "bug.v",
    )


def test_pristine_render_is_byte_identical():
    text = "Definition a := 0. (* c *) Lemma x : a = a.\nProof. reflexivity. Qed.\n\n"
    doc = Document.parse(text)
    assert render(doc) == text
    assert doc.texts == [
        "Definition a := 0.",
        "(* c *) Lemma x : a = a.",
        "Proof.",
        "reflexivity.",
        "Qed.",
    ]


def test_periods_inside_strings_comments_and_names():
    assert len(split_sentences('Definition s := "a. b". Definition t := 1.')) == 2
    assert len(split_sentences("(* outer (* inner. *) still. *) Definition a := 0.")) == 1
    assert [s.text for s in split_sentences("Definition y := M.x.")] == ["Definition y := M.x."]


def test_unterminated_delimiters_report_their_offset():
    with pytest.raises(UnterminatedComment) as e:
        split_sentences("Definition a := 0. (* open")
    assert e.value.offset == 19
    with pytest.raises(UnterminatedString) as e:
        split_sentences('Definition s := "abc')
    assert e.value.offset == 16


def test_classify(scoped_doc):
    assert [s.kind for s in scoped_doc.sentences] == [
        SentenceKind.REQUIRE_LIKE,
        SentenceKind.SCOPE_OPENER,
        SentenceKind.COMMAND,
        SentenceKind.SCOPE_CLOSER,
        SentenceKind.COMMAND,
        SentenceKind.PROOF_OPENER,
        SentenceKind.PROOF_STEP,
        SentenceKind.PROOF_CLOSER,
    ]


def test_blocks_partition_and_nest(scoped_doc):
    blocks = scoped_doc.blocks
    assert [(b.start, b.end, b.kind) for b in blocks] == [
        (0, 1, BlockKind.LOOSE),
        (1, 4, BlockKind.SCOPE),
        (4, 8, BlockKind.PROOF_BLOCK),
    ]
    assert blocks[1].name == "M"
    assert [(c.start, c.end) for c in blocks[1].children] == [(2, 3)]
    assert blocks[2].name == "l"
    assert len(scoped_doc.all_blocks()) == 4


def test_obligations_form_a_definition_block():
    doc = Document.parse("Program Definition f : nat := _.\nNext Obligation. exact 0. Qed.\n")
    assert [(b.start, b.end, b.kind) for b in doc.blocks] == [
        (0, 1, BlockKind.LOOSE),
        (1, 4, BlockKind.DEFINITION),
    ]


def test_unbalanced_scopes():
    doc = Document.parse("Definition a := 0.\nEnd M.\n")
    assert doc.unbalanced
    assert doc.blocks[1].unbalanced
    with pytest.raises(UnbalancedScope):
        group_blocks(split_sentences("End M."), strict=True)


def test_introduced_names():
    doc = Document.parse(
        "Inductive t := A | B.\nModule Export N.\nEnd N.\nParameters p q : nat.\nContext {T : Type}.\n"
    )
    assert doc[0].names == ("t", "A", "B")
    assert doc[1].names == ("N",)
    assert doc[3].names == ("p", "q")
    assert doc[4].names == ("T",)


def test_replace_renders_one_sentence_per_line():
    doc = Document.parse("Definition a := 0. Definition b := a.", "bug.v")
    changed = doc.replace(0, 1, ["Definition a := 1."])
    assert not changed.pristine
    assert changed.source_name == "bug.v"
    assert render(changed) == "Definition a := 1.\nDefinition b := a.\n"
    assert render(doc.delete(0, 2)) == ""


def test_locate():
    doc = Document.parse("Definition a := 0.\nDefinition b := a.\n")
    assert doc.locate(2, 16) == 1
    assert doc.locate(1, 0) == 0
    assert doc.locate(9, 0) is None
    transformed = doc.replace(0, 1, ["(* note *)", "Definition a := 0."])
    assert transformed.locate(3, 0) == 2


def test_lex_keeps_string_quotes():
    assert lex('trigger_bug "x y".') == [
        Token("ident", "trigger_bug", 0),
        Token("string", '"x y"', 12),
        Token("symbol", ".", 17),
    ]
