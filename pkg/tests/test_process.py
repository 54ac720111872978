""" Testing whole minimization runs and their written results """
from dataclasses import replace
import pandas as pd
import pytest
import re
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent / "vermin"))
from configs import path_config  # pylint: disable=import-error
from data_objects import Cursor, LedgerEntry, MinimizationState, RunStats
from error_equivalence import normalize
from errors import BudgetExhausted, NoErrorFound, NoMatchingInvocation, OutputWriteFailed
from harness import FAIL, PASS, copy_fixture, random_document, run_config, verify_text, write_files
from oracle import Oracle
from process import discover_task, header_lines, minimize, pass_summary, strip_header, write_output
from scheduler import Scheduler
from sentences import Document, SentenceKind, render

WRAPPER_HEADS = {"Module", "End", "Import"}
HEADER_LINE = re.compile(r"^\(\* ([a-z-]+): (.*) \*\)$")


def body_texts(text):
    doc = Document.parse(strip_header(text), "bug.v")
    return [s.text for s in doc.sentences if s.head not in WRAPPER_HEADS]


def header_fields(text):
    fields = {}
    for line in text.splitlines():
        m = HEADER_LINE.match(line)
        if not m:
            break
        fields[m.group(1)] = m.group(2)
    return fields


@pytest.fixture
def golden_run(toy_launch, tmp_path):
    workdir = copy_fixture("golden", tmp_path)
    out = tmp_path / "out"
    config = run_config(workdir, output_path=str(out / "bug.min.v"), stats_path=str(out / "bug.stats.csv"))
    return minimize(config), out


def test_golden_minimization(golden_run):
    result, out = golden_run
    text = (out / "bug.min.v").read_text(encoding="utf-8")
    assert body_texts(text) == [
        'Ltac crush := intros; subst; try reflexivity; trigger_bug "crush is broken".',
        "Definition zero := 0.",
        "Definition one := 1.",
        "Lemma foo : forall x, x = zero -> S x = one.",
        "Proof.",
        "crush.",
    ]
    fields = header_fields(text)
    assert fields["original-lines"] == "9"
    assert fields["failed-inlines"] == "none"
    assert fields["final-lines"] == str(result.stats.final_size)
    assert result.state.inlined == ["Top.UsefulTactics"]
    assert result.state.done


def test_golden_statistics(golden_run):
    result, out = golden_run
    fields = header_fields((out / "bug.min.v").read_text(encoding="utf-8"))
    frame = pd.read_csv(out / "bug.stats.csv")
    assert list(frame.columns) == ["pass_name", "lines_before", "lines_after"]
    removed = (frame["lines_before"] - frame["lines_after"]).clip(lower=0).sum()
    assert int(fields["total-removed"]) == removed
    assert fields["reduction-ratio"] == result.stats.ratio_text
    assert "inline" in set(frame["pass_name"])


def test_diamond_is_fully_inlined(toy_launch, tmp_path):
    workdir = copy_fixture("diamond", tmp_path)
    result = minimize(run_config(workdir))
    assert result.state.failed_inlines == []
    assert sorted(result.state.inlined) == ["Top.A", "Top.B", "Top.C"]
    assert not any(s.kind == SentenceKind.REQUIRE_LIKE for s in result.state.current.sentences)
    verify_text(workdir, render(result.state.current), result.state.expected)


def test_failed_inline_is_reported(toy_launch, tmp_path):
    workdir = copy_fixture("legacy", tmp_path)
    out = tmp_path / "bug.min.v"
    result = minimize(run_config(workdir, output_path=str(out)))
    assert result.state.failed_inlines == ["Top.Legacy"]
    assert "Top.Helper" in result.state.inlined
    assert header_fields(out.read_text(encoding="utf-8"))["failed-inlines"] == "Top.Legacy"
    verify_text(workdir, render(result.state.current), result.state.expected)


def test_preserve_error_script(toy_launch, tmp_path):
    workdir = copy_fixture("preserve", tmp_path)
    result = minimize(run_config(workdir, preserve_error_script=True))
    texts = result.state.current.texts
    guard = 'match goal with | [ |- ?x = ?x ] => trigger_bug "guard fired" end.'
    assert texts[texts.index(guard) + 1 :] == ["reflexivity.", "Qed."]
    assert not any("after" in t for t in texts)


@pytest.mark.parametrize("seed", range(100))
def test_random_documents_stay_sound(toy_launch, tmp_path, seed):
    workdir = write_files(tmp_path / "w", {"bug.v": random_document(seed)})
    result = minimize(run_config(workdir))
    final = render(result.state.current)
    verify_text(workdir, final, result.state.expected)

    state = result.state
    state.checkpoint_path = None
    state.cursor = Cursor()
    oracle = Oracle(FAIL, PASS, cwd=workdir)
    oracle.verify_initial(state.current, state.expected)
    Scheduler(state, oracle, {}, "bug.v").run_pass("remove_blocks_backward")
    assert render(state.current) == final


RESUMABLE = ["golden", "diamond", "legacy", "preserve"] + [f"random-{seed}" for seed in range(10)]


def _workdir(tmp_path, name, fixture):
    if fixture.startswith("random-"):
        seed = int(fixture.split("-")[1])
        return write_files(tmp_path / name / "w", {"bug.v": random_document(seed)})
    return copy_fixture(fixture, tmp_path / name)


@pytest.mark.parametrize("fixture", RESUMABLE)
def test_resumed_runs_match_uninterrupted_ones(toy_launch, tmp_path, fixture):
    """Interrupt after every acceptance in turn and resume from the checkpoint."""
    expected = render(minimize(run_config(_workdir(tmp_path, "straight", fixture))).state.current)
    stop_after = 1
    while True:
        config = run_config(_workdir(tmp_path, f"stop-{stop_after}", fixture))
        try:
            minimize(config, stop_after=stop_after)
        except BudgetExhausted:
            resumed = minimize(replace(config, resume=True))
            assert render(resumed.state.current) == expected, stop_after
            stop_after += 1
            continue
        break
    assert stop_after > 1


def test_discover_task():
    log = (
        "make: entering directory\n"
        "VERMIN_CALL: cwd=/work env_path= args=coqc -Q . Top other.v\n"
        "VERMIN_CALL: cwd=/work env_path=lib args=coqc -batch -Q . Top bug.v\n"
        'File "bug.v", line 3, characters 0-4:\n'
        "Error: boom\n"
    )
    task = discover_task(log)
    assert task.file == "bug.v"
    assert task.args == ["coqc", "-batch", "-Q", ".", "Top"]
    assert task.cwd == "/work"
    assert task.env_path == "lib"
    assert task.error.message == "Error: boom"


def test_discover_task_prefers_the_same_path():
    error = 'File "/work/bug.v", line 3, characters 0-4:\nError: boom\n'
    log = (
        "VERMIN_CALL: cwd=/work env_path= args=coqc -Q . Top bug.v\n"
        "VERMIN_CALL: cwd=/other env_path= args=coqc -Q . Other bug.v\n" + error
    )
    task = discover_task(log)
    assert task.cwd == "/work"
    assert task.args == ["coqc", "-Q", ".", "Top"]
    assert discover_task("VERMIN_CALL: cwd=/other env_path= args=coqc bug.v\n" + error).cwd == "/other"


def test_discover_task_failures():
    with pytest.raises(NoErrorFound):
        discover_task("VERMIN_CALL: cwd= env_path= args=coqc bug.v\n")
    with pytest.raises(NoMatchingInvocation):
        discover_task(
            "VERMIN_CALL: cwd= env_path= args=coqc other.v\n"
            'File "bug.v", line 3, characters 0-4:\nError: boom\n'
        )


def test_ratio_bookkeeping():
    stats = RunStats(
        [LedgerEntry("a", 100, 60), LedgerEntry("inline", 60, 140), LedgerEntry("b", 140, 90)], 90
    )
    assert stats.total_removed == 90
    assert stats.reduction_ratio == 0.5
    assert stats.ratio_text == "0.500000"
    assert pass_summary(stats) == "a=40, inline=0, b=50"


def test_write_output(tmp_path):
    doc = Document.from_texts(["Definition a := 0."], "bug.v")
    state = MinimizationState(doc, normalize("Error: x"), original_lines=3)
    stats = RunStats([LedgerEntry("a", 3, 1)], 1)
    out = tmp_path / "deep" / "bug.min.v"
    write_output(state, stats, out, "bug.v", tmp_path / "stats.csv")
    text = out.read_text(encoding="utf-8")
    assert text.splitlines()[: len(header_lines(state, stats, "bug.v"))] == header_lines(state, stats, "bug.v")
    assert strip_header(text) == "Definition a := 0.\n"
    assert header_fields(text)["reduction-ratio"] == "0.333333"
    assert len(pd.read_csv(tmp_path / "stats.csv")) == 1
    with pytest.raises(OutputWriteFailed):
        write_output(state, stats, tmp_path, "bug.v")


def test_scratch_directory_is_removed(toy_launch, tmp_path, monkeypatch):
    scratch = tmp_path / "scratch"
    scratch.mkdir()
    monkeypatch.setattr(path_config, "SCRATCH_DIR", str(scratch))
    minimize(run_config(copy_fixture("golden", tmp_path)))
    assert list(scratch.iterdir()) == []
