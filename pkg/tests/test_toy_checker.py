""" Testing the bundled toy checker """
import pytest
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent / "vermin"))
from configs import checker_config  # pylint: disable=import-error
from harness import write_files
import toy_checker


@pytest.fixture
def run(tmp_path):
    """Check `text` as bug.v next to `libraries`, returning (exit status, log)."""

    def check(text, version="fail", libraries=None, extra=()):
        files = dict(libraries or {})
        files["bug.v"] = text
        workdir = write_files(tmp_path / "work", files)
        argv = [f"--version={version}", "-Q", ".", "Top", *extra, "bug.v"]
        return toy_checker.run_checker(argv, env={}, cwd=str(workdir))

    return check


def test_accepts_a_well_formed_file(run):
    assert run("Definition a := 0.\nLemma l : a = a.\nProof. reflexivity. Qed.\n") == (0, "")


def test_unknown_reference(run):
    code, log = run("Definition a := b.\n")
    assert code == checker_config.EXIT_ERROR
    assert log == (
        'File "bug.v", line 1, characters 16-17:\n'
        "Error: The reference b was not found in the current environment.\n"
    )


def test_triggers_fire_only_in_the_fail_version(run):
    text = 'Lemma l : True.\nProof. trigger_bug "boom". Qed.\n'
    code, log = run(text)
    assert code == checker_config.EXIT_ERROR
    assert 'line 2, characters 7-25:\nError: boom' in log
    assert run(text, version="pass") == (0, "")


def test_trigger_messages(run):
    _, log = run("Goal True.\nProof. trigger_universe. Admitted.\n")
    assert "Error: Universe inconsistency." in log
    _, log = run("trigger_numbered.\n")
    assert "Error: Cannot infer the implicit parameter H1 of ?f0." in log
    _, log = run("trigger_forgotten.\n")
    assert "Error: Anomaly: forgotten universe u1 in the environment." in log
    _, log = run("Goal True.\nProof. trigger_bugged_tactic. Admitted.\n")
    assert "(maybe a bugged tactic)" in log


def test_ltac_expansion(run):
    code, log = run('Ltac t := idtac; trigger_bug "deep".\nGoal True.\nProof. t. Qed.\n')
    assert code == checker_config.EXIT_ERROR
    assert log.endswith("Error: deep\n")


def test_legacy_flag_disables_triggers(run):
    text = 'Global Set Legacy Tactics.\nLemma l : True.\nProof. trigger_bug "x". Qed.\n'
    assert run(text) == (0, "")


def test_proof_errors(run):
    _, log = run("Qed.\n")
    assert toy_checker.CLOSE_MESSAGE in log
    _, log = run("Lemma l : True.\nProof. admit. Qed.\n")
    assert "Attempt to save a proof with given up goals." in log
    assert run("Lemma l : True.\nProof. admit. Admitted.\n") == (0, "")
    _, log = run("Lemma a : True.\nLemma b : True.\n")
    assert "Nested proofs are not allowed." in log


def test_unfold_needs_a_transparent_constant(run):
    body = "Lemma l : a = a.\nProof. unfold a. reflexivity. Qed.\n"
    assert run("Definition a := 0.\n" + body) == (0, "")
    code, log = run("Definition a := 0.\nOpaque a.\n" + body)
    assert code == checker_config.EXIT_ERROR
    assert "Cannot coerce a to an evaluable reference." in log


def test_section_variables_stay_local(run):
    code, log = run(
        "Section S.\nVariable x : nat.\nDefinition y := x.\nEnd S.\nDefinition z := y.\nDefinition w := x.\n"
    )
    assert code == checker_config.EXIT_ERROR
    assert 'line 6, characters 16-17:\nError: The reference x was not found' in log


def test_module_names_need_qualification(run):
    code, log = run("Module M.\nDefinition x := 0.\nEnd M.\nDefinition y := M.x.\nDefinition z := x.\n")
    assert code == checker_config.EXIT_ERROR
    assert "line 5" in log
    assert run("Module M.\nDefinition x := 0.\nEnd M.\nImport M.\nDefinition z := x.\n") == (0, "")


def test_require_and_emit_names(run, tmp_path):
    libraries = {"A.v": "Definition a := 0.\n"}
    code, _ = run(
        "Require A.\nImport A.\nDefinition b := a.\n", libraries=libraries, extra=("--emit-names", "names.txt")
    )
    assert code == checker_config.EXIT_OK
    assert (tmp_path / "work" / "names.txt").read_text(encoding="utf-8") == "A Top.A\n"
    _, log = run("Require Missing.\n")
    assert "Cannot find a physical path bound to logical path Missing." in log
    assert run("Require Import Coq.Lists.List.\n") == (0, "")


def test_syntax_and_usage_errors(run, tmp_path):
    code, log = run("Definition a := 0. (* open")
    assert code == checker_config.EXIT_ERROR
    assert "Syntax error: unterminated comment." in log
    assert toy_checker.run_checker([])[0] == checker_config.EXIT_INTERNAL
    code, log = toy_checker.run_checker(["missing.v"], cwd=str(tmp_path))
    assert code == checker_config.EXIT_INTERNAL
    assert "Can't find file missing.v" in log
