"""Helpers shared by the test modules: fixture copies, toy checker specs and random documents."""
import random
import shutil
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent / "vermin"))
from configs import testing_config  # pylint: disable=import-error
from data_objects import RunConfig
from oracle import CheckerSpec, Oracle
from sentences import Document
import toy_checker

FIXTURES = Path(__file__).parent / testing_config.TESTDATA_FOLDER
SEARCH = (("-Q", ".", testing_config.GOLDEN_LOGICAL_ROOT),)
FAIL = CheckerSpec("toy", ("--version=fail",), SEARCH, (), "fail")
PASS = CheckerSpec("toy", ("--version=pass",), SEARCH, (), "pass")


def in_process_launch(self, cmd, cwd, env, timeout):
    """Stands in for Oracle._launch: runs the toy checker without a subprocess."""
    code, log = toy_checker.run_checker(cmd[1:], env=env, cwd=cwd)
    return code, log, False


def copy_fixture(name, dest):
    target = Path(dest) / name
    shutil.copytree(FIXTURES / name, target)
    return target


def write_files(workdir, files):
    workdir = Path(workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (workdir / name).write_text(text, encoding="utf-8")
    return workdir


def run_config(workdir, **overrides):
    workdir = Path(workdir)
    settings = dict(
        target_file=testing_config.GOLDEN_TARGET,
        fail_checker=FAIL,
        pass_checker=PASS,
        cwd=str(workdir),
        wall_budget=None,
        checkpoint_path=str(workdir.parent / f"{workdir.name}.sqlite"),
        output_path=None,
        stats_path=None,
    )
    settings.update(overrides)
    return RunConfig(**settings)


def verify_text(workdir, text, expected, pass_checker=PASS):
    """Run both legs on a text as the target file; raises if the contract is broken."""
    oracle = Oracle(FAIL, pass_checker, target_name=testing_config.GOLDEN_TARGET, cwd=str(workdir))
    return oracle.verify_initial(Document.parse(text, testing_config.GOLDEN_TARGET), expected)


def random_document(seed):
    """A random well-formed file with one injected bug somewhere in it."""
    rng = random.Random(seed)
    sentences, names = [], []
    blocks = rng.randint(4, 12)
    trigger_at = rng.randrange(blocks)

    def ref():
        return rng.choice(names) if names and rng.random() < 0.8 else str(rng.randint(0, 9))

    for i in range(blocks + 1):
        if i == trigger_at:
            style = rng.choice(["lemma", "numbered", "universe"])
            if style == "lemma":
                left = ref()
                sentences.append(f"Lemma bug_{i} : {left} = {left}.")
                sentences.append('Proof. intros. trigger_bug "boom". reflexivity. Qed.')
            elif style == "numbered":
                sentences.append("trigger_numbered.")
            else:
                sentences.append(f"Lemma bug_{i} : {ref()} = {ref()}.")
                sentences.append("Proof. trigger_universe. Admitted.")
            continue
        kind = rng.choice(["definition", "definition", "lemma", "module", "section"])
        if kind == "definition":
            sentences.append(f"Definition d{i} := {ref()} + {ref()}.")
            names.append(f"d{i}")
        elif kind == "lemma":
            left = ref()
            sentences.append(f"Lemma l{i} : {left} = {left}.")
            sentences.append("Proof. reflexivity. Qed.")
        elif kind == "module":
            sentences.append(f"Module M{i}.")
            sentences.append(f"Definition d{i} := {ref()}.")
            sentences.append(f"End M{i}.")
            names.append(f"M{i}.d{i}")
        else:
            sentences.append(f"Section S{i}.")
            sentences.append(f"Definition d{i} := S {ref()}.")
            sentences.append(f"End S{i}.")
            names.append(f"d{i}")
    return "\n".join(sentences) + "\n"
