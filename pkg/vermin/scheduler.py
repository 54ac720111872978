"""
Run the pass library in phases until nothing more is accepted.

Phases run in order; within a phase, rounds repeat while any pass accepted
something, and within a pass, sweeps repeat to a fixpoint. The cursor in
`state.cursor` always says where the run is, and a checkpoint is written
after every acceptance, so a run can be stopped and resumed between any two
acceptances.
"""
from pathlib import Path
import logging
import time

from configs import minimizer_config
from checkpoint import save_checkpoint
from errors import (
    BudgetExhausted,
    CyclicDependency,
    ErrorLineNotFound,
    UnresolvableRequire,
    UnterminatedComment,
    UnterminatedString,
)
from inliner import (
    TRANSITIVE_PASS,
    build_graph,
    dependency_order,
    inline_one,
    insert_transitive_requires,
)
from passes import PASSES, PassContext, Phase, admit_block_alternatives
from sentences import BlockKind, render
from utils.common import count_lines  # pylint: disable=no-name-in-module

logger = logging.getLogger(__name__)

# Dependency problems that leave the inline stage with nothing to do
GRAPH_ERRORS = (UnresolvableRequire, CyclicDependency, UnterminatedComment, UnterminatedString)

INLINE_STAGE = "inline"
INLINE_FIRST = "InlineFirst"

SPEED_CRITICAL_PASSES = [
    "truncate_after_error",
    "remove_unused_definitions",
    "admit_obligations",
    "admit_proofs",
    "admit_abstract_subproofs",
]
STRUCTURAL_PASSES = [
    "export_modules",
    "split_imports",
    "split_requires",
    "remove_blocks_backward",
    INLINE_STAGE,
    "remove_empty_scopes",
]
COSMETIC_PASSES = ["split_definitions", "remove_blocks_backward"]


def phase_plan(inline_all_first=False):
    """(phase label, pass names) in execution order."""
    plan = [
        (Phase.SPEED_CRITICAL.value, SPEED_CRITICAL_PASSES),
        (Phase.STRUCTURAL.value, STRUCTURAL_PASSES),
        (Phase.COSMETIC.value, COSMETIC_PASSES),
    ]
    if inline_all_first:
        plan.insert(0, (INLINE_FIRST, [INLINE_STAGE]))
    return plan


class Scheduler:
    """Drives one minimization run over a MinimizationState.

    Arguments:
        state {MinimizationState} -- verified starting state, or one loaded from a checkpoint
        oracle {Oracle} -- already verified, so its per-check timeout is set
        index {dict} -- library index used for inlining

    Keyword Arguments:
        target_file {str} -- recorded in checkpoints
        inline_all_first {bool} -- run the inline stage to exhaustion before anything else
        wall_budget {float} -- seconds before the run checkpoints and stops (default: {None})
        stop_after {int} -- stop after this many acceptances, for interruption tests (default: {None})
    """

    def __init__(
        self,
        state,
        oracle,
        index,
        target_file="",
        inline_all_first=False,
        wall_budget=None,
        stop_after=None,
        clock=time.monotonic,
    ):
        self.state = state
        self.oracle = oracle
        self.index = index
        self.target_file = str(target_file)
        self.plan = phase_plan(inline_all_first)
        self.clock = clock
        self.deadline = clock() + wall_budget if wall_budget else None
        self.stop_after = stop_after
        self.commits = 0

    # -- bookkeeping

    def checkpoint(self):
        if self.state.checkpoint_path:
            self.state.oracle_calls = self.oracle.calls
            save_checkpoint(self.state, self.state.checkpoint_path, self.target_file)

    def _tick(self):
        if self.deadline is not None and self.clock() >= self.deadline:
            self.checkpoint()
            raise BudgetExhausted()

    def _commit(self, site=None):
        c = self.state.cursor
        c.position = tuple(site) if site is not None else None
        c.sweep_dirty = c.pass_dirty = c.round_dirty = True
        self.commits += 1
        self.checkpoint()
        if self.stop_after is not None and self.commits >= self.stop_after:
            raise BudgetExhausted(f"Stopped after {self.commits} acceptances")

    def context(self):
        """Where the current error is, as far as the passes need to know."""
        state = self.state
        err = state.last_error
        if err is None:
            return PassContext(None, None, state.preserve_error_script)
        index = None
        if Path(err.file).name == Path(state.current.source_name or self.target_file).name:
            index = state.current.locate(err.line, err.char_range[0])
        return PassContext(index, err.line, state.preserve_error_script)

    def round_cap(self, label):
        cap = minimizer_config.MAX_SWEEPS
        if label in (Phase.STRUCTURAL.value, INLINE_FIRST):
            cap += len(self.state.inlined) + len(self.state.failed_inlines)
            try:
                cap += len(dependency_order(build_graph(self.state.current, self.index)))
            except GRAPH_ERRORS:
                pass
        return cap

    # -- driver

    def run(self):
        state = self.state
        c = state.cursor
        while c.phase < len(self.plan):
            label, names = self.plan[c.phase]
            while True:
                while c.pass_idx < len(names):
                    self.run_pass(names[c.pass_idx])
                    c.pass_idx += 1
                    c.sweep = 0
                    c.position = None
                    c.sweep_dirty = c.pass_dirty = False
                if not c.round_dirty:
                    break
                c.round += 1
                c.pass_idx = 0
                c.round_dirty = False
                if c.round >= self.round_cap(label):
                    logger.warning("%s phase stopped at the round cap", label)
                    break
            logger.info("%s phase done", label)
            c.phase += 1
            c.round = 0
            c.pass_idx = 0
            c.round_dirty = False
        state.done = True
        self.checkpoint()
        return state

    def run_pass(self, name):
        state = self.state
        c = state.cursor
        if name == INLINE_STAGE:
            self.run_inline_stage()
        else:
            p = PASSES[name]
            while c.sweep < minimizer_config.MAX_SWEEPS:
                self.sweep(p)
                if not c.sweep_dirty:
                    break
                c.sweep += 1
                c.position = None
                c.sweep_dirty = False
            else:
                logger.warning("%s stopped at the sweep cap", name)
        if not c.pass_dirty:
            lines = count_lines(render(state.current))
            state.record(name, lines, lines)

    def sweep(self, p):
        """Offer candidates until none is accepted, regenerating after every acceptance."""
        state = self.state
        c = state.cursor
        while True:
            doc = state.current
            current_text = render(doc)
            accepted = False
            try:
                for cand in p.candidates(doc, self.context(), c.position):
                    if render(cand.document) == current_text:
                        continue
                    self._tick()
                    if p.compound:
                        ok = self.try_enabling_step(p, cand)
                    else:
                        _, ok = self.oracle.accept_candidate(state, cand.document, p.name)
                    if ok:
                        logger.debug("%s: %s", p.name, cand.description)
                        self._commit(cand.site)
                        accepted = True
                        break
            except ErrorLineNotFound:
                logger.warning("%s skipped: the error location is not in the document", p.name)
                return
            if not accepted:
                return

    def try_enabling_step(self, p, cand):
        """Keep a split only when admitting its proof block is accepted and shortens the file."""
        state = self.state
        ok, _ = self.oracle.reproduces(cand.document, state.expected)
        if not ok:
            return False
        size = len(render(state.current))
        split = cand.document
        block = next(
            (b for b in split.all_blocks() if b.start == cand.site[0] and b.kind == BlockKind.PROOF_BLOCK),
            None,
        )
        if block is None:
            return False
        for admitted, _ in admit_block_alternatives(split, block):
            if len(render(admitted)) >= size:
                continue
            _, ok = self.oracle.accept_candidate(state, admitted, p.name)
            if ok:
                return True
        return False

    def run_inline_stage(self):
        state = self.state
        c = state.cursor
        try:
            if c.sweep == 0:
                if not state.requires_inserted:
                    state.requires_inserted = True
                    graph = build_graph(state.current, self.index)
                    candidate = insert_transitive_requires(state.current, graph, self.index)
                    if render(candidate) != render(state.current):
                        self._tick()
                        _, ok = self.oracle.accept_candidate(state, candidate, TRANSITIVE_PASS)
                        if ok:
                            c.sweep = 1
                            self._commit()
                c.sweep = 1
            if c.sweep == 1:
                self._tick()
                _, ok = inline_one(state, self.oracle, self.index)
                c.sweep = 2
                if ok:
                    self._commit()
        except GRAPH_ERRORS as e:
            logger.warning("Inlining skipped: %s", e.message)
            c.sweep = 2


def schedule(state, oracle, index, target_file="", **kwargs):
    return Scheduler(state, oracle, index, target_file, **kwargs).run()
