"""
A small deterministic checker for the vernacular subset the minimizer works on.

Terms are uninterpreted token trees: "type checking" is reference resolution.
Scopes, modules, imports, proofs and obligations are modelled closely enough
for every minimizer pass to matter, and `--version=fail` activates a family of
injectable bugs (the trigger_* commands and tactics).

Usage:
    python toy_checker.py [--version=pass|fail] [-Q dir prefix]... [-R dir prefix]...
                          [--emit-names names.txt] file.v
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional
import argparse
import os
import re
import sys

from configs import checker_config, minimizer_config
from errors import UnterminatedComment, UnterminatedString
from libraries import is_stdlib, library_index, logical_name_of, resolve_library
from sentences import MODIFIERS, SentenceKind, is_statement, lex, split_leading_comments, split_sentences

KEYWORDS = set(checker_config.KEYWORDS)
BUILTIN_TERMS = set(checker_config.BUILTIN_TERMS)
BUILTIN_TACTICS = set(checker_config.BUILTIN_TACTICS)
TRIGGERS = set(checker_config.TRIGGER_WORDS)
TACTICALS = {"try", "repeat", "progress", "now", "abstract", "solve", "first"}
ARGUMENT_TACTICS = {"exact", "apply", "eapply", "rewrite", "unfold", "refine", "specialize"}
INTRO_TACTICS = {"intros", "intro", "destruct", "induction", "remember", "revert"}
NAMING_TACTICS = {"pose", "set", "assert"}
AUTO_HYPOTHESIS = re.compile(r"^(H|IH)[A-Za-z0-9_']*$")
IGNORED_COMMANDS = {
    "Arguments", "Hint", "Notation", "Infix", "Open", "Close", "Declare",
    "Existing", "Generalizable", "Implicit", "Create", "Canonical", "Coercion",
    "Scheme", "Universe", "Universes", "Constraint", "Tactic", "Solve",
    "Include", "Search",
}
ASSUMPTION_HEADS = {
    "Axiom", "Axioms", "Parameter", "Parameters", "Hypothesis", "Hypotheses",
    "Variable", "Variables", "Conjecture",
}
TERM_DEFINITION_HEADS = {"Definition", "Let", "Example", "Instance", "Fixpoint", "CoFixpoint"}
CLOSE_MESSAGE = "No focused proof (No proof-editing in progress)."
OPEN_PROOFS_MESSAGE = "Command not supported (Open proofs remain)."


class CheckFailure(Exception):
    """A semantic error, located by offsets into the file being checked."""

    def __init__(self, file, text, start, end, message):
        self.file = file
        self.text = text
        self.start = start
        self.end = end
        self.message = message
        super().__init__(message)

    def report(self):
        return location_header(self.file, self.text, self.start, self.end) + "\nError: " + self.message


def location_header(file, text, start, end):
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1)
    return f'File "{file}", line {line}, characters {col}-{col + max(end - start, 0)}:'


@dataclass
class Entry:
    path: str
    kind: str  # term, ltac, module, functor, moduletype, library
    transparent: bool = True
    ltac_body: tuple = ()
    pending_obligations: int = 0


@dataclass
class ModuleInfo:
    path: str
    kind: str
    names: Dict[str, str]
    exports: List[str]


@dataclass
class Frame:
    kind: str  # file, module, functor, moduletype, section
    name: str
    path: str
    export: bool = False
    importing: bool = False
    defined: Dict[str, str] = field(default_factory=dict)
    visible: Dict[str, str] = field(default_factory=dict)
    section_locals: set = field(default_factory=set)
    exports: List[str] = field(default_factory=list)
    legacy: bool = False


@dataclass
class ProofState:
    name: Optional[str]
    kind: str  # statement, goal, obligation
    locals: set
    admitted: bool = False
    obligation_of: Optional[str] = None


@dataclass
class Session:
    """State shared by the checker of a file and the checkers of the libraries it requires."""

    version: str
    index: dict
    entries: Dict[str, Entry] = field(default_factory=dict)
    modules: Dict[str, ModuleInfo] = field(default_factory=dict)
    loaded: set = field(default_factory=set)
    loading: list = field(default_factory=list)
    out: list = field(default_factory=list)


def _unquote(token):
    return token[1:-1].replace('""', '"')


def _is_symbol(tok, value):
    return tok is not None and tok.kind == "symbol" and tok.value == value


def _strip_modifier_tokens(tokens):
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if _is_symbol(t, "#"):
            while i < len(tokens) and not _is_symbol(tokens[i], "]"):
                i += 1
            i += 1
        elif t.kind == "ident" and t.value in MODIFIERS:
            i += 1
        else:
            break
    return tokens[i:]


def _drop_period(tokens):
    if tokens and _is_symbol(tokens[-1], "."):
        return tokens[:-1]
    return tokens


def _assign_at(tokens, k):
    return _is_symbol(tokens[k], ":") and k + 1 < len(tokens) and _is_symbol(tokens[k + 1], "=")


def split_header(tokens):
    """(parameters, type, body) token lists of `params [: type] [:= body]`."""
    depth, colon, assign = 0, None, None
    for k, t in enumerate(tokens):
        if t.kind != "symbol":
            continue
        if t.value in "([{":
            depth += 1
        elif t.value in ")]}":
            depth -= 1
        elif depth == 0 and t.value == ":":
            if _assign_at(tokens, k):
                assign = k
                break
            if colon is None:
                colon = k
    stop = assign if assign is not None else len(tokens)
    params = tokens[: colon if colon is not None else stop]
    type_tokens = tokens[colon + 1 : stop] if colon is not None else []
    body = tokens[assign + 2 :] if assign is not None else []
    return params, type_tokens, body


def group_binders(tokens):
    """Names bound by a binder list such as `x (y z : T) {A : Type}`."""
    names, depth, typed = set(), 0, {0: False}
    for k, t in enumerate(tokens):
        if t.kind == "symbol":
            if t.value in "([{":
                depth += 1
                typed[depth] = False
            elif t.value in ")]}":
                typed.pop(depth, None)
                depth = max(depth - 1, 0)
            elif t.value == ":" and not _assign_at(tokens, k):
                typed[depth] = True
        elif t.kind == "ident" and not typed.get(depth, False) and t.value not in KEYWORDS:
            names.add(t.value)
    return names


def binder_names(tokens):
    """Every name a term binds anywhere inside it (forall/fun/let/match patterns)."""
    names, n, i = set(), len(tokens), 0
    while i < n:
        t = tokens[i]
        nxt = tokens[i + 1] if i + 1 < n else None
        if t.kind == "ident" and t.value in ("forall", "fun", "exists", "fix", "cofix"):
            j = i + 1
            depth = 0
            stretch = []
            while j < n:
                u = tokens[j]
                if u.kind == "symbol":
                    if u.value in "([{":
                        depth += 1
                    elif u.value in ")]}":
                        depth -= 1
                        if depth < 0:
                            break
                    elif depth == 0 and u.value == ",":
                        break
                    elif u.value == "=" and j + 1 < n and _is_symbol(tokens[j + 1], ">"):
                        break
                    elif depth == 0 and _assign_at(tokens, j):
                        break
                stretch.append(u)
                j += 1
            names |= group_binders(stretch)
        elif t.kind == "ident" and t.value in ("let", "as") and nxt is not None and nxt.kind == "ident":
            names.add(nxt.value)
        elif _is_symbol(t, "|") or (t.kind == "ident" and t.value == "with"):
            j = i + 1
            while j < n and not (_is_symbol(tokens[j], "=") and j + 1 < n and _is_symbol(tokens[j + 1], ">")):
                if tokens[j].kind == "ident":
                    names.add(tokens[j].value)
                j += 1
        elif (_is_symbol(t, "?") or _is_symbol(t, "%")) and nxt is not None and nxt.kind == "ident":
            names.add(nxt.value)
        i += 1
    return names


class Checker:
    def __init__(self, session, file, text, logical):
        self.session = session
        self.file = file
        self.text = text
        self.logical = logical
        self.frames = [Frame("file", logical, logical)]
        self.proof = None
        self.legacy = False
        self.loc = (0, 0)
        self.loc_base = 0
        self.sentence_index = 0
        self.names_table = {}

    # -- reporting

    def fail(self, message, start=None, end=None):
        start = self.loc[0] if start is None else start
        end = self.loc[1] if end is None else end
        raise CheckFailure(self.file, self.text, start, end, message)

    def warn(self, message):
        self.session.out.append(
            location_header(self.file, self.text, *self.loc) + "\nWarning: " + message + "\n"
        )

    # -- names

    @property
    def frame(self):
        return self.frames[-1]

    def current_path(self):
        for f in reversed(self.frames):
            if f.kind != "section":
                return f.path
        return self.logical

    def define(self, name, kind="term", transparent=True, **extra):
        if name in self.frame.defined:
            self.fail(f"{name} already exists.")
        path = f"{self.current_path()}.{name}"
        self.session.entries[path] = Entry(path, kind, transparent, **extra)
        self.frame.defined[name] = path
        return path

    def lookup(self, name, kinds=None):
        """Entry a reference resolves to, or None."""
        entries = self.session.entries
        if "." not in name:
            for f in reversed(self.frames):
                for table in (f.defined, f.visible):
                    path = table.get(name)
                    if path in entries and (kinds is None or entries[path].kind in kinds):
                        return entries[path]
            return None
        for path in reversed(list(entries)):
            if (path == name or path.endswith("." + name)) and (kinds is None or entries[path].kind in kinds):
                return entries[path]
        return None

    def resolve_term(self, name):
        entry = self.lookup(name, ("term",))
        if entry is None or entry.pending_obligations > 0:
            return None
        return entry

    def check_refs(self, tokens, bound=()):
        bound = set(bound) | binder_names(tokens)
        prev = None
        for t in tokens:
            if t.kind == "ident" and not (_is_symbol(prev, "?") or _is_symbol(prev, "%")):
                v = t.value
                if v not in bound and v not in KEYWORDS and v not in BUILTIN_TERMS:
                    if self.resolve_term(v) is None:
                        self.reference_error(t)
            prev = t

    def reference_error(self, tok):
        start = self.loc_base + tok.start
        self.fail(
            f"The reference {tok.value} was not found in the current environment.",
            start,
            start + len(tok.value),
        )

    # -- modules

    def resolve_module(self, name):
        kinds = ("module", "functor", "moduletype", "library")
        if "." not in name:
            entry = self.lookup(name, kinds)
            return self.session.modules.get(entry.path) if entry else None
        for path in reversed(list(self.session.modules)):
            if path == name or path.endswith("." + name):
                return self.session.modules[path]
        return None

    def import_module(self, info, frame, seen=None):
        seen = set() if seen is None else seen
        if info.path in seen:
            return
        seen.add(info.path)
        if info.kind in ("functor", "moduletype"):
            self.fail(f"{info.path} is not an importable module.")
        frame.visible.update(info.names)
        for exported in info.exports:
            if exported in self.session.modules:
                self.import_module(self.session.modules[exported], frame, seen)

    # -- driver

    def check(self):
        try:
            sentences = split_sentences(self.text)
        except UnterminatedComment as e:
            raise CheckFailure(self.file, self.text, e.offset, e.offset + 2, "Syntax error: unterminated comment.")
        except UnterminatedString as e:
            raise CheckFailure(self.file, self.text, e.offset, e.offset + 1, "Syntax error: unterminated string.")
        for k, s in enumerate(sentences):
            self.sentence_index = k
            self.sentence(s)
        if len(self.frames) > 1:
            self.fail(f"The {self.frame.kind} {self.frame.name} is not closed.")
        top = self.frames[0]
        self.session.modules[self.logical] = ModuleInfo(self.logical, "library", dict(top.defined), list(top.exports))
        self.session.entries[self.logical] = Entry(self.logical, "library")

    def sentence(self, s):
        if s.kind == SentenceKind.BLANK:
            return
        prefix, _ = split_leading_comments(s.text)
        start = s.span[0] + len(prefix)
        end = s.span[1] - 1 if s.text.endswith(".") else s.span[1]
        self.loc = (start, end)
        self.loc_base = s.span[0]
        tokens = _drop_period(lex(s.text))
        if s.kind == SentenceKind.PROOF_CLOSER:
            self.close_proof(s.head)
        elif s.kind == SentenceKind.PROOF_OPENER:
            if self.proof is None:
                self.fail(CLOSE_MESSAGE)
        elif s.kind == SentenceKind.PROOF_STEP:
            self.step(tokens)
        elif s.kind == SentenceKind.SCOPE_OPENER:
            self.open_scope(s, tokens)
        elif s.kind == SentenceKind.SCOPE_CLOSER:
            self.end_scope(s)
        elif s.kind == SentenceKind.REQUIRE_LIKE:
            self.require(s)
        elif s.kind == SentenceKind.IMPORT_LIKE:
            self.import_export(s)
        else:
            self.command(s, tokens)

    # -- commands

    def command(self, s, tokens):
        words = s.words
        bare = _strip_modifier_tokens(tokens)
        head = bare[0].value if bare else ""
        if is_statement(words, s.code):
            self.start_proof(s, bare)
            return
        if head in TRIGGERS:
            self.fire(bare)
        elif head in TERM_DEFINITION_HEADS:
            self.define_term(bare, program="Program" in words[:3])
        elif head == "Ltac":
            self.define_ltac(bare)
        elif head in ASSUMPTION_HEADS:
            self.assume(bare)
        elif head == "Context":
            self.context(bare)
        elif head in ("Inductive", "CoInductive", "Variant"):
            self.inductive(bare)
        elif head in ("Record", "Structure", "Class"):
            self.record(bare)
        elif head in ("Check", "Compute", "Eval"):
            self.check_refs(bare[1:])
        elif head in ("Print", "About", "Locate"):
            for t in bare[1:]:
                if t.kind == "ident" and self.lookup(t.value) is None and t.value not in BUILTIN_TERMS:
                    self.reference_error(t)
        elif head in ("Set", "Unset"):
            self.flag(s, bare)
        elif head == "Admit" and len(bare) > 1 and bare[1].value == "Obligations":
            for entry in self.session.entries.values():
                entry.pending_obligations = 0
        elif head in ("Opaque", "Transparent"):
            for t in bare[1:]:
                entry = self.resolve_term(t.value) if t.kind == "ident" else None
                if entry is None:
                    self.reference_error(t)
                entry.transparent = head == "Transparent"
        elif head in IGNORED_COMMANDS:
            return
        else:
            self.fail("Syntax error: illegal begin of vernac.")

    def define_term(self, bare, program=False):
        head = bare[0].value
        if len(bare) < 2 or bare[1].kind != "ident":
            self.fail("Syntax error: [identifier] expected after definition keyword.")
        name = bare[1].value
        params, type_tokens, body = split_header(bare[2:])
        bound = group_binders(params)
        if head in ("Fixpoint", "CoFixpoint"):
            bound.add(name)
        self.check_refs(params + type_tokens + body, bound)
        holes = sum(1 for t in body if t.kind == "ident" and t.value == "_") if program else 0
        self.define(name, pending_obligations=holes)

    def define_ltac(self, bare):
        if len(bare) < 2 or bare[1].kind != "ident":
            self.fail("Syntax error: [identifier] expected after Ltac.")
        for k in range(2, len(bare) - 1):
            if _assign_at(bare, k):
                self.define(bare[1].value, "ltac", ltac_body=tuple(bare[k + 2 :]))
                return
        self.fail("Syntax error: \":=\" expected after Ltac name.")

    def assume(self, bare):
        params, type_tokens, _ = split_header(bare[1:])
        self.check_refs(type_tokens)
        names = group_binders(params) if any(t.kind == "symbol" for t in params) else [
            t.value for t in params if t.kind == "ident"
        ]
        for name in sorted(names, key=lambda n: [t.value for t in params].index(n)):
            self.define(name)
            if self.frame.kind == "section" and bare[0].value.startswith("Variable"):
                self.frame.section_locals.add(name)

    def context(self, bare):
        names = group_binders(bare[1:])
        self.check_refs(bare[1:], names)
        for name in sorted(names, key=lambda n: [t.value for t in bare].index(n)):
            self.define(name)
            if self.frame.kind == "section":
                self.frame.section_locals.add(name)

    def inductive(self, bare):
        if len(bare) < 2:
            self.fail("Syntax error: [identifier] expected after Inductive.")
        self.define(bare[1].value)
        for k in range(2, len(bare) - 1):
            t = bare[k]
            if (_is_symbol(t, "|") or _assign_at(bare, k - 1)) and bare[k + 1].kind == "ident":
                self.define(bare[k + 1].value)

    def record(self, bare):
        if len(bare) < 2:
            self.fail("Syntax error: [identifier] expected after Record.")
        name = bare[1].value
        self.define(name)
        constructor = f"Build_{name}"
        depth = 0
        for k, t in enumerate(bare):
            if _is_symbol(t, "{"):
                depth += 1
            elif _is_symbol(t, "}"):
                depth -= 1
            elif depth == 0 and _assign_at(bare, k) and k + 2 < len(bare) and bare[k + 2].kind == "ident":
                constructor = bare[k + 2].value
            elif depth == 1 and t.kind == "ident" and k + 1 < len(bare) and _is_symbol(bare[k + 1], ":"):
                self.define(t.value)
        self.define(constructor)

    def flag(self, s, bare):
        words = [t.value for t in bare[1:] if t.kind == "ident"]
        name = " ".join(words)
        known = next((f for f in checker_config.KNOWN_FLAGS if name.startswith(f)), None)
        if known is None:
            self.warn(f'There is no flag or option with this name: "{name}".')
            return
        if known == checker_config.LEGACY_FLAG:
            value = bare[0].value == "Set"
            if "Global" in s.words[:1]:
                self.legacy = value
            else:
                self.frame.legacy = value

    # -- scopes

    def open_scope(self, s, tokens):
        if self.proof is not None:
            self.fail(OPEN_PROOFS_MESSAGE)
        words = s.words
        bare = [t for t in _strip_modifier_tokens(tokens)]
        head = bare[0].value
        rest = bare[1:]
        if head == "Section":
            name = rest[0].value
            self.frames.append(Frame("section", name, self.current_path()))
            return
        kind, export, importing = "module", False, False
        while rest and rest[0].kind == "ident" and rest[0].value in ("Type", "Export", "Import"):
            if rest[0].value == "Type":
                kind = "moduletype"
            export = export or rest[0].value == "Export"
            importing = importing or rest[0].value == "Import"
            rest = rest[1:]
        if not rest or rest[0].kind != "ident":
            self.fail("Syntax error: [identifier] expected after Module.")
        name = rest[0].value
        if any(_is_symbol(t, "(") for t in rest[1:]) and kind == "module":
            kind = "functor"
        if name in self.frame.defined:
            self.fail(f"{name} already exists.")
        if len(self.frames) == 1 and any(lib.split(".")[0] == name for lib in self.session.loaded):
            self.fail(f"{name} already exists.")
        self.frames.append(Frame(kind, name, f"{self.current_path()}.{name}", export, importing))

    def end_scope(self, s):
        if self.proof is not None:
            self.fail(OPEN_PROOFS_MESSAGE)
        words = s.words
        name = words[1] if len(words) > 1 else ""
        if len(self.frames) == 1:
            self.fail("There is nothing to end.")
        top = self.frame
        if top.name != name:
            self.fail(f"Last block to end has name {top.name}.")
        self.frames.pop()
        parent = self.frame
        if top.kind == "section":
            for short, path in top.defined.items():
                if short not in top.section_locals:
                    parent.defined[short] = path
            return
        info = ModuleInfo(top.path, top.kind, dict(top.defined), list(top.exports))
        self.session.modules[top.path] = info
        self.session.entries[top.path] = Entry(top.path, top.kind)
        parent.defined[top.name] = top.path
        if top.export:
            parent.exports.append(top.path)
        if top.export or top.importing:
            self.import_module(info, parent)

    def require(self, s):
        if self.proof is not None:
            self.fail(OPEN_PROOFS_MESSAGE)
        words = s.words
        from_prefix = None
        if words[0] == "From":
            from_prefix, words = words[1], words[2:]
        words = words[1:]
        mode = None
        if words and words[0] in ("Import", "Export"):
            mode, words = words[0], words[1:]
        for name in words:
            logical = resolve_library(self.session.index, name, from_prefix)
            if logical is None:
                written = f"{from_prefix}.{name}" if from_prefix else name
                if is_stdlib(written):
                    self.names_table[name] = written
                    continue
                self.fail(f"Cannot find a physical path bound to logical path {written}.")
            self.names_table[name] = logical
            self.load(logical)
            self.frame.visible.setdefault(logical.rsplit(".", 1)[-1], logical)
            if mode:
                info = self.session.modules[logical]
                self.import_module(info, self.frame)
                if mode == "Export":
                    self.frame.exports.append(logical)

    def load(self, logical):
        if logical in self.session.loaded:
            return
        if logical in self.session.loading:
            self.fail(f"Recursive Require of {logical}.")
        path = self.session.index[logical]
        self.session.loading.append(logical)
        Checker(self.session, str(path), path.read_text(encoding="utf-8"), logical).check()
        self.session.loading.pop()
        self.session.loaded.add(logical)

    def import_export(self, s):
        words = s.words
        for name in words[1:]:
            info = self.resolve_module(name)
            if info is None:
                offset = s.text.find(name)
                start = s.span[0] + max(offset, 0)
                self.fail(f"The reference {name} was not found in the current environment.", start, start + len(name))
            self.names_table[name] = info.path
            self.import_module(info, self.frame)
            if words[0] == "Export":
                self.frame.exports.append(info.path)

    # -- proofs

    def start_proof(self, s, bare):
        if self.proof is not None:
            self.fail("Nested proofs are not allowed.")
        head = bare[0].value
        if head in ("Obligation", "Next"):
            pending = [e for e in self.session.entries.values() if e.pending_obligations > 0]
            if not pending:
                self.fail("No obligations remaining.")
            self.proof = ProofState(None, "obligation", set(), obligation_of=pending[-1].path)
            return
        if head == "Goal":
            self.check_refs(bare[1:])
            self.proof = ProofState(None, "goal", binder_names(bare[1:]))
            return
        rest = bare[1:]
        if head == "Program":
            rest = rest[1:]
        if not rest or rest[0].kind != "ident":
            self.fail("Syntax error: [identifier] expected after statement keyword.")
        name = rest[0].value
        if name in self.frame.defined:
            self.fail(f"{name} already exists.")
        params, type_tokens, _ = split_header(rest[1:])
        bound = group_binders(params)
        self.check_refs(params + type_tokens, bound)
        self.proof = ProofState(name, "statement", bound | binder_names(type_tokens))

    def close_proof(self, head):
        proof = self.proof
        if proof is None:
            self.fail(CLOSE_MESSAGE)
        if head in ("Qed", "Defined", "Save") and proof.admitted:
            self.fail(
                "Attempt to save a proof with given up goals. If this is really what you want to do, "
                "use Admitted in place of Qed."
            )
        self.proof = None
        if head == "Abort":
            return
        if proof.kind == "obligation":
            entry = self.session.entries[proof.obligation_of]
            entry.pending_obligations = max(entry.pending_obligations - 1, 0)
        elif proof.name:
            self.define(proof.name, transparent=head == "Defined")

    def step(self, tokens):
        proof = self.proof
        if proof is None:
            self.fail(CLOSE_MESSAGE)
        proof.locals |= binder_names(tokens) | self.introduced(tokens)
        self.check_tactic_heads(tokens)
        self.check_tactic_arguments(tokens)
        if any(t.kind == "ident" and t.value == "admit" for t in tokens):
            proof.admitted = True
        self.fire(tokens)

    @staticmethod
    def introduced(tokens):
        names = set()
        for k, t in enumerate(tokens):
            if t.kind != "ident":
                continue
            if t.value in INTRO_TACTICS or t.value == "as":
                j = k + 1
                while j < len(tokens) and not _is_symbol(tokens[j], ";"):
                    if tokens[j].kind == "ident":
                        names.add(tokens[j].value)
                    j += 1
            elif t.value in NAMING_TACTICS and k + 2 < len(tokens) and _is_symbol(tokens[k + 1], "("):
                if tokens[k + 2].kind == "ident":
                    names.add(tokens[k + 2].value)
        return names

    def is_local(self, name):
        return name in self.proof.locals or AUTO_HYPOTHESIS.match(name) is not None

    def check_tactic_heads(self, tokens):
        prev, before = None, None
        first = True
        for t in tokens:
            if t.kind == "ident":
                is_head = (
                    first
                    or _is_symbol(prev, ";")
                    or (prev is not None and prev.kind == "ident" and prev.value in TACTICALS)
                    or (_is_symbol(prev, "(") and before is not None and before.kind == "ident" and before.value in TACTICALS)
                    or (prev is not None and prev.kind == "number" and before is not None and before.value == "do")
                )
                first = False
                v = t.value
                if is_head and not (
                    v in BUILTIN_TACTICS or v in TRIGGERS or v in KEYWORDS or self.lookup(v, ("ltac",))
                ):
                    self.reference_error(t)
            elif t.kind != "symbol" or t.value not in "-+*{}":
                first = False
            before, prev = prev, t

    def check_tactic_arguments(self, tokens):
        k, n = 0, len(tokens)
        while k < n:
            t = tokens[k]
            if t.kind == "ident" and t.value in ARGUMENT_TACTICS:
                j, depth = k + 1, 0
                while j < n:
                    u = tokens[j]
                    if u.kind == "symbol":
                        if u.value in "([{":
                            depth += 1
                        elif u.value in ")]}":
                            depth -= 1
                            if depth < 0:
                                break
                        elif depth == 0 and u.value in ";|":
                            break
                    elif u.kind == "ident" and not (_is_symbol(tokens[j - 1], "?") or _is_symbol(tokens[j - 1], "%")):
                        self.check_argument(t.value, u)
                    j += 1
                k = j
            else:
                k += 1

    def check_argument(self, tactic, tok):
        v = tok.value
        if v in KEYWORDS or v in BUILTIN_TACTICS or self.is_local(v):
            return
        if v in BUILTIN_TERMS:
            if tactic == "unfold":
                self.fail(f"Cannot coerce {v} to an evaluable reference.", self.loc_base + tok.start, self.loc_base + tok.start + len(v))
            return
        entry = self.resolve_term(v)
        if entry is None:
            self.reference_error(tok)
        if tactic == "unfold" and not entry.transparent:
            self.fail(f"Cannot coerce {v} to an evaluable reference.", self.loc_base + tok.start, self.loc_base + tok.start + len(v))

    # -- triggers

    def triggers_active(self):
        if self.session.version != "fail" or self.legacy:
            return False
        return not any(f.legacy for f in self.frames)

    def fire(self, tokens, depth=0):
        if depth > checker_config.LTAC_EXPANSION_DEPTH:
            return
        for k, t in enumerate(tokens):
            if t.kind != "ident":
                continue
            if t.value in TRIGGERS:
                if self.triggers_active():
                    nxt = tokens[k + 1] if k + 1 < len(tokens) else None
                    self.fail(self.trigger_message(t.value, nxt))
            else:
                entry = self.lookup(t.value, ("ltac",))
                if entry is not None:
                    self.fire(entry.ltac_body, depth + 1)

    def trigger_message(self, trigger, argument):
        line = self.text.count("\n", 0, self.loc[0]) + 1
        k = self.sentence_index
        if trigger == "trigger_bug":
            return _unquote(argument.value) if argument is not None and argument.kind == "string" else "trigger_bug"
        if trigger == "trigger_universe":
            return (
                f"Universe inconsistency. Cannot enforce {self.logical}.u{line} < {self.logical}.v{k} "
                f"because {self.logical}.v{k} <= {self.logical}.u{line}."
            )
        if trigger == "trigger_bugged_tactic":
            return f"Unsatisfied constraints: u{line} <= v{k} (maybe a bugged tactic)."
        if trigger == "trigger_numbered":
            return f"Cannot infer the implicit parameter H{line} of ?f{k}."
        return f"Anomaly: forgotten universe u{line} in the environment."


def parse_args(argv):
    parser = argparse.ArgumentParser(prog="toy_checker", add_help=False)
    parser.add_argument("--version", choices=["pass", "fail"], default="pass")
    parser.add_argument("-Q", nargs=2, action="append", default=[], metavar=("DIR", "PREFIX"))
    parser.add_argument("-R", nargs=2, action="append", default=[], metavar=("DIR", "PREFIX"))
    parser.add_argument(minimizer_config.EMIT_NAMES_FLAG, dest="emit_names", default=None)
    options, _ = parser.parse_known_args(argv)
    return options


def run_checker(argv, env=None, cwd=None):
    """Check one file.

    Arguments:
        argv {list of str} -- checker arguments, the file last

    Keyword Arguments:
        env {dict} -- environment for the search-path variable (default: {os.environ})
        cwd {str} -- directory relative paths are resolved against (default: {None})

    Returns:
        (int, str) -- exit status and the log the checker prints
    """
    env = dict(os.environ) if env is None else env
    try:
        if not argv:
            return checker_config.EXIT_INTERNAL, "Usage: toy_checker [options] file.v\n"
        options = parse_args(argv[:-1])
        file = argv[-1]
        path = Path(cwd or ".") / file
        if not path.exists():
            return checker_config.EXIT_INTERNAL, f"Can't find file {file}\n"
        search_paths = [("-Q", d, p) for d, p in options.Q] + [("-R", d, p) for d, p in options.R]
        session = Session(options.version, library_index(search_paths, env, cwd))
        logical = logical_name_of(path, search_paths, env, cwd)
        checker = Checker(session, file, path.read_text(encoding="utf-8"), logical)
        code = checker_config.EXIT_OK
        try:
            checker.check()
        except CheckFailure as failure:
            session.out.append(failure.report() + "\n")
            code = checker_config.EXIT_ERROR
        if options.emit_names:
            lines = [f"{short} {qualified}\n" for short, qualified in checker.names_table.items()]
            Path(cwd or ".", options.emit_names).write_text("".join(lines), encoding="utf-8")
        return code, "".join(session.out)
    except SystemExit:
        return checker_config.EXIT_INTERNAL, "Internal error: bad arguments\n"
    except Exception as e:  # pylint: disable=broad-except
        return checker_config.EXIT_INTERNAL, f"Internal error: {e!r}\n"


if __name__ == "__main__":
    status, log = run_checker(sys.argv[1:])
    print(log, end="")
    sys.exit(status)
