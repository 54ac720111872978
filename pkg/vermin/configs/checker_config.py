""" Vocabulary of the bundled toy checker.
It is optionally overriden by a local_config module in the same directory.
"""
import importlib

# Exit statuses
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INTERNAL = 2

# Words that never need to resolve: term syntax
KEYWORDS = [
    "forall", "fun", "exists", "match", "with", "end", "let", "in", "as",
    "return", "if", "then", "else", "fix", "cofix", "struct", "where", "Type",
    "Prop", "Set", "SProp", "_",
]

# Constants every file starts with
BUILTIN_TERMS = [
    "nat", "O", "S", "bool", "true", "false", "True", "False", "I", "eq",
    "eq_refl", "and", "or", "not", "conj", "list", "nil", "cons", "unit", "tt",
    "prod", "pair", "option", "Some", "None", "plus", "mult", "minus", "pred",
]

# Tactics and tactic-language words
BUILTIN_TACTICS = [
    "intros", "intro", "subst", "reflexivity", "symmetry", "transitivity",
    "try", "repeat", "progress", "idtac", "fail", "exact", "apply", "eapply",
    "auto", "eauto", "trivial", "simpl", "cbn", "cbv", "hnf", "red", "compute",
    "eval", "lazy", "assumption", "split", "left", "right", "constructor",
    "destruct", "induction", "case", "elim", "rewrite", "unfold", "fold",
    "lazymatch", "multimatch", "goal", "lia", "discriminate", "congruence",
    "injection", "inversion", "f_equal", "exfalso", "contradiction", "now",
    "easy", "assert", "pose", "set", "clear", "revert", "generalize",
    "specialize", "change", "refine", "first", "solve", "do", "tauto",
    "admit", "abstract", "using", "by", "at", "constr", "ltac", "type", "of",
    "numgoals", "guard", "shelve", "unshelve", "exists", "econstructor",
]

# Sentence heads that open a proof without a `:=` body
STATEMENT_KEYWORDS = [
    "Lemma", "Theorem", "Fact", "Corollary", "Goal", "Instance", "Remark",
    "Proposition", "Example",
]
DEFINITION_KEYWORDS = ["Definition", "Fixpoint", "Instance", "Example", "Let"]

# Triggers, active only under --version=fail
TRIGGER_WORDS = [
    "trigger_bug", "trigger_universe", "trigger_bugged_tactic",
    "trigger_numbered", "trigger_forgotten",
]

# Flags the checker knows; setting others gives a warning
KNOWN_FLAGS = ["Legacy Tactics", "Implicit Arguments", "Printing All", "Universe Polymorphism"]
LEGACY_FLAG = "Legacy Tactics"

LTAC_EXPANSION_DEPTH = 32

# If the local_config module is found, import all those settings, overriding any here that overlap.
if importlib.util.find_spec("configs.local_config") is not None:
    from configs.local_config import *  # pylint: disable=unused-wildcard-import
