class Error(Exception):
    """Base class for exceptions in this module."""

    pass


class UnterminatedComment(Error):
    """Raised when a `(*` comment is still open at end of input.

    Attributes:
        offset -- Offset of the opening `(*`
        message -- Human readable explanation of the error
    """

    def __init__(self, offset, message=None):
        self.offset = offset
        self.message = message or f"Unterminated comment starting at offset {offset}"
        super().__init__(self.message)


class UnterminatedString(Error):
    """Raised when a string literal is still open at end of input.

    Attributes:
        offset -- Offset of the opening quote
        message -- Human readable explanation of the error
    """

    def __init__(self, offset, message=None):
        self.offset = offset
        self.message = message or f"Unterminated string starting at offset {offset}"
        super().__init__(self.message)


class UnbalancedScope(Error):
    """Raised when an End has no matching Module/Section (or the reverse).

    Attributes:
        offset -- Offset of the offending sentence
        message -- Human readable explanation of the error
    """

    def __init__(self, offset, message=None):
        self.offset = offset
        self.message = message or f"Unbalanced scope at offset {offset}"
        super().__init__(self.message)


class NoErrorFound(Error):
    """Raised when a log has no `File ..., line ...` header followed by an Error line."""

    def __init__(self, message="No error report found in log"):
        self.message = message
        super().__init__(self.message)


class NoMatchingInvocation(Error):
    """Raised when a build log has no VERMIN_CALL line for the failing file.

    Attributes:
        file -- The file named by the error report
        message -- Human readable explanation of the error
    """

    def __init__(self, file, message=None):
        self.file = file
        self.message = message or f"No VERMIN_CALL invocation found for {file}"
        super().__init__(self.message)


class CheckerNotFound(Error):
    """Raised when a checker executable cannot be launched.

    Attributes:
        path -- The executable that was sought
        message -- Human readable explanation of the error
    """

    def __init__(self, path, message=None):
        self.path = path
        self.message = message or f"Checker executable not found: {path}"
        super().__init__(self.message)


class ScratchWriteFailed(Error):
    """Raised when a candidate cannot be written to its scratch file.

    Attributes:
        path -- The scratch file
        message -- Human readable explanation of the error
    """

    def __init__(self, path, message=None):
        self.path = path
        self.message = message or f"Could not write scratch file {path}"
        super().__init__(self.message)


class InitialVerificationError(Error):
    """Base for the three ways the initial two-leg check can fail.

    Attributes:
        outcome -- The CheckOutcome of the leg that misbehaved
        message -- Human readable explanation of the error
    """

    def __init__(self, outcome, message):
        self.outcome = outcome
        self.message = message
        super().__init__(self.message)


class PassLegFails(InitialVerificationError):
    """The checker expected to succeed did not."""

    pass


class FailLegSucceeds(InitialVerificationError):
    """The checker expected to fail accepted the file."""

    pass


class SignatureMismatch(InitialVerificationError):
    """The checker expected to fail failed with a different error."""

    pass


class ErrorLineNotFound(Error):
    """Raised when an error location does not map onto a sentence of the document.

    Attributes:
        line -- The reported line
        message -- Human readable explanation of the error
    """

    def __init__(self, line, message=None):
        self.line = line
        self.message = message or f"No sentence found at line {line}"
        super().__init__(self.message)


class BudgetExhausted(Error):
    """Raised when the global wall-clock budget runs out. The state is still valid."""

    def __init__(self, message="Wall-clock budget exhausted"):
        self.message = message
        super().__init__(self.message)


class UnresolvableRequire(Error):
    """Raised when a Require names no file under the search paths.

    Attributes:
        name -- The required logical name
        requiring_file -- The file containing the Require
        message -- Human readable explanation of the error
    """

    def __init__(self, name, requiring_file, message=None):
        self.name = name
        self.requiring_file = requiring_file
        self.message = message or f"Cannot resolve Require {name} in {requiring_file}"
        super().__init__(self.message)


class CyclicDependency(Error):
    """Raised when the Require relation has a cycle.

    Attributes:
        cycle -- List of logical names along the cycle
        message -- Human readable explanation of the error
    """

    def __init__(self, cycle, message=None):
        self.cycle = cycle
        self.message = message or "Cyclic dependency: " + " -> ".join(cycle)
        super().__init__(self.message)


class MissingResolution(Error):
    """Raised when a Require/Import/Export name has no entry in the name table.

    Attributes:
        name -- The short name as written
        message -- Human readable explanation of the error
    """

    def __init__(self, name, message=None):
        self.name = name
        self.message = message or f"No resolution recorded for {name}"
        super().__init__(self.message)


class OutputWriteFailed(Error):
    """Raised when the minimized file or its stats cannot be written.

    Attributes:
        path -- The output path
        message -- Human readable explanation of the error
    """

    def __init__(self, path, message=None):
        self.path = path
        self.message = message or f"Could not write {path}"
        super().__init__(self.message)


class CheckpointError(Error):
    """Raised when a checkpoint cannot be read back.

    Attributes:
        path -- The checkpoint database
        message -- Human readable explanation of the error
    """

    def __init__(self, path, message=None):
        self.path = path
        self.message = message or f"Unusable checkpoint {path}"
        super().__init__(self.message)


class ConfigurationError(Error):
    """Raised when the command line does not describe a runnable task.

    Attributes:
        message -- Human readable explanation of the error
    """

    def __init__(self, message):
        self.message = message
        super().__init__(self.message)
