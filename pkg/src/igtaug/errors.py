"""Exception hierarchy for the toolkit.

All data-level failures derive from ToolkitError so the CLI can map them
to a single exit code (2). Usage errors are handled by the CLI layer.
"""


class ToolkitError(Exception):
    """Base class for all data/configuration errors raised by the toolkit."""


class ParseError(ToolkitError):
    """Malformed input that cannot be decoded or parsed.

    Carries the 1-based line number when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AlignmentError(ToolkitError):
    """Parallel token streams (text/gloss/pos/ipa) have mismatched lengths."""

    def __init__(self, utterance_id, field, expected, got):
        self.utterance_id = utterance_id
        self.field = field
        self.expected = expected
        self.got = got
        super().__init__(
            f"utterance {utterance_id!r}: {field} has {got} tokens "
            f"but text has {expected}"
        )


class DuplicateIdError(ToolkitError):
    """The same utterance id appears more than once in a corpus."""


class ConfigError(ToolkitError):
    """Invalid configuration value (fractions, voices, flags...)."""


class EmptyLexiconError(ToolkitError):
    """No gloss annotations available, so a gloss lexicon cannot be built."""


class MissingGlossError(ToolkitError):
    """A gloss required for replacement is absent from the lexicon."""

    def __init__(self, gloss, utterance_id=None):
        self.gloss = gloss
        where = f" (utterance {utterance_id!r})" if utterance_id else ""
        super().__init__(f"gloss {gloss!r} not found in lexicon{where}")


class SegmentationError(ToolkitError):
    """Phoneme segmentation against an inventory left unmatched residue."""

    def __init__(self, text, position):
        self.position = position
        super().__init__(
            f"cannot segment {text!r}: no inventory match at position {position}"
        )


class PairingError(ToolkitError):
    """Reference and hypothesis lists are not index-aligned."""


class UndefinedRateError(ToolkitError):
    """An error rate is undefined (e.g. all references empty)."""


class LlmClientError(ToolkitError):
    """The LLM endpoint could not be reached or kept failing."""

    def __init__(self, endpoint_url, message):
        self.endpoint_url = endpoint_url
        super().__init__(f"{endpoint_url}: {message}")


class EmptyResultError(ToolkitError):
    """An operation that must produce output produced none."""
