"""Exception hierarchy shared across the toolkit."""


class WozError(Exception):
    """Base class for all toolkit errors."""


# --- template engine ---

class MalformedSlotMarker(WozError):
    """Slot marker syntax violation: unbalanced braces, unknown kind,
    duplicate name, or adjacent slots with no literal between them."""


class MissingBinding(WozError):
    """A fill was attempted without a value for one of the template's slots."""


class ConstraintViolation(WozError):
    """A slot fill does not satisfy its slot's kind or constraints."""


# --- inventory / environment ---

class SchemaError(WozError):
    """An inventory or environment document violates the file schema."""


class DuplicateId(SchemaError):
    """Two buttons (or entities) share the same id."""


class DanglingReference(SchemaError):
    """A tab row or paired_feedback entry names a nonexistent button."""


class OrphanButton(SchemaError):
    """A button is declared but placed in no tab."""


class UnknownButton(WozError):
    """Lookup of a button id not present in the registry."""


class InvalidMap(WozError):
    """Environment document is inconsistent (dangling space, bad partition)."""


class UnknownEntity(WozError):
    """Lookup of an entity id not present in the environment map."""


# --- router ---

class SessionClosed(WozError):
    """Operation attempted on a closed session."""


class UnknownSession(WozError):
    """Operation referenced a session id that was never opened."""


class EmptyUtterance(WozError):
    """Participant utterance or RN note with no content."""


# --- bridge ---

class MappingError(SchemaError):
    """Mapping table is not a bijection between kinds and topics."""


class ConnectionLost(WozError):
    """A bridge endpoint connection dropped; reconnect is in progress."""


# --- analytics ---

class EmptyCorpus(WozError):
    """Frequency analysis requires at least one message."""


class DivisionByZeroGuard(WozError):
    """Pacing comparison against a zero-count baseline."""


class ParseError(WozError):
    """A transcript or corpus line could not be parsed."""
