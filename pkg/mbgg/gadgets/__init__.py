"""Gadget hypergraphs: data model, library files, validation and search"""

from mbgg.gadgets.library import (
    GadgetLibrary,
    default_library_text,
    dump_library,
    dump_spec,
    load_library,
    parse_library,
    read_library,
)
from mbgg.gadgets.spec import (
    CHOICE_CLASSES,
    MERGE_CLASSES,
    GadgetSpec,
    PortDirection,
    PortSlot,
    builtin_sequences,
    joint_pairing,
    make_spec,
    single_claim_piece,
)
from mbgg.gadgets.synthesis import synthesize_gadgets
from mbgg.gadgets.validator import validate_gadget, validate_library

__all__ = [
    "GadgetLibrary",
    "default_library_text",
    "dump_library",
    "dump_spec",
    "load_library",
    "parse_library",
    "read_library",
    "CHOICE_CLASSES",
    "MERGE_CLASSES",
    "GadgetSpec",
    "PortDirection",
    "PortSlot",
    "builtin_sequences",
    "joint_pairing",
    "make_spec",
    "single_claim_piece",
    "synthesize_gadgets",
    "validate_gadget",
    "validate_library",
]
