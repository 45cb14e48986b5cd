from .convert import (
    EntryMapper, apply_field_table, build_entry_skeleton, build_influence,
    build_interpretation_act, build_role_in_time, convert_entry, map_expression_level,
    map_item_level, map_manifestation_level, map_work_level, parse_span,
)
from .registry import REGISTRY, T, TermRegistry
from .table import MappingRow, MappingTable, Vocabulary, VocabEntry

__all__ = [
    "EntryMapper", "MappingRow", "MappingTable", "REGISTRY", "T", "TermRegistry",
    "VocabEntry", "Vocabulary", "apply_field_table", "build_entry_skeleton",
    "build_influence", "build_interpretation_act", "build_role_in_time",
    "convert_entry", "map_expression_level", "map_item_level",
    "map_manifestation_level", "map_work_level", "parse_span",
]
