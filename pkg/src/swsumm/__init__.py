"""Small-world sentence graphs for extractive summarization of concept-annotated text."""
from .corpus import (Concept, Document, Paragraph, Sentence, dump_annotated,
                     filter_generic_types, load_annotated, load_plain_text, surrogate_annotate)
from .graph import SentenceGraph, build_graph, degree_ranking, export_dot, select_summary
from .meaning import build_meaning_table, meaning_in_paragraph, nfa_log10
from .pipeline import RunConfig, summarize
from .rouge import rouge_n, rouge_su, score_summary
from .stats import wilcoxon_signed_rank
from .topology import small_world_report

__version__ = "0.1.0"
