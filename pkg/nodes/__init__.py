"""Node functions for LangGraph workflow"""

from .loader import load_node, load_separator_node
from .class_checker import check_class_node
from .decomposer import decompose_node
from .separator_builder import build_separator_node, kjoin_separator_node
from .separator_verifier import verify_separator_node
from .biclique_extractor import extract_biclique_node, kjoin_biclique_node
from .corpus_generator import compose_kjoin_node, generate_node
from .reporter import report_node

__all__ = [
    'load_node',
    'load_separator_node',
    'check_class_node',
    'decompose_node',
    'build_separator_node',
    'kjoin_separator_node',
    'verify_separator_node',
    'extract_biclique_node',
    'kjoin_biclique_node',
    'compose_kjoin_node',
    'generate_node',
    'report_node'
]
