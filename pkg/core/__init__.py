"""Core module for the trigraph pipeline"""

from .state import *
from .config import *
from .errors import TrigraphError

__all__ = [
    'PipelineState', 'PipelineOptions', 'ClassReport', 'SeparatorSummary',
    'TrigraphError', 'PIPELINE_PROJECT', 'get_pipeline_config'
]
