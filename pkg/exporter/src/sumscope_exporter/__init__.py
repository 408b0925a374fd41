"""Offline encoder exporter for the sumscope toolkit file formats."""

from .export import (
    ExportJob,
    export_nsp_scores,
    export_sentence_embeddings,
    export_token_embeddings,
    run_job,
)

__version__ = "0.1.0"
