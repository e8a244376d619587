"""
Document storage
"""
from .document_repository import Document, DocumentRepository, load_document, save_document

__all__ = ["Document", "DocumentRepository", "load_document", "save_document"]
