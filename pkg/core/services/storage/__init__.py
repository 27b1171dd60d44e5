"""Storage service module."""
from .file_store import decode_utf8, read_text, write_text, write_text_atomic, ensure_directory
from . import json_codec

__all__ = ['decode_utf8', 'read_text', 'write_text', 'write_text_atomic', 'ensure_directory', 'json_codec']
