"""Async file access used by every command that touches disk."""
import os
from pathlib import Path
from typing import Optional, Union

import aiofiles
import aiofiles.os

from core.services.error_handling import EncodingError
from core.services.logging.logging_service import setup_logger

logger = setup_logger(__name__)

PathLike = Union[str, Path]


def decode_utf8(data: bytes, source: Optional[str] = None) -> str:
    """Decode with universal newlines, locating the first bad byte on failure."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        prefix = data[:e.start]
        line = prefix.count(b"\n") + 1
        column = len(prefix[prefix.rfind(b"\n") + 1:].decode("utf-8")) + 1
        raise EncodingError(line, column, f"invalid UTF-8 byte 0x{data[e.start]:02x}", source) from e
    return text.replace("\r\n", "\n").replace("\r", "\n")


async def read_text(path: PathLike) -> str:
    """Read a UTF-8 text file.

    Raises:
        EncodingError: if the file is not valid UTF-8.
    """
    async with aiofiles.open(path, "rb") as f:
        data = await f.read()
    return decode_utf8(data, str(path))


async def write_text(path: PathLike, content: str) -> None:
    """Write a UTF-8 text file, replacing any existing content."""
    async with aiofiles.open(path, "w", encoding="utf-8", newline="\n") as f:
        await f.write(content)


async def write_text_atomic(path: PathLike, content: str) -> None:
    """Write via a sibling temp file and rename it over the target.

    Readers see either the old file or the new one, never a partial write.
    """
    target = Path(path)
    tmp = target.with_name(f".{target.name}.{os.getpid()}.tmp")
    try:
        await write_text(tmp, content)
        await aiofiles.os.replace(tmp, target)
    except OSError:
        if await aiofiles.os.path.exists(tmp):
            await aiofiles.os.remove(tmp)
        raise
    logger.debug(f"Wrote {target} atomically")


async def ensure_directory(path: PathLike) -> Path:
    """Create a directory (and parents) if missing."""
    directory = Path(path)
    await aiofiles.os.makedirs(directory, exist_ok=True)
    return directory
