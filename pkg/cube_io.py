"""
Cube I/O Module - File formats for matrices, label classes, plans and cost caches.
Any path ending in .zst is transparently compressed with Zstandard.
"""

import json
import sys
from typing import Any, Dict, Iterable, Optional

import zstandard as zstd

from Distinguish.bitmatrix import BinaryMatrix
from Distinguish.construct import ConstructionPlan
from Distinguish.cost import CostTable
from Distinguish.errors import FormatError, InvalidLabelClass
from Distinguish.hypercube import LabelClass

COMPRESSED_SUFFIX = ".zst"
COMPRESSION_LEVEL = 3
STDIO_PATH = "-"


def read_bytes(filepath: str) -> bytes:
    """
    Read a file, decompressing it when the name ends in .zst.

    Args:
        filepath: Path to read, or "-" for standard input

    Returns:
        File content as bytes
    """
    if filepath == STDIO_PATH:
        return sys.stdin.buffer.read()
    with open(filepath, 'rb') as input_file:
        content = input_file.read()
    if filepath.endswith(COMPRESSED_SUFFIX):
        try:
            return zstd.ZstdDecompressor().decompress(content)
        except zstd.ZstdError as error:
            raise FormatError(f"{filepath}: not a valid zstd file ({error})") from error
    return content


def write_bytes(filepath: str, content: bytes):
    """
    Write a file, compressing it when the name ends in .zst.

    Args:
        filepath: Path to write
        content: Bytes to store
    """
    if filepath.endswith(COMPRESSED_SUFFIX):
        content = zstd.ZstdCompressor(level=COMPRESSION_LEVEL).compress(content)
    with open(filepath, 'wb') as output_file:
        output_file.write(content)


def read_text(filepath: str) -> str:
    """
    Read a UTF-8 text file, decompressing .zst names.

    Raises:
        FormatError: If the content is not UTF-8
    """
    try:
        return read_bytes(filepath).decode('utf-8')
    except UnicodeDecodeError as error:
        raise FormatError(f"{filepath}: not UTF-8 text") from error


def write_text(filepath: str, text: str):
    """Write UTF-8 text to a file, or to standard output for "-"."""
    if filepath == STDIO_PATH:
        sys.stdout.write(text)
        return
    write_bytes(filepath, text.encode('utf-8'))


def _content_lines(text: str) -> list:
    lines = [line.rstrip('\r') for line in text.split('\n')]
    while lines and not lines[-1]:
        lines.pop()
    start = 0
    while start < len(lines) and lines[start].startswith('#'):
        start += 1
    return lines[start:]


def parse_matrix_text(text: str) -> BinaryMatrix:
    """
    Parse the canonical text format: leading '#' comments, then one row of
    '0'/'1' characters per line.

    Raises:
        FormatError: If the rows are missing, ragged or contain other characters
    """
    lines = _content_lines(text)
    if not lines:
        raise FormatError("matrix text has no rows")
    try:
        return BinaryMatrix.from_strings(lines)
    except ValueError as error:
        raise FormatError(f"bad matrix text: {error}") from error


def format_matrix_text(matrix: BinaryMatrix, comments: Iterable[str] = ()) -> str:
    header = ''.join(f"# {comment}\n" for comment in comments)
    body = ''.join(f"{row}\n" for row in matrix.to_strings())
    return header + body


def matrix_to_dict(matrix: BinaryMatrix) -> Dict[str, Any]:
    """
    Convert a matrix to its JSON form.

    Args:
        matrix: Matrix to convert

    Returns:
        Dictionary with 'rows', 'cols' and 'data' (row strings)
    """
    return {
        'rows': matrix.row_count,
        'cols': matrix.col_count,
        'data': matrix.to_strings()
    }


def matrix_from_dict(data: Dict[str, Any]) -> BinaryMatrix:
    """
    Rebuild a matrix from its JSON form.

    Raises:
        FormatError: If keys are missing or the data disagrees with the shape
    """
    if not isinstance(data, dict) or not {'rows', 'cols', 'data'} <= set(data):
        raise FormatError("matrix JSON needs 'rows', 'cols' and 'data'")
    rows, cols, lines = data['rows'], data['cols'], data['data']
    if not isinstance(lines, list) or not all(isinstance(line, str) for line in lines):
        raise FormatError("matrix JSON 'data' must be a list of row strings")
    if len(lines) != rows or any(len(line) != cols for line in lines):
        raise FormatError(f"matrix JSON data does not match {rows}x{cols}")
    if not lines:
        return BinaryMatrix(0, cols, ())
    try:
        return BinaryMatrix.from_strings(lines)
    except ValueError as error:
        raise FormatError(f"bad matrix JSON: {error}") from error


def parse_matrix(text: str) -> BinaryMatrix:
    """Parse either the text or the JSON matrix format."""
    if text.lstrip().startswith('{'):
        try:
            return matrix_from_dict(json.loads(text))
        except json.JSONDecodeError as error:
            raise FormatError(f"bad matrix JSON: {error}") from error
    return parse_matrix_text(text)


def load_matrix(filepath: str) -> BinaryMatrix:
    """Load a matrix in either format from a file, "-" or a .zst file."""
    return parse_matrix(read_text(filepath))


def format_matrix(matrix: BinaryMatrix, as_json: bool = False, comments: Iterable[str] = ()) -> str:
    if as_json:
        return json.dumps(matrix_to_dict(matrix), indent=2) + '\n'
    return format_matrix_text(matrix, comments)


def save_matrix(filepath: str, matrix: BinaryMatrix, as_json: bool = False, comments: Iterable[str] = ()):
    """
    Save a matrix as canonical text or JSON.

    Args:
        filepath: Target path, "-" for standard output
        matrix: Matrix to save
        as_json: Use the JSON format
        comments: Header lines for the text format
    """
    write_text(filepath, format_matrix(matrix, as_json, comments))


def parse_label_class(text: str, dim: Optional[int] = None) -> LabelClass:
    """
    Parse a label class from one vertex per line or {"n": ..., "vertices": [...]}.

    Args:
        text: File content
        dim: Expected dimension; required when the text format has no rows

    Raises:
        FormatError: If the content is malformed or disagrees with ``dim``
    """
    try:
        if text.lstrip().startswith('{'):
            data = json.loads(text)
            if not isinstance(data, dict) or 'n' not in data or 'vertices' not in data:
                raise FormatError("label class JSON needs 'n' and 'vertices'")
            label_class = LabelClass(data['n'], tuple(data['vertices']))
        else:
            vertices = tuple(_content_lines(text))
            n = dim if dim is not None else (len(vertices[0]) if vertices else None)
            if n is None:
                raise FormatError("empty label class file needs an explicit dimension")
            label_class = LabelClass(n, vertices)
    except (json.JSONDecodeError, InvalidLabelClass, TypeError) as error:
        raise FormatError(f"bad label class: {error}") from error
    if dim is not None and label_class.n != dim:
        raise FormatError(f"label class is in Q_{label_class.n}, expected Q_{dim}")
    return label_class


def load_label_class(filepath: str, dim: Optional[int] = None) -> LabelClass:
    return parse_label_class(read_text(filepath), dim)


def format_label_class(label_class: LabelClass, as_json: bool = False) -> str:
    if as_json:
        return json.dumps({'n': label_class.n, 'vertices': list(label_class.vertices)}, indent=2) + '\n'
    return ''.join(f"{vertex}\n" for vertex in label_class.vertices)


def format_plan(plan: ConstructionPlan) -> str:
    return json.dumps({'plan': plan.to_dict()}, indent=2)


def load_cost_cache(filepath: str) -> CostTable:
    """
    Load a cost memo, revalidating every entry.

    Raises:
        FormatError: If the file is not a valid cache
    """
    try:
        data = json.loads(read_text(filepath))
    except json.JSONDecodeError as error:
        raise FormatError(f"{filepath}: bad cost cache JSON ({error})") from error
    return CostTable.from_dict(data)


def save_cost_cache(filepath: str, table: CostTable):
    """Write the cost memo in the form load_cost_cache reads back."""
    write_text(filepath, json.dumps(table.to_dict(), indent=2) + '\n')
