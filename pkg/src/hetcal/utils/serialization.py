# Copyright © 2026 The hetcal Authors. All Rights Reserved.

import json
import os
from pathlib import Path
import tempfile
from typing import Union

import numpy as np

__all__ = ['CustomEncoder', 'dumps_document', 'write_atomic']


class CustomEncoder(json.JSONEncoder):
    """
    Custom encoder to serialize parameters and documents.

    Numpy arrays become plain lists and numpy scalars become Python numbers, so every float
    is written with its shortest round-trip representation (17 significant digits at most).
    Objects exposing ``to_dict()`` are serialized through it.
    """
    def default(self, o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        elif isinstance(o, np.bool_):
            return bool(o)
        elif isinstance(o, np.integer):
            return int(o)
        elif isinstance(o, np.floating):
            return float(o)
        elif hasattr(o, 'to_dict'):
            return o.to_dict()
        return super().default(o)


def dumps_document(doc : dict) -> str:
    """
    Serialize a document deterministically (stable key order, UTF-8 text, trailing newline)
    """
    return json.dumps(doc, cls=CustomEncoder, indent=2, ensure_ascii=False, allow_nan=False) + '\n'


def write_atomic(path : Union[str, Path], text : str) -> Path:
    """
    Write text to path atomically: a temporary file in the destination directory is renamed over the target.

    Args:
        path (str or Path): Destination file
        text (str): Content, written as UTF-8

    Returns:
        Path: The destination path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f'.{path.name}.', suffix='.tmp', dir=path.parent)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise
    return path
