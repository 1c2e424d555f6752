"""Localization-Recall-Precision (LRP) evaluation for object detectors."""

import json as _json

from ._lrp import *  # noqa: F401,F403
from ._lrp import evaluate_files as _evaluate_files

__version__ = "0.1.0"


def evaluate(gt_path, det_path, **kwargs):
    """Evaluates COCO files and returns the report as a dict."""
    return _json.loads(_evaluate_files(str(gt_path), str(det_path), **kwargs))
