"""Graph bundles over finite graphs: construction, holonomy, symmetry and frames."""

import json

from ._core import *  # noqa: F401,F403
from ._core import (
    GraphBundleError,
    HypothesisError,
    ResourceError,
    certify_json,
    check_4loop_balanced_json,
    is_trivial_json,
    locally_abelian_certificate_json,
    separation_report_json,
)


def is_trivial(connection):
    return json.loads(is_trivial_json(connection))


def separation_report(bundle):
    return json.loads(separation_report_json(bundle))


def certify(graph, require_commuting=True):
    return json.loads(certify_json(graph, require_commuting))


def check_4loop_balanced(connection):
    return json.loads(check_4loop_balanced_json(connection))


def locally_abelian_certificate(bundle):
    return json.loads(locally_abelian_certificate_json(bundle))


__all__ = [
    "GraphBundleError",
    "HypothesisError",
    "ResourceError",
    "is_trivial",
    "separation_report",
    "certify",
    "check_4loop_balanced",
    "locally_abelian_certificate",
]
