"""Generating and independence graphs of finite groups."""

import json

from ._virtgen import (
    CapExceeded,
    Group,
    ParseError,
    PreconditionError,
    VirtgenError,
    _census,
    _generator_pairs,
    _graph,
    _mingen,
    _separation,
    _summary,
    _verify,
)

__all__ = [
    "CapExceeded",
    "Group",
    "ParseError",
    "PreconditionError",
    "VirtgenError",
    "census",
    "generator_pairs",
    "graph_report",
    "group_summary",
    "separation",
    "tarski_table",
    "verify",
]


def group_summary(spec):
    return json.loads(_summary(spec))


def graph_report(spec, kind="virt-independence"):
    return json.loads(_graph(spec, kind))


def tarski_table(spec):
    return json.loads(_mingen(spec))


def census(t, samples=100, seed=1):
    return json.loads(_census(t, samples, seed))


def generator_pairs(t, variant="corrected"):
    return json.loads(_generator_pairs(t, variant))


def separation(taus, threshold, doubling=12, family=None):
    return json.loads(_separation(list(taus), threshold, doubling, family or ""))


def verify(suite="all"):
    return json.loads(_verify(suite))
