"""Shared fixtures: canonical codes, node-type builders, random code sampling."""

from __future__ import annotations

import random

import pytest

from dgldpc.binmat import BinaryMatrix, rank
from dgldpc.codes import ComponentCode
from dgldpc.ensembles import Ensemble, NodeType

HAMMING_74_TEXT = "1000110\n0100101\n0010011\n0001111"
SPC_32_TEXT = "101\n011"


def rep_node(j: int, fraction: float) -> NodeType:
    return NodeType(kind="repetition", edge_fraction=fraction, length=j)


def spc_node(j: int, fraction: float) -> NodeType:
    return NodeType(kind="spc", edge_fraction=fraction, length=j)


def generic_node(text: str, fraction: float) -> NodeType:
    return NodeType(kind="generic", edge_fraction=fraction, generator=BinaryMatrix.from_text(text))


def ensemble(variables, checks) -> Ensemble:
    return Ensemble(variable_types=tuple(variables), check_types=tuple(checks))


def random_full_rank(rng: random.Random, n: int, k: int) -> BinaryMatrix:
    """A uniformly sampled k x n full-rank GF(2) matrix (rejection sampling)."""
    while True:
        bits = tuple(rng.randrange(1, 1 << n) for _ in range(k))
        m = BinaryMatrix(bits, n)
        if rank(m) == k:
            return m


def random_component_code(rng: random.Random, n: int, k: int) -> ComponentCode:
    return ComponentCode(random_full_rank(rng, n, k))


@pytest.fixture
def spc32() -> ComponentCode:
    return ComponentCode.from_text(SPC_32_TEXT)


@pytest.fixture
def hamming74() -> ComponentCode:
    return ComponentCode.from_text(HAMMING_74_TEXT)


@pytest.fixture
def rep3_spc6() -> Ensemble:
    return ensemble([rep_node(3, 1.0)], [spc_node(6, 1.0)])


@pytest.fixture
def rep2_spc6() -> Ensemble:
    """lambda(x) = x, rho(x) = x^5: the derivative-matching equality case."""
    return ensemble([rep_node(2, 1.0)], [spc_node(6, 1.0)])


@pytest.fixture
def g32var_spc6() -> Ensemble:
    """The minimum-distance-2 generic (3,2) variable node against SPC-6 checks."""
    return ensemble([generic_node(SPC_32_TEXT, 1.0)], [spc_node(6, 1.0)])
