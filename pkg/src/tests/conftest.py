"""Shared fixtures for the toolkit tests"""
from pathlib import Path

import pytest

from src.logic.parsers.formula_parser import parse
from src.settings import Settings

ROOT = Path(__file__).resolve().parents[2]
CORPUS = ROOT / "corpus" / "worked"

CL1_EXAMPLE = "((p->q)*(p->r)) -> (p->(q*r))"
BLASS = "((~P | ~Q) & (~R | ~S)) | ((P | R) & (Q | S))"
BLASS_INSTANCE = "((~P|~P)&(~P|~P))|((P|P)&(P|P))"


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture
def proof_path():
    def resolve(name: str) -> Path:
        return CORPUS / "proofs" / name
    return resolve


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def f():
    """Shorthand parser: f("p | ~p")"""
    return parse
